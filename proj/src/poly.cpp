#include "khx/poly.hpp"

#include <sstream>

namespace khx {

Poly Poly::monomial(Fp c, int k) {
    Poly r;
    if (c.is_zero()) return r;
    r.c_.assign(static_cast<std::size_t>(k) + 1, Fp());
    r.c_.back() = c;
    return r;
}

bool Poly::is_monomial() const {
    if (c_.empty()) return false;
    for (std::size_t i = 0; i + 1 < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        Fp s;
        if (i < a.c_.size()) s += a.c_[i];
        if (i < b.c_.size()) s += b.c_[i];
        r.c_[i] = s;
    }
    r.normalize();
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        Fp s;
        if (i < a.c_.size()) s += a.c_[i];
        if (i < b.c_.size()) s -= b.c_[i];
        r.c_[i] = s;
    }
    r.normalize();
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Fp());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.normalize();
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly Poly::scaled(Fp c) const {
    if (c.is_zero()) return Poly();
    Poly r = *this;
    for (auto& x : r.c_) x *= c;
    return r;
}

Poly Poly::monic() const {
    if (is_zero() || is_monic()) return *this;
    return scaled(leading().inverse());
}

Poly Poly::shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    Poly r;
    r.c_.assign(c_.size() + static_cast<std::size_t>(k), Fp());
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + static_cast<std::size_t>(k)] = c_[i];
    return r;
}

void Poly::divmod(const Poly& d, Poly& q, Poly& r) const {
    if (d.is_zero()) fail(Err::Internal, "polynomial division by zero");
    q = Poly();
    r = *this;
    Fp lead_inv = d.leading().inverse();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int k = r.degree() - d.degree();
        Fp c = r.leading() * lead_inv;
        Poly term = Poly::monomial(c, k);
        q += term;
        r -= term * d;
    }
}

bool Poly::divides(const Poly& other) const {
    if (is_zero()) return other.is_zero();
    Poly q, r;
    other.divmod(*this, q, r);
    return r.is_zero();
}

Fp Poly::evaluate(Fp x0) const {
    Fp acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x0 + c_[i];
    return acc;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        Fp c = coeff(k);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (k == 0 || c != Fp(1)) os << c.value();
        if (k > 0) {
            os << "x";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

GcdResult poly_gcd(const Poly& a, const Poly& b) {
    // Invariants through the loop: r0 = u0*a + v0*b, r1 = u1*a + v1*b.
    Poly r0 = a, r1 = b;
    Poly u0 = Poly::one(), v0 = Poly::zero();
    Poly u1 = Poly::zero(), v1 = Poly::one();
    while (!r1.is_zero()) {
        Poly q, rem;
        r0.divmod(r1, q, rem);
        Poly u2 = u0 - q * u1;
        Poly v2 = v0 - q * v1;
        r0 = r1;
        u0 = u1;
        v0 = v1;
        r1 = rem;
        u1 = u2;
        v1 = v2;
    }
    if (r0.is_zero()) return {Poly::zero(), Poly::zero(), Poly::zero()};
    Fp s = r0.leading().inverse();
    return {r0.scaled(s), u0.scaled(s), v0.scaled(s)};
}

} // namespace khx
