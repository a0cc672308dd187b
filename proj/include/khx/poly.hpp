#ifndef KHX_POLY_HPP
#define KHX_POLY_HPP

#include <initializer_list>
#include <string>
#include <vector>

#include "khx/field.hpp"

namespace khx {

// Dense univariate polynomial over F_p.  Invariant: the stored leading
// coefficient is nonzero; the zero polynomial has an empty coefficient
// vector and degree() == -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(Fp c) {
        if (!c.is_zero()) c_ = {c};
    }
    explicit Poly(std::vector<Fp> coeffs) : c_(std::move(coeffs)) { normalize(); }
    Poly(std::initializer_list<std::int64_t> ints) {
        c_.reserve(ints.size());
        for (auto v : ints) c_.push_back(Fp(v));
        normalize();
    }

    static Poly zero() { return Poly(); }
    static Poly one() { return constant(Fp(1)); }
    static Poly constant(Fp c) { return Poly(c); }
    // c * x^k
    static Poly monomial(Fp c, int k);
    static Poly x() { return monomial(Fp(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_unit() const { return degree() == 0; }
    bool is_monic() const { return !c_.empty() && c_.back() == Fp(1); }

    Fp coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return Fp();
        return c_[static_cast<std::size_t>(k)];
    }
    Fp leading() const { return c_.empty() ? Fp() : c_.back(); }
    const std::vector<Fp>& coeffs() const { return c_; }

    // Exactly c*x^k with c != 0, or zero.
    bool is_monomial() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (a.c_[i] != b.c_[i]) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly scaled(Fp c) const;
    Poly monic() const;
    // Shift by x^k (k >= 0).
    Poly shifted(int k) const;

    // Euclidean division: *this = q*d + r with deg r < deg d.
    void divmod(const Poly& d, Poly& q, Poly& r) const;
    bool divides(const Poly& other) const; // *this | other
    Fp evaluate(Fp x0) const;

    std::string str() const; // for diagnostics: "3x^2 + 1"

private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Fp> c_;
};

// Extended Euclid: returns monic g (or zero) with g = u*a + v*b.
struct GcdResult {
    Poly g, u, v;
};
GcdResult poly_gcd(const Poly& a, const Poly& b);

} // namespace khx

#endif
