#ifndef KHX_FIELD_HPP
#define KHX_FIELD_HPP

#include <cstdint>
#include <vector>

#include "khx/errors.hpp"

namespace khx {

// Prime field F_p for a session-wide odd prime p.  The modulus is a
// configuration-level constant: set it once before any computation
// (the CLI does this from --prime, tests from fixtures).
class Fp {
public:
    Fp() : v_(0) {}
    explicit Fp(std::int64_t x) {
        std::int64_t p = static_cast<std::int64_t>(modulus());
        x %= p;
        if (x < 0) x += p;
        v_ = static_cast<std::uint32_t>(x);
    }

    static void set_modulus(std::uint32_t p);
    static std::uint32_t modulus();

    std::uint32_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    friend Fp operator+(Fp a, Fp b) {
        std::uint64_t s = static_cast<std::uint64_t>(a.v_) + b.v_;
        if (s >= modulus()) s -= modulus();
        return from_raw(static_cast<std::uint32_t>(s));
    }
    friend Fp operator-(Fp a, Fp b) {
        std::uint64_t s = static_cast<std::uint64_t>(a.v_) + modulus() - b.v_;
        if (s >= modulus()) s -= modulus();
        return from_raw(static_cast<std::uint32_t>(s));
    }
    friend Fp operator*(Fp a, Fp b) {
        return from_raw(static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(a.v_) * b.v_) % modulus()));
    }
    Fp operator-() const { return v_ == 0 ? *this : from_raw(modulus() - v_); }

    Fp& operator+=(Fp o) { return *this = *this + o; }
    Fp& operator-=(Fp o) { return *this = *this - o; }
    Fp& operator*=(Fp o) { return *this = *this * o; }

    Fp inverse() const;
    Fp pow(std::uint64_t e) const;

    friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
    friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

    static Fp from_raw(std::uint32_t v) {
        Fp r;
        r.v_ = v;
        return r;
    }

private:
    std::uint32_t v_;
};

bool is_odd_prime(std::uint64_t p);

} // namespace khx

#endif
