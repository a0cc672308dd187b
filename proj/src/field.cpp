#include "khx/field.hpp"

namespace khx {

namespace {
std::uint32_t g_modulus = 32003;
}

void Fp::set_modulus(std::uint32_t p) {
    if (!is_odd_prime(p))
        fail(Err::BadConfig,
             "field modulus must be an odd prime (2 is not invertible in F_2); got " +
                 std::to_string(p));
    g_modulus = p;
}

std::uint32_t Fp::modulus() { return g_modulus; }

Fp Fp::pow(std::uint64_t e) const {
    Fp base = *this, acc = from_raw(1);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

Fp Fp::inverse() const {
    if (is_zero()) fail(Err::Internal, "inverse of 0 in F_p");
    // p is prime, so a^(p-2) = a^-1.
    return pow(static_cast<std::uint64_t>(modulus()) - 2);
}

bool is_odd_prime(std::uint64_t p) {
    if (p < 3 || p % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

} // namespace khx
