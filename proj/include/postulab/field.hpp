#pragma once

#include <cstdint>

#include "postulab/common.hpp"

namespace postulab {

// Arithmetic in F_p for a word-sized prime. Elements are canonical residues
// in [0, p).
class prime_field {
  public:
    explicit prime_field(std::uint32_t p) : p_(p) {
        if (p < 2) throw precondition_error("prime_field: modulus must be >= 2");
    }

    std::uint32_t modulus() const { return p_; }

    std::uint32_t reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }

    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }

    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(a) * b) % p_);
    }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1 % p_;
        std::uint32_t base = a % p_;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    std::uint32_t inv(std::uint32_t a) const {
        if (a % p_ == 0) throw precondition_error("prime_field: inverse of zero");
        return pow(a, p_ - 2);
    }

    std::uint32_t div(std::uint32_t a, std::uint32_t b) const {
        return mul(a, inv(b));
    }

  private:
    std::uint32_t p_;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace postulab
