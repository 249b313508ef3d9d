#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "postulab/common.hpp"

namespace postulab {

constexpr int kMaxVars = 8;

// Exponent vector with cached total degree. Capacity is fixed; the ring
// knows how many slots are live.
struct monomial {
    std::array<std::uint8_t, kMaxVars> e{};
    int deg = 0;

    static monomial one() { return monomial{}; }

    static monomial var(int i, int power = 1) {
        monomial m;
        m.e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(power);
        m.deg = power;
        return m;
    }

    bool is_one() const { return deg == 0; }

    friend bool operator==(const monomial& a, const monomial& b) {
        return a.deg == b.deg && a.e == b.e;
    }
    friend bool operator!=(const monomial& a, const monomial& b) { return !(a == b); }
};

inline monomial mono_mul(const monomial& a, const monomial& b) {
    monomial r;
    for (int i = 0; i < kMaxVars; ++i)
        r.e[i] = static_cast<std::uint8_t>(a.e[i] + b.e[i]);
    r.deg = a.deg + b.deg;
    return r;
}

inline bool mono_divides(const monomial& a, const monomial& b) {
    // a | b
    if (a.deg > b.deg) return false;
    for (int i = 0; i < kMaxVars; ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

inline monomial mono_div(const monomial& a, const monomial& b) {
    // a / b, caller guarantees divisibility
    monomial r;
    for (int i = 0; i < kMaxVars; ++i)
        r.e[i] = static_cast<std::uint8_t>(a.e[i] - b.e[i]);
    r.deg = a.deg - b.deg;
    return r;
}

inline monomial mono_lcm(const monomial& a, const monomial& b) {
    monomial r;
    int d = 0;
    for (int i = 0; i < kMaxVars; ++i) {
        r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
        d += r.e[i];
    }
    r.deg = d;
    return r;
}

inline bool mono_coprime(const monomial& a, const monomial& b) {
    for (int i = 0; i < kMaxVars; ++i)
        if (a.e[i] && b.e[i]) return false;
    return true;
}

// Polynomial ring descriptor: variable count, coefficient prime, and the
// monomial order. elim > 0 selects a block order that eliminates the last
// `elim` variables (block degree first, grevlex tie-break); elim == 0 is
// plain graded reverse lexicographic with the first variable largest.
struct poly_ring {
    int nvars = 0;
    std::uint32_t prime = 32003;
    int elim = 0;
    std::vector<std::string> names;

    prime_field field() const { return prime_field(prime); }

    bool same_as(const poly_ring& o) const {
        return nvars == o.nvars && prime == o.prime;
    }

    // strict "a < b" in the ring's term order
    bool mono_less(const monomial& a, const monomial& b) const {
        if (elim > 0) {
            int da = 0, db = 0;
            for (int i = nvars - elim; i < nvars; ++i) {
                da += a.e[i];
                db += b.e[i];
            }
            if (da != db) return da < db;
        }
        if (a.deg != b.deg) return a.deg < b.deg;
        for (int i = nvars - 1; i >= 0; --i) {
            if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
        }
        return false;
    }

    bool mono_greater(const monomial& a, const monomial& b) const {
        return mono_less(b, a);
    }
};

inline poly_ring make_ring(int nvars, std::uint32_t prime) {
    if (nvars < 1 || nvars > kMaxVars)
        throw precondition_error("make_ring: unsupported variable count");
    poly_ring r;
    r.nvars = nvars;
    r.prime = prime;
    static const char* kDefault[] = {"t", "x", "y", "z", "u", "v", "w", "s"};
    for (int i = 0; i < nvars; ++i) r.names.emplace_back(kDefault[i]);
    return r;
}

// Ambient ring of P^n over F_p: n+1 variables, grevlex.
inline poly_ring projective_ring(int n, std::uint32_t prime) {
    return make_ring(n + 1, prime);
}

// Enumerates all monomials of total degree d in the first `nvars` variables,
// in no particular order.
inline void monomials_of_degree(int nvars, int d, std::vector<monomial>& out) {
    monomial m;
    // recursive lambda over variable index
    auto rec = [&](auto&& self, int var, int rem) -> void {
        if (var == nvars - 1) {
            m.e[var] = static_cast<std::uint8_t>(rem);
            m.deg = d;
            out.push_back(m);
            m.e[var] = 0;
            return;
        }
        for (int k = rem; k >= 0; --k) {
            m.e[var] = static_cast<std::uint8_t>(k);
            self(self, var + 1, rem - k);
        }
        m.e[var] = 0;
    };
    if (d < 0) return;
    if (d > 255) throw resource_error("monomials_of_degree: degree too large");
    rec(rec, 0, d);
}

inline std::vector<monomial> monomials_of_degree(int nvars, int d) {
    std::vector<monomial> out;
    monomials_of_degree(nvars, d, out);
    return out;
}

}  // namespace postulab
