#pragma once

#include <cstdint>
#include <random>

#include "postulab/common.hpp"

namespace postulab {

// Deterministic seeded source of "generic" coordinates. mt19937_64 has a
// pinned-down output sequence, so equal seeds give bit-identical schemes on
// every platform.
class generic_source {
  public:
    generic_source(std::uint64_t seed, std::uint32_t prime)
        : eng_(seed), prime_(prime) {}

    std::uint32_t residue() { return static_cast<std::uint32_t>(eng_() % prime_); }

    std::uint32_t nonzero_residue() {
        for (;;) {
            std::uint32_t r = residue();
            if (r != 0) return r;
        }
    }

    std::uint64_t raw() { return eng_(); }

    std::uint32_t prime() const { return prime_; }

  private:
    std::mt19937_64 eng_;
    std::uint32_t prime_;
};

// Stable derivation of per-task seeds from a run seed (splitmix64 step).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace postulab
