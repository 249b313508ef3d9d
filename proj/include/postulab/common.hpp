#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace postulab {

// Typed failures. Resource overruns are recoverable and distinct from
// malformed input or broken internal invariants.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

struct precondition_error : std::invalid_argument {
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown by the closed-form condition counter when a component kind has no
// closed-form condition count (cones, sundials); callers should fall back to
// the rank-based computation.
struct not_countable_error : std::runtime_error {
    explicit not_countable_error(const std::string& what) : std::runtime_error(what) {}
};

struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

struct resource_caps {
    std::size_t max_basis = 20000;     // Groebner basis element cap
    std::size_t max_slice_rows = 200000;  // dense slice row cap
};

inline resource_caps& default_caps() {
    static resource_caps caps;
    return caps;
}

}  // namespace postulab
