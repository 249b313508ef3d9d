#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "postulab/field.hpp"
#include "postulab/monomial.hpp"

namespace postulab {

struct term {
    monomial m;
    std::uint32_t c = 0;

    friend bool operator==(const term& a, const term& b) {
        return a.c == b.c && a.m == b.m;
    }
};

// Sparse polynomial: terms strictly descending in the ring order, no zero
// coefficients. All operations keep the canonical form.
struct poly {
    std::vector<term> terms;

    bool is_zero() const { return terms.empty(); }
    const monomial& lm() const { return terms.front().m; }
    std::uint32_t lc() const { return terms.front().c; }
    int degree() const { return terms.empty() ? -1 : terms.front().m.deg; }

    friend bool operator==(const poly& a, const poly& b) { return a.terms == b.terms; }
    friend bool operator!=(const poly& a, const poly& b) { return !(a == b); }
};

inline bool poly_is_homogeneous(const poly& f) {
    if (f.is_zero()) return true;
    int d = f.terms.front().m.deg;
    for (const auto& t : f.terms)
        if (t.m.deg != d) return false;
    return true;
}

// total degree (max over terms; equals lm degree only for graded orders)
inline int poly_total_degree(const poly& f) {
    int d = -1;
    for (const auto& t : f.terms) d = std::max(d, t.m.deg);
    return d;
}

inline void poly_normalize(const poly_ring& R, poly& f) {
    std::sort(f.terms.begin(), f.terms.end(),
              [&](const term& a, const term& b) { return R.mono_greater(a.m, b.m); });
    const prime_field F = R.field();
    std::vector<term> out;
    out.reserve(f.terms.size());
    for (const auto& t : f.terms) {
        if (!out.empty() && out.back().m == t.m) {
            out.back().c = F.add(out.back().c, t.c);
            if (out.back().c == 0) out.pop_back();
        } else if (t.c % R.prime != 0) {
            out.push_back({t.m, t.c % R.prime});
        }
    }
    f.terms = std::move(out);
}

inline poly make_poly(const poly_ring& R, std::vector<term> terms) {
    poly f;
    f.terms = std::move(terms);
    poly_normalize(R, f);
    return f;
}

inline poly poly_add(const poly_ring& R, const poly& a, const poly& b) {
    const prime_field F = R.field();
    poly r;
    r.terms.reserve(a.terms.size() + b.terms.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms.size() && j < b.terms.size()) {
        const term& ta = a.terms[i];
        const term& tb = b.terms[j];
        if (ta.m == tb.m) {
            std::uint32_t c = F.add(ta.c, tb.c);
            if (c) r.terms.push_back({ta.m, c});
            ++i, ++j;
        } else if (R.mono_greater(ta.m, tb.m)) {
            r.terms.push_back(ta);
            ++i;
        } else {
            r.terms.push_back(tb);
            ++j;
        }
    }
    for (; i < a.terms.size(); ++i) r.terms.push_back(a.terms[i]);
    for (; j < b.terms.size(); ++j) r.terms.push_back(b.terms[j]);
    return r;
}

inline poly poly_neg(const poly_ring& R, const poly& a) {
    const prime_field F = R.field();
    poly r = a;
    for (auto& t : r.terms) t.c = F.neg(t.c);
    return r;
}

inline poly poly_sub(const poly_ring& R, const poly& a, const poly& b) {
    return poly_add(R, a, poly_neg(R, b));
}

inline poly poly_scale(const poly_ring& R, const poly& a, std::uint32_t c) {
    const prime_field F = R.field();
    if (c % R.prime == 0) return {};
    poly r = a;
    for (auto& t : r.terms) t.c = F.mul(t.c, c);
    return r;
}

// a * (c * m)
inline poly poly_term_mul(const poly_ring& R, const poly& a, const monomial& m,
                          std::uint32_t c) {
    const prime_field F = R.field();
    poly r;
    r.terms.reserve(a.terms.size());
    for (const auto& t : a.terms) {
        std::uint32_t cc = F.mul(t.c, c);
        if (cc) r.terms.push_back({mono_mul(t.m, m), cc});
    }
    return r;  // multiplication by a monomial preserves the order
}

inline poly poly_mul(const poly_ring& R, const poly& a, const poly& b) {
    poly r;
    for (const auto& t : b.terms) {
        r = poly_add(R, r, poly_term_mul(R, a, t.m, t.c));
    }
    return r;
}

inline poly poly_monic(const poly_ring& R, const poly& a) {
    if (a.is_zero()) return a;
    return poly_scale(R, a, R.field().inv(a.lc()));
}

// Exact division a / b; throws if b does not divide a.
inline poly poly_divexact(const poly_ring& R, const poly& a, const poly& b) {
    if (b.is_zero()) throw precondition_error("poly_divexact: division by zero");
    const prime_field F = R.field();
    poly rem = a;
    poly q;
    while (!rem.is_zero()) {
        if (!mono_divides(b.lm(), rem.lm()))
            throw internal_error("poly_divexact: not divisible");
        monomial m = mono_div(rem.lm(), b.lm());
        std::uint32_t c = F.div(rem.lc(), b.lc());
        q.terms.push_back({m, c});
        rem = poly_sub(R, rem, poly_term_mul(R, b, m, c));
    }
    poly_normalize(R, q);
    return q;
}

// Substitute variable `var` := constant c, dropping nothing; the variable
// simply no longer occurs.
inline poly poly_subst_const(const poly_ring& R, const poly& f, int var,
                             std::uint32_t c) {
    const prime_field F = R.field();
    poly r;
    for (const auto& t : f.terms) {
        int e = t.m.e[static_cast<std::size_t>(var)];
        std::uint32_t cc = F.mul(t.c, F.pow(c, static_cast<std::uint64_t>(e)));
        if (cc == 0) continue;
        term nt = t;
        nt.m.e[static_cast<std::size_t>(var)] = 0;
        nt.m.deg -= e;
        nt.c = cc;
        r.terms.push_back(nt);
    }
    poly_normalize(R, r);
    return r;
}

// Drop a variable slot entirely (it must not occur); used when restricting
// to a subring after substitution.
inline poly poly_drop_var(const poly& f, int var) {
    poly r = f;
    for (auto& t : r.terms) {
        if (t.m.e[static_cast<std::size_t>(var)] != 0)
            throw internal_error("poly_drop_var: variable still present");
        for (int i = var; i + 1 < kMaxVars; ++i)
            t.m.e[static_cast<std::size_t>(i)] = t.m.e[static_cast<std::size_t>(i) + 1];
        t.m.e[kMaxVars - 1] = 0;
    }
    return r;
}

// Insert a fresh (zero-exponent) variable slot at position `var`.
inline poly poly_insert_var(const poly& f, int var) {
    poly r = f;
    for (auto& t : r.terms) {
        for (int i = kMaxVars - 1; i > var; --i)
            t.m.e[static_cast<std::size_t>(i)] = t.m.e[static_cast<std::size_t>(i) - 1];
        t.m.e[static_cast<std::size_t>(var)] = 0;
    }
    return r;
}

inline std::string poly_to_string(const poly_ring& R, const poly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : f.terms) {
        if (!first) os << " + ";
        first = false;
        bool printed = false;
        if (t.c != 1 || t.m.is_one()) {
            os << t.c;
            printed = true;
        }
        for (int i = 0; i < R.nvars; ++i) {
            int e = t.m.e[static_cast<std::size_t>(i)];
            if (e == 0) continue;
            if (printed) os << "*";
            os << R.names[static_cast<std::size_t>(i)];
            if (e > 1) os << "^" << e;
            printed = true;
        }
    }
    return os.str();
}

}  // namespace postulab
