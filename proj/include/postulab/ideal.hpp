#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <utility>
#include <vector>

#include "postulab/linalg.hpp"
#include "postulab/polynomial.hpp"

namespace postulab {

// Homogeneous ideal given by a generator list. Equality questions always go
// through the reduced Groebner basis, never the raw generators.
struct ideal {
    poly_ring ring;
    std::vector<poly> gens;
};

inline ideal make_ideal(const poly_ring& R, std::vector<poly> gens) {
    ideal I;
    I.ring = R;
    for (auto& g : gens)
        if (!g.is_zero()) I.gens.push_back(std::move(g));
    return I;
}

// ---------------------------------------------------------------------------
// Normal form and Buchberger
// ---------------------------------------------------------------------------

inline poly normal_form(const poly_ring& R, const poly& f,
                        const std::vector<poly>& basis) {
    const prime_field F = R.field();
    poly h = f;
    poly r;
    while (!h.is_zero()) {
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.is_zero()) continue;
            if (mono_divides(g.lm(), h.lm())) {
                monomial m = mono_div(h.lm(), g.lm());
                std::uint32_t c = F.div(h.lc(), g.lc());
                h = poly_sub(R, h, poly_term_mul(R, g, m, c));
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            r.terms.push_back(h.terms.front());
            h.terms.erase(h.terms.begin());
        }
    }
    return r;  // terms were emitted in decreasing order
}

inline poly s_poly(const poly_ring& R, const poly& f, const poly& g) {
    const prime_field F = R.field();
    monomial L = mono_lcm(f.lm(), g.lm());
    poly a = poly_term_mul(R, f, mono_div(L, f.lm()), F.inv(f.lc()));
    poly b = poly_term_mul(R, g, mono_div(L, g.lm()), F.inv(g.lc()));
    return poly_sub(R, a, b);
}

// Reduced Groebner basis: monic, autoreduced, sorted by decreasing leading
// monomial. The output is the unique reduced basis for the ideal and order.
inline std::vector<poly> groebner(const poly_ring& R, const std::vector<poly>& gens,
                                  const resource_caps& caps = default_caps()) {
    std::vector<poly> basis;
    for (const auto& g : gens) {
        if (!g.is_zero()) basis.push_back(poly_monic(R, g));
    }
    if (basis.empty()) return {};

    struct pair_rec {
        std::size_t i, j;
        monomial lcm;
    };
    auto lcm_less = [&](const pair_rec& a, const pair_rec& b) {
        if (a.lcm.deg != b.lcm.deg) return a.lcm.deg < b.lcm.deg;
        return R.mono_less(a.lcm, b.lcm);
    };
    std::vector<pair_rec> pairs;
    auto push_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (mono_coprime(basis[i].lm(), basis[j].lm())) continue;  // Buchberger 1
            pairs.push_back({i, j, mono_lcm(basis[i].lm(), basis[j].lm())});
        }
    };
    for (std::size_t j = 0; j < basis.size(); ++j) push_pairs(j);

    while (!pairs.empty()) {
        auto it = std::min_element(pairs.begin(), pairs.end(), lcm_less);
        pair_rec pr = *it;
        *it = pairs.back();
        pairs.pop_back();
        // chain criterion: a third element dividing the lcm strictly
        bool skip = false;
        for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (mono_divides(basis[k].lm(), pr.lcm) &&
                mono_lcm(basis[pr.i].lm(), basis[k].lm()) != pr.lcm &&
                mono_lcm(basis[pr.j].lm(), basis[k].lm()) != pr.lcm)
                skip = true;
        }
        if (skip) continue;
        poly s = s_poly(R, basis[pr.i], basis[pr.j]);
        poly r = normal_form(R, s, basis);
        if (r.is_zero()) continue;
        basis.push_back(poly_monic(R, r));
        if (basis.size() > caps.max_basis)
            throw resource_error("groebner: basis size cap exceeded");
        push_pairs(basis.size() - 1);
    }

    // minimalize: drop elements whose lead is divisible by another lead
    std::vector<poly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            if (mono_divides(basis[j].lm(), basis[i].lm())) {
                if (basis[j].lm() == basis[i].lm() && j > i) continue;
                redundant = true;
            }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    // tail-reduce each element against the others
    std::vector<poly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<poly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        poly r = normal_form(R, minimal[i], others);
        if (!r.is_zero()) reduced.push_back(poly_monic(R, r));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const poly& a, const poly& b) {
        return R.mono_greater(a.lm(), b.lm());
    });
    return reduced;
}

inline std::vector<poly> groebner(const ideal& I,
                                  const resource_caps& caps = default_caps()) {
    return groebner(I.ring, I.gens, caps);
}

inline bool gb_contains(const poly_ring& R, const std::vector<poly>& gb,
                        const poly& f) {
    return normal_form(R, f, gb).is_zero();
}

inline bool ideal_contains(const ideal& I, const poly& f) {
    return gb_contains(I.ring, groebner(I), f);
}

inline bool ideal_equal(const ideal& I, const ideal& J) {
    if (!I.ring.same_as(J.ring)) return false;
    return groebner(I) == groebner(J);
}

inline bool ideal_is_unit(const ideal& I) {
    auto gb = groebner(I);
    return gb.size() == 1 && gb[0].lm().is_one();
}

// ---------------------------------------------------------------------------
// Intersection, quotient, saturation (elimination with one auxiliary variable)
// ---------------------------------------------------------------------------

inline poly_ring extend_ring_aux(const poly_ring& R) {
    if (R.nvars + 1 > kMaxVars)
        throw resource_error("extend_ring_aux: variable capacity exhausted");
    poly_ring E = R;
    E.nvars = R.nvars + 1;
    E.elim = 1;  // block order eliminating the auxiliary last variable
    E.names.push_back("#w");
    return E;
}

inline ideal ideal_intersect(const ideal& I, const ideal& J,
                             const resource_caps& caps = default_caps()) {
    if (!I.ring.same_as(J.ring))
        throw precondition_error("ideal_intersect: ring mismatch");
    if (I.gens.empty()) return I;  // zero ideal
    if (J.gens.empty()) return J;
    const poly_ring& R = I.ring;
    poly_ring E = extend_ring_aux(R);
    const int w = R.nvars;
    poly pw = make_poly(E, {{monomial::var(w), 1}});
    poly one_minus_w = make_poly(E, {{monomial::one(), 1}, {monomial::var(w), E.prime - 1}});
    std::vector<poly> gens;
    for (const auto& f : I.gens) gens.push_back(poly_mul(E, pw, f));
    for (const auto& g : J.gens) gens.push_back(poly_mul(E, one_minus_w, g));
    auto gb = groebner(E, gens, caps);
    std::vector<poly> kept;
    for (const auto& g : gb) {
        bool has_w = false;
        for (const auto& t : g.terms)
            if (t.m.e[static_cast<std::size_t>(w)] != 0) has_w = true;
        if (!has_w) kept.push_back(g);
    }
    return make_ideal(R, kept);
}

// (I : f) for a single nonzero polynomial f
inline ideal ideal_quotient_poly(const ideal& I, const poly& f,
                                 const resource_caps& caps = default_caps()) {
    if (f.is_zero()) throw precondition_error("ideal_quotient: zero divisor polynomial");
    if (I.gens.empty()) return I;
    ideal F = make_ideal(I.ring, {f});
    ideal meet = ideal_intersect(I, F, caps);
    std::vector<poly> out;
    for (const auto& g : meet.gens) out.push_back(poly_divexact(I.ring, g, f));
    return make_ideal(I.ring, out);
}

inline ideal ideal_quotient(const ideal& I, const ideal& J,
                            const resource_caps& caps = default_caps()) {
    if (!I.ring.same_as(J.ring))
        throw precondition_error("ideal_quotient: ring mismatch");
    bool first = true;
    ideal result;
    for (const auto& g : J.gens) {
        if (g.is_zero()) continue;
        ideal q = ideal_quotient_poly(I, g, caps);
        result = first ? q : ideal_intersect(result, q, caps);
        first = false;
    }
    if (first) {
        // J = (0): quotient is the unit ideal
        return make_ideal(I.ring, {make_poly(I.ring, {{monomial::one(), 1}})});
    }
    return result;
}

// (I : f^inf) by iterating the quotient until the basis stabilizes.
inline ideal saturate(const ideal& I, const poly& f,
                      const resource_caps& caps = default_caps()) {
    if (f.is_zero()) throw precondition_error("saturate: zero polynomial");
    ideal cur = I;
    auto cur_gb = groebner(cur, caps);
    for (;;) {
        ideal next = ideal_quotient_poly(make_ideal(cur.ring, cur_gb), f, caps);
        auto next_gb = groebner(next, caps);
        if (next_gb == cur_gb) return make_ideal(I.ring, cur_gb);
        cur_gb = std::move(next_gb);
    }
}

inline ideal ideal_sum(const ideal& I, const ideal& J) {
    if (!I.ring.same_as(J.ring)) throw precondition_error("ideal_sum: ring mismatch");
    std::vector<poly> gens = I.gens;
    gens.insert(gens.end(), J.gens.begin(), J.gens.end());
    return make_ideal(I.ring, gens);
}

// Saturation with respect to the irrelevant maximal ideal, computed as the
// intersection of the saturations at each variable.
inline ideal saturate_irrelevant(const ideal& I,
                                 const resource_caps& caps = default_caps()) {
    bool first = true;
    ideal result;
    for (int v = 0; v < I.ring.nvars; ++v) {
        poly xv = make_poly(I.ring, {{monomial::var(v), 1}});
        ideal s = saturate(I, xv, caps);
        result = first ? s : ideal_intersect(result, s, caps);
        first = false;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Degree slices
// ---------------------------------------------------------------------------

// Column index for the degree-d slice: monomials sorted decreasing in the
// ring order, so echelon bases are deterministic.
struct slice_frame {
    int degree = 0;
    std::vector<monomial> cols;

    std::size_t index_of(const poly_ring& R, const monomial& m) const {
        auto it = std::lower_bound(cols.begin(), cols.end(), m,
                                   [&](const monomial& a, const monomial& b) {
                                       return R.mono_greater(a, b);
                                   });
        if (it == cols.end() || !(*it == m))
            throw internal_error("slice_frame: monomial not in frame");
        return static_cast<std::size_t>(it - cols.begin());
    }
};

inline slice_frame make_slice_frame(const poly_ring& R, int d) {
    slice_frame fr;
    fr.degree = d;
    fr.cols = monomials_of_degree(R.nvars, d);
    std::sort(fr.cols.begin(), fr.cols.end(),
              [&](const monomial& a, const monomial& b) { return R.mono_greater(a, b); });
    return fr;
}

inline std::vector<std::uint32_t> poly_to_row(const poly_ring& R, const slice_frame& fr,
                                              const poly& f) {
    std::vector<std::uint32_t> row(fr.cols.size(), 0);
    for (const auto& t : f.terms) row[fr.index_of(R, t.m)] = t.c;
    return row;
}

inline poly row_to_poly(const poly_ring& R, const slice_frame& fr,
                        const std::vector<std::uint32_t>& row) {
    std::vector<term> ts;
    for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j]) ts.push_back({fr.cols[j], row[j]});
    return make_poly(R, std::move(ts));
}

// Rows spanning the degree-d piece of the ideal generated by `gens`
// (all products monomial * generator of total degree d). Exact for the
// saturated slice whenever the generators generate in degrees <= d.
inline fp_matrix slice_span(const poly_ring& R, const slice_frame& fr,
                            const std::vector<poly>& gens,
                            const resource_caps& caps = default_caps()) {
    fp_matrix M;
    M.ncols = fr.cols.size();
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        if (!poly_is_homogeneous(g))
            throw precondition_error("slice_span: generators must be homogeneous");
        int dg = g.degree();
        if (dg > fr.degree) continue;
        for (const auto& m : monomials_of_degree(R.nvars, fr.degree - dg)) {
            M.add_row(poly_to_row(R, fr, poly_term_mul(R, g, m, 1)));
            if (M.rows.size() > caps.max_slice_rows)
                throw resource_error("slice_span: row cap exceeded");
        }
    }
    return M;
}

// Echelonized basis of the degree-d slice of <gens>.
inline std::vector<std::vector<std::uint32_t>> slice_basis(
    const poly_ring& R, const slice_frame& fr, const std::vector<poly>& gens,
    const resource_caps& caps = default_caps()) {
    fp_matrix M = slice_span(R, fr, gens, caps);
    echelonize(R.field(), M);
    return std::move(M.rows);
}

// dim_k I_d for the ideal generated by `gens`.
inline int slice_dim(const poly_ring& R, const std::vector<poly>& gens, int d,
                     const resource_caps& caps = default_caps()) {
    if (d < 0) throw precondition_error("slice_dim: negative degree");
    slice_frame fr = make_slice_frame(R, d);
    fp_matrix M = slice_span(R, fr, gens, caps);
    return static_cast<int>(rank(R.field(), std::move(M)));
}

inline int hilbert_h0(const ideal& I, int d,
                      const resource_caps& caps = default_caps()) {
    return slice_dim(I.ring, I.gens, d, caps);
}

// Hilbert function of the quotient ring R/I in degree d.
inline std::int64_t quotient_hilbert(const ideal& I, int d,
                                     const resource_caps& caps = default_caps()) {
    std::int64_t full = binomial(I.ring.nvars - 1 + d, I.ring.nvars - 1);
    return full - hilbert_h0(I, d, caps);
}

}  // namespace postulab
