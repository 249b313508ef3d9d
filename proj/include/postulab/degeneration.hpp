#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "postulab/postulation.hpp"

namespace postulab {

// ---------------------------------------------------------------------------
// Lambda families (the explicit degenerations to (2,s)-cone configurations)
//
// The family ring appends the parameter as one extra ordinary variable after
// the ambient coordinates; the flat limit is computed by saturating at the
// parameter and then substituting 0.
// ---------------------------------------------------------------------------

struct family_ideal_rec {
    poly_ring ring;                 // t, x, y, z (, u), l — l is the parameter
    int ambient = 3;
    int s = 0;
    std::vector<ideal> components;  // prime/power ideals of the moving pieces
    ideal total;                    // their intersection
};

namespace detail {

inline poly fam_lin(const poly_ring& R, std::initializer_list<std::pair<int, std::int64_t>> cs) {
    const prime_field F = R.field();
    std::vector<term> ts;
    for (auto [v, c] : cs) ts.push_back({monomial::var(v), F.reduce(c)});
    return make_poly(R, std::move(ts));
}

// c0*x + c1*y - lambda*t  (the moving ingredients are all of this shape)
inline poly fam_moving(const poly_ring& R, std::int64_t cx, std::int64_t cy) {
    const prime_field F = R.field();
    const int l = R.nvars - 1;
    std::vector<term> ts;
    if (cx) ts.push_back({monomial::var(1), F.reduce(cx)});
    if (cy) ts.push_back({monomial::var(2), F.reduce(cy)});
    ts.push_back({mono_mul(monomial::var(0), monomial::var(l)), F.reduce(-1)});
    return make_poly(R, std::move(ts));
}

inline ideal with_plane(const poly_ring& R, std::vector<poly> gens) {
    gens.push_back(fam_lin(R, {{3, 1}}));
    return make_ideal(R, gens);
}

// Embed an ideal of the P^3 family ring into the P^4 family ring: the scheme
// is placed inside the hyperplane {u = 0}, which realizes the subspace cuts
// (2P cap T etc.) of the higher-ambient definitions.
inline ideal embed_in_p4(const poly_ring& R4, const ideal& I) {
    std::vector<poly> gens;
    for (const auto& g : I.gens) gens.push_back(poly_insert_var(g, 4));
    gens.push_back(fam_lin(R4, {{4, 1}}));
    return make_ideal(R4, gens);
}

}  // namespace detail

// Linear forms (in x, y) of the limit cone's lines: for s = 3 the worked
// example uses y, x, x+y; the general construction uses x, y, x+y, ...,
// x+(s-3)y plus the moving line's limit x-y.
inline std::vector<std::pair<std::int64_t, std::int64_t>> limit_line_forms(int s) {
    std::vector<std::pair<std::int64_t, std::int64_t>> forms;
    if (s == 3) {
        forms = {{0, 1}, {1, 0}, {1, 1}};
    } else {
        forms.push_back({1, 0});
        forms.push_back({0, 1});
        for (int k = 1; k <= s - 3; ++k) forms.push_back({1, k});
        forms.push_back({1, -1});
    }
    return forms;
}

inline family_ideal_rec family_ideal(int s, int n = 3,
                                     std::uint32_t prime = 32003,
                                     const resource_caps& caps = default_caps()) {
    if (s < 3) throw precondition_error("family_ideal: s >= 3 required");
    if (n != 3 && n != 4) throw precondition_error("family_ideal: ambient must be 3 or 4");
    family_ideal_rec F;
    F.ambient = n;
    F.s = s;
    F.ring = make_ring(n + 2, prime);
    F.ring.names.back() = "l";
    poly_ring R = make_ring(5, prime);  // build in the P^3 family ring first
    R.names.back() = "l";
    using detail::fam_lin;
    using detail::fam_moving;
    using detail::with_plane;

    if (s == 3) {
        // the worked example: lines y, x and the moving line x+y-lt, with a
        // fixed double point at P and moving double points at Q_l, R_l
        F.components.push_back(with_plane(R, {fam_lin(R, {{2, 1}})}));
        F.components.push_back(with_plane(R, {fam_lin(R, {{1, 1}})}));
        F.components.push_back(with_plane(R, {fam_moving(R, 1, 1)}));
        F.components.push_back(ideal_power_linear(
            with_plane(R, {fam_lin(R, {{1, 1}}), fam_lin(R, {{2, 1}})}), 2));
        F.components.push_back(ideal_power_linear(
            with_plane(R, {fam_moving(R, 1, 0), fam_lin(R, {{2, 1}})}), 2));
        F.components.push_back(ideal_power_linear(
            with_plane(R, {fam_moving(R, 0, 1), fam_lin(R, {{1, 1}})}), 2));
    } else {
        // cone stage: lines x, y, x+y, ..., x+(s-3)y with D_{H,s-1}(P)
        F.components.push_back(with_plane(R, {fam_lin(R, {{1, 1}})}));
        F.components.push_back(with_plane(R, {fam_lin(R, {{2, 1}})}));
        for (int k = 1; k <= s - 3; ++k)
            F.components.push_back(with_plane(R, {fam_lin(R, {{1, 1}, {2, k}})}));
        {
            ideal P = with_plane(R, {fam_lin(R, {{1, 1}}), fam_lin(R, {{2, 1}})});
            ideal Dm = ideal_power_linear(P, s - 1);
            std::vector<poly> gens = Dm.gens;
            poly z = fam_lin(R, {{3, 1}});
            gens.push_back(poly_mul(R, z, z));
            F.components.push_back(make_ideal(R, gens));
        }
        // moving line x-y-lt with its s-1 moving double points
        F.components.push_back(with_plane(R, {fam_moving(R, 1, -1)}));
        F.components.push_back(ideal_power_linear(
            with_plane(R, {fam_lin(R, {{1, 1}}), fam_moving(R, 1, -1)}), 2));
        F.components.push_back(ideal_power_linear(
            with_plane(R, {fam_lin(R, {{2, 1}}), fam_moving(R, 1, -1)}), 2));
        for (int k = 1; k <= s - 3; ++k)
            F.components.push_back(ideal_power_linear(
                with_plane(R, {fam_lin(R, {{1, 1}, {2, k}}), fam_moving(R, 1, -1)}), 2));
    }

    if (n == 4) {
        for (auto& comp : F.components) comp = detail::embed_in_p4(F.ring, comp);
    }

    F.total = F.components.front();
    for (std::size_t i = 1; i < F.components.size(); ++i)
        F.total = ideal_intersect(F.total, F.components[i], caps);
    return F;
}

// project a lambda-ring polynomial to the ambient projective ring
inline ideal drop_lambda(const family_ideal_rec& F, const std::vector<poly>& gens) {
    const int l = F.ring.nvars - 1;
    poly_ring S = projective_ring(F.ambient, F.ring.prime);
    std::vector<poly> out;
    for (const auto& g : gens) out.push_back(poly_drop_var(g, l));
    return make_ideal(S, out);
}

// saturate at the parameter, then set it to 0: the flat limit of the family
inline ideal flat_limit(const family_ideal_rec& F,
                        const resource_caps& caps = default_caps()) {
    const poly_ring& R = F.ring;
    const int l = R.nvars - 1;
    poly pl = make_poly(R, {{monomial::var(l), 1}});
    ideal sat = saturate(F.total, pl, caps);
    std::vector<poly> at0;
    for (const auto& g : sat.gens) {
        poly r = poly_subst_const(R, g, l, 0);
        if (!r.is_zero()) at0.push_back(r);
    }
    return drop_lambda(F, at0);
}

// ideal of the fiber at lambda = c (intersection of specialized components)
inline ideal family_fiber(const family_ideal_rec& F, std::uint32_t c,
                          const resource_caps& caps = default_caps()) {
    const poly_ring& R = F.ring;
    const int l = R.nvars - 1;
    std::optional<ideal> acc;
    for (const auto& comp : F.components) {
        std::vector<poly> gens;
        for (const auto& g : comp.gens) {
            poly r = poly_subst_const(R, g, l, c);
            if (!r.is_zero()) gens.push_back(r);
        }
        ideal spec = drop_lambda(F, gens);
        acc = acc ? ideal_intersect(*acc, spec, caps) : spec;
    }
    return *acc;
}

// reference (2,s)-cone configuration ideal built directly from components
inline ideal cone_reference_ideal(int s, int n, std::uint32_t prime,
                                  const resource_caps& caps = default_caps()) {
    poly_ring R = projective_ring(3, prime);
    using detail::fam_lin;
    poly z = fam_lin(R, {{3, 1}});
    std::optional<ideal> acc;
    for (auto [cx, cy] : limit_line_forms(s)) {
        ideal L = make_ideal(R, {fam_lin(R, {{1, cx}, {2, cy}}), z});
        acc = acc ? ideal_intersect(*acc, L, caps) : L;
    }
    ideal P = make_ideal(R, {fam_lin(R, {{1, 1}}), fam_lin(R, {{2, 1}}), z});
    ideal Ps = ideal_power_linear(P, s);
    std::vector<poly> gens = Ps.gens;
    gens.push_back(poly_mul(R, z, z));
    ideal cone = ideal_intersect(*acc, make_ideal(R, gens), caps);
    if (n == 4) {
        poly_ring R4 = projective_ring(4, prime);
        std::vector<poly> emb;
        for (const auto& g : cone.gens) emb.push_back(poly_insert_var(g, 4));
        emb.push_back(make_poly(R4, {{monomial::var(4), 1}}));
        return make_ideal(R4, emb);
    }
    return cone;
}

// ---------------------------------------------------------------------------
// verify_cone_limit
// ---------------------------------------------------------------------------

struct cone_limit_report {
    int s = 0;
    int ambient = 3;
    std::uint32_t prime = 0;
    bool limit_equals_cone = false;
    std::optional<bool> residual_identity;  // P^3 only
    std::optional<bool> trace_identity;     // P^3 only
    bool hilbert_witness = false;
    bool fiber_constancy = false;
    std::string verdict;  // verified | refuted
};

inline nlohmann::json to_json(const cone_limit_report& r) {
    nlohmann::json j;
    j["s"] = r.s;
    j["ambient"] = r.ambient;
    j["prime"] = r.prime;
    j["limit_equals_cone"] = r.limit_equals_cone;
    if (r.residual_identity) j["residual_identity"] = *r.residual_identity;
    else j["residual_identity"] = nullptr;
    if (r.trace_identity) j["trace_identity"] = *r.trace_identity;
    else j["trace_identity"] = nullptr;
    j["hilbert_witness"] = r.hilbert_witness;
    j["fiber_constancy"] = r.fiber_constancy;
    j["verdict"] = r.verdict;
    return j;
}

inline cone_limit_report verify_cone_limit(int s, int n = 3,
                                           std::uint32_t prime = 32003,
                                           const resource_caps& caps = default_caps()) {
    cone_limit_report rep;
    rep.s = s;
    rep.ambient = n;
    rep.prime = prime;

    family_ideal_rec F = family_ideal(s, n, prime, caps);
    ideal limit = flat_limit(F, caps);
    ideal cone = cone_reference_ideal(s, n, prime, caps);
    rep.limit_equals_cone = ideal_equal(limit, cone);

    poly_ring R = limit.ring;
    using detail::fam_lin;
    if (n == 3) {
        // residual: (x,y,z)^{s-1} + (z)
        poly z = fam_lin(R, {{3, 1}});
        ideal res = ideal_quotient_poly(limit, z, caps);
        ideal P = make_ideal(R, {fam_lin(R, {{1, 1}}), fam_lin(R, {{2, 1}}), z});
        ideal rhs = ideal_sum(ideal_power_linear(P, s - 1), make_ideal(R, {z}));
        rep.residual_identity = ideal_equal(res, rhs);
        // trace: (product of the line forms) + (z)
        poly prod = make_poly(R, {{monomial::one(), 1}});
        for (auto [cx, cy] : limit_line_forms(s))
            prod = poly_mul(R, prod, fam_lin(R, {{1, cx}, {2, cy}}));
        ideal tr = ideal_sum(limit, make_ideal(R, {z}));
        ideal trhs = make_ideal(R, {prod, z});
        rep.trace_identity = ideal_equal(tr, trhs);
    }

    // flatness witnesses: Hilbert function of the limit agrees with s disjoint
    // lines in a degree window, and fiber slice dimensions are constant
    rep.hilbert_witness = true;
    for (int d = s; d <= s + 3; ++d) {
        if (quotient_hilbert(limit, d, caps) != (std::int64_t)s * (d + 1))
            rep.hilbert_witness = false;
    }
    rep.fiber_constancy = true;
    {
        generic_source rng(20240901ull + static_cast<std::uint64_t>(s), prime);
        std::vector<ideal> fibers;
        for (int k = 0; k < 5; ++k)
            fibers.push_back(family_fiber(F, rng.nonzero_residue(), caps));
        for (int d = 1; d <= 8; ++d) {
            int ref = hilbert_h0(fibers[0], d, caps);
            for (std::size_t k = 1; k < fibers.size(); ++k)
                if (hilbert_h0(fibers[k], d, caps) != ref) rep.fiber_constancy = false;
            // semicontinuity: the special fiber can only have more sections
            if (hilbert_h0(limit, d, caps) < ref) rep.fiber_constancy = false;
        }
    }

    bool ok = rep.limit_equals_cone && rep.hilbert_witness && rep.fiber_constancy &&
              (!rep.residual_identity || *rep.residual_identity) &&
              (!rep.trace_identity || *rep.trace_identity);
    rep.verdict = ok ? "verified" : "refuted";
    return rep;
}

}  // namespace postulab
