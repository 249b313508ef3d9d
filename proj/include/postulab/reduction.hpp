#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "postulab/degeneration.hpp"
#include "postulab/postulation.hpp"

namespace postulab {

// ---------------------------------------------------------------------------
// Castelnuovo's inequality as a checked inference rule:
//   h0(I_X(d)) <= h0(I_{Res_H X}(d-1)) + h0(H, I_{Tr_H X}(d))
// ---------------------------------------------------------------------------

struct castelnuovo_result {
    std::int64_t h0_whole = 0;
    std::int64_t h0_residual = 0;
    std::int64_t h0_trace = 0;
    bool holds = false;
};

inline castelnuovo_result check_castelnuovo(const scheme_spec& X, const hyperplane& H,
                                            int d,
                                            const resource_caps& caps = default_caps()) {
    if (d < 1) throw precondition_error("check_castelnuovo: d >= 1 required");
    castelnuovo_result r;
    ideal I = union_ideal(X, caps);
    if (I.gens.empty()) {  // empty scheme: every side is the full space
        r.h0_whole = binomial(d + X.ambient, X.ambient);
        r.h0_residual = binomial(d - 1 + X.ambient, X.ambient);
        r.h0_trace = binomial(d + X.ambient - 1, X.ambient - 1);
    } else {
        r.h0_whole = hilbert_h0(I, d, caps);
        r.h0_residual = hilbert_h0(residual(I, H, caps), d - 1, caps);
        r.h0_trace = hilbert_h0(saturate_irrelevant(trace(I, H), caps), d, caps);
    }
    r.holds = r.h0_whole <= r.h0_residual + r.h0_trace;
    return r;
}

// ---------------------------------------------------------------------------
// Certificate plumbing
// ---------------------------------------------------------------------------

namespace detail {

constexpr int kResEmpty = -1;   // component lies in H: residual must be empty
constexpr int kSkipCheck = -2;

// How one component of a specialized scheme maps into the residual / trace
// child schemes (indices into the child component lists).
struct structure_map {
    int res = kSkipCheck;
    int tr = kSkipCheck;
    int tr_in = -1;  // trace is only required to lie inside this trace component
};

// Accumulates per-node checks. A value strictly below its expectation (or a
// failed structural match) contradicts semicontinuity / the construction and
// refutes the run; a value above is a genericity miss and retryable.
struct check_list {
    nlohmann::json items = nlohmann::json::array();
    bool ok = true;
    bool refuted = false;

    void count(const std::string& name, std::int64_t expected, std::int64_t actual) {
        bool good = expected == actual;
        items.push_back({{"check", name}, {"expected", expected}, {"actual", actual}, {"ok", good}});
        ok = ok && good;
        if (actual < expected) refuted = true;
    }
    void hard(const std::string& name, bool good) {
        items.push_back({{"check", name}, {"ok", good}});
        ok = ok && good;
        if (!good) refuted = true;
    }
};

struct replay_result {
    nlohmann::json node;
    bool ok = true;
    bool refuted = false;

    void absorb(const check_list& cl) {
        ok = ok && cl.ok;
        refuted = refuted || cl.refuted;
    }
    void absorb(const replay_result& child) {
        ok = ok && child.ok;
        refuted = refuted || child.refuted;
    }
};

// -- component factories ----------------------------------------------------

inline scheme_component comp_point(const proj_point& p) {
    scheme_component c;
    c.kind = component_kind::simple_point;
    c.support = p;
    return c;
}

inline scheme_component comp_fat(const proj_point& p, int m) {
    scheme_component c;
    c.kind = component_kind::fat_point;
    c.support = p;
    c.mult = m;
    return c;
}

inline scheme_component comp_planar_fat(const proj_point& p, const hyperplane& h, int m) {
    scheme_component c;
    c.kind = component_kind::planar_fat_point;
    c.support = p;
    c.plane = h;
    c.mult = m;
    return c;
}

inline scheme_component comp_line(const proj_point& a, const proj_point& b) {
    scheme_component c;
    c.kind = component_kind::line;
    c.points = {a, b};
    return c;
}

inline scheme_component comp_conic(const proj_point& node, const proj_point& a,
                                   const proj_point& b) {
    scheme_component c;
    c.kind = component_kind::degenerate_conic;
    c.support = node;
    c.points = {a, b};
    return c;
}

inline scheme_component comp_sundial(const proj_point& node, const proj_point& a,
                                     const proj_point& b) {
    scheme_component c;
    c.kind = component_kind::sundial;
    c.support = node;
    c.points = {a, b};
    return c;
}

inline scheme_component comp_cone3(const proj_point& vertex, const hyperplane& h,
                                   const std::vector<proj_point>& dirs) {
    scheme_component c;
    c.kind = component_kind::two_s_cone;
    c.support = vertex;
    c.plane = h;
    c.count = static_cast<int>(dirs.size());
    c.points = dirs;
    return c;
}

inline scheme_component comp_cone2(const proj_point& vertex,
                                   const std::vector<proj_point>& dirs) {
    scheme_component c;
    c.kind = component_kind::cone_config;
    c.support = vertex;
    c.count = static_cast<int>(dirs.size());
    c.points = dirs;
    return c;
}

inline scheme_component comp_dot(const proj_point& p, const proj_point& dir) {
    scheme_component c;
    c.kind = component_kind::two_dot;
    c.support = p;
    c.direction = dir;
    return c;
}

inline scheme_component comp_collinear(std::vector<proj_point> pts) {
    scheme_component c;
    c.kind = component_kind::collinear_points;
    c.points = std::move(pts);
    return c;
}

// -- spec helpers -----------------------------------------------------------

inline scheme_spec spec_like(const scheme_spec& X, int ambient) {
    scheme_spec Y;
    Y.ambient = ambient;
    Y.prime = X.prime;
    Y.seed = X.seed;
    return Y;
}

inline scheme_spec spec_without(const scheme_spec& X, int idx) {
    scheme_spec Y = X;
    Y.components.erase(Y.components.begin() + idx);
    return Y;
}

inline std::set<std::vector<std::uint32_t>> collect_used(const scheme_spec& X) {
    std::set<std::vector<std::uint32_t>> used;
    for (const auto& c : X.components) {
        if (!c.support.empty()) used.insert(c.support.c);
        if (!c.direction.empty()) used.insert(c.direction.c);
        for (const auto& p : c.points) used.insert(p.c);
    }
    return used;
}

// -- geometry helpers (H is always the coordinate plane {z = 0}) ------------

inline proj_point drop_last(const proj_point& p) {
    if (p.c.back() != 0)
        throw internal_error("drop_last: point does not lie on the coordinate plane");
    proj_point q;
    q.c.assign(p.c.begin(), p.c.end() - 1);
    return q;
}

// intersection of the line ab with {last coordinate = 0}
inline proj_point line_meets_plane(const prime_field& F, const proj_point& a,
                                   const proj_point& b) {
    std::uint32_t az = a.c.back(), bz = b.c.back();
    std::vector<std::uint32_t> v(a.c.size());
    bool nz = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = F.sub(F.mul(bz, a.c[i]), F.mul(az, b.c[i]));
        nz = nz || v[i];
    }
    if (!nz) throw precondition_error("line_meets_plane: line lies in the plane");
    return make_point(F, std::move(v));
}

// the hyperplane (line) of P^2 through two points
inline hyperplane line_hyperplane(const poly_ring& R2, const proj_point& a,
                                  const proj_point& b) {
    auto forms = linear_forms_through(R2, {a, b});
    if (forms.size() != 1) throw precondition_error("line_hyperplane: degenerate point pair");
    std::vector<std::uint32_t> c(static_cast<std::size_t>(R2.nvars), 0);
    for (const auto& t : forms[0].terms)
        for (int i = 0; i < R2.nvars; ++i)
            if (t.m.e[static_cast<std::size_t>(i)]) c[static_cast<std::size_t>(i)] = t.c;
    return make_hyperplane(R2.field(), std::move(c));
}

// k points of H spanning k distinct lines through the vertex
inline std::vector<proj_point> fresh_cone_dirs(generic_source& rng, const hyperplane& h,
                                               const proj_point& vertex, int k,
                                               std::set<std::vector<std::uint32_t>>& used) {
    const prime_field F(rng.prime());
    std::vector<proj_point> dirs;
    while (static_cast<int>(dirs.size()) < k) {
        proj_point q = fresh_point_on(rng, h, used);
        if (!points_independent(F, {vertex, q})) continue;
        bool distinct = true;
        for (const auto& q2 : dirs)
            if (!points_independent(F, {vertex, q, q2})) {
                distinct = false;
                break;
            }
        if (distinct) dirs.push_back(q);
    }
    return dirs;
}

// GB equality as schemes (compare saturations when the raw ideals differ)
inline bool ideals_same_scheme(const ideal& A, const ideal& B, const resource_caps& caps) {
    if (ideal_equal(A, B)) return true;
    return ideal_equal(saturate_irrelevant(A, caps), saturate_irrelevant(B, caps));
}

// Componentwise structural verification: residual commutes with the union
// (colon distributes over intersections), and the trace child is exactly the
// union of the component traces, so each component can be matched on its own.
inline nlohmann::json structural_checks(const scheme_spec& parent, const hyperplane& h,
                                        const scheme_spec* res_child,
                                        const scheme_spec* tr_child,
                                        const std::vector<structure_map>& maps,
                                        check_list& cl, const resource_caps& caps) {
    poly_ring R = parent.ring();
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < parent.components.size(); ++i) {
        const structure_map& m = maps[i];
        nlohmann::json e;
        e["component"] = i;
        e["kind"] = kind_name(parent.components[i].kind);
        ideal I = build_component(R, parent.components[i], caps);
        if (res_child && m.res != kSkipCheck) {
            ideal res = residual(I, h, caps);
            bool good;
            if (m.res == kResEmpty) {
                good = ideal_is_unit(res);
            } else {
                ideal child = build_component(R, res_child->components[static_cast<std::size_t>(m.res)], caps);
                good = ideals_same_scheme(res, child, caps);
            }
            e["residual_match"] = good;
            cl.hard("residual structure", good);
        }
        if (tr_child && (m.tr != kSkipCheck || m.tr_in >= 0)) {
            poly_ring R2 = tr_child->ring();
            ideal tr = trace_coordinate(I);
            if (m.tr >= 0) {
                ideal child = build_component(R2, tr_child->components[static_cast<std::size_t>(m.tr)], caps);
                bool good = ideals_same_scheme(tr, child, caps);
                e["trace_match"] = good;
                cl.hard("trace structure", good);
            } else if (m.tr_in >= 0) {
                // trace scheme contained in the named trace component
                ideal big = build_component(R2, tr_child->components[static_cast<std::size_t>(m.tr_in)], caps);
                auto gb = groebner(tr, caps);
                bool good = true;
                for (const auto& g : big.gens)
                    good = good && gb_contains(R2, gb, g);
                e["trace_contained"] = good;
                cl.hard("trace containment", good);
            }
        }
        arr.push_back(std::move(e));
    }
    return arr;
}

// length of the schematic intersection with a line of P^2
inline std::int64_t trace_degree(const ideal& I, const hyperplane& h, int probe,
                                 const resource_caps& caps) {
    ideal tr = saturate_irrelevant(trace(I, h), caps);
    return quotient_hilbert(tr, probe, caps);
}

// h0 triple at a node: specialized scheme, residual child at d-1, trace child
// at d. The trace child is contained in the schematic trace, so the chain
// h0(X~) <= h0(Res) + h0(Tr) <= h0(Res) + h0(child) is still conclusive.
inline void node_castelnuovo(nlohmann::json& node, const scheme_spec& Xt, int d,
                             const scheme_spec& resc, const scheme_spec& trc,
                             check_list& cl, const verify_options& opt) {
    std::int64_t w = actual_h0(Xt, d, opt.backend, opt.caps);
    std::int64_t a = actual_h0(resc, d - 1, opt.backend, opt.caps);
    std::int64_t b = actual_h0(trc, d, opt.backend, opt.caps);
    node["h0"] = {{"whole", w}, {"residual", a}, {"trace", b}};
    cl.hard("castelnuovo", w <= a + b);
    cl.count("h0(specialized scheme)", 0, w);
    cl.count("h0(residual child)", 0, a);
    cl.count("h0(trace child)", 0, b);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// specialize_Hd: the section 4.2 scheme X~ with residual and trace children
// ---------------------------------------------------------------------------

struct hd_node {
    scheme_spec Xt;         // specialized scheme in P^3
    scheme_spec res_child;  // the H'_{d-1} scheme (fat point, lines, conics)
    scheme_spec tr_child;   // the H''_d scheme in P^2
    std::vector<detail::structure_map> smap;
};

inline hd_node specialize_Hd(int d, std::uint64_t seed, std::uint32_t prime) {
    if (d < 3) throw precondition_error("specialize_Hd: d >= 3 required");
    statement_params p = parameters(d);
    const int m = static_cast<int>(p.m), s = static_cast<int>(p.s),
              t = static_cast<int>(p.t), q = static_cast<int>(p.q);
    generic_source rng(seed, prime);
    const prime_field F(prime);
    hyperplane H = coordinate_hyperplane(3);
    std::set<std::vector<std::uint32_t>> used;

    hd_node nd;
    nd.Xt.ambient = 3;
    nd.Xt.prime = prime;
    nd.Xt.seed = seed;
    nd.res_child = detail::spec_like(nd.Xt, 3);
    nd.tr_child = detail::spec_like(nd.Xt, 2);

    // (2,m)-cone supported in H
    proj_point P = detail::fresh_point_on(rng, H, used);
    auto dirs = detail::fresh_cone_dirs(rng, H, P, m, used);
    nd.Xt.components.push_back(detail::comp_cone3(P, H, dirs));

    // s sundials, singular points specialized into H
    std::vector<scheme_component> sundials;
    for (int i = 0; i < s; ++i) {
        proj_point Q = detail::fresh_point_on(rng, H, used);
        proj_point A = detail::fresh_point_off(rng, H, 4, used);
        proj_point B = detail::fresh_point_off(rng, H, 4, used);
        if (!points_independent(F, {Q, A, B})) {
            --i;
            continue;
        }
        nd.Xt.components.push_back(detail::comp_sundial(Q, A, B));
    }

    // t generic lines outside H
    for (int j = 0; j < t; ++j) nd.Xt.components.push_back(random_line(rng, 4, H));

    // q collinear points, the line M specialized into H
    if (q > 0) {
        proj_point A = detail::fresh_point_on(rng, H, used);
        proj_point B = detail::fresh_point_on(rng, H, used);
        std::set<std::vector<std::uint32_t>> on_m;
        std::vector<proj_point> pts;
        for (int i = 0; i < q; ++i)
            pts.push_back(detail::fresh_point_on_line(rng, A, B, on_m));
        nd.Xt.components.push_back(detail::comp_collinear(std::move(pts)));
    }

    // residual child = H'_{d-1} scheme: (m-1)P|_H + t lines + s conics
    nd.res_child.components.push_back(detail::comp_planar_fat(P, H, m - 1));
    for (int j = 0; j < t; ++j)
        nd.res_child.components.push_back(nd.Xt.components[static_cast<std::size_t>(1 + s + j)]);
    for (int i = 0; i < s; ++i) {
        const auto& sd = nd.Xt.components[static_cast<std::size_t>(1 + i)];
        nd.res_child.components.push_back(detail::comp_conic(sd.support, sd.points[0], sd.points[1]));
    }

    // trace child = H''_d scheme: cone + s double points + t simple + q collinear
    std::vector<proj_point> dirs2;
    for (const auto& u : dirs) dirs2.push_back(detail::drop_last(u));
    nd.tr_child.components.push_back(detail::comp_cone2(detail::drop_last(P), dirs2));
    for (int i = 0; i < s; ++i)
        nd.tr_child.components.push_back(
            detail::comp_fat(detail::drop_last(nd.Xt.components[static_cast<std::size_t>(1 + i)].support), 2));
    for (int j = 0; j < t; ++j) {
        const auto& L = nd.Xt.components[static_cast<std::size_t>(1 + s + j)];
        nd.tr_child.components.push_back(detail::comp_point(
            detail::drop_last(detail::line_meets_plane(F, L.points[0], L.points[1]))));
    }
    if (q > 0) {
        std::vector<proj_point> pts2;
        for (const auto& pt : nd.Xt.components.back().points)
            pts2.push_back(detail::drop_last(pt));
        nd.tr_child.components.push_back(detail::comp_collinear(std::move(pts2)));
    }

    // component correspondence
    nd.smap.push_back({0, 0, -1});  // cone -> fat point | cone configuration
    for (int i = 0; i < s; ++i) nd.smap.push_back({1 + t + i, 1 + i, -1});
    for (int j = 0; j < t; ++j) nd.smap.push_back({1 + j, 1 + s + j, -1});
    if (q > 0) nd.smap.push_back({detail::kResEmpty, 1 + s + t, -1});
    return nd;
}

// ---------------------------------------------------------------------------
// replay_Hsecond: section 6 (the P^2 statement H''_d), verified directly
// ---------------------------------------------------------------------------

inline detail::replay_result replay_Hsecond(const scheme_spec& Xpp, int d,
                                            generic_source& rng,
                                            const verify_options& opt) {
    statement_params p = parameters(d);
    const int m = static_cast<int>(p.m), s = static_cast<int>(p.s),
              t = static_cast<int>(p.t), q = static_cast<int>(p.q);
    detail::replay_result out;
    detail::check_list cl;
    out.node["statement"] = "Hsecond";
    out.node["d"] = d;
    out.node["tested_degree"] = d;
    out.node["scheme_hash"] = spec_hash(Xpp);

    std::int64_t h0X = actual_h0(Xpp, d, opt.backend, opt.caps);
    cl.count("h0(X'', d)", 0, h0X);

    // the cone configuration (component 0) is a fixed component
    scheme_spec rest = detail::spec_without(Xpp, 0);
    std::int64_t h0rest = actual_h0(rest, d - m, opt.backend, opt.caps);
    cl.count("cone fixed-component removal: h0(X''-CC, d-m)", h0X, h0rest);

    if (q == 0) {
        // d = 0,1 (mod 3): AH count for the s double points equals t
        scheme_spec dbl = detail::spec_like(Xpp, 2);
        for (int i = 0; i < s; ++i)
            dbl.components.push_back(Xpp.components[static_cast<std::size_t>(1 + i)]);
        std::int64_t expect = std::max<std::int64_t>(binomial(d - m + 2, 2) - 3 * s, 0);
        cl.count("(ddag): AH expected value equals t", p.t, expect);
        cl.hard("AH non-exceptional (s,deg) pair",
                !((s == 2 && d - m == 2) || (s == 5 && d - m == 4)));
        cl.count("h0(double points, d-m)", expect,
                 actual_h0(dbl, d - m, opt.backend, opt.caps));
        out.node["branch"] = "6.1";
    } else {
        // d = 2 (mod 3): q = m; specialize N_1..N_m into the line M
        if (q != m) throw internal_error("replay_Hsecond: q == m expected for d = 2 mod 3");
        poly_ring R2 = Xpp.ring();
        const prime_field F(Xpp.prime);
        const auto& coll = Xpp.components.back();
        hyperplane M = detail::line_hyperplane(R2, coll.points[0], coll.points[1]);
        auto used = detail::collect_used(Xpp);

        scheme_spec X0 = detail::spec_like(Xpp, 2);
        std::vector<detail::structure_map> maps;
        for (int i = 0; i < s; ++i) {  // double points, off M
            X0.components.push_back(Xpp.components[static_cast<std::size_t>(1 + i)]);
            maps.push_back({i, detail::kSkipCheck, -1});
        }
        for (int i = 0; i < m; ++i) {  // N_1..N_m specialized onto M
            X0.components.push_back(detail::comp_point(
                detail::fresh_point_on_line(rng, coll.points[0], coll.points[1], used)));
            maps.push_back({detail::kResEmpty, detail::kSkipCheck, -1});
        }
        for (int i = m; i < t; ++i) {  // remaining simple points
            X0.components.push_back(Xpp.components[static_cast<std::size_t>(1 + s + i)]);
            maps.push_back({s + i - m, detail::kSkipCheck, -1});
        }
        X0.components.push_back(coll);
        maps.push_back({detail::kResEmpty, detail::kSkipCheck, -1});
        out.node["specialized_hash"] = spec_hash(X0);

        // deg(X0 cap M) = 2m forces M to be a fixed component in degree 2m-1
        cl.count("deg(X0 cap M)", 2 * m,
                 detail::trace_degree(union_ideal(X0, opt.caps), M, 2 * m + 4, opt.caps));

        scheme_spec resM = detail::spec_like(Xpp, 2);
        for (int i = 0; i < s; ++i)
            resM.components.push_back(Xpp.components[static_cast<std::size_t>(1 + i)]);
        for (int i = m; i < t; ++i)
            resM.components.push_back(Xpp.components[static_cast<std::size_t>(1 + s + i)]);
        out.node["structure"] =
            detail::structural_checks(X0, M, &resM, nullptr, maps, cl, opt.caps);

        std::int64_t h0X0 = actual_h0(X0, 2 * m - 1, opt.backend, opt.caps);
        std::int64_t h0res = actual_h0(resM, 2 * m - 2, opt.backend, opt.caps);
        cl.count("line fixed-component removal: h0(Res_M(X0), 2m-2)", h0X0, h0res);
        cl.count("h0(Res_M(X0), 2m-2)", 0, h0res);

        scheme_spec dbl = detail::spec_like(Xpp, 2);
        for (int i = 0; i < s; ++i)
            dbl.components.push_back(Xpp.components[static_cast<std::size_t>(1 + i)]);
        cl.count("(ddag): C(m+1,2) equals t-m", p.t - p.m, binomial(m + 1, 2));
        cl.count("h0(double points, 2m-2)", binomial(m + 1, 2),
                 actual_h0(dbl, 2 * m - 2, opt.backend, opt.caps));
        cl.count("h0(X0, 2m-1)", 0, h0X0);
        out.node["branch"] = "6.2";
    }

    out.node["checks"] = cl.items;
    out.absorb(cl);
    out.node["verdict"] = out.refuted ? "refuted" : (out.ok ? "verified" : "miss");
    return out;
}

// ---------------------------------------------------------------------------
// replay_Hprime: section 5 (the statement H'_{d-1}), recursive on d
// ---------------------------------------------------------------------------

inline detail::replay_result replay_Hprime(const scheme_spec& Xp, int d,
                                           generic_source& rng,
                                           const verify_options& opt) {
    statement_params p = parameters(d);
    const int m = static_cast<int>(p.m), s = static_cast<int>(p.s),
              t = static_cast<int>(p.t);
    const prime_field F(Xp.prime);
    hyperplane H = coordinate_hyperplane(3);
    auto used = detail::collect_used(Xp);

    detail::replay_result out;
    detail::check_list cl;
    out.node["statement"] = "Hprime";
    out.node["d"] = d;
    out.node["tested_degree"] = d - 1;
    out.node["scheme_hash"] = spec_hash(Xp);

    // direct route: the inherited scheme itself already vanishes
    cl.count("h0(X', d-1) direct", 0, actual_h0(Xp, d - 1, opt.backend, opt.caps));

    // canonical X' layout: [0] fat point, [1..t] lines, [t+1..t+s] conics
    auto line_at = [&](int j) -> const scheme_component& {
        return Xp.components[static_cast<std::size_t>(1 + j)];
    };
    auto conic_at = [&](int i) -> const scheme_component& {
        return Xp.components[static_cast<std::size_t>(1 + t + i)];
    };
    auto conic_trace = [&](const scheme_component& c) {
        return detail::comp_dot(detail::drop_last(c.support),
                                detail::drop_last(detail::line_meets_plane(F, c.points[0], c.points[1])));
    };
    auto line_trace = [&](const scheme_component& c) {
        return detail::comp_point(
            detail::drop_last(detail::line_meets_plane(F, c.points[0], c.points[1])));
    };

    scheme_spec Xt = detail::spec_like(Xp, 3);
    scheme_spec resc = detail::spec_like(Xp, 3);
    scheme_spec trc = detail::spec_like(Xp, 2);
    std::vector<detail::structure_map> maps;
    std::optional<scheme_spec> recurse_on;
    int cone_tr_index = -1;  // trace component carrying the fixed cone

    if (d == 3) {
        // initial case: X' = P + L1 + L2 + L3; specialize L1 into H
        out.node["branch"] = "5.initial";
        proj_point a = detail::fresh_point_on(rng, H, used);
        proj_point b = detail::fresh_point_on(rng, H, used);
        if (!points_independent(F, {a, b}))
            throw internal_error("replay_Hprime: degenerate specialized line");
        Xt.components = {Xp.components[0], detail::comp_line(a, b), line_at(1), line_at(2)};
        resc.components = {line_at(1), line_at(2)};
        trc.components = {detail::comp_point(detail::drop_last(Xp.components[0].support)),
                          detail::comp_line(detail::drop_last(a), detail::drop_last(b)),
                          line_trace(line_at(1)), line_trace(line_at(2))};
        maps = {{detail::kResEmpty, 0, -1},
                {detail::kResEmpty, 1, -1},
                {0, 2, -1},
                {1, 3, -1}};
        cone_tr_index = 1;  // the specialized line is the fixed component
    } else if (d == 4) {
        // special case: sundial with both branch lines in H, built from L1 and
        // one branch of the conic; the other branch M2 meets H on a sundial line
        out.node["branch"] = "5.2.d4";
        const auto& C = conic_at(0);
        proj_point R = detail::fresh_point_on(rng, H, used);
        auto dirs = detail::fresh_cone_dirs(rng, H, R, 2, used);
        proj_point S = detail::fresh_point_on_line(rng, R, dirs[0], used);
        Xt.components = {Xp.components[0], detail::comp_cone3(R, H, dirs), line_at(1),
                         line_at(2), detail::comp_line(S, C.points[1])};
        resc.components = {detail::comp_point(R), line_at(1), line_at(2),
                           detail::comp_line(S, C.points[1])};
        std::vector<proj_point> dirs2 = {detail::drop_last(dirs[0]), detail::drop_last(dirs[1])};
        trc.components = {detail::comp_point(detail::drop_last(Xp.components[0].support)),
                          detail::comp_conic(detail::drop_last(R), dirs2[0], dirs2[1]),
                          line_trace(line_at(1)), line_trace(line_at(2))};
        maps = {{detail::kResEmpty, 0, -1},
                {0, 1, -1},
                {1, 2, -1},
                {2, 3, -1},
                {3, detail::kSkipCheck, 1}};
        cone_tr_index = 1;
    } else if (d % 3 == 0) {
        // 5.1: degenerate m-1 lines to a (2,m-1)-cone at R in H
        out.node["branch"] = "5.1";
        const int mm = m - 1, tp = t - (m - 1);
        statement_params pc = parameters(d - 1);
        cl.count("(ddag): residual is class-2 instance (m)", pc.m, mm);
        cl.count("(ddag): residual is class-2 instance (s)", pc.s, s);
        cl.count("(ddag): residual is class-2 instance (t)", pc.t, tp);
        proj_point R = detail::fresh_point_on(rng, H, used);
        auto dirs = detail::fresh_cone_dirs(rng, H, R, mm, used);

        Xt.components.push_back(Xp.components[0]);
        Xt.components.push_back(detail::comp_cone3(R, H, dirs));
        for (int j = m - 1; j < t; ++j) Xt.components.push_back(line_at(j));
        for (int i = 0; i < s; ++i) Xt.components.push_back(conic_at(i));

        resc.components.push_back(detail::comp_planar_fat(R, H, mm - 1));
        for (int j = m - 1; j < t; ++j) resc.components.push_back(line_at(j));
        for (int i = 0; i < s; ++i) resc.components.push_back(conic_at(i));

        std::vector<proj_point> dirs2;
        for (const auto& u : dirs) dirs2.push_back(detail::drop_last(u));
        trc.components.push_back(
            detail::comp_fat(detail::drop_last(Xp.components[0].support), m - 1));
        trc.components.push_back(detail::comp_cone2(detail::drop_last(R), dirs2));
        for (int j = m - 1; j < t; ++j) trc.components.push_back(line_trace(line_at(j)));
        for (int i = 0; i < s; ++i) trc.components.push_back(conic_trace(conic_at(i)));

        maps.push_back({detail::kResEmpty, 0, -1});
        maps.push_back({0, 1, -1});
        for (int k = 0; k < tp; ++k) maps.push_back({1 + k, 2 + k, -1});
        for (int i = 0; i < s; ++i) maps.push_back({tp + 1 + i, tp + 2 + i, -1});
        cone_tr_index = 1;
        recurse_on = resc;
    } else if (d % 3 == 1) {
        // 5.2 (d >= 7): sundial from L1,L2; (2,m)-cone from the first lines of
        // the first m conics; their second lines meet H on the cone
        out.node["branch"] = "5.2";
        if (d < 7) throw internal_error("replay_Hprime: general d=1 branch requires d >= 7");
        const int tpp = t - 2 + m, sp = 1 + (s - m);
        statement_params pc = parameters(d - 1);
        cl.count("(ddag): residual is class-0 instance (m)", pc.m, m);
        cl.count("(ddag): residual is class-0 instance (s)", pc.s, sp);
        cl.count("(ddag): residual is class-0 instance (t)", pc.t, tpp);

        proj_point Q0 = detail::fresh_point_on(rng, H, used);
        proj_point A0 = detail::fresh_point_off(rng, H, 4, used);
        proj_point B0 = detail::fresh_point_off(rng, H, 4, used);
        if (!points_independent(F, {Q0, A0, B0}))
            throw internal_error("replay_Hprime: degenerate sundial frame");
        proj_point R = detail::fresh_point_on(rng, H, used);
        auto dirs = detail::fresh_cone_dirs(rng, H, R, m, used);
        std::vector<proj_point> S(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            S[static_cast<std::size_t>(i)] = detail::fresh_point_on_line(rng, R, dirs[static_cast<std::size_t>(i)], used);

        Xt.components.push_back(Xp.components[0]);
        Xt.components.push_back(detail::comp_sundial(Q0, A0, B0));
        for (int j = 2; j < t; ++j) Xt.components.push_back(line_at(j));
        Xt.components.push_back(detail::comp_cone3(R, H, dirs));
        for (int i = 0; i < m; ++i)
            Xt.components.push_back(detail::comp_line(S[static_cast<std::size_t>(i)], conic_at(i).points[1]));
        for (int i = m; i < s; ++i) Xt.components.push_back(conic_at(i));

        resc.components.push_back(detail::comp_planar_fat(R, H, m - 1));
        for (int j = 2; j < t; ++j) resc.components.push_back(line_at(j));
        for (int i = 0; i < m; ++i)
            resc.components.push_back(detail::comp_line(S[static_cast<std::size_t>(i)], conic_at(i).points[1]));
        resc.components.push_back(detail::comp_conic(Q0, A0, B0));
        for (int i = m; i < s; ++i) resc.components.push_back(conic_at(i));

        std::vector<proj_point> dirs2;
        for (const auto& u : dirs) dirs2.push_back(detail::drop_last(u));
        trc.components.push_back(
            detail::comp_fat(detail::drop_last(Xp.components[0].support), m - 1));
        trc.components.push_back(detail::comp_fat(detail::drop_last(Q0), 2));
        for (int j = 2; j < t; ++j) trc.components.push_back(line_trace(line_at(j)));
        trc.components.push_back(detail::comp_cone2(detail::drop_last(R), dirs2));
        for (int i = m; i < s; ++i) trc.components.push_back(conic_trace(conic_at(i)));

        maps.push_back({detail::kResEmpty, 0, -1});
        maps.push_back({tpp + 1, 1, -1});
        for (int k = 0; k < t - 2; ++k) maps.push_back({1 + k, 2 + k, -1});
        maps.push_back({0, t, -1});
        for (int i = 0; i < m; ++i) maps.push_back({t - 1 + i, detail::kSkipCheck, t});
        for (int i = 0; i < s - m; ++i) maps.push_back({tpp + 2 + i, t + 1 + i, -1});
        cone_tr_index = t;
        recurse_on = resc;
    } else {
        // 5.3: degenerate m lines to a (2,m)-cone at R in H
        out.node["branch"] = "5.3";
        const int tp = t - m;
        statement_params pc = parameters(d - 1);
        cl.count("(ddag): residual is class-1 instance (m)", pc.m, m);
        cl.count("(ddag): residual is class-1 instance (s)", pc.s, s);
        cl.count("(ddag): residual is class-1 instance (t)", pc.t, tp);
        proj_point R = detail::fresh_point_on(rng, H, used);
        auto dirs = detail::fresh_cone_dirs(rng, H, R, m, used);

        Xt.components.push_back(Xp.components[0]);
        Xt.components.push_back(detail::comp_cone3(R, H, dirs));
        for (int j = m; j < t; ++j) Xt.components.push_back(line_at(j));
        for (int i = 0; i < s; ++i) Xt.components.push_back(conic_at(i));

        resc.components.push_back(detail::comp_planar_fat(R, H, m - 1));
        for (int j = m; j < t; ++j) resc.components.push_back(line_at(j));
        for (int i = 0; i < s; ++i) resc.components.push_back(conic_at(i));

        std::vector<proj_point> dirs2;
        for (const auto& u : dirs) dirs2.push_back(detail::drop_last(u));
        trc.components.push_back(
            detail::comp_fat(detail::drop_last(Xp.components[0].support), m - 1));
        trc.components.push_back(detail::comp_cone2(detail::drop_last(R), dirs2));
        for (int j = m; j < t; ++j) trc.components.push_back(line_trace(line_at(j)));
        for (int i = 0; i < s; ++i) trc.components.push_back(conic_trace(conic_at(i)));

        maps.push_back({detail::kResEmpty, 0, -1});
        maps.push_back({0, 1, -1});
        for (int k = 0; k < tp; ++k) maps.push_back({1 + k, 2 + k, -1});
        for (int i = 0; i < s; ++i) maps.push_back({tp + 1 + i, tp + 2 + i, -1});
        cone_tr_index = 1;
        recurse_on = resc;
    }

    out.node["specialized_hash"] = spec_hash(Xt);
    out.node["residual_hash"] = spec_hash(resc);
    out.node["trace_hash"] = spec_hash(trc);
    out.node["structure"] = detail::structural_checks(Xt, H, &resc, &trc, maps, cl, opt.caps);
    detail::node_castelnuovo(out.node, Xt, d - 1, resc, trc, cl, opt);

    // trace side: remove the fixed component and check the section 5 counts
    std::int64_t h0tr = actual_h0(trc, d - 1, opt.backend, opt.caps);
    if (d == 3 || d == 4) {
        // fixed component is a line (d=3) or a degenerate conic (d=4)
        int drop = d - 2;  // degree of the fixed curve
        scheme_spec trrest = detail::spec_without(trc, cone_tr_index);
        std::int64_t h0rest = actual_h0(trrest, d - 1 - drop, opt.backend, opt.caps);
        cl.count("trace fixed-component removal", h0tr, h0rest);
        cl.count("h0(trace remainder)", 0, h0rest);
    } else {
        scheme_spec trrest = detail::spec_without(trc, cone_tr_index);
        std::int64_t h0rest = actual_h0(trrest, d - 1 - m, opt.backend, opt.caps);
        cl.count("cone fixed-component removal on trace", h0tr, h0rest);
        cl.count("h0(Tr - CC, d-1-m)", 0, h0rest);

        if (d % 3 == 0) {
            // T = (m-1)P|_H + 2-dots: h0(T, d-m) = C(m+1,2) - 1
            scheme_spec T = detail::spec_like(Xp, 2);
            T.components.push_back(trc.components[0]);
            for (int i = 0; i < s; ++i)
                T.components.push_back(trc.components[static_cast<std::size_t>(2 + (t - (m - 1)) + i)]);
            cl.count("h0(T, d-m) = C(m+1,2)-1", binomial(m + 1, 2) - 1,
                     actual_h0(T, d - m, opt.backend, opt.caps));
        } else if (d % 3 == 1) {
            // inner specialization T~ onto a generic line L of H (5.2)
            std::set<std::vector<std::uint32_t>> used2;
            for (const auto& c : trc.components) {
                if (!c.support.empty()) used2.insert(c.support.c);
                for (const auto& ppt : c.points) used2.insert(ppt.c);
            }
            proj_point La = detail::fresh_point(rng, 3, used2);
            proj_point Lb = detail::fresh_point(rng, 3, used2);
            poly_ring R2 = trc.ring();
            hyperplane L = detail::line_hyperplane(R2, La, Lb);
            proj_point Pp = detail::fresh_point_on_line(rng, La, Lb, used2);
            proj_point Qp = detail::fresh_point_on_line(rng, La, Lb, used2);

            scheme_spec Ti = detail::spec_like(Xp, 2);
            std::vector<detail::structure_map> imaps;
            scheme_spec resL = detail::spec_like(Xp, 2);
            Ti.components.push_back(detail::comp_fat(Pp, m - 1));
            imaps.push_back({0, detail::kSkipCheck, -1});
            resL.components.push_back(detail::comp_fat(Pp, m - 2));
            Ti.components.push_back(detail::comp_fat(Qp, 2));
            imaps.push_back({1, detail::kSkipCheck, -1});
            resL.components.push_back(detail::comp_point(Qp));
            for (int i = 0; i < m - 3; ++i) {  // N_3..N_{m-1} onto L
                Ti.components.push_back(
                    detail::comp_point(detail::fresh_point_on_line(rng, La, Lb, used2)));
                imaps.push_back({detail::kResEmpty, detail::kSkipCheck, -1});
            }
            int kept0 = static_cast<int>(resL.components.size());
            for (int j = m; j <= t; ++j) {  // N_m..N_t stay generic
                Ti.components.push_back(trc.components[static_cast<std::size_t>(2 + (j - 2) - 1)]);
                imaps.push_back({kept0++, detail::kSkipCheck, -1});
                resL.components.push_back(Ti.components.back());
            }
            for (int i = 0; i < s - m; ++i) {  // 2-dots stay
                Ti.components.push_back(trc.components[static_cast<std::size_t>(t + 1 + i)]);
                imaps.push_back({kept0++, detail::kSkipCheck, -1});
                resL.components.push_back(Ti.components.back());
            }
            nlohmann::json inner;
            inner["specialized_hash"] = spec_hash(Ti);
            cl.count("deg(T~ cap L)", 2 * m - 2,
                     detail::trace_degree(union_ideal(Ti, opt.caps), L, 2 * m + 4, opt.caps));
            inner["structure"] =
                detail::structural_checks(Ti, L, &resL, nullptr, imaps, cl, opt.caps);
            std::int64_t h0Ti = actual_h0(Ti, 2 * m - 3, opt.backend, opt.caps);
            std::int64_t h0resL = actual_h0(resL, 2 * m - 4, opt.backend, opt.caps);
            cl.count("line fixed-component removal: h0(Res_L(T~), 2m-4)", h0Ti, h0resL);
            scheme_spec Tp = detail::spec_like(Xp, 2);
            Tp.components.push_back(detail::comp_fat(Pp, m - 2));
            for (int i = 0; i < s - m; ++i)
                Tp.components.push_back(trc.components[static_cast<std::size_t>(t + 1 + i)]);
            cl.count("h0(T', 2m-4) = C(m,2)+2", binomial(m, 2) + 2,
                     actual_h0(Tp, 2 * m - 4, opt.backend, opt.caps));
            cl.count("h0(Res_L(T~), 2m-4)", 0, h0resL);
            cl.count("h0(T~, 2m-3)", 0, h0Ti);
            out.node["inner"] = inner;
        } else {
            // T = (m-1)P|_H + 2-dots: h0(T, d-1-m) = C(m+1,2)  (5.3)
            scheme_spec T = detail::spec_like(Xp, 2);
            T.components.push_back(trc.components[0]);
            for (int i = 0; i < s; ++i)
                T.components.push_back(trc.components[static_cast<std::size_t>(2 + (t - m) + i)]);
            cl.count("h0(T, d-1-m) = C(m+1,2)", binomial(m + 1, 2),
                     actual_h0(T, d - 1 - m, opt.backend, opt.caps));
        }
    }

    if (recurse_on) {
        auto child = replay_Hprime(*recurse_on, d - 1, rng, opt);
        out.node["children"] = nlohmann::json::array({child.node});
        out.absorb(child);
    } else {
        out.node["children"] = nlohmann::json::array();
    }
    out.node["checks"] = cl.items;
    out.absorb(cl);
    out.node["verdict"] = out.refuted ? "refuted" : (out.ok ? "verified" : "miss");
    return out;
}

// ---------------------------------------------------------------------------
// replay_proof: the full tree H_d -> { H'_{d-1}, H''_d }
// ---------------------------------------------------------------------------

struct certificate {
    int d = 0;
    std::uint32_t prime = 0;
    std::uint64_t seed = 0;
    int retries = 0;
    bool valid = false;
    std::string verdict;  // verified | refuted | inconclusive
    nlohmann::json tree;
};

inline nlohmann::json to_json(const certificate& c) {
    nlohmann::json j;
    j["d"] = c.d;
    j["prime"] = c.prime;
    j["seed"] = c.seed;
    j["retries"] = c.retries;
    j["valid"] = c.valid;
    j["verdict"] = c.verdict;
    j["tree"] = c.tree;
    return j;
}

inline certificate replay_proof(int d, std::uint64_t seed,
                                const verify_options& opt = {}) {
    if (d < 3) throw precondition_error("replay_proof: d >= 3 required");
    certificate cert;
    cert.d = d;
    cert.prime = opt.prime;
    cert.seed = seed;

    for (int attempt = 0; attempt < opt.retry_budget; ++attempt) {
        std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(attempt));
        cert.retries = attempt;
        detail::replay_result root;
        detail::check_list cl;
        hd_node nd = specialize_Hd(d, s, opt.prime);
        root.node["statement"] = "Hd";
        root.node["d"] = d;
        root.node["tested_degree"] = d;
        root.node["specialized_hash"] = spec_hash(nd.Xt);
        root.node["residual_hash"] = spec_hash(nd.res_child);
        root.node["trace_hash"] = spec_hash(nd.tr_child);

        hyperplane H = coordinate_hyperplane(3);
        root.node["structure"] = detail::structural_checks(
            nd.Xt, H, &nd.res_child, &nd.tr_child, nd.smap, cl, opt.caps);
        {
            std::int64_t w = actual_h0(nd.Xt, d, opt.backend, opt.caps);
            std::int64_t a = actual_h0(nd.res_child, d - 1, opt.backend, opt.caps);
            std::int64_t b = actual_h0(nd.tr_child, d, opt.backend, opt.caps);
            root.node["h0"] = {{"whole", w}, {"residual", a}, {"trace", b}};
            cl.hard("castelnuovo", w <= a + b);
            cl.count("h0(specialized scheme)", 0, w);
            cl.count("h0(residual child)", 0, a);
            cl.count("h0(trace child)", 0, b);
        }
        // direct leaf: the generic (unspecialized) statement H_d
        statement_request req;
        req.kind = statement_kind::Hd;
        req.d = d;
        postulation_report leaf = verify_statement(req, s, opt);
        root.node["direct"] = to_json(leaf);
        cl.hard("direct H_d verification", leaf.verdict == "verified");

        generic_source rng(derive_seed(s, 0x5eedull), opt.prime);
        auto resn = replay_Hprime(nd.res_child, d, rng, opt);
        auto trn = replay_Hsecond(nd.tr_child, d, rng, opt);
        root.node["children"] = nlohmann::json::array({resn.node, trn.node});
        root.node["checks"] = cl.items;
        root.absorb(cl);
        root.absorb(resn);
        root.absorb(trn);
        root.node["verdict"] = root.refuted ? "refuted" : (root.ok ? "verified" : "miss");

        cert.tree = root.node;
        if (root.refuted) {
            cert.valid = false;
            cert.verdict = "refuted";
            return cert;
        }
        if (root.ok) {
            cert.valid = true;
            cert.verdict = "verified";
            return cert;
        }
    }
    cert.valid = false;
    cert.verdict = "inconclusive";
    return cert;
}

}  // namespace postulab
