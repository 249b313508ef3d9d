#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "postulab/ideal.hpp"
#include "postulab/rng.hpp"

namespace postulab {

// ---------------------------------------------------------------------------
// Points and hyperplanes
// ---------------------------------------------------------------------------

// Point of P^n as n+1 residues, canonicalized so the leading nonzero
// coordinate is 1.
struct proj_point {
    std::vector<std::uint32_t> c;

    friend bool operator==(const proj_point& a, const proj_point& b) { return a.c == b.c; }
    friend bool operator<(const proj_point& a, const proj_point& b) { return a.c < b.c; }
    bool empty() const { return c.empty(); }
};

struct hyperplane {
    std::vector<std::uint32_t> c;
    bool empty() const { return c.empty(); }
    friend bool operator==(const hyperplane& a, const hyperplane& b) { return a.c == b.c; }
};

inline void canonicalize_coords(const prime_field& F, std::vector<std::uint32_t>& v) {
    for (auto& x : v) x %= F.modulus();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != 0) {
            std::uint32_t inv = F.inv(v[i]);
            for (auto& x : v) x = F.mul(x, inv);
            return;
        }
    }
    throw precondition_error("canonicalize_coords: zero vector");
}

inline proj_point make_point(const prime_field& F, std::vector<std::uint32_t> coords) {
    canonicalize_coords(F, coords);
    return proj_point{std::move(coords)};
}

inline hyperplane make_hyperplane(const prime_field& F, std::vector<std::uint32_t> coeffs) {
    canonicalize_coords(F, coeffs);
    return hyperplane{std::move(coeffs)};
}

// the coordinate hyperplane {last variable = 0} of P^n
inline hyperplane coordinate_hyperplane(int n) {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(n) + 1, 0);
    c.back() = 1;
    return hyperplane{std::move(c)};
}

inline bool on_hyperplane(const prime_field& F, const proj_point& p, const hyperplane& h) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < p.c.size(); ++i)
        acc = (acc + static_cast<std::uint64_t>(p.c[i]) * h.c[i]) % F.modulus();
    return acc == 0;
}

inline poly hyperplane_poly(const poly_ring& R, const hyperplane& h) {
    std::vector<term> ts;
    for (int i = 0; i < R.nvars; ++i)
        if (h.c[static_cast<std::size_t>(i)])
            ts.push_back({monomial::var(i), h.c[static_cast<std::size_t>(i)]});
    return make_poly(R, std::move(ts));
}

// evaluate a monomial at a point
inline std::uint32_t eval_monomial(const prime_field& F, const monomial& m,
                                   const proj_point& p) {
    std::uint32_t r = 1;
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        int e = m.e[i];
        if (e) r = F.mul(r, F.pow(p.c[i], static_cast<std::uint64_t>(e)));
    }
    return r;
}

// All linear forms vanishing at every given point: null space of the
// evaluation matrix, returned as polynomials.
inline std::vector<poly> linear_forms_through(const poly_ring& R,
                                              const std::vector<proj_point>& pts) {
    const prime_field F = R.field();
    fp_matrix M;
    M.ncols = static_cast<std::size_t>(R.nvars);
    for (const auto& p : pts) M.add_row(p.c);
    auto basis = null_space(F, std::move(M));
    std::vector<poly> forms;
    for (const auto& v : basis) {
        std::vector<term> ts;
        for (int i = 0; i < R.nvars; ++i)
            if (v[static_cast<std::size_t>(i)])
                ts.push_back({monomial::var(i), v[static_cast<std::size_t>(i)]});
        forms.push_back(make_poly(R, std::move(ts)));
    }
    return forms;
}

inline ideal point_ideal(const poly_ring& R, const proj_point& p) {
    return make_ideal(R, linear_forms_through(R, {p}));
}

inline ideal line_ideal(const poly_ring& R, const proj_point& a, const proj_point& b) {
    auto forms = linear_forms_through(R, {a, b});
    if (static_cast<int>(forms.size()) != R.nvars - 2)
        throw precondition_error("line_ideal: points do not span a line");
    return make_ideal(R, forms);
}

// I^m for an ideal of linear forms: all m-fold products of generators.
inline ideal ideal_power_linear(const ideal& I, int m) {
    if (m < 1) throw precondition_error("ideal_power_linear: multiplicity must be >= 1");
    auto key = [](const poly& f) {
        std::string k;
        for (const auto& t : f.terms) {
            for (int i = 0; i < kMaxVars; ++i) k += static_cast<char>('0' + t.m.e[static_cast<std::size_t>(i)]);
            k += ':' + std::to_string(t.c) + ';';
        }
        return k;
    };
    std::vector<poly> cur = {make_poly(I.ring, {{monomial::one(), 1}})};
    for (int k = 0; k < m; ++k) {
        std::set<std::string> seen;
        std::vector<poly> next;
        for (const auto& f : cur) {
            for (const auto& g : I.gens) {
                poly h = poly_mul(I.ring, f, g);
                if (seen.insert(key(h)).second) next.push_back(std::move(h));
            }
        }
        cur = std::move(next);
    }
    return make_ideal(I.ring, cur);
}

// k distinct points on the line through a and b (a + c_i * b for distinct c_i)
inline std::vector<proj_point> sample_line_points(const prime_field& F,
                                                  const proj_point& a,
                                                  const proj_point& b, int k) {
    std::vector<proj_point> pts;
    for (int i = 0; i < k; ++i) {
        std::vector<std::uint32_t> v(a.c.size());
        std::uint32_t ci = static_cast<std::uint32_t>(i);
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] = F.add(a.c[j], F.mul(ci, b.c[j]));
        pts.push_back(make_point(F, std::move(v)));
    }
    return pts;
}

// ---------------------------------------------------------------------------
// Scheme components
// ---------------------------------------------------------------------------

enum class component_kind {
    line,
    collinear_points,
    simple_point,
    fat_point,
    planar_fat_point,
    two_dot,
    degenerate_conic,
    sundial,
    d_point,
    cone_config,
    two_s_cone,
    star_config,
};

inline const char* kind_name(component_kind k) {
    switch (k) {
        case component_kind::line: return "line";
        case component_kind::collinear_points: return "collinear_points";
        case component_kind::simple_point: return "simple_point";
        case component_kind::fat_point: return "fat_point";
        case component_kind::planar_fat_point: return "planar_fat_point";
        case component_kind::two_dot: return "two_dot";
        case component_kind::degenerate_conic: return "degenerate_conic";
        case component_kind::sundial: return "sundial";
        case component_kind::d_point: return "d_point";
        case component_kind::cone_config: return "cone_config";
        case component_kind::two_s_cone: return "two_s_cone";
        case component_kind::star_config: return "star_config";
    }
    return "?";
}

inline component_kind kind_from_name(const std::string& s) {
    for (int k = 0; k <= static_cast<int>(component_kind::star_config); ++k) {
        if (s == kind_name(static_cast<component_kind>(k)))
            return static_cast<component_kind>(k);
    }
    throw precondition_error("unknown component kind: " + s);
}

// One declarative geometric component. Which fields are live depends on the
// kind:
//   line             points = {A, B}
//   collinear_points points = the points themselves (all on one line)
//   simple_point     support
//   fat_point        support, mult
//   planar_fat_point support, plane, mult          (support on plane)
//   two_dot          support, direction            (direction spans the dot line)
//   degenerate_conic support = node, points = {A, B} (one per branch line)
//   sundial          support = node, points = {A, B}; embedded double point at node
//   d_point          support, plane, mult          (support on plane)
//   cone_config      support, plane, count, points = count direction points in plane
//   two_s_cone       same as cone_config; count = s >= 2
//   star_config      plane, points = 2k points (consecutive pairs span lines)
struct scheme_component {
    component_kind kind = component_kind::simple_point;
    std::vector<proj_point> points;
    hyperplane plane;
    proj_point support;
    proj_point direction;
    int mult = 0;
    int count = 0;
};

struct scheme_spec {
    int ambient = 3;
    std::uint32_t prime = 32003;
    std::uint64_t seed = 0;
    std::vector<scheme_component> components;

    poly_ring ring() const { return projective_ring(ambient, prime); }
};

// ---------------------------------------------------------------------------
// Component compilation
// ---------------------------------------------------------------------------

namespace detail {

inline void require(bool ok, const char* what) {
    if (!ok) throw precondition_error(what);
}

// line through support and each direction point, all inside the plane
// (in P^2 the plane is the whole ambient and is omitted)
inline std::vector<ideal> cone_lines(const poly_ring& R, const scheme_component& c) {
    const prime_field F = R.field();
    const bool planar = R.nvars == 3;
    if (!planar) {
        require(!c.plane.empty(), "cone: plane required");
        require(on_hyperplane(F, c.support, c.plane), "cone: vertex not on plane");
    }
    require(static_cast<int>(c.points.size()) == c.count, "cone: one direction per line");
    std::vector<ideal> lines;
    for (const auto& q : c.points) {
        if (!planar)
            require(on_hyperplane(F, q, c.plane), "cone: direction point not on plane");
        lines.push_back(line_ideal(R, c.support, q));
    }
    return lines;
}

}  // namespace detail

inline ideal build_component(const poly_ring& R, const scheme_component& c,
                             const resource_caps& caps = default_caps()) {
    const prime_field F = R.field();
    using detail::require;
    switch (c.kind) {
        case component_kind::line:
            require(c.points.size() == 2, "line: two spanning points required");
            return line_ideal(R, c.points[0], c.points[1]);
        case component_kind::collinear_points:
        {
            require(!c.points.empty(), "collinear_points: empty");
            ideal I = point_ideal(R, c.points[0]);
            for (std::size_t i = 1; i < c.points.size(); ++i)
                I = ideal_intersect(I, point_ideal(R, c.points[i]), caps);
            return I;
        }
        case component_kind::simple_point:
            return point_ideal(R, c.support);
        case component_kind::fat_point:
            return ideal_power_linear(point_ideal(R, c.support), c.mult);
        case component_kind::planar_fat_point:
        {
            require(!c.plane.empty(), "planar_fat_point: plane required");
            require(on_hyperplane(F, c.support, c.plane),
                    "planar_fat_point: support not on plane");
            require(c.mult >= 1, "planar_fat_point: mult >= 1");
            ideal I = ideal_power_linear(point_ideal(R, c.support), c.mult);
            return ideal_sum(I, make_ideal(R, {hyperplane_poly(R, c.plane)}));
        }
        case component_kind::two_dot:
        {
            require(!c.direction.empty(), "two_dot: direction required");
            ideal P2 = ideal_power_linear(point_ideal(R, c.support), 2);
            ideal L = R.nvars == 3
                          ? make_ideal(R, linear_forms_through(R, {c.support, c.direction}))
                          : line_ideal(R, c.support, c.direction);
            return ideal_sum(P2, L);
        }
        case component_kind::degenerate_conic:
        {
            require(c.points.size() == 2, "degenerate_conic: two branch points required");
            ideal L = line_ideal(R, c.support, c.points[0]);
            ideal M = line_ideal(R, c.support, c.points[1]);
            return ideal_intersect(L, M, caps);
        }
        case component_kind::sundial:
        {
            require(c.points.size() == 2, "sundial: two branch points required");
            ideal L = line_ideal(R, c.support, c.points[0]);
            ideal M = line_ideal(R, c.support, c.points[1]);
            ideal C = ideal_intersect(L, M, caps);
            return ideal_intersect(C, ideal_power_linear(point_ideal(R, c.support), 2), caps);
        }
        case component_kind::d_point:
        {
            require(!c.plane.empty(), "d_point: plane required");
            require(on_hyperplane(F, c.support, c.plane), "d_point: support not on plane");
            require(c.mult >= 2, "d_point: mult >= 2");
            ideal Pm = ideal_power_linear(point_ideal(R, c.support), c.mult);
            poly h = hyperplane_poly(R, c.plane);
            return ideal_sum(Pm, make_ideal(R, {poly_mul(R, h, h)}));
        }
        case component_kind::cone_config:
        {
            auto lines = detail::cone_lines(R, c);
            ideal I = lines.front();
            for (std::size_t i = 1; i < lines.size(); ++i)
                I = ideal_intersect(I, lines[i], caps);
            return I;
        }
        case component_kind::two_s_cone:
        {
            require(c.count >= 2, "two_s_cone: s >= 2");
            auto lines = detail::cone_lines(R, c);
            ideal I = lines.front();
            for (std::size_t i = 1; i < lines.size(); ++i)
                I = ideal_intersect(I, lines[i], caps);
            if (c.count == 2) {
                // the fat part collapses: I_H^2 is contained in I_P^2, so the
                // scheme is the sundial with both branches in the plane
                return ideal_intersect(
                    I, ideal_power_linear(point_ideal(R, c.support), 2), caps);
            }
            ideal Pm = ideal_power_linear(point_ideal(R, c.support), c.count);
            poly h = hyperplane_poly(R, c.plane);
            ideal D = ideal_sum(Pm, make_ideal(R, {poly_mul(R, h, h)}));
            return ideal_intersect(I, D, caps);
        }
        case component_kind::star_config:
        {
            require(!c.points.empty() && c.points.size() % 2 == 0,
                    "star_config: point pairs required");
            ideal I;
            bool first = true;
            for (std::size_t i = 0; i + 1 < c.points.size(); i += 2) {
                ideal L = line_ideal(R, c.points[i], c.points[i + 1]);
                I = first ? L : ideal_intersect(I, L, caps);
                first = false;
            }
            return I;
        }
    }
    throw internal_error("build_component: unreachable");
}

inline std::vector<ideal> compile_components(const scheme_spec& X,
                                             const resource_caps& caps = default_caps()) {
    poly_ring R = X.ring();
    std::vector<ideal> out;
    for (const auto& c : X.components) out.push_back(build_component(R, c, caps));
    return out;
}

// Ideal of the schematic union: intersection of all component ideals.
inline ideal union_ideal(const scheme_spec& X,
                         const resource_caps& caps = default_caps()) {
    poly_ring R = X.ring();
    if (X.components.empty())
        return make_ideal(R, {});  // empty scheme: zero ideal (whole space of forms)
    auto comps = compile_components(X, caps);
    ideal I = comps.front();
    for (std::size_t i = 1; i < comps.size(); ++i)
        I = ideal_intersect(I, comps[i], caps);
    return I;
}

// ---------------------------------------------------------------------------
// Residual and trace
// ---------------------------------------------------------------------------

inline ideal residual(const ideal& X, const hyperplane& H,
                      const resource_caps& caps = default_caps()) {
    return ideal_quotient_poly(X, hyperplane_poly(X.ring, H), caps);
}

// Restriction of (X + <last var>) to the coordinate hyperplane; the result
// lives in the ring of P^(n-1).
inline ideal trace_coordinate(const ideal& X) {
    const poly_ring& R = X.ring;
    const int v = R.nvars - 1;
    poly_ring S = make_ring(R.nvars - 1, R.prime);
    S.names.assign(R.names.begin(), R.names.end() - 1);
    std::vector<poly> gens;
    for (const auto& g : X.gens) {
        poly r = poly_subst_const(R, g, v, 0);
        if (!r.is_zero()) gens.push_back(poly_drop_var(r, v));
    }
    return make_ideal(S, gens);
}

// Invertible linear change of coordinates taking H to {last variable = 0};
// returns the substitution matrix B with x_i = sum_j B[i][j] y_j.
inline std::vector<std::vector<std::uint32_t>> hyperplane_to_last_change(
    const poly_ring& R, const hyperplane& h) {
    const prime_field F = R.field();
    const int n = R.nvars;
    // build A with rows: n-1 standard basis vectors completing h, last row h
    fp_matrix probe;
    probe.ncols = static_cast<std::size_t>(n);
    probe.add_row(h.c);
    std::vector<std::vector<std::uint32_t>> A;
    fp_matrix acc = probe;
    for (int i = 0; i < n && static_cast<int>(A.size()) < n - 1; ++i) {
        std::vector<std::uint32_t> e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(i)] = 1;
        fp_matrix trial = acc;
        trial.add_row(e);
        if (rank(F, trial) == acc.rows.size() + 1) {
            acc.add_row(e);
            A.push_back(std::move(e));
        }
    }
    A.push_back(h.c);
    // invert A by Gauss-Jordan on [A | I]
    fp_matrix M;
    M.ncols = static_cast<std::size_t>(2 * n);
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint32_t> row(static_cast<std::size_t>(2 * n), 0);
        for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        row[static_cast<std::size_t>(n + i)] = 1;
        M.add_row(std::move(row));
    }
    auto pivots = echelonize(F, M, /*reduced=*/true);
    if (static_cast<int>(pivots.size()) != n)
        throw internal_error("hyperplane_to_last_change: singular frame");
    std::vector<std::vector<std::uint32_t>> B(static_cast<std::size_t>(n),
                                              std::vector<std::uint32_t>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                M.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)];
    return B;
}

// f(x) with x_i replaced by the linear form sum_j B[i][j] y_j.
inline poly poly_linear_subst(const poly_ring& R, const poly& f,
                              const std::vector<std::vector<std::uint32_t>>& B) {
    std::vector<poly> forms;
    for (int i = 0; i < R.nvars; ++i) {
        std::vector<term> ts;
        for (int j = 0; j < R.nvars; ++j)
            if (B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                ts.push_back({monomial::var(j), B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]});
        forms.push_back(make_poly(R, std::move(ts)));
    }
    poly out;
    for (const auto& t : f.terms) {
        poly prod = make_poly(R, {{monomial::one(), t.c}});
        for (int i = 0; i < R.nvars; ++i)
            for (int e = 0; e < t.m.e[static_cast<std::size_t>(i)]; ++e)
                prod = poly_mul(R, prod, forms[static_cast<std::size_t>(i)]);
        out = poly_add(R, out, prod);
    }
    return out;
}

// Trace on an arbitrary hyperplane: move H to the last coordinate first.
inline ideal trace(const ideal& X, const hyperplane& H) {
    const poly_ring& R = X.ring;
    hyperplane last = coordinate_hyperplane(R.nvars - 1);
    if (H == last) return trace_coordinate(X);
    auto B = hyperplane_to_last_change(R, H);
    std::vector<poly> moved;
    for (const auto& g : X.gens) moved.push_back(poly_linear_subst(R, g, B));
    return trace_coordinate(make_ideal(R, moved));
}

// ---------------------------------------------------------------------------
// Seeded generic data
// ---------------------------------------------------------------------------

inline proj_point random_point(generic_source& rng, int nvars) {
    const prime_field F(rng.prime());
    for (;;) {
        std::vector<std::uint32_t> v(static_cast<std::size_t>(nvars));
        bool nz = false;
        for (auto& x : v) {
            x = rng.residue();
            nz = nz || x;
        }
        if (nz) return make_point(F, std::move(v));
    }
}

inline proj_point random_point_on(generic_source& rng, const hyperplane& h) {
    const prime_field F(rng.prime());
    for (;;) {
        proj_point p = random_point(rng, static_cast<int>(h.c.size()));
        // project: adjust the pivot coordinate so h . p = 0
        std::size_t piv = 0;
        while (h.c[piv] == 0) ++piv;
        std::uint64_t rest = 0;
        for (std::size_t i = 0; i < p.c.size(); ++i)
            if (i != piv) rest = (rest + static_cast<std::uint64_t>(h.c[i]) * p.c[i]) % F.modulus();
        p.c[piv] = F.div(F.neg(static_cast<std::uint32_t>(rest)), h.c[piv]);
        bool nz = false;
        for (auto x : p.c) nz = nz || x;
        if (nz) {
            canonicalize_coords(F, p.c);
            return p;
        }
    }
}

inline proj_point random_point_on_line(generic_source& rng, const proj_point& a,
                                       const proj_point& b) {
    const prime_field F(rng.prime());
    std::uint32_t u = rng.nonzero_residue();
    std::uint32_t v = rng.residue();
    std::vector<std::uint32_t> w(a.c.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = F.add(F.mul(u, a.c[i]), F.mul(v, b.c[i]));
    return make_point(F, std::move(w));
}

inline bool points_independent(const prime_field& F, const std::vector<proj_point>& pts) {
    fp_matrix M;
    M.ncols = pts.front().c.size();
    for (const auto& p : pts) M.add_row(p.c);
    return rank(F, M) == pts.size();
}

// a generic line not contained in the hyperplane h (when h is given)
inline scheme_component random_line(generic_source& rng, int nvars,
                                    const hyperplane& avoid_plane = {}) {
    const prime_field F(rng.prime());
    for (;;) {
        proj_point a = random_point(rng, nvars);
        proj_point b = random_point(rng, nvars);
        if (!points_independent(F, {a, b})) continue;
        if (!avoid_plane.empty() && on_hyperplane(F, a, avoid_plane) &&
            on_hyperplane(F, b, avoid_plane))
            continue;
        scheme_component c;
        c.kind = component_kind::line;
        c.points = {a, b};
        return c;
    }
}

// ---------------------------------------------------------------------------
// JSON interchange
// ---------------------------------------------------------------------------

inline nlohmann::json coords_to_json(const std::vector<std::uint32_t>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (auto x : v) a.push_back(x);
    return a;
}

inline std::vector<std::uint32_t> coords_from_json(const prime_field& F,
                                                   const nlohmann::json& a) {
    std::vector<std::uint32_t> v;
    for (const auto& x : a) v.push_back(F.reduce(x.get<std::int64_t>()));
    return v;
}

inline nlohmann::json to_json(const scheme_component& c) {
    nlohmann::json j;
    j["kind"] = kind_name(c.kind);
    if (!c.points.empty()) {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& p : c.points) pts.push_back(coords_to_json(p.c));
        j["points"] = pts;
    }
    if (!c.plane.empty()) j["plane"] = coords_to_json(c.plane.c);
    if (!c.support.empty()) j["support"] = coords_to_json(c.support.c);
    if (!c.direction.empty()) j["direction"] = coords_to_json(c.direction.c);
    if (c.mult) j["mult"] = c.mult;
    if (c.count) j["count"] = c.count;
    return j;
}

inline nlohmann::json to_json(const scheme_spec& X) {
    nlohmann::json j;
    j["ambient"] = X.ambient;
    j["prime"] = X.prime;
    j["seed"] = X.seed;
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : X.components) comps.push_back(to_json(c));
    j["components"] = comps;
    return j;
}

inline scheme_spec scheme_from_json(const nlohmann::json& j) {
    scheme_spec X;
    X.ambient = j.at("ambient").get<int>();
    X.prime = j.at("prime").get<std::uint32_t>();
    if (!is_prime(X.prime)) throw precondition_error("scheme file: prime field modulus is not prime");
    X.seed = j.value("seed", std::uint64_t{0});
    const prime_field F(X.prime);
    for (const auto& cj : j.at("components")) {
        scheme_component c;
        c.kind = kind_from_name(cj.at("kind").get<std::string>());
        if (cj.contains("points"))
            for (const auto& p : cj["points"])
                c.points.push_back(make_point(F, coords_from_json(F, p)));
        if (cj.contains("plane")) c.plane = make_hyperplane(F, coords_from_json(F, cj["plane"]));
        if (cj.contains("support")) c.support = make_point(F, coords_from_json(F, cj["support"]));
        if (cj.contains("direction")) c.direction = make_point(F, coords_from_json(F, cj["direction"]));
        c.mult = cj.value("mult", 0);
        c.count = cj.value("count", 0);
        X.components.push_back(std::move(c));
    }
    return X;
}

// FNV-1a over the canonical serialization; used to key reports and caches.
inline std::string spec_hash(const scheme_spec& X) {
    std::string s = to_json(X).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace postulab
