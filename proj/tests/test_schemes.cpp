#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "postulab/schemes.hpp"
#include "test_support.hpp"

using namespace postulab;
using postulab::testing::parse_ideal;
using postulab::testing::parse_poly;

namespace {

const std::uint32_t kP = 32003;

proj_point pt(const std::vector<std::uint32_t>& c) {
    return make_point(prime_field(kP), c);
}

// the standard frame of the explicit cone example: P = [1:0:0:0] in H = {z=0},
// lines spanned by x, y, x+y inside H
scheme_component example_cone(int count) {
    prime_field F(kP);
    scheme_component c;
    c.kind = component_kind::two_s_cone;
    c.support = pt({1, 0, 0, 0});
    c.plane = coordinate_hyperplane(3);
    c.count = count;
    c.points = {pt({0, 0, 1, 0}), pt({0, 1, 0, 0})};  // kills y resp. x
    if (count >= 3) c.points.push_back(pt({0, 1, F.neg(1), 0}));  // kills x+y
    for (int i = 3; i < count; ++i)
        c.points.push_back(pt({0, 1, F.neg(static_cast<std::uint32_t>(i - 1)), 0}));
    return c;
}

}  // namespace

TEST_CASE("explicit (2,3)-cone ideal") {
    poly_ring R = projective_ring(3, kP);
    ideal I = build_component(R, example_cone(3));
    CHECK(ideal_equal(I, parse_ideal(R, {"x^2*y + x*y^2", "x*y*z", "x^2*z", "y^2*z", "z^2"})));
}

TEST_CASE("d_point ideals") {
    poly_ring R = projective_ring(3, kP);
    scheme_component c;
    c.kind = component_kind::d_point;
    c.support = pt({1, 0, 0, 0});
    c.plane = coordinate_hyperplane(3);
    SUBCASE("m = 3 explicit generators") {
        c.mult = 3;
        CHECK(ideal_equal(build_component(R, c),
                          parse_ideal(R, {"x^3", "y^3", "x^2*y", "x*y^2", "x^2*z",
                                          "y^2*z", "x*y*z", "z^2"})));
    }
    SUBCASE("m = 2 collapses to the double point") {
        c.mult = 2;
        ideal dbl = ideal_power_linear(parse_ideal(R, {"x", "y", "z"}), 2);
        CHECK(ideal_equal(build_component(R, c), dbl));
    }
    SUBCASE("length is m^2") {
        for (int m = 2; m <= 6; ++m) {
            c.mult = m;
            ideal I = build_component(R, c);
            int d = 2 * m + 2;
            CHECK(quotient_hilbert(I, d) == m * m);
        }
    }
}

TEST_CASE("union of the three cone lines") {
    poly_ring R = projective_ring(3, kP);
    scheme_spec X;
    X.ambient = 3;
    X.prime = kP;
    scheme_component c = example_cone(3);
    for (const auto& q : c.points) {
        scheme_component L;
        L.kind = component_kind::line;
        L.points = {c.support, q};
        X.components.push_back(L);
    }
    CHECK(ideal_equal(union_ideal(X), parse_ideal(R, {"x^2*y + x*y^2", "z"})));
}

TEST_CASE("residual and trace of the explicit cone") {
    poly_ring R = projective_ring(3, kP);
    hyperplane H = coordinate_hyperplane(3);
    ideal I = build_component(R, example_cone(3));
    SUBCASE("residual by z is the planar double point") {
        CHECK(ideal_equal(residual(I, H), parse_ideal(R, {"x^2", "x*y", "y^2", "z"})));
    }
    SUBCASE("trace on z = 0 is the three-line cone configuration") {
        poly_ring S = projective_ring(2, kP);
        ideal tr = trace_coordinate(I);
        CHECK(ideal_equal(saturate_irrelevant(tr), parse_ideal(S, {"x^2*y + x*y^2"})));
    }
    SUBCASE("general-position H agrees after a coordinate move") {
        ideal tr = trace(I, H);
        poly_ring S = projective_ring(2, kP);
        CHECK(ideal_equal(saturate_irrelevant(tr), parse_ideal(S, {"x^2*y + x*y^2"})));
    }
}

TEST_CASE("(2,s)-cone residual/trace for s = 2..6") {
    poly_ring R = projective_ring(3, kP);
    hyperplane H = coordinate_hyperplane(3);
    for (int s = 2; s <= 6; ++s) {
        scheme_component c = example_cone(s);
        ideal I = build_component(R, c);
        // residual: the planar fat point (s-1)P|_H
        ideal want = ideal_power_linear(parse_ideal(R, {"x", "y", "z"}), s - 1);
        want.gens.push_back(parse_poly(R, "z"));
        CHECK(ideal_equal(residual(I, H), make_ideal(R, want.gens)));
        // trace: the cone configuration of type s in H
        scheme_spec lines;
        lines.ambient = 3;
        lines.prime = kP;
        for (const auto& q : c.points) {
            scheme_component L;
            L.kind = component_kind::line;
            L.points = {c.support, q};
            lines.components.push_back(L);
        }
        ideal cone = union_ideal(lines);
        CHECK(ideal_equal(saturate_irrelevant(trace_coordinate(I)),
                          saturate_irrelevant(trace_coordinate(cone))));
    }
}

TEST_CASE("residual of a disjoint component is unchanged") {
    generic_source rng(5, kP);
    hyperplane H = coordinate_hyperplane(3);
    poly_ring R = projective_ring(3, kP);
    for (int i = 0; i < 3; ++i) {
        scheme_component L = random_line(rng, 4, H);
        ideal I = build_component(R, L);
        CHECK(ideal_equal(residual(I, H), I));
    }
}

TEST_CASE("trace of a generic line is one simple point") {
    generic_source rng(9, kP);
    hyperplane H = coordinate_hyperplane(3);
    poly_ring R = projective_ring(3, kP);
    poly_ring S = projective_ring(2, kP);
    prime_field F(kP);
    scheme_component L = random_line(rng, 4, H);
    ideal tr = trace_coordinate(build_component(R, L));
    // compute the intersection point directly
    const auto& a = L.points[0];
    const auto& b = L.points[1];
    std::vector<std::uint32_t> v(3);
    for (int i = 0; i < 3; ++i)
        v[static_cast<std::size_t>(i)] =
            F.sub(F.mul(b.c[3], a.c[static_cast<std::size_t>(i)]),
                  F.mul(a.c[3], b.c[static_cast<std::size_t>(i)]));
    CHECK(ideal_equal(saturate_irrelevant(tr), point_ideal(S, make_point(F, v))));
}

TEST_CASE("planar fat point residual ladder") {
    poly_ring R = projective_ring(3, kP);
    hyperplane H = coordinate_hyperplane(3);
    scheme_component c;
    c.kind = component_kind::d_point;
    c.support = pt({1, 0, 0, 0});
    c.plane = H;
    for (int m = 3; m <= 5; ++m) {
        c.mult = m;
        ideal res = residual(build_component(R, c), H);
        ideal want = ideal_power_linear(parse_ideal(R, {"x", "y", "z"}), m - 1);
        want.gens.push_back(parse_poly(R, "z"));
        CHECK(ideal_equal(res, make_ideal(R, want.gens)));
        // trace on H is the full m-multiple point of the plane
        poly_ring S = projective_ring(2, kP);
        ideal trm = ideal_power_linear(parse_ideal(S, {"x", "y"}), m);
        CHECK(ideal_equal(saturate_irrelevant(trace_coordinate(build_component(R, c))),
                          saturate_irrelevant(trm)));
    }
}

TEST_CASE("pascal degree ledger for fat points") {
    // length(mP) = length(residual) + length(trace) for P in H
    for (int n = 2; n <= 4; ++n) {
        poly_ring R = projective_ring(n, kP);
        hyperplane H = coordinate_hyperplane(n);
        generic_source rng(31 + static_cast<std::uint64_t>(n), kP);
        proj_point P = random_point_on(rng, H);
        for (int m = 2; m <= 6; ++m) {
            ideal I = ideal_power_linear(point_ideal(R, P), m);
            int d = m + 4;
            std::int64_t len = quotient_hilbert(I, d);
            CHECK(len == binomial(n + m - 1, n));
            std::int64_t res_len = quotient_hilbert(residual(I, H), d);
            ideal tr = saturate_irrelevant(trace_coordinate(I));
            std::int64_t tr_len = quotient_hilbert(tr, d);
            CHECK(res_len == binomial(n + m - 2, n));
            CHECK(tr_len == binomial(n + m - 2, n - 1));
            CHECK(len == res_len + tr_len);
        }
    }
}

TEST_CASE("2-dot hilbert deficit is exactly 2") {
    poly_ring S = projective_ring(2, kP);
    generic_source rng(17, kP);
    scheme_component c;
    c.kind = component_kind::two_dot;
    c.support = random_point(rng, 3);
    c.direction = random_point(rng, 3);
    ideal I = build_component(S, c);
    for (int d = 1; d <= 6; ++d)
        CHECK(hilbert_h0(I, d) == binomial(d + 2, 2) - 2);
}

TEST_CASE("seed determinism and JSON round-trip") {
    scheme_spec X;
    X.ambient = 3;
    X.prime = kP;
    X.seed = 77;
    generic_source rng(77, kP);
    X.components.push_back(random_line(rng, 4));
    scheme_component fat;
    fat.kind = component_kind::fat_point;
    fat.support = random_point(rng, 4);
    fat.mult = 3;
    X.components.push_back(fat);

    scheme_spec Y;
    Y.ambient = 3;
    Y.prime = kP;
    Y.seed = 77;
    generic_source rng2(77, kP);
    Y.components.push_back(random_line(rng2, 4));
    scheme_component fat2;
    fat2.kind = component_kind::fat_point;
    fat2.support = random_point(rng2, 4);
    fat2.mult = 3;
    Y.components.push_back(fat2);

    CHECK(spec_hash(X) == spec_hash(Y));
    scheme_spec Z = scheme_from_json(to_json(X));
    CHECK(spec_hash(Z) == spec_hash(X));
    CHECK(ideal_equal(union_ideal(Z), union_ideal(X)));
    CHECK_THROWS_AS((void)scheme_from_json(nlohmann::json{
                        {"ambient", 2}, {"prime", 32001}, {"components", nlohmann::json::array()}}),
                    precondition_error);
}

TEST_CASE("sundial ideal matches its definition") {
    poly_ring R = projective_ring(3, kP);
    generic_source rng(41, kP);
    hyperplane H = coordinate_hyperplane(3);
    proj_point Q = random_point_on(rng, H);
    proj_point A = random_point(rng, 4);
    proj_point B = random_point(rng, 4);
    scheme_component c;
    c.kind = component_kind::sundial;
    c.support = Q;
    c.points = {A, B};
    ideal I = build_component(R, c);
    ideal want = ideal_intersect(ideal_intersect(line_ideal(R, Q, A), line_ideal(R, Q, B)),
                                 ideal_power_linear(point_ideal(R, Q), 2));
    CHECK(ideal_equal(I, want));
    // a sundial imposes exactly one condition more than its underlying conic
    scheme_component conic = c;
    conic.kind = component_kind::degenerate_conic;
    ideal C = build_component(R, conic);
    for (int d = 3; d <= 5; ++d)
        CHECK(quotient_hilbert(I, d) == quotient_hilbert(C, d) + 1);
}
