#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "postulab/reduction.hpp"
#include "test_support.hpp"

using namespace postulab;

namespace {
const std::uint32_t kP = 32003;
}

TEST_CASE("castelnuovo inequality for a double point on the plane") {
    generic_source rng(3, kP);
    hyperplane H = coordinate_hyperplane(3);
    scheme_spec X;
    X.ambient = 3;
    X.prime = kP;
    scheme_component c;
    c.kind = component_kind::fat_point;
    c.support = random_point_on(rng, H);
    c.mult = 2;
    X.components.push_back(c);
    castelnuovo_result r = check_castelnuovo(X, H, 2);
    CHECK(r.holds);
    CHECK(r.h0_whole == 6);
    CHECK(r.h0_residual == 3);  // residual point against quadrics vanishing on H
    CHECK(r.h0_trace == 3);     // planar double point against plane quadrics
}

TEST_CASE("castelnuovo with the whole scheme inside H") {
    generic_source rng(8, kP);
    hyperplane H = coordinate_hyperplane(3);
    scheme_spec X;
    X.ambient = 3;
    X.prime = kP;
    scheme_component c;
    c.kind = component_kind::simple_point;
    c.support = random_point_on(rng, H);
    X.components.push_back(c);
    castelnuovo_result r = check_castelnuovo(X, H, 2);
    // the residual is empty, so it contributes the full degree-(d-1) system
    CHECK(r.holds);
    CHECK(r.h0_whole == 9);
    CHECK(r.h0_residual == 4);
    CHECK(r.h0_trace == 5);
}

TEST_CASE("castelnuovo for the (2,3)-cone") {
    generic_source rng(5, kP);
    hyperplane H = coordinate_hyperplane(3);
    scheme_spec X;
    X.ambient = 3;
    X.prime = kP;
    proj_point P = random_point_on(rng, H);
    scheme_component c;
    c.kind = component_kind::two_s_cone;
    c.support = P;
    c.plane = H;
    c.count = 3;
    for (int i = 0; i < 3; ++i) {
        proj_point q = random_point_on(rng, H);
        c.points.push_back(q);
    }
    X.components.push_back(c);
    for (int d = 2; d <= 4; ++d) CHECK(check_castelnuovo(X, H, d).holds);
}

TEST_CASE("specialize_Hd produces the section 4.2 layout") {
    SUBCASE("d = 3: m = 2 cone, no sundials, three lines") {
        hd_node nd = specialize_Hd(3, 1, kP);
        REQUIRE(nd.Xt.components.size() == 4);  // cone + 3 lines (q = 0)
        CHECK(nd.Xt.components[0].kind == component_kind::two_s_cone);
        CHECK(nd.Xt.components[0].count == 2);
        for (int i = 1; i <= 3; ++i)
            CHECK(nd.Xt.components[static_cast<std::size_t>(i)].kind == component_kind::line);
        // residual child: the cone leaves a multiplicity-one planar point + 3 lines
        REQUIRE(nd.res_child.components.size() == 4);
        CHECK(nd.res_child.components[0].kind == component_kind::planar_fat_point);
        CHECK(nd.res_child.components[0].mult == 1);
        // trace child in the plane: cone config + 3 points
        CHECK(nd.tr_child.ambient == 2);
        CHECK(nd.tr_child.components[0].kind == component_kind::cone_config);
    }
    SUBCASE("d = 4: one sundial appears") {
        hd_node nd = specialize_Hd(4, 1, kP);
        REQUIRE(nd.Xt.components.size() == 5);  // cone + 1 sundial + 3 lines
        CHECK(nd.Xt.components[1].kind == component_kind::sundial);
    }
    SUBCASE("d = 5: collinear points in H") {
        statement_params p = parameters(5);
        REQUIRE(p.q == 2);
        hd_node nd = specialize_Hd(5, 1, kP);
        CHECK(nd.Xt.components.back().kind == component_kind::collinear_points);
        CHECK(nd.Xt.components.back().points.size() == 2);
    }
    SUBCASE("d = 6: m = 3 cone with s = 1, t = 7") {
        statement_params p = parameters(6);
        REQUIRE(p.m == 3);
        REQUIRE(p.s == 1);
        REQUIRE(p.t == 7);
        hd_node nd = specialize_Hd(6, 1, kP);
        CHECK(nd.Xt.components[0].count == 3);
        REQUIRE(nd.Xt.components.size() == 1 + 1 + 7);
    }
    SUBCASE("determinism: same seed, same hash") {
        CHECK(spec_hash(specialize_Hd(7, 9, kP).Xt) == spec_hash(specialize_Hd(7, 9, kP).Xt));
        CHECK(spec_hash(specialize_Hd(7, 9, kP).Xt) != spec_hash(specialize_Hd(7, 10, kP).Xt));
    }
}

TEST_CASE("replay_proof produces valid certificates") {
    for (int d : {3, 4, 5, 6, 7}) {
        certificate cert = replay_proof(d, 1);
        CHECK(cert.valid);
        CHECK(cert.verdict == "verified");
        CHECK(cert.retries == 0);
        nlohmann::json j = to_json(cert);
        CHECK(j.at("d").get<int>() == d);
        CHECK(j.at("prime").get<std::uint32_t>() == kP);
        const auto& tree = j.at("tree");
        CHECK(tree.at("statement") == "Hd");
        CHECK(tree.at("verdict") == "verified");
        REQUIRE(tree.contains("structure"));
        REQUIRE(tree.contains("h0"));
        REQUIRE(tree.at("children").is_array());
        REQUIRE(tree.at("children").size() == 2);
        CHECK(tree.at("children")[0].at("statement") == "Hprime");
        CHECK(tree.at("children")[1].at("statement") == "Hsecond");
        // the castelnuovo triple is recorded with actual values
        CHECK(tree.at("h0").at("whole").get<std::int64_t>() <=
              tree.at("h0").at("residual").get<std::int64_t>() +
                  tree.at("h0").at("trace").get<std::int64_t>());
    }
}

TEST_CASE("replay_proof exercises every residue branch") {
    // d = 9 (5.1), d = 10 (5.2 with the inner specialization), d = 11 (5.3)
    for (int d : {9, 10, 11}) {
        certificate cert = replay_proof(d, 1);
        CHECK(cert.valid);
        CHECK(cert.verdict == "verified");
    }
}

TEST_CASE("certificate tree records branch labels") {
    certificate cert = replay_proof(10, 1);
    REQUIRE(cert.valid);
    const auto& hp = cert.tree.at("children")[0];
    CHECK(hp.at("branch") == "5.2");
    const auto& hs = cert.tree.at("children")[1];
    std::string b = hs.at("branch").get<std::string>();
    CHECK((b == "6.1" || b == "6.2"));
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS((void)replay_proof(2, 1), precondition_error);
    CHECK_THROWS_AS((void)specialize_Hd(1, 1, kP), precondition_error);
    scheme_spec X;
    X.ambient = 3;
    X.prime = kP;
    CHECK_THROWS_AS((void)check_castelnuovo(X, coordinate_hyperplane(3), 0),
                    precondition_error);
}
