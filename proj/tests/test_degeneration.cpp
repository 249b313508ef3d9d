#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "postulab/degeneration.hpp"
#include "test_support.hpp"

using namespace postulab;
using postulab::testing::parse_ideal;
using postulab::testing::parse_poly;

namespace {
const std::uint32_t kP = 32003;
}

TEST_CASE("flat limit of the s = 3 family is the explicit cone ideal") {
    family_ideal_rec F = family_ideal(3);
    ideal limit = flat_limit(F);
    poly_ring R = projective_ring(3, kP);
    CHECK(ideal_equal(limit,
                      parse_ideal(R, {"x^2*y + x*y^2", "x*y*z", "x^2*z", "y^2*z", "z^2"})));

    SUBCASE("residual by z") {
        ideal res = ideal_quotient_poly(limit, parse_poly(R, "z"));
        CHECK(ideal_equal(res, parse_ideal(R, {"x^2", "x*y", "y^2", "z"})));
    }
    SUBCASE("trace on z = 0") {
        ideal tr = saturate_irrelevant(trace_coordinate(limit));
        poly_ring S = projective_ring(2, kP);
        CHECK(ideal_equal(tr, parse_ideal(S, {"x^2*y + x*y^2"})));
    }
}

TEST_CASE("general fiber differs from the limit") {
    family_ideal_rec F = family_ideal(3);
    ideal limit = flat_limit(F);
    ideal fib = family_fiber(F, 1);
    // equal Hilbert functions, but the limit carries an embedded point
    for (int d = 3; d <= 6; ++d)
        CHECK(hilbert_h0(limit, d) == hilbert_h0(fib, d));
    CHECK_FALSE(ideal_equal(limit, fib));
}

TEST_CASE("limit line forms") {
    auto f3 = limit_line_forms(3);
    REQUIRE(f3.size() == 3);
    CHECK(f3[0] == std::pair<std::int64_t, std::int64_t>{0, 1});
    CHECK(f3[1] == std::pair<std::int64_t, std::int64_t>{1, 0});
    CHECK(f3[2] == std::pair<std::int64_t, std::int64_t>{1, 1});
    auto f5 = limit_line_forms(5);
    REQUIRE(f5.size() == 5);
    CHECK(f5.back() == std::pair<std::int64_t, std::int64_t>{1, -1});
}

TEST_CASE("verify_cone_limit for s = 3, 4, 5") {
    for (int s = 3; s <= 5; ++s) {
        cone_limit_report rep = verify_cone_limit(s);
        CHECK(rep.verdict == "verified");
        CHECK(rep.limit_equals_cone);
        REQUIRE(rep.residual_identity.has_value());
        CHECK(*rep.residual_identity);
        REQUIRE(rep.trace_identity.has_value());
        CHECK(*rep.trace_identity);
        CHECK(rep.hilbert_witness);
        CHECK(rep.fiber_constancy);
        nlohmann::json j = to_json(rep);
        CHECK(j.at("s").get<int>() == s);
        CHECK(j.at("verdict").get<std::string>() == "verified");
    }
}

TEST_CASE("cone limit inside a hyperplane of P^4") {
    cone_limit_report rep = verify_cone_limit(3, 4);
    CHECK(rep.verdict == "verified");
    CHECK(rep.ambient == 4);
    CHECK_FALSE(rep.residual_identity.has_value());
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS((void)family_ideal(2), precondition_error);
    CHECK_THROWS_AS((void)family_ideal(3, 5), precondition_error);
}
