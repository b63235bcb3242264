#include <random>

#include "doctest.h"
#include "essint/errors.hpp"
#include "essint/lp.hpp"
#include "essint/mspace.hpp"
#include "helpers.hpp"

using namespace essint;
using fixtures::v1;
using fixtures::v2;

TEST_CASE("dyadic_space: halving weights") {
    auto s1 = dyadic_space(1);
    REQUIRE(s1.size() == 1);
    CHECK(s1.weight(0) == doctest::Approx(0.5));

    auto s3 = dyadic_space(3);
    REQUIRE(s3.size() == 3);
    CHECK(s3.weight(0) == doctest::Approx(0.5));
    CHECK(s3.weight(1) == doctest::Approx(0.25));
    CHECK(s3.weight(2) == doctest::Approx(0.125));

    CHECK(dyadic_space(10).total_weight() ==
          doctest::Approx(1.0 - std::ldexp(1.0, -10)).epsilon(1e-15));
    CHECK_THROWS_AS(dyadic_space(0), BadRangeError);
}

TEST_CASE("discretize_interval: node placement and weights") {
    auto u = discretize_interval(0, 1, 2, QuadratureRule::Uniform);
    REQUIRE(u.size() == 2);
    CHECK(u.weight(0) == doctest::Approx(0.5));
    CHECK(u.weight(1) == doctest::Approx(0.5));
    CHECK(u.node(0) == doctest::Approx(0.0));
    CHECK(u.node(1) == doctest::Approx(1.0));

    auto t = discretize_interval(0, 1, 3, QuadratureRule::Trapezoid);
    REQUIRE(t.size() == 3);
    CHECK(t.weight(0) == doctest::Approx(0.25));
    CHECK(t.weight(1) == doctest::Approx(0.5));
    CHECK(t.weight(2) == doctest::Approx(0.25));
    CHECK(t.node(1) == doctest::Approx(0.5));

    // quadrature exactness on constants: total mass is the interval length
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        double a = dist(gen), b = dist(gen);
        if (a > b) std::swap(a, b);
        if (b - a < 1e-3) continue;
        for (auto rule : {QuadratureRule::Uniform, QuadratureRule::Trapezoid}) {
            auto sp = discretize_interval(a, b, 2 + (trial % 7), rule);
            CHECK(sp.total_weight() == doctest::Approx(b - a).epsilon(1e-12));
        }
    }

    CHECK_THROWS_AS(discretize_interval(1, 1, 5, QuadratureRule::Uniform), BadRangeError);
    CHECK_THROWS_AS(discretize_interval(0, 1, 1, QuadratureRule::Uniform), BadRangeError);
    CHECK(parse_rule("trapezoid") == QuadratureRule::Trapezoid);
    CHECK(rule_name(QuadratureRule::Uniform) == "uniform");
    CHECK_THROWS_AS(parse_rule("simpson"), BadRangeError);
}

static AtomicMeasureSpace half_half() {
    return AtomicMeasureSpace({"a", "b"}, {0.5, 0.5});
}

TEST_CASE("measure space validation") {
    CHECK_THROWS_AS(AtomicMeasureSpace({"a"}, {0.0}), Error);
    CHECK_THROWS_AS(AtomicMeasureSpace({"a", "a"}, {1.0, 1.0}), Error);
    auto s = half_half();
    CHECK(s.index_of("b") == 1);
    CHECK_THROWS_AS(s.index_of("zz"), Error);
}

TEST_CASE("essential_intersection: two half-planes make the quadrant") {
    SampledMultifunction MF(half_half(),
                            {fixtures::half_plane(1, 0), fixtures::half_plane(0, 1)});
    auto r = essential_intersection(MF);
    REQUIRE(!r.empty());
    const auto& S = *r.value;
    CHECK(S.contains(v2(-1, -1)));
    CHECK(S.contains(v2(0, 0)));
    CHECK(!S.contains(v2(0.5, -1)));
    CHECK(!S.contains(v2(-1, 0.5)));
}

TEST_CASE("essential_intersection: opposing cones pinch to the origin") {
    SampledMultifunction MF(half_half(), {fixtures::down_cone(), fixtures::up_cone()});
    auto r = essential_intersection(MF);
    REQUIRE(!r.empty());
    const auto& S = *r.value;
    CHECK(S.contains(v2(0, 0)));
    // LP oracle: max and min of each coordinate over every piece is 0.
    for (const auto& piece : S.pieces()) {
        for (int coord = 0; coord < 2; ++coord) {
            for (double sign : {1.0, -1.0}) {
                Vec c = Vec::Zero(2);
                c(coord) = sign;
                auto lp = solve_lp(c, piece.A(), piece.b(), empty_matrix(2), empty_vector());
                REQUIRE(lp.status == LPStatus::Optimal);
                CHECK(std::abs(lp.objective) < 1e-9);
            }
        }
    }
}

TEST_CASE("essential_intersection: single atom returns its own value") {
    SampledMultifunction MF(AtomicMeasureSpace({"only"}, {1.0}), {fixtures::triangle()});
    auto r = essential_intersection(MF);
    REQUIRE(!r.empty());
    std::mt19937 gen(9);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    for (int t = 0; t < 200; ++t) {
        const Vec z = v2(dist(gen), dist(gen));
        CHECK(r.value->contains(z) == fixtures::triangle().contains(z));
    }
}

TEST_CASE("essential_intersection: order independent membership") {
    SampledMultifunction a(half_half(), {fixtures::bowtie_up(), fixtures::half_plane(0, -1, 0.5)});
    SampledMultifunction b(half_half(), {fixtures::half_plane(0, -1, 0.5), fixtures::bowtie_up()});
    auto ra = essential_intersection(a);
    auto rb = essential_intersection(b);
    REQUIRE(!ra.empty());
    REQUIRE(!rb.empty());
    std::mt19937 gen(13);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int t = 0; t < 200; ++t) {
        const Vec z = v2(dist(gen), dist(gen));
        CHECK(ra.value->contains(z) == rb.value->contains(z));
    }
}

TEST_CASE("essential_intersection: empty result is flagged, not thrown") {
    Mat A1(1, 1), A2(1, 1);
    A1 << 1;
    A2 << -1;
    Vec b1(1), b2(1);
    b1 << -1;  // x <= -1
    b2 << -1;  // x >= 1
    SampledMultifunction MF(half_half(),
                            {SetValue({Polyhedron(A1, b1)}), SetValue({Polyhedron(A2, b2)})});
    CHECK(essential_intersection(MF).empty());
}

TEST_CASE("multifunction validation and shifting") {
    CHECK_THROWS_AS(SampledMultifunction(half_half(), {fixtures::quadrant()}), Error);
    CHECK_THROWS_AS(
        SampledMultifunction(half_half(), {fixtures::quadrant(), fixtures::lower_ray()}), Error);
    SampledMultifunction MF(half_half(),
                            {fixtures::half_plane(1, 0), fixtures::half_plane(0, 1)});
    auto shifted = MF.shifted({v2(0, 0.5), v2(0, 0)});
    CHECK(shifted.value(0).contains(v2(-1, -0.5)) ==
          MF.value(0).contains(v2(-1, -0.5) + v2(0, 0.5)));
}

TEST_CASE("perturbation schedule: norms and monotonicity") {
    auto space = half_half();
    std::vector<std::vector<Vec>> terms;
    for (int k = 1; k <= 5; ++k) terms.push_back({v2(0, 1.0 / k), v2(0, 0)});
    PerturbationSchedule sched(space, terms);
    REQUIRE(sched.count() == 5);
    // ||a_k||_2 under weights (1/2,1/2): sqrt(0.5) / k
    for (int k = 0; k < 5; ++k)
        CHECK(sched.norm(k) == doctest::Approx(std::sqrt(0.5) / (k + 1)).epsilon(1e-12));

    std::vector<std::vector<Vec>> bad = {{v2(0, 0.1), v2(0, 0)}, {v2(0, 1), v2(0, 0)}};
    CHECK_THROWS_AS(PerturbationSchedule(space, bad), Error);

    auto scaled = PerturbationSchedule::scaled(space, {v2(0, 1), v2(0, 0)}, {1.0, 0.5, 0.25});
    CHECK(scaled.count() == 3);
    CHECK((scaled.term(1)[0] - v2(0, 0.5)).norm() < 1e-15);

    std::vector<Vec> a = {v2(3, 4), v2(0, 0)};
    CHECK(weighted_p_norm(space, a, 2.0) == doctest::Approx(5.0 / std::sqrt(2.0)));
}
