#include <catch_amalgamated.hpp>

#include <cmath>

#include "heinslab/domain.hpp"
#include "heinslab/expr.hpp"
#include "heinslab/rng.hpp"
#include "heinslab/verify.hpp"

using namespace heinslab;

TEST_CASE("membership with margins") {
    const domain_spec disk = domain_spec::unit_disk();
    CHECK(contains(disk, cvec{{0.0, 0.0}}, 0.0));
    CHECK_FALSE(contains(disk, cvec{{0.95, 0.0}}, 0.1)); // 0.95 > 0.9
    CHECK(contains(disk, cvec{{0.85, 0.0}}, 0.1));
    CHECK_FALSE(contains(disk, cvec{{1.0, 0.0}}, 0.0));

    const domain_spec poly = domain_spec::unit_polydisk(2);
    CHECK_FALSE(contains(poly, cvec{{0.5, 0.0}, {0.99, 0.0}}, 0.05)); // second coordinate
    CHECK(contains(poly, cvec{{0.5, 0.0}, {0.9, 0.0}}, 0.05));

    CHECK_THROWS_AS(contains(disk, cvec{{0.0, 0.0}, {0.0, 0.0}}), dimension_mismatch);
}

TEST_CASE("domain validation") {
    CHECK_THROWS_AS(domain_spec::disk({0.0, 0.0}, -1.0), error);
    CHECK_THROWS_AS(domain_spec::disk({0.0, 0.0}, 0.0), error);
    CHECK_THROWS_AS(domain_spec::polydisk(cvec{{0.0, 0.0}, {0.0, 0.0}}, {1.0}), error);
    CHECK_THROWS_AS(domain_spec::ball(cvec{}, 1.0), error);
}

TEST_CASE("Poincare distance on the disk") {
    const domain_spec disk = domain_spec::unit_disk();
    CHECK(kobayashi_distance(disk, cvec{{0.0, 0.0}}, cvec{{0.0, 0.0}}) == 0.0);
    // closed form: arctanh(0.5)
    CHECK(kobayashi_distance(disk, cvec{{0.0, 0.0}}, cvec{{0.5, 0.0}}) ==
          Catch::Approx(std::atanh(0.5)).epsilon(1e-14));
    CHECK(kobayashi_distance(disk, cvec{{0.0, 0.0}}, cvec{{0.5, 0.0}}) ==
          Catch::Approx(0.5493061443340548).epsilon(1e-14));
    CHECK_THROWS_AS(kobayashi_distance(disk, cvec{{0.0, 0.0}}, cvec{{1.5, 0.0}}),
                    point_outside_domain);
}

TEST_CASE("polydisk distance is the max over coordinates") {
    const domain_spec poly = domain_spec::unit_polydisk(2);
    const double d = kobayashi_distance(poly, cvec{{0.0, 0.0}, {0.0, 0.0}},
                                        cvec{{0.5, 0.0}, {0.3, 0.0}});
    CHECK(d == Catch::Approx(std::max(std::atanh(0.5), std::atanh(0.3))).epsilon(1e-14));
    CHECK(d == Catch::Approx(0.5493061443340548).epsilon(1e-14));
}

TEST_CASE("ball distance reduces to the disk distance in dimension one") {
    const domain_spec disk = domain_spec::unit_disk();
    const domain_spec ball = domain_spec::unit_ball(1);
    split_mix64 rng(5);
    for (int k = 0; k < 100; ++k) {
        const cvec z = vdetail::random_interior(rng, disk, 0.9);
        const cvec w = vdetail::random_interior(rng, disk, 0.9);
        CHECK(kobayashi_distance(ball, z, w) ==
              Catch::Approx(kobayashi_distance(disk, z, w)).margin(1e-13));
    }
}

TEST_CASE("metric axioms on random samples") {
    split_mix64 rng(11);
    const std::vector<domain_spec> domains = {
        domain_spec::disk({0.2, 0.1}, 1.5),
        domain_spec::ball({cplx{0.0, 0.1}, cplx{-0.1, 0.0}}, 1.2),
        domain_spec::polydisk({cplx{0.1, 0.0}, cplx{0.0, 0.0}}, {1.0, 0.7}),
    };
    for (const domain_spec& dom : domains) {
        for (int rep = 0; rep < 200; ++rep) {
            const cvec a = vdetail::random_interior(rng, dom, 0.95);
            const cvec b = vdetail::random_interior(rng, dom, 0.95);
            const cvec c = vdetail::random_interior(rng, dom, 0.95);
            const double ab = kobayashi_distance(dom, a, b);
            REQUIRE(ab == kobayashi_distance(dom, b, a)); // symmetry, exact
            REQUIRE(kobayashi_distance(dom, a, a) == 0.0);
            REQUIRE(ab >= 0.0);
            REQUIRE(kobayashi_distance(dom, a, c) <= ab + kobayashi_distance(dom, b, c) + 1e-12);
        }
    }
}

TEST_CASE("normalization invariance") {
    split_mix64 rng(13);
    const domain_spec dom = domain_spec::disk({0.3, -0.2}, 2.0);
    const domain_spec unit = domain_spec::unit_disk();
    for (int rep = 0; rep < 200; ++rep) {
        const cvec z = vdetail::random_interior(rng, dom, 0.95);
        const cvec w = vdetail::random_interior(rng, dom, 0.95);
        const cvec zu{(z[0] - dom.center()[0]) / 2.0};
        const cvec wu{(w[0] - dom.center()[0]) / 2.0};
        REQUIRE(std::abs(kobayashi_distance(dom, z, w) - kobayashi_distance(unit, zu, wu)) <=
                1e-12);
    }
}

TEST_CASE("holomorphic self-maps contract the distance") {
    const holomorphic_map f = parse_map({"0.3 + 0.4*z1"}, 1, 0);
    const domain_spec disk = domain_spec::unit_disk();
    split_mix64 rng(17);
    for (int rep = 0; rep < 200; ++rep) {
        const cvec z = vdetail::random_interior(rng, disk, 0.97);
        const cvec w = vdetail::random_interior(rng, disk, 0.97);
        const cvec fz = f.evaluate(z), fw = f.evaluate(w);
        REQUIRE(kobayashi_distance(disk, fz, fw) <= kobayashi_distance(disk, z, w) + 1e-12);
    }
}

TEST_CASE("sampling is deterministic and honors the shell") {
    const domain_spec disk = domain_spec::unit_disk();
    CHECK_THROWS_AS(sample_points(disk, 0, 1), error);
    CHECK_THROWS_AS(sample_points(disk, 10, 1, 1.5), error);

    const auto a = sample_points(disk, 50, 42);
    const auto b = sample_points(disk, 50, 42);
    REQUIRE(a.size() == 50);
    for (std::size_t k = 0; k < a.size(); ++k) REQUIRE(a[k] == b[k]);
    CHECK(sample_points(disk, 50, 43) != a);

    for (const cvec& p : sample_points(disk, 200, 7, 0.99)) {
        const double r = std::abs(p[0]);
        REQUIRE(r >= 0.99);
        REQUIRE(r < 1.0);
    }
    for (const cvec& p : a) REQUIRE(contains(disk, p, 0.0));

    const domain_spec ball = domain_spec::unit_ball(3);
    for (const cvec& p : sample_points(ball, 100, 7, 0.95)) {
        REQUIRE(euclidean_norm(p) >= 0.95);
        REQUIRE(euclidean_norm(p) < 1.0);
    }
    for (const cvec& p : sample_points(ball, 100, 9)) REQUIRE(contains(ball, p, 0.0));
}

TEST_CASE("near-boundary probes press against the boundary") {
    const domain_spec poly = domain_spec::polydisk({cplx{0.5, 0.0}, cplx{0.0, 0.0}}, {2.0, 0.5});
    const auto probes = near_boundary_probes(poly);
    REQUIRE(probes.size() == 4);
    for (const cvec& p : probes) {
        REQUIRE(contains(poly, p, 0.0));
        REQUIRE(boundary_distance(poly, p) < 1e-11);
    }
}
