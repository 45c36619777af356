#include <catch_amalgamated.hpp>

#include <cmath>

#include "heinslab/calculus.hpp"
#include "heinslab/fixtures.hpp"
#include "heinslab/matrix.hpp"
#include "heinslab/verify.hpp"

using namespace heinslab;

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
    const auto [x, w] = gauss_legendre(5);
    for (int k = 0; k <= 9; ++k) { // 5 nodes are exact through degree 9
        double acc = 0.0;
        for (std::size_t q = 0; q < x.size(); ++q) acc += w[q] * std::pow(x[q], k);
        REQUIRE(acc == Catch::Approx(1.0 / (k + 1)).epsilon(1e-14));
    }
    const auto [x32, w32] = gauss_legendre(32);
    double total = 0.0;
    for (double v : w32) total += v;
    CHECK(total == Catch::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(gauss_legendre(0), error);
}

TEST_CASE("contour Jacobian on closed-form derivatives") {
    const domain_spec disk = domain_spec::unit_disk();
    SECTION("quadratic") {
        const holomorphic_map f = parse_map({"z1^2"}, 1, 0);
        const complex_matrix j = jacobian_contour(f, disk, cvec{{0.3, 0.0}}, {}, 0.1, 32);
        CHECK(std::abs(j.at(0, 0) - cplx{0.6, 0.0}) < 1e-12);
    }
    SECTION("constant maps have zero derivative") {
        const holomorphic_map f = parse_map({"0.25"}, 1, 0);
        const complex_matrix j = jacobian_contour(f, disk, cvec{{0.3, 0.0}}, {}, 0.1, 32);
        CHECK(std::abs(j.at(0, 0)) < 1e-14);
    }
    SECTION("exponential") {
        const holomorphic_map f = parse_map({"exp(z1)"}, 1, 0);
        const complex_matrix j = jacobian_contour(f, disk, cvec{{0.0, 0.0}}, {}, 0.5, 32);
        CHECK(std::abs(j.at(0, 0) - cplx{1.0, 0.0}) < 1e-12);
    }
    SECTION("circle containment is enforced") {
        const holomorphic_map f = parse_map({"z1^2"}, 1, 0);
        CHECK_THROWS_AS(jacobian_contour(f, disk, cvec{{0.8, 0.0}}, {}, 0.3, 32),
                        circle_leaves_domain);
        CHECK_THROWS_AS(jacobian_contour(f, disk, cvec{{0.0, 0.0}}, {}, 0.1, 4), error);
    }
}

TEST_CASE("symbolic Jacobian blocks") {
    const holomorphic_map fam = parse_map({"(z1^2 + y1)/4"}, 1, 1);
    const cvec y{{0.2, 0.0}};
    const complex_matrix jp =
        jacobian_symbolic(fam, cvec{{0.3, 0.0}}, y, jacobian_block::params);
    CHECK(std::abs(jp.at(0, 0) - cplx{0.25, 0.0}) < 1e-15);
    const complex_matrix js = jacobian_symbolic(fam, cvec{{0.0, 0.0}}, y, jacobian_block::space);
    CHECK(std::abs(js.at(0, 0)) < 1e-15);

    const holomorphic_map lin = parse_map({"0.5*z2", "0.25*z1 + 0.1"}, 2, 0);
    const complex_matrix jl = jacobian_symbolic(lin, cvec{{0.1, 0.0}, {0.2, 0.0}});
    CHECK(jl.at(0, 0) == cplx{0.0, 0.0});
    CHECK(jl.at(0, 1) == cplx{0.5, 0.0});
    CHECK(jl.at(1, 0) == cplx{0.25, 0.0});
    CHECK(jl.at(1, 1) == cplx{0.0, 0.0});
}

TEST_CASE("spectral radius on closed-form cases") {
    complex_matrix one(1, 1);
    one.at(0, 0) = {0.5, 0.0};
    CHECK(spectral_radius(one) == 0.5);

    CHECK(spectral_radius(complex_matrix(3, 3)) == 0.0);

    complex_matrix two(2, 2);
    two.at(0, 1) = {0.5, 0.0};
    two.at(1, 0) = {0.25, 0.0};
    // eigenvalues +-sqrt(0.125)
    CHECK(std::abs(spectral_radius(two) - std::sqrt(0.125)) < 1e-9);
    CHECK(std::abs(spectral_radius(two) - 0.35355339059327373) < 1e-9);

    complex_matrix nil(2, 2);
    nil.at(0, 1) = {1.0, 0.0};
    CHECK(spectral_radius(nil) == 0.0);

    complex_matrix tri(3, 3);
    tri.at(0, 0) = {0.5, 0.0};
    tri.at(1, 1) = {0.1, 0.3};
    tri.at(2, 2) = {-0.4, 0.0};
    tri.at(0, 1) = {2.0, 0.0};
    tri.at(0, 2) = {-1.0, 1.0};
    tri.at(1, 2) = {3.0, 0.0};
    CHECK(std::abs(spectral_radius(tri) - 0.5) < 1e-9); // triangular: spectrum on the diagonal

    CHECK_THROWS_AS(spectral_radius(complex_matrix(2, 3)), non_square);
}

TEST_CASE("spectral radius matches characteristic roots on random matrices") {
    split_mix64 rng(2024);
    double worst = 0.0;
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 1 + rep % 3;
        complex_matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = 0.8 * rng.next_complex_box();
        const double a = spectral_radius(m);
        const double b = vdetail::closed_form_spectral_radius(m);
        worst = std::max(worst, std::abs(a - b) / std::max(1.0, b));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("linear solve and inverse") {
    complex_matrix a(2, 2);
    a.at(0, 0) = {1.0, 1.0};
    a.at(0, 1) = {2.0, 0.0};
    a.at(1, 0) = {0.0, -1.0};
    a.at(1, 1) = {1.5, 0.5};
    const complex_matrix inv = inverse(a);
    const complex_matrix prod = a * inv;
    CHECK(max_abs_diff(prod, complex_matrix::identity(2)) < 1e-14);

    const cvec rhs{{1.0, 0.0}, {0.0, 2.0}};
    const cvec x = solve(a, rhs);
    const cvec back = a * x;
    CHECK(euclidean_distance(back, rhs) < 1e-14);

    complex_matrix sing(2, 2);
    sing.at(0, 0) = {1.0, 0.0};
    sing.at(0, 1) = {2.0, 0.0};
    sing.at(1, 0) = {2.0, 0.0};
    sing.at(1, 1) = {4.0, 0.0};
    CHECK_THROWS_AS(inverse(sing), singular_matrix);
}

TEST_CASE("operator norm") {
    complex_matrix m(2, 2);
    m.at(0, 1) = {1.0, 0.0};
    CHECK(operator_norm(m) == Catch::Approx(1.0).epsilon(1e-12));
    m.at(1, 0) = {2.0, 0.0};
    CHECK(operator_norm(m) == Catch::Approx(2.0).epsilon(1e-12)); // singular values 2 and 1
    CHECK(operator_norm(m) <= frobenius_norm(m) + 1e-12);
}

TEST_CASE("segment factorization on closed forms") {
    SECTION("linear maps factor exactly") {
        const holomorphic_map h = parse_map({"0.3*z1 + 0.7*z2", "0.1*z1 - 0.2*z2"}, 2, 0);
        const cvec p0{{0.1, 0.1}, {-0.2, 0.0}};
        const cvec z{{0.4, -0.3}, {0.2, 0.2}};
        const complex_matrix a = segment_factorization(h, p0, z, 8);
        CHECK(std::abs(a.at(0, 0) - cplx{0.3, 0.0}) < 1e-14);
        CHECK(std::abs(a.at(0, 1) - cplx{0.7, 0.0}) < 1e-14);
        CHECK(std::abs(a.at(1, 0) - cplx{0.1, 0.0}) < 1e-14);
        CHECK(std::abs(a.at(1, 1) - cplx{-0.2, 0.0}) < 1e-14);
    }
    SECTION("h(z) = z^2 from the origin gives A(z) = z") {
        const holomorphic_map h = parse_map({"z1^2"}, 1, 0);
        const cvec p0{{0.0, 0.0}};
        for (const cplx z : {cplx{0.5, 0.0}, cplx{0.2, 0.7}, cplx{-0.3, -0.1}}) {
            const complex_matrix a = segment_factorization(h, p0, cvec{z}, 16);
            CHECK(std::abs(a.at(0, 0) - z) < 1e-12);
        }
    }
    SECTION("h = exp from 0 to 1 integrates to e - 1") {
        const holomorphic_map h = parse_map({"exp(z1)"}, 1, 0);
        const complex_matrix a =
            segment_factorization(h, cvec{{0.0, 0.0}}, cvec{{1.0, 0.0}}, 16);
        CHECK(std::abs(a.at(0, 0) - cplx{std::exp(1.0) - 1.0, 0.0}) < 1e-12);
        CHECK(std::abs(a.at(0, 0) - cplx{1.718281828459045, 0.0}) < 1e-12);
    }
    SECTION("preconditions") {
        const holomorphic_map h = parse_map({"z1^2"}, 1, 0);
        CHECK_THROWS_AS(segment_factorization(h, cvec{{0.0, 0.0}}, cvec{{0.5, 0.0}}, 2), error);
        const holomorphic_map fam = parse_map({"z1 + y1"}, 1, 1);
        CHECK_THROWS_AS(segment_factorization(fam, cvec{{0.0, 0.0}}, cvec{{0.5, 0.0}}, 8),
                        dimension_mismatch);
    }
}

TEST_CASE("factorization residual and limit on random maps") {
    split_mix64 rng(91);
    double worst_resid = 0.0, worst_limit = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 1 + rep % 3;
        random_map_options opts;
        opts.degree = 4;
        opts.with_exp = rep % 4 == 0;
        const holomorphic_map h = random_polynomial_map(rng, n, 0, opts);
        const domain_spec dom = n == 1 ? domain_spec::unit_disk() : domain_spec::unit_polydisk(n);
        const cvec p0 = vdetail::random_interior(rng, dom, 0.9);
        const cvec z = vdetail::random_interior(rng, dom, 0.9);

        const complex_matrix a = segment_factorization(h, p0, z, 32);
        const cvec lhs = vec_sub(h.evaluate(z), h.evaluate(p0));
        const cvec rhs = a * vec_sub(z, p0);
        worst_resid = std::max(worst_resid, euclidean_distance(lhs, rhs));

        const complex_matrix a0 = segment_factorization(h, p0, p0, 32);
        worst_limit = std::max(worst_limit, max_abs_diff(a0, jacobian_symbolic(h, p0)));
    }
    CHECK(worst_resid < 1e-10);
    CHECK(worst_limit < 1e-12);
}

TEST_CASE("Cauchy-estimate ratio bound on the nested polydisk pair") {
    split_mix64 rng(92);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 1 + rep % 3;
        random_map_options opts;
        opts.degree = 4;
        const holomorphic_map h = random_polynomial_map(rng, n, 0, opts);
        const domain_spec big = n == 1 ? domain_spec::unit_disk() : domain_spec::unit_polydisk(n);
        const domain_spec small =
            n == 1 ? domain_spec::disk({0.0, 0.0}, 0.5)
                   : domain_spec::polydisk(cvec(n, {0.0, 0.0}), std::vector<double>(n, 0.5));
        const cvec p0(n, cplx{0.0, 0.0});
        double sup_a = 0.0, sup_h = 0.0;
        for (int k = 0; k < 30; ++k) {
            const cvec z = vdetail::random_interior(rng, small, k < 20 ? 0.999 : 0.5);
            sup_a = std::max(sup_a, operator_norm(segment_factorization(h, p0, z, 32)));
        }
        for (int k = 0; k < 60; ++k) {
            const cvec w = vdetail::random_interior(rng, big, k < 45 ? 0.999 : 0.6);
            sup_h = std::max(sup_h, euclidean_norm(h.evaluate(w)));
        }
        REQUIRE(sup_a / sup_h <= 2.0 * static_cast<double>(n) + 1e-9);
    }
}

TEST_CASE("contour and symbolic Jacobians agree on random self-maps") {
    split_mix64 rng(93);
    double worst = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 1 + rep % 3;
        random_map_options opts;
        opts.degree = 3;
        opts.sup_bound = 0.8;
        opts.with_exp = rep % 5 == 0;
        const holomorphic_map f = random_polynomial_map(rng, n, 0, opts);
        const domain_spec dom = n == 1 ? domain_spec::unit_disk() : domain_spec::unit_polydisk(n);
        const cvec z = vdetail::random_interior(rng, dom, 0.5);
        const complex_matrix sym = jacobian_symbolic(f, z);
        const complex_matrix con =
            jacobian_contour(f, dom, z, {}, default_contour_radius(dom, z), 32);
        worst = std::max(worst, max_abs_diff(sym, con) / std::max(1.0, max_abs_entry(sym)));
    }
    CHECK(worst < 1e-9);
}
