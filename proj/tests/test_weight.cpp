#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "superdenom/errors.hpp"
#include "superdenom/weyl.hpp"

using namespace superdenom;
using testing_support::build;

TEST_CASE("affine pairing normalization") {
    BilinearForm f(2, 1, 1, -1);
    CHECK(f.pair(f.delta(), f.lambda0()) == 1);
    CHECK(f.norm(f.delta()) == 0);
    CHECK(f.norm(f.lambda0()) == 0);
    CHECK(f.pair(f.delta(), f.eps(1)) == 0);
    CHECK(f.pair(f.lambda0(), f.del(1)) == 0);
}

TEST_CASE("isotropic and even norms in A(2,1)") {
    BilinearForm f(2, 1, 1, -1);
    Weight b = f.eps(1) - f.del(1);
    CHECK(f.norm(b) == 0);
    Weight theta = f.eps(1) - f.eps(2);
    // (e1 - e2, e1 - e2) = 1 + 1 by hand
    CHECK(f.norm(theta) == 2);
    CHECK(f.norm(f.del(1) - f.eps(2)) == 0);
    // only -(del1, del1) survives
    CHECK(f.pair(b, f.del(1) - f.eps(2)) == 1);
}

TEST_CASE("sum-zero eps basis keeps canonical coordinates") {
    BilinearForm f(3, 1, 1, Scalar(-2, 3), true);
    Weight s = f.eps(1) + f.eps(2) + f.eps(3);
    CHECK(s.is_zero());
    CHECK(f.eps(1) + f.eps(2) == -f.eps(3));
    // Gram matrix delta_ij - 1/3
    CHECK(f.norm(f.eps(1)) == Scalar(2, 3));
    CHECK(f.pair(f.eps(1), f.eps(2)) == Scalar(-1, 3));
    CHECK(f.norm(f.eps(1) - f.eps(2)) == 2);
    CHECK(f.norm(f.del(1)) == Scalar(-2, 3));
}

TEST_CASE("mixing weights of different bases is rejected") {
    BilinearForm f(2, 1, 1, -1);
    BilinearForm g(3, 1, 1, -1);
    CHECK_THROWS_AS(f.pair(f.eps(1), g.eps(1)), ConfigError);
}

TEST_CASE("format is readable") {
    BilinearForm f(2, 1, 1, -1);
    CHECK(f.format(f.eps(1) - f.del(1) + Scalar(2) * f.delta()) == "eps1-del1+2delta");
    CHECK(f.format(f.zero()) == "0");
}

TEST_CASE("A(2,1) affine frame coordinates and heights") {
    auto rs = build(Family::A, 2, 1);
    const auto& fr = *rs.affine_frame;
    for (std::size_t i = 0; i < rs.affine_pi.size(); ++i) {
        auto c = fr.int_coords(rs.affine_pi[i]);
        for (std::size_t j = 0; j < c.size(); ++j) CHECK(c[j] == (i == j ? 1 : 0));
        CHECK(fr.height(rs.affine_pi[i]) == 1);
    }
    auto d = fr.int_coords(rs.delta());
    CHECK(d == std::vector<long>{1, 1, 1});
    CHECK(fr.height(rs.delta()) == 3);
    CHECK(fr.height(rs.form->zero()) == 0);

    Weight a0 = rs.delta() - rs.theta;
    Weight s0rho = reflection(*rs.form, a0).apply(rs.rho_hat);
    CHECK(s0rho == rs.rho_hat - a0);
    CHECK(fr.height(rs.rho_hat - s0rho) == 1);
}

TEST_CASE("frame rejects weights outside the span") {
    auto rs = build(Family::A, 2, 1);
    CHECK_THROWS_AS(rs.frame->coords(rs.lambda0()), SpanError);
    CHECK_FALSE(rs.frame->try_coords(rs.lambda0()).has_value());
    CHECK_THROWS_AS(rs.frame->int_coords(Scalar(1, 2) * rs.pi[0]), SpanError);
}

TEST_CASE("frame coordinates agree with an elimination oracle") {
    std::mt19937 gen(7);
    std::uniform_int_distribution<int> dist(-5, 5);
    for (const auto& sp : testing_support::matrix()) {
        auto rs = build_root_system(sp);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<long> x(rs.affine_pi.size());
            for (auto& v : x) v = dist(gen);
            Weight w = rs.affine_frame->combine(x);
            auto ref = oracle::coords(rs.affine_pi, w);
            REQUIRE(ref.has_value());
            CHECK(rs.affine_frame->coords(w) == *ref);
            CHECK(rs.affine_frame->int_coords(w) == x);
        }
    }
}

TEST_CASE("exact linear algebra") {
    std::vector<std::vector<Scalar>> a{{2, 1}, {1, 3}};
    CHECK(determinant(a) == 5);
    auto x = solve_linear(a, {3, 4});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 1);
    CHECK_FALSE(solve_linear({{1, 2}, {2, 4}}, {1, 1}).has_value());
    CHECK(determinant({{1, 2}, {2, 4}}) == 0);
    std::vector<std::vector<Scalar>> p{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
    CHECK(determinant(p) == -1);
}
