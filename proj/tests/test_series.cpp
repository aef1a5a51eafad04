#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "superdenom/errors.hpp"
#include "superdenom/identity.hpp"
#include "superdenom/series.hpp"

using namespace superdenom;
using testing_support::build;

namespace {

// Compares a library series with an oracle polynomial anchored at `ref`.
void check_against(const Series& s, const oracle::Poly& p, const std::vector<Weight>& basis,
                   const Weight& ref) {
    std::size_t nonzero = 0;
    for (const auto& [v, c] : p.c) {
        CAPTURE(v);
        CHECK(s.coefficient(oracle::exponent(basis, ref, v)) == c);
        ++nonzero;
    }
    std::size_t lib = 0;
    for (const auto& t : s.sorted_terms())
        if (t.second != 0) ++lib;
    CHECK(lib == nonzero);
}

} // namespace

TEST_CASE("window geometry") {
    auto rs = build(Family::A, 2, 1);
    Window w = finite_window(rs, 3);
    auto pts = w.admissible_points();
    // nonnegative pairs with sum <= 3
    CHECK(pts.size() == 10);
    for (std::size_t i = 1; i < pts.size(); ++i)
        CHECK(height_of(pts[i - 1], 2) <= height_of(pts[i], 2));
    Offsets v{};
    v[0] = 4;
    v[1] = -2;
    CHECK_FALSE(w.admissible(v));
    CHECK_FALSE(w.reachable(v));
    v[0] = 3;
    CHECK(w.reachable(v));
    CHECK_FALSE(w.offsets_of(rs.rho + Scalar(1, 2) * rs.pi[0]).has_value());
    CHECK(w.exponent(*w.offsets_of(rs.rho - rs.pi[1])) == rs.rho - rs.pi[1]);
}

TEST_CASE("geometric series telescopes") {
    auto rs = build(Family::A, 2, 1);
    Window w = finite_window(rs, 6);
    Series s = Series::monomial(w, rs.rho);
    s.mul_binomial_power(-1, rs.theta, -1); // sum_k e^{-k theta}
    CHECK(s.coefficient(rs.rho - Scalar(3) * rs.theta) == 1);
    CHECK(s.coefficient(rs.rho - rs.pi[0]) == 0);
    s.mul_binomial_power(-1, rs.theta, 1);
    s.restrict_to_window();
    CHECK(first_mismatch(s, Series::monomial(w, rs.rho)) == std::nullopt);
}

TEST_CASE("binomial factors") {
    auto rs = build(Family::A, 2, 1);
    Window w = finite_window(rs, 5);
    const Weight& b = rs.pi[0];

    Series s = Series::monomial(w, rs.rho);
    s.mul_binomial_power(1, b, -1);
    for (int j = 0; j <= 5; ++j) CHECK(s.coefficient(rs.rho - Scalar(j) * b) == (j % 2 ? -1 : 1));

    // 1/(1 + e^{g}) = e^{-g} sum (-1)^j e^{-j g} for g positive
    Series t = Series::monomial(w, rs.rho);
    t.mul_binomial_power(1, -b, -1);
    CHECK(t.coefficient(rs.rho) == 0);
    for (int j = 1; j <= 5; ++j) CHECK(t.coefficient(rs.rho - Scalar(j) * b) == (j % 2 ? 1 : -1));

    Series u = Series::monomial(w, rs.rho, 3);
    u.mul_binomial_power(-1, b, 0);
    CHECK(u.size() == 1);
    CHECK(u.coefficient(rs.rho) == 3);

    Series p = Series::monomial(w, rs.rho);
    p.mul_binomial_power(-1, b, 3); // (1 - x)^3
    CHECK(p.coefficient(rs.rho - b) == -3);
    CHECK(p.coefficient(rs.rho - Scalar(2) * b) == 3);
    CHECK(p.coefficient(rs.rho - Scalar(3) * b) == -1);
}

TEST_CASE("products of series") {
    auto rs = build(Family::A, 2, 1);
    Window w(rs.frame, rs.form->zero(), 2);
    Series a = Series::monomial(w, rs.form->zero());
    a.mul_binomial_power(1, rs.pi[0], 1);
    Series b = Series::monomial(w, rs.form->zero());
    b.mul_binomial_power(1, rs.pi[1], 1);
    Series ab = mul(a, b);
    CHECK(ab.coefficient(rs.form->zero()) == 1);
    CHECK(ab.coefficient(-rs.pi[0]) == 1);
    CHECK(ab.coefficient(-rs.pi[1]) == 1);
    CHECK(ab.coefficient(-rs.pi[0] - rs.pi[1]) == 1);
    CHECK(ab.size() == 4);

    Series unit = Series::monomial(w, rs.form->zero());
    CHECK(first_mismatch(mul(ab, unit), ab) == std::nullopt);

    auto other = build(Family::A, 3, 1);
    Series foreign = Series::monomial(finite_window(other, 2), other.rho);
    CHECK_THROWS_AS(mul(ab, foreign), FrameError);
    CHECK_THROWS_AS(first_mismatch(ab, Series::monomial(finite_window(rs, 3), rs.rho)), FrameError);
}

TEST_CASE("coefficient lookup") {
    auto rs = build(Family::A, 2, 1);
    Window w = affine_window(rs, 1);
    Series one = Series::monomial(w, rs.rho_hat);
    CHECK(one.coefficient_at(Offsets{}) == 1);
    CHECK_THROWS_AS(one.coefficient(rs.rho_hat + rs.pi[0]), WindowError);
    CHECK_THROWS_AS(one.coefficient(rs.rho_hat - Scalar(2) * rs.pi[0]), WindowError);

    Series lhs = affine_lhs(rs, 1);
    CHECK(lhs.coefficient(rs.rho_hat) == 1);
    CHECK(lhs.coefficient(rs.rho_hat - (rs.delta() - rs.theta)) == -1);
    CHECK(lhs.coefficient(rs.rho_hat - rs.pi[0]) == -1);
}

TEST_CASE("arithmetic and shifts") {
    auto rs = build(Family::A, 2, 1);
    Window w = finite_window(rs, 4);
    Series a = Series::monomial(w, rs.rho - rs.pi[0], 2);
    Series b = Series::monomial(w, rs.rho - rs.pi[0], 5);
    a += b;
    CHECK(a.coefficient(rs.rho - rs.pi[0]) == 7);
    a -= b;
    a.scale(-3);
    CHECK(a.coefficient(rs.rho - rs.pi[0]) == -6);
    a.shift(-rs.pi[1]);
    CHECK(a.coefficient(rs.rho - rs.pi[0] - rs.pi[1]) == -6);
    a.shift(rs.pi[1]);
    CHECK(a.coefficient(rs.rho - rs.pi[0]) == -6);

    Series t = Series::monomial(w, rs.rho);
    t.mul_binomial_power(1, rs.pi[0], -1);
    CHECK(t.truncated());
    CHECK_THROWS_AS(t.shift(rs.pi[0]), WindowError);
    CHECK_THROWS_AS(t.shift(Scalar(1, 2) * rs.pi[0]), WindowError);
}

TEST_CASE("group action on series") {
    auto rs = build(Family::A, 2, 1);
    const auto& f = *rs.form;
    Window w = affine_window(rs, 3);
    Series e = Series::monomial(w, rs.rho_hat);
    auto id = AffineWeylElement::identity(f.finite_dim() + 2);
    CHECK(first_mismatch(act(id, e, w), e) == std::nullopt);
    Series se = act(reflection(f, rs.theta), e, w);
    CHECK(se.coefficient(rs.rho_hat) == 1);
    CHECK(se.size() == 1);
    Series te = act(translation(f, rs.theta), e, w);
    CHECK(te.coefficient(rs.rho_hat + rs.theta - rs.delta()) == 1);
    CHECK(te.size() == 1);

    Series full = affine_lhs(rs, 3);
    CHECK_THROWS_AS(act(translation(f, rs.theta), full, w), WindowError);

    // a term above the reference is reachable but not admissible
    Series above = Series::monomial(w, rs.rho_hat + rs.affine_pi[0]);
    CHECK(above.raw_terms().size() == 1);
    above.restrict_to_window();
    CHECK(above.clipped());
    CHECK(above.empty());
    CHECK_THROWS_AS(above.mul_binomial_power(1, rs.affine_pi[0], 1), WindowError);
    CHECK_THROWS_AS(act(reflection(f, rs.theta), above, w), WindowError);
    Series kept = Series::monomial(w, rs.rho_hat);
    kept.restrict_to_window();
    CHECK_FALSE(kept.clipped());
}

TEST_CASE("factored action matches the expanded action on monomials") {
    auto rs = build(Family::C, 2);
    const auto& f = *rs.form;
    FactoredSeries base;
    base.monomial = rs.rho;
    for (const auto& y : generate_finite_sharp(rs)) {
        auto moved = base.act(y);
        CHECK(moved.monomial == y.apply(rs.rho));
        CHECK(moved.sign == 1);
    }
    FactoredSeries one_factor{1, rs.rho, {{-1, rs.theta, 1}}};
    auto r = one_factor.act(reflection(f, rs.theta));
    Series ex = r.expand(finite_window(rs, 6));
    // s_theta(e^rho (1 - e^{-theta})) = e^{s rho} (1 - e^{theta}) = -e^{s rho + theta}(1 - e^{-theta})
    Weight top = reflection(f, rs.theta).apply(rs.rho) + rs.theta;
    CHECK(ex.coefficient(top) == -1);
    CHECK(ex.coefficient(top - rs.theta) == 1);
}

TEST_CASE("finite denominators against the dense oracle") {
    for (const auto& sp : testing_support::matrix()) {
        auto rs = build_root_system(sp);
        CAPTURE(sp.name());
        const long N = 6;
        std::vector<oracle::AffineRoot> pos;
        for (const auto& r : rs.positive) pos.push_back({r.weight, r.parity, 1});
        auto p = oracle::denominator(rs.pi, pos, N);
        check_against(finite_lhs(rs, N), p, rs.pi, rs.rho);
    }
}

TEST_CASE("affine denominators against the dense oracle") {
    for (const auto& sp : testing_support::matrix()) {
        auto rs = build_root_system(sp);
        CAPTURE(sp.name());
        const long hd = rs.affine_frame->height(rs.delta()).get_num().get_si();
        const long N = std::min<long>(hd + 2, 9);
        auto roots = oracle::affine_roots(rs, N, int(rs.pi.size()));
        auto p = oracle::denominator(rs.affine_pi, roots, N);
        check_against(affine_lhs(rs, N), p, rs.affine_pi, rs.rho_hat);
    }
}

TEST_CASE("first mismatch ordering") {
    auto rs = build(Family::A, 2, 1);
    Window w = finite_window(rs, 4);
    Series a(w), b(w);
    Offsets hi{}, lo{};
    hi[0] = 3;
    lo[1] = 1;
    a.add(hi, 2);
    a.add(lo, 1);
    b.add(hi, 5);
    auto m = first_mismatch(a, b);
    REQUIRE(m.has_value());
    CHECK(m->offsets == lo);
    CHECK(m->lhs == 1);
    CHECK(m->rhs == 0);
    CHECK(m->exponent == rs.rho - rs.pi[1]);
}
