#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "oracles.hpp"
#include "superdenom/errors.hpp"
#include "superdenom/identity.hpp"

using namespace superdenom;
using testing_support::build;

namespace {

long delta_height(const RootSystem& rs) {
    return rs.affine_frame->height(rs.delta()).get_num().get_si();
}

// Even affine simple roots by brute force: even real positive roots that are
// not a sum of two even positive roots (imaginary ones included).
std::set<Weight> even_simple_oracle(const RootSystem& rs) {
    const long bound = 2 * delta_height(rs);
    auto roots = oracle::affine_roots(rs, bound, 1);
    std::set<Weight> even;
    for (const auto& r : roots)
        if (r.parity == Parity::even) even.insert(r.root);
    std::set<Weight> out;
    for (const auto& a : even) {
        if (a.finite_part_zero() || oracle::height(oracle::int_coords(rs.affine_pi, a)) > delta_height(rs))
            continue;
        bool split = false;
        for (const auto& b : even)
            if (b != a && even.count(a - b)) split = true;
        if (!split) out.insert(a);
    }
    return out;
}

} // namespace

TEST_CASE("A(2,1) finite denominator by hand") {
    auto rs = build(Family::A, 2, 1);
    Series lhs = finite_lhs(rs, 4);
    CHECK(lhs.coefficient(rs.rho) == 1);
    CHECK(lhs.coefficient(rs.rho - rs.pi[0]) == -1);
    // (1 - ab)/((1 + a)(1 + b)) at ab: -1 from the numerator, +1 from a.b
    CHECK(lhs.coefficient(rs.rho - rs.theta) == 0);
}

TEST_CASE("A(2,1) finite right-hand side against the partial fraction") {
    // (1 - ab)/((1 + a)(1 + b)) = 1/(1 + a) - b/(1 + b)
    auto rs = build(Family::A, 2, 1);
    const long N = 8;
    auto p = oracle::binomial(2, N, 1, {1, 0}, -1);
    auto q = oracle::binomial(2, N, 1, {0, 1}, -1);
    oracle::Poly want = p;
    for (const auto& [v, c] : q.c) {
        std::vector<long> u{v[0], v[1] + 1};
        if (oracle::height(u) <= N) want.c[u] -= c;
    }
    Series rhs = finite_rhs(rs, N);
    for (const auto& [v, c] : want.c) CHECK(rhs.coefficient(oracle::exponent(rs.pi, rs.rho, v)) == c);
    CHECK(rhs.coefficient(rs.rho) == 1);
    CHECK(first_mismatch(rhs, finite_lhs(rs, N)) == std::nullopt);
}

TEST_CASE("height zero windows hold a single monomial") {
    auto rs = build(Family::B, 2, 2);
    CHECK(finite_lhs(rs, 0).size() == 1);
    CHECK(finite_rhs(rs, 0).coefficient(rs.rho) == 1);
    CHECK(affine_lhs(rs, 0).coefficient(rs.rho_hat) == 1);
    CHECK(affine_rhs_sharp(rs, 0).coefficient(rs.rho_hat) == 1);
    Verifier v(rs, 0);
    CHECK(v.affine_identity().passed);
    CHECK(v.finite_identity().passed);
}

TEST_CASE("A(2,1) affine sides at height one") {
    auto rs = build(Family::A, 2, 1);
    Series rhs = affine_rhs_sharp(rs, 1);
    CHECK(rhs.coefficient(rs.rho_hat) == 1);
    // H_1 = {id, s_theta, s_0, s_0 s_theta}; each simple root appears once with sign -1
    for (const auto& a : rs.affine_pi) CHECK(rhs.coefficient(rs.rho_hat - a) == -1);
    CHECK(first_mismatch(rhs, affine_lhs(rs, 1)) == std::nullopt);
    CHECK(enumerate_affine_sharp(rs, 1).size() == 4);
}

TEST_CASE("finite identity across the matrix") {
    for (const auto& sp : testing_support::matrix()) {
        auto rs = build_root_system(sp);
        CAPTURE(sp.name());
        CHECK(first_mismatch(finite_lhs(rs, 6), finite_rhs(rs, 6)) == std::nullopt);
    }
}

TEST_CASE("affine identity reaches the imaginary roots") {
    for (const auto& sp : testing_support::matrix()) {
        auto rs = build_root_system(sp);
        CAPTURE(sp.name());
        const long N = delta_height(rs) + 1;
        Series lhs = affine_lhs(rs, N);
        Series rhs = affine_rhs_sharp(rs, N);
        CHECK(first_mismatch(lhs, rhs) == std::nullopt);
        const Scalar rr = rs.form->norm(rs.rho_hat);
        for (const auto& w : lhs.support()) CHECK(rs.form->norm(w) == rr);
        for (const auto& w : rhs.support()) CHECK(rs.form->norm(w) == rr);
    }
}

TEST_CASE("translation form agrees with the sharp form") {
    for (auto sp : {testing_support::spec(Family::A, 2, 1), testing_support::spec(Family::C, 2)}) {
        auto rs = build_root_system(sp);
        auto t = affine_rhs_translation(rs, 4, 4);
        CHECK(t.stabilized);
        CHECK(t.shells_used <= 4);
        CHECK(t.translations_per_shell.size() == std::size_t(t.shells_used));
        CHECK(first_mismatch(t.sum, affine_rhs_sharp(rs, 4)) == std::nullopt);
    }
}

TEST_CASE("odd reflections preserve R e^rho") {
    for (auto sp : {testing_support::spec(Family::A, 3, 2), testing_support::spec(Family::B, 1, 1),
                    testing_support::spec(Family::G3)}) {
        auto rs = build_root_system(sp);
        Series ref = finite_lhs(rs, 6);
        for (const auto& ss : explore_theta(start_system(rs, false), 3).systems)
            CHECK(first_mismatch(finite_denominator(rs, ss).expand(finite_window(rs, 6)), ref) == std::nullopt);
    }
}

TEST_CASE("principal reflections negate R e^rho") {
    auto rs = build(Family::D, 2, 2);
    auto base = finite_denominator(rs);
    Window w = finite_window(rs, 6);
    Series neg = base.expand(w);
    neg.scale(-1);
    auto pr = principal_roots(explore_theta(start_system(rs, false), 10).systems);
    CHECK_FALSE(pr.empty());
    for (const auto& p : pr) {
        auto s = make_reflection(*rs.form, p.root, p.coroot);
        CHECK(first_mismatch(base.act(s).expand(w), neg) == std::nullopt);
    }
}

TEST_CASE("affine principal roots against a brute-force oracle") {
    for (auto sp : {testing_support::spec(Family::A, 2, 1), testing_support::spec(Family::B, 1, 1),
                    testing_support::spec(Family::C, 2), testing_support::spec(Family::G3),
                    testing_support::spec(Family::D, 3, 1)}) {
        auto rs = build_root_system(sp);
        CAPTURE(sp.name());
        auto want = even_simple_oracle(rs);
        auto lib = affine_even_simple_roots(rs);
        CHECK(std::set<Weight>(lib.begin(), lib.end()) == want);
        std::set<Weight> got;
        for (const auto& p : principal_roots(explore_theta(start_system(rs, true), 6).systems))
            got.insert(p.root);
        CHECK(got == want);
    }
}

TEST_CASE("A(2,1) full check set") {
    auto rs = build(Family::A, 2, 1);
    auto rep = run_checks(rs, 6, CheckSelection{});
    CHECK(rep.passed());
    CHECK(rep.checks.size() == 12);
    for (const auto& c : rep.checks) {
        CAPTURE(c.name);
        CAPTURE(c.detail);
        CHECK(c.passed);
    }
}

TEST_CASE("B(1,1) coefficient of e^rho_hat") {
    auto rs = build(Family::B, 1, 1);
    Verifier v(rs, 4);
    CHECK(v.rho_hat_coefficient().passed);
    CHECK(v.affine_right().coefficient(rs.rho_hat) == 1);
}

TEST_CASE("imaginary multiplicity one breaks the affine identity at rho_hat - delta") {
    RootOptions o;
    o.imaginary_multiplicity = 1;
    auto rs = build(Family::A, 2, 1, o);
    Verifier v(rs, 6);
    auto r = v.affine_identity();
    CHECK_FALSE(r.passed);
    REQUIRE(r.mismatch.has_value());
    CHECK(r.mismatch->exponent == rs.form->format(rs.rho_hat - rs.delta()));
    CHECK(v.finite_identity().passed);
}

TEST_CASE("dropping a root from S breaks the finite identity") {
    RootOptions o;
    o.drop_s_index = 0;
    auto rs = build(Family::C, 2, 0, o);
    Verifier v(rs, 6);
    auto r = v.finite_identity();
    CHECK_FALSE(r.passed);
    REQUIRE(r.mismatch.has_value());
    CHECK_FALSE(r.mismatch->exponent_coords.empty());
}

TEST_CASE("bounded lemma checks on A(2,1) and C(2)") {
    for (auto sp : {testing_support::spec(Family::A, 2, 1), testing_support::spec(Family::C, 2)}) {
        auto rs = build_root_system(sp);
        Verifier v(rs, 4);
        CAPTURE(sp.name());
        for (auto r : {v.group_sanity(), v.stabilizer(), v.regular_orbits(), v.lemma3(4)}) {
            CAPTURE(r.name);
            CAPTURE(r.detail);
            CHECK(r.passed);
        }
    }
}

TEST_CASE("check selection") {
    auto rs = build(Family::A, 3, 1);
    CheckSelection only_finite{true, false, false, false};
    auto rep = run_checks(rs, 4, only_finite);
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].name == "finite_identity");
    CHECK(rep.spec.name() == "A(3,1)");
    CHECK(rep.N == 4);
}
