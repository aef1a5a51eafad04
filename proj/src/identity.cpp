#include "superdenom/identity.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "superdenom/errors.hpp"

namespace superdenom {

Window finite_window(const RootSystem& rs, long N) { return Window(rs.frame, rs.rho, N); }
Window affine_window(const RootSystem& rs, long N) {
    return Window(rs.affine_frame, rs.rho_hat, N);
}

namespace {

void add_root_factor(FactoredSeries& f, const Weight& root, Parity p) {
    if (p == Parity::even)
        f.factors.push_back({-1, root, 1});
    else
        f.factors.push_back({1, root, -1});
}

} // namespace

FactoredSeries finite_denominator(const RootSystem& rs) {
    FactoredSeries f;
    f.monomial = rs.rho;
    for (const auto& r : rs.positive) add_root_factor(f, r.weight, r.parity);
    return f;
}

FactoredSeries finite_denominator(const RootSystem& rs, const SimpleSystem& ss) {
    HeightFrame frame(ss.roots);
    FactoredSeries f;
    f.monomial = rs.rho + ss.rho_shift;
    std::size_t count = 0;
    for (const auto& r : rs.roots) {
        auto c = frame.try_coords(r.weight);
        if (!c) throw DataError("root outside the span of a reflected simple system");
        bool pos = true;
        for (const auto& x : *c) {
            if (x.get_den() != 1) throw DataError("root is not integral over a reflected simple system");
            if (sgn(x) < 0) pos = false;
        }
        if (pos) {
            add_root_factor(f, r.weight, r.parity);
            ++count;
        }
    }
    if (2 * count != rs.roots.size()) throw DataError("reflected simple system does not split the roots");
    return f;
}

FactoredSeries s_fraction(const RootSystem& rs, const Weight& top) {
    FactoredSeries f;
    f.monomial = top;
    for (const auto& b : rs.s_set) f.factors.push_back({1, b, -1});
    return f;
}

Series finite_lhs(const RootSystem& rs, long N) {
    return finite_denominator(rs).expand(finite_window(rs, N));
}

Series finite_rhs(const RootSystem& rs, long N) {
    Window win = finite_window(rs, N);
    FactoredSeries base = s_fraction(rs, rs.rho);
    Series sum(win);
    for (const auto& w : generate_finite_sharp(rs)) {
        Series term = base.act(w).expand(win);
        if (w.sign() < 0)
            sum -= term;
        else
            sum += term;
    }
    sum.restrict_to_window();
    return sum;
}

Series affine_lhs(const RootSystem& rs, long N) {
    FactoredSeries f;
    f.monomial = rs.rho_hat;
    for (const auto& e : affine_positive_roots(rs, N)) {
        if (e.root.finite_part_zero())
            f.factors.push_back({-1, e.root, e.multiplicity});
        else
            add_root_factor(f, e.root, e.parity);
    }
    return f.expand(affine_window(rs, N));
}

Series affine_rhs_sharp(const RootSystem& rs, long N,
                        const std::vector<AffineWeylElement>* elements) {
    std::vector<AffineWeylElement> own;
    if (!elements) {
        own = enumerate_affine_sharp(rs, N);
        elements = &own;
    }
    Window win = affine_window(rs, N);
    FactoredSeries base = s_fraction(rs, rs.rho_hat);
    Series sum(win);
    for (const auto& w : *elements) {
        Series term = base.act(w).expand(win);
        if (w.sign() < 0)
            sum -= term;
        else
            sum += term;
    }
    sum.restrict_to_window();
    return sum;
}

TranslationSum affine_rhs_translation(const RootSystem& rs, long N, int shells) {
    if (shells < 1) throw ConfigError("at least one shell is required");
    Window win = affine_window(rs, N);
    FactoredSeries base = finite_denominator(rs);
    base.monomial = rs.rho_hat;

    TranslationSum out{Series(win), false, 0, {}};
    std::set<Weight> used;
    std::optional<Series> previous;
    for (int k = 1; k <= shells; ++k) {
        for (const auto& w : enumerate_affine_sharp(rs, N + 2 * (k - 1))) {
            Weight mu = decompose(*rs.form, w).mu;
            if (!used.insert(mu).second) continue;
            out.sum += base.act(translation(*rs.form, mu)).expand(win);
        }
        out.sum.restrict_to_window();
        out.translations_per_shell.push_back(used.size());
        out.shells_used = k;
        if (previous && !first_mismatch(*previous, out.sum)) {
            out.stabilized = true;
            break;
        }
        previous = out.sum;
    }
    return out;
}

MismatchReport describe(const BilinearForm& form, const Mismatch& m) {
    MismatchReport r;
    for (const auto& c : m.exponent.coords()) r.exponent_coords.push_back(c.get_str());
    r.exponent = form.format(m.exponent);
    r.lhs = m.lhs.get_str();
    r.rhs = m.rhs.get_str();
    return r;
}

std::vector<Weight> affine_even_simple_roots(const RootSystem& rs) {
    long hdelta = 0;
    for (long c : rs.affine_frame->int_coords(rs.delta())) hdelta += c;
    std::set<Weight> even;
    std::vector<Weight> real;
    for (const auto& e : affine_positive_roots(rs, hdelta)) {
        if (e.parity != Parity::even) continue;
        even.insert(e.root);
        if (!e.root.finite_part_zero()) real.push_back(e.root);
    }
    std::vector<Weight> simple;
    for (const auto& a : real) {
        bool decomposable = false;
        for (const auto& b : even)
            if (b != a && even.count(rs.form->canonical(a - b))) {
                decomposable = true;
                break;
            }
        if (!decomposable) simple.push_back(a);
    }
    std::sort(simple.begin(), simple.end());
    return simple;
}

bool CheckReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

Verifier::Verifier(const RootSystem& rs, long N) : rs_(rs), N_(N) {
    if (N < 0) throw ConfigError("height bound must be nonnegative");
}

const Series& Verifier::finite_left() {
    if (!fl_) fl_ = finite_lhs(rs_, N_);
    return *fl_;
}
const Series& Verifier::finite_right() {
    if (!fr_) fr_ = finite_rhs(rs_, N_);
    return *fr_;
}
const Series& Verifier::affine_left() {
    if (!al_) al_ = affine_lhs(rs_, N_);
    return *al_;
}
const std::vector<AffineWeylElement>& Verifier::ball() {
    if (!ball_) ball_ = enumerate_affine_sharp(rs_, N_);
    return *ball_;
}
const Series& Verifier::affine_right() {
    if (!ar_) ar_ = affine_rhs_sharp(rs_, N_, &ball());
    return *ar_;
}

namespace {

std::string join(const BilinearForm& form, const std::vector<Weight>& ws) {
    std::string s = "{";
    for (std::size_t i = 0; i < ws.size(); ++i) s += (i ? ", " : "") + form.format(ws[i]);
    return s + "}";
}

CheckResult compare(const std::string& name, const BilinearForm& form, const Series& lhs,
                    const Series& rhs) {
    CheckResult r;
    r.name = name;
    auto m = first_mismatch(lhs, rhs);
    r.passed = !m;
    r.terms = lhs.sorted_terms().size();
    if (m) {
        r.mismatch = describe(form, *m);
        r.detail = "first mismatch at " + r.mismatch->exponent;
    } else {
        r.detail = std::to_string(r.terms) + " nonzero terms agree";
    }
    return r;
}

} // namespace

CheckResult Verifier::finite_identity() {
    return compare("finite_identity", *rs_.form, finite_left(), finite_right());
}

CheckResult Verifier::affine_identity() {
    return compare("affine_identity", *rs_.form, affine_left(), affine_right());
}

CheckResult Verifier::rho_hat_coefficient() {
    CheckResult r;
    r.name = "rho_hat_coefficient";
    Integer c = affine_right().coefficient(rs_.rho_hat);
    r.passed = c == 1;
    r.detail = "coefficient of e^rho_hat in Y is " + c.get_str();
    if (!r.passed) r.mismatch = MismatchReport{{}, rs_.form->format(rs_.rho_hat), "1", c.get_str()};
    return r;
}

CheckResult Verifier::support_in_u() {
    CheckResult r;
    r.name = "support_in_U";
    const auto& form = *rs_.form;
    Scalar target = form.norm(rs_.rho_hat);
    r.passed = true;
    for (const Series* s : {&affine_left(), &affine_right()}) {
        for (const auto& lam : s->support()) {
            ++r.terms;
            if (form.norm(lam) != target) {
                r.passed = false;
                r.detail = "exponent " + form.format(lam) + " has norm " + form.norm(lam).get_str() +
                           ", expected " + target.get_str();
                return r;
            }
        }
    }
    r.detail = std::to_string(r.terms) + " exponents on the sphere (lambda,lambda) = " + target.get_str();
    return r;
}

CheckResult Verifier::odd_reflection_invariance(int depth) {
    CheckResult r;
    r.name = "odd_reflection_invariance";
    ThetaBall ball = explore_theta(start_system(rs_, false), depth);
    Window win = finite_window(rs_, N_);
    const Series& ref = finite_left();
    r.passed = true;
    for (const auto& ss : ball.systems) {
        Series s = finite_denominator(rs_, ss).expand(win);
        if (auto m = first_mismatch(s, ref)) {
            r.passed = false;
            r.mismatch = describe(*rs_.form, *m);
            r.detail = "simple system " + join(*rs_.form, ss.roots) + " differs at " + r.mismatch->exponent;
            return r;
        }
        r.terms += s.size();
    }
    r.detail = std::to_string(ball.systems.size()) + " simple systems within depth " +
               std::to_string(depth);
    return r;
}

CheckResult Verifier::skew_invariance() {
    CheckResult r;
    r.name = "skew_invariance";
    const auto& form = *rs_.form;
    ThetaBall ball = explore_theta(start_system(rs_, false), 1000);
    if (!ball.closed) throw DataError("finite odd-reflection graph did not close");
    auto principal = principal_roots(ball.systems);
    Window win = finite_window(rs_, N_);
    Series neg = finite_left();
    neg.scale(-1);
    FactoredSeries f = finite_denominator(rs_);
    r.passed = true;
    for (const auto& p : principal) {
        if (!is_negative(*rs_.frame, -p.root)) {
            r.passed = false;
            r.detail = "principal root " + form.format(p.root) + " is not positive";
            return r;
        }
        for (const auto& root : rs_.roots)
            if (form.pair(root.weight, p.coroot).get_den() != 1) {
                r.passed = false;
                r.detail = "non-integral pairing with the coroot of " + form.format(p.root);
                return r;
            }
        Series img = f.act(make_reflection(form, p.root, p.coroot)).expand(win);
        if (auto m = first_mismatch(img, neg)) {
            r.passed = false;
            r.mismatch = describe(form, *m);
            r.detail = "s_alpha for alpha = " + form.format(p.root) + " differs at " + r.mismatch->exponent;
            return r;
        }
    }
    std::vector<Weight> roots;
    for (const auto& p : principal) roots.push_back(p.root);
    r.terms = principal.size();
    r.detail = "principal roots " + join(form, roots) + " from " +
               std::to_string(ball.systems.size()) + " simple systems";
    return r;
}

CheckResult Verifier::principal_roots_affine(int depth) {
    CheckResult r;
    r.name = "principal_roots_affine";
    const auto& form = *rs_.form;
    ThetaBall ball = explore_theta(start_system(rs_, true), depth);
    std::vector<Weight> got;
    for (const auto& p : principal_roots(ball.systems)) got.push_back(p.root);
    std::sort(got.begin(), got.end());
    auto want = affine_even_simple_roots(rs_);
    r.passed = got == want;
    r.terms = got.size();
    r.detail = std::to_string(ball.systems.size()) + " simple systems within depth " +
               std::to_string(depth) + "; principal " + join(form, got);
    if (!r.passed) r.detail += "; expected " + join(form, want);
    return r;
}

CheckResult Verifier::translation_form(int shells) {
    CheckResult r;
    r.name = "translation_form";
    TranslationSum t = affine_rhs_translation(rs_, N_, shells);
    auto m = first_mismatch(t.sum, affine_right());
    r.passed = t.stabilized && !m;
    r.terms = t.sum.sorted_terms().size();
    std::ostringstream os;
    os << (t.stabilized ? "stabilized" : "not stabilized") << " after " << t.shells_used
       << " shells; translations per shell:";
    for (auto n : t.translations_per_shell) os << ' ' << n;
    if (m) {
        r.mismatch = describe(*rs_.form, *m);
        os << "; differs from the sharp form at " << r.mismatch->exponent;
    }
    r.detail = os.str();
    return r;
}

CheckResult Verifier::group_sanity() {
    CheckResult r;
    r.name = "group_sanity";
    auto finite = generate_finite_sharp(rs_);
    Integer oracle = weyl_order_from_heights(rs_);
    std::ostringstream os;
    os << "|W#| = " << finite.size() << ", exponent oracle " << oracle.get_str();
    r.passed = Integer(static_cast<unsigned long>(finite.size())) == oracle;
    long hdelta = 0;
    for (long c : rs_.affine_frame->int_coords(rs_.delta())) hdelta += c;
    auto check = [&](const AffineWeylElement& w, bool affine) {
        if (w.finite_determinant() != w.sign()) {
            r.passed = false;
            os << "; sign/determinant disagree at length " << w.length();
        }
        if (affine && w.length() <= 4) {
            // Inverted even roots of the sharp system count the length.
            long inverted = 0;
            for (const auto& g : inversion_set(rs_, w, (w.length() + 1) * hdelta))
                if (g.parity == Parity::even && sgn(rs_.form->norm(g.weight)) > 0) ++inverted;
            if (inverted != w.length()) {
                r.passed = false;
                os << "; inversion count " << inverted << " != length " << w.length();
            }
        }
    };
    for (const auto& w : finite) check(w, false);
    for (const auto& w : ball()) check(w, true);
    r.terms = finite.size() + ball().size();
    os << "; " << ball().size() << " affine elements in the height-" << N_ << " ball";
    r.detail = os.str();
    return r;
}

CheckResult Verifier::stabilizer() {
    CheckResult r;
    r.name = "stabilizer";
    const auto& form = *rs_.form;
    auto h0 = enumerate_affine_sharp(rs_, 0);
    std::vector<Weight> sigma0;
    for (const auto& a : affine_sharp_simple_roots(rs_))
        if (sgn(form.pair(rs_.rho_hat, a)) == 0) sigma0.push_back(a);

    // Closure of the reflections in sigma0.
    std::vector<AffineWeylElement> gen{AffineWeylElement::identity(form.finite_dim() + 2)};
    for (std::size_t cur = 0; cur < gen.size() && gen.size() <= 100000; ++cur)
        for (const auto& a : sigma0) {
            AffineWeylElement nw = gen[cur].compose(reflection(form, a));
            bool seen = false;
            for (const auto& g : gen)
                if (g.same_action(nw)) {
                    seen = true;
                    break;
                }
            if (!seen) gen.push_back(std::move(nw));
        }
    bool same = gen.size() == h0.size();
    for (const auto& g : gen) {
        bool found = false;
        for (const auto& h : h0)
            if (h.same_action(g)) {
                found = true;
                break;
            }
        same = same && found;
    }
    std::ostringstream os;
    os << "|H0| = " << h0.size() << ", generated by " << sigma0.size() << " simple reflections: "
       << gen.size();
    r.passed = same;
    if (sgn(form.norm(rs_.theta)) > 0) {
        bool inside = true;
        for (const auto& w : h0)
            if (!decompose(form, w).mu.is_zero()) inside = false;
        os << (inside ? "; H0 inside W#" : "; H0 leaves W#");
        r.passed = r.passed && inside;
    } else {
        os << "; isotropic maximal root, H0 inside W# not required";
    }
    r.terms = h0.size();
    r.detail = os.str();
    return r;
}

CheckResult Verifier::regular_orbits() {
    CheckResult r;
    r.name = "regular_orbits";
    const auto& form = *rs_.form;
    Window win = affine_window(rs_, N_);
    long limit = std::min<long>(N_, 4);
    long fixed_pairs = 0;
    r.passed = true;
    for (const auto& [v, c] : affine_right().sorted_terms()) {
        if (height_of(v, win.rank()) > limit) break;
        Weight mu = win.exponent(v);
        ++r.terms;
        for (const auto& w : ball()) {
            if (w.length() == 0 || w.apply(mu) != mu) continue;
            ++fixed_pairs;
            bool reflection_found = false;
            for (const auto& a : rs_.sharp)
                if (Scalar(form.pair(mu, a) / mu.level()).get_den() == 1) {
                    reflection_found = true;
                    break;
                }
            if (!reflection_found) {
                r.passed = false;
                r.detail = "stabilizer of " + form.format(mu) + " is nontrivial without a reflection";
                return r;
            }
        }
    }
    r.detail = std::to_string(r.terms) + " support points up to height " + std::to_string(limit) +
               ", " + std::to_string(fixed_pairs) + " nontrivial fixing elements, all via reflections";
    return r;
}

CheckResult Verifier::lemma3(long height) {
    CheckResult r;
    r.name = "lemma3";
    const auto& form = *rs_.form;
    auto simple = affine_sharp_simple_roots(rs_);
    const std::size_t n = simple.size();
    HeightFrame frame(simple);

    // Standard element of the sharp affine system: <rho#, alpha^vee> = 1.
    Weight rho = form.zero();
    {
        Weight half = form.zero();
        for (const auto& a : rs_.positive)
            if (a.parity == Parity::even && sgn(form.norm(a.weight)) > 0) half += a.weight;
        rho = Scalar(1, 2) * half;
        Weight th = sharp_highest_root(rs_);
        rho += (form.norm(th) / 2 + form.pair(rho, th)) * form.lambda0();
    }
    for (const auto& a : simple)
        if (2 * form.pair(rho, a) != form.norm(a)) throw DataError("standard element check failed");
    const Scalar level = rho.level();
    auto ball = affine_sharp_ball(rs_, 4);

    // x in (1/2 Z)^n with sum |x| <= height.
    const long steps = 2 * height;
    std::vector<long> x(n, -steps);
    long candidates = 0, admissible = 0;
    std::vector<Weight> offenders;
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
        if (i == n) {
            ++candidates;
            Weight lam = form.zero();
            for (std::size_t k = 0; k < n; ++k)
                if (x[k] != 0) lam += Scalar(x[k]) / 2 * simple[k];
            for (const auto& a : simple)
                if (Scalar(2 * form.pair(lam, a) / form.norm(a)).get_den() != 1) return;
            Weight mu = lam + rho;
            for (const auto& a : rs_.sharp)
                if (Scalar(form.pair(mu, a) / level).get_den() == 1) return;
            for (const auto& w : ball) {
                if (w.length() == 0) continue;
                auto c = frame.coords(w.apply(mu) - mu);
                bool above = true;
                for (const auto& y : c)
                    if (sgn(y) < 0) above = false;
                if (above) return;
            }
            ++admissible;
            if (!lam.finite_part_zero()) offenders.push_back(lam);
            return;
        }
        for (long v = -left; v <= left; ++v) {
            x[i] = v;
            rec(i + 1, left - std::labs(v));
        }
        x[i] = 0;
    };
    rec(0, steps);
    r.passed = offenders.empty() && admissible > 0;
    r.terms = std::size_t(admissible);
    std::ostringstream os;
    os << candidates << " lattice points, " << admissible
       << " regular maximal with integral pairings";
    if (!offenders.empty()) os << "; outside Q delta: " << form.format(offenders.front());
    if (admissible == 0) os << "; search found no admissible point";
    r.detail = os.str();
    return r;
}

namespace {

template <class F>
void timed(CheckReport& rep, F&& f, const std::string& name) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
        r = f();
    } catch (const Error& e) {
        r.name = name;
        r.passed = false;
        r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.checks.push_back(std::move(r));
}

} // namespace

CheckReport run_checks(const RootSystem& rs, long N, const CheckSelection& sel,
                       const CheckOptions& opt) {
    Verifier v(rs, N);
    return run_checks(v, sel, opt);
}

CheckReport run_checks(Verifier& v, const CheckSelection& sel, const CheckOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    CheckReport rep;
    rep.spec = v.roots().spec;
    rep.N = v.height();
    if (sel.finite) timed(rep, [&] { return v.finite_identity(); }, "finite_identity");
    if (sel.affine) {
        timed(rep, [&] { return v.affine_identity(); }, "affine_identity");
        timed(rep, [&] { return v.rho_hat_coefficient(); }, "rho_hat_coefficient");
        timed(rep, [&] { return v.support_in_u(); }, "support_in_U");
    }
    if (sel.translation)
        timed(rep, [&] { return v.translation_form(opt.shells); }, "translation_form");
    if (sel.lemmas) {
        timed(rep, [&] { return v.odd_reflection_invariance(opt.theta_depth); },
              "odd_reflection_invariance");
        timed(rep, [&] { return v.skew_invariance(); }, "skew_invariance");
        timed(rep, [&] { return v.principal_roots_affine(opt.affine_theta_depth); },
              "principal_roots_affine");
        timed(rep, [&] { return v.group_sanity(); }, "group_sanity");
        timed(rep, [&] { return v.stabilizer(); }, "stabilizer");
        timed(rep, [&] { return v.regular_orbits(); }, "regular_orbits");
        timed(rep, [&] { return v.lemma3(opt.lemma_height); }, "lemma3");
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace superdenom
