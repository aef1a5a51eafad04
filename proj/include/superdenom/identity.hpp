#pragma once

#include <optional>
#include <string>
#include <vector>

#include "superdenom/root_data.hpp"
#include "superdenom/series.hpp"
#include "superdenom/simple_systems.hpp"
#include "superdenom/weyl.hpp"

namespace superdenom {

Window finite_window(const RootSystem& rs, long N);
Window affine_window(const RootSystem& rs, long N);

/// R e^rho over Delta_+ (finite), factored.
FactoredSeries finite_denominator(const RootSystem& rs);
/// R(Pi') e^{rho + rho_shift} with Delta_+(Pi') read off Pi' coordinates.
FactoredSeries finite_denominator(const RootSystem& rs, const SimpleSystem& ss);
/// e^{top} / prod_{beta in S} (1 + e^{-beta}).
FactoredSeries s_fraction(const RootSystem& rs, const Weight& top);

Series finite_lhs(const RootSystem& rs, long N);
Series finite_rhs(const RootSystem& rs, long N);
Series affine_lhs(const RootSystem& rs, long N);
/// Sum over the given elements (enumerate_affine_sharp(rs, N) when null).
Series affine_rhs_sharp(const RootSystem& rs, long N,
                        const std::vector<AffineWeylElement>* elements = nullptr);

struct TranslationSum {
    Series sum;
    bool stabilized = false;
    int shells_used = 0;
    std::vector<std::size_t> translations_per_shell;
};

/// Partial sums of t_mu(R e^rho_hat) over translations read off growing
/// balls H_{N}, H_{N+2}, ...; stops early once two consecutive shells agree.
TranslationSum affine_rhs_translation(const RootSystem& rs, long N, int shells);

struct MismatchReport {
    std::vector<std::string> exponent_coords; // eps.., del.., delta, Lambda0
    std::string exponent;
    std::string lhs;
    std::string rhs;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    std::optional<MismatchReport> mismatch;
    std::size_t terms = 0;
    double seconds = 0;
};

struct CheckSelection {
    bool finite = true;
    bool affine = true;
    bool translation = true;
    bool lemmas = true;
};

struct CheckOptions {
    int theta_depth = 3;
    int shells = 3;
    int affine_theta_depth = 6;
    long lemma_height = 4;
};

struct CheckReport {
    FamilySpec spec;
    long N = 0;
    std::vector<CheckResult> checks;
    double seconds = 0;

    bool passed() const;
};

/// Lazily computes and caches both sides so that checks can share them.
class Verifier {
public:
    Verifier(const RootSystem& rs, long N);

    const RootSystem& roots() const { return rs_; }
    long height() const { return N_; }

    const Series& finite_left();
    const Series& finite_right();
    const Series& affine_left();
    const Series& affine_right();
    const std::vector<AffineWeylElement>& ball();

    CheckResult finite_identity();
    CheckResult affine_identity();
    CheckResult rho_hat_coefficient();
    CheckResult support_in_u();
    CheckResult odd_reflection_invariance(int depth);
    CheckResult skew_invariance();
    CheckResult principal_roots_affine(int depth);
    CheckResult translation_form(int shells);
    CheckResult group_sanity();
    CheckResult stabilizer();
    CheckResult regular_orbits();
    CheckResult lemma3(long height);

private:
    const RootSystem& rs_;
    long N_;
    std::optional<Series> fl_, fr_, al_, ar_;
    std::optional<std::vector<AffineWeylElement>> ball_;
};

CheckReport run_checks(const RootSystem& rs, long N, const CheckSelection& selection,
                       const CheckOptions& options = {});
CheckReport run_checks(Verifier& verifier, const CheckSelection& selection,
                       const CheckOptions& options = {});

MismatchReport describe(const BilinearForm& form, const Mismatch& m);

/// Simple roots of the even positive affine roots, from indecomposability
/// among even positive roots of height <= ht(delta).
std::vector<Weight> affine_even_simple_roots(const RootSystem& rs);

} // namespace superdenom
