#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "superdenom/weight.hpp"

namespace superdenom {

enum class Family { A, B, C, D, F4, G3 };

/// A family tag with its two rank parameters.  F4 and G3 ignore m and n.
struct FamilySpec {
    Family family = Family::A;
    int m = 0;
    int n = 0;

    /// "A(2,1)", "B(1,1)", "F(4)", ...
    std::string name() const;
    /// Throws SpecError / UnsupportedFamily for inadmissible parameters.
    void validate() const;
};

/// Parses "A", "B", "C", "D", "F4", "G3" (case-insensitive); throws SpecError.
Family parse_family(const std::string& tag);
const char* family_tag(Family f);

struct Root {
    Weight weight;
    Parity parity;
};

struct AffineRootEntry {
    Weight root;
    Parity parity;
    int multiplicity = 1;
    long height = 0;
};

/// Deliberate corruptions used as negative controls.
struct RootOptions {
    std::optional<int> imaginary_multiplicity;
    std::optional<std::size_t> drop_s_index;
};

/// One family instance: finite roots, the chosen simple system and all the
/// derived data the identity checks need.  Immutable after build.
struct RootSystem {
    FamilySpec spec;
    FormPtr form;

    std::vector<Root> roots;          // all finite roots
    std::vector<Root> positive;       // positive w.r.t. pi
    std::vector<Weight> sharp;        // even roots of positive norm
    std::vector<Weight> delta2;       // even roots of negative norm

    std::vector<Weight> pi;
    std::vector<Parity> pi_parity;
    std::vector<Weight> s_set;        // maximal isotropic set inside pi
    Weight theta;
    std::optional<Weight> xi;
    Weight rho;
    Weight rho_hat;
    Scalar hdual;

    std::vector<Weight> affine_pi;    // pi followed by alpha_0 = delta - theta
    std::vector<Parity> affine_pi_parity;

    FramePtr frame;                   // heights against pi
    FramePtr affine_frame;            // heights against affine_pi

    int cartan_dim = 0;
    int imaginary_multiplicity = 0;

    Weight delta() const { return form->delta(); }
    Weight lambda0() const { return form->lambda0(); }
    std::size_t rank() const { return pi.size(); }

    bool is_root(const Weight& w) const;
    /// Parity of a finite root; throws DataError if w is not a root.
    Parity parity_of(const Weight& w) const;
    std::vector<Root> positive_with(Parity p) const;

private:
    friend RootSystem build_root_system(const FamilySpec&, const RootOptions&);
    std::unordered_map<Weight, Parity, WeightHash> parity_;
};

RootSystem build_root_system(const FamilySpec& spec, const RootOptions& options = {});

/// Maximal root of the positive system, recomputed from the root list.
Weight maximal_root(const RootSystem& rs);

/// (rho, theta) + (theta, theta)/2; throws UnsupportedFamily when zero.
Scalar dual_coxeter(const RootSystem& rs);

/// Positive roots of the affinization of height <= height_bound (heights in
/// the affine simple-root frame), ordered by height.
std::vector<AffineRootEntry> affine_positive_roots(const RootSystem& rs, long height_bound);

} // namespace superdenom
