#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "superdenom/root_data.hpp"

namespace superdenom {

/// Linear map on weight coordinates (finite symbols, delta, Lambda_0),
/// stored row-major: (w lambda)_i = sum_j m[i*dim + j] lambda_j.
class AffineWeylElement {
public:
    AffineWeylElement() = default;
    static AffineWeylElement identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    int sign() const { return sign_; }
    int length() const { return length_; }
    const Scalar& at(std::size_t i, std::size_t j) const { return m_[i * dim_ + j]; }

    Weight apply(const Weight& w) const;
    /// (*this) o other; sign multiplies, length adds (an upper bound only).
    AffineWeylElement compose(const AffineWeylElement& other) const;
    AffineWeylElement inverse() const;

    /// Determinant of the block acting on the finite coordinates.
    Scalar finite_determinant() const;
    /// True when the map fixes delta and Lambda_0 has no finite-to-affine leak.
    bool fixes_delta() const;

    bool same_action(const AffineWeylElement& o) const { return m_ == o.m_; }
    std::size_t hash() const;

    // Right multiplication by the reflection s with root `alpha` and coroot
    // functional `cov` (pair(lambda, coroot) = cov . lambda).
    AffineWeylElement times_reflection(const Weight& alpha, const std::vector<Scalar>& cov) const;

    void set_word(int length, int sign) { length_ = length; sign_ = sign; }

private:
    friend AffineWeylElement make_reflection(const BilinearForm&, const Weight&, const Weight&);
    friend AffineWeylElement translation(const BilinearForm&, const Weight&);

    std::size_t dim_ = 0;
    std::vector<Scalar> m_;
    int sign_ = 1;
    int length_ = 0;
};

/// s(lambda) = lambda - pair(lambda, coroot) alpha.  Throws ReflectError
/// when pair(alpha, coroot) != 2.
AffineWeylElement make_reflection(const BilinearForm& form, const Weight& alpha,
                                  const Weight& coroot);
/// Reflection at a non-isotropic root with coroot 2 alpha / (alpha, alpha).
AffineWeylElement reflection(const BilinearForm& form, const Weight& alpha);

/// t_mu(lambda) = lambda + (lambda,delta) mu - ((lambda,mu) + (mu,mu)/2 (lambda,delta)) delta.
/// mu must have zero level and zero delta coefficient (TranslationError).
AffineWeylElement translation(const BilinearForm& form, const Weight& mu);

/// Simple roots of the positive-norm even subsystem: indecomposable elements
/// of Delta^#_+ , and its highest root.
std::vector<Weight> sharp_simple_roots(const RootSystem& rs);
Weight sharp_highest_root(const RootSystem& rs);
/// sharp_simple_roots followed by delta - sharp_highest_root.
std::vector<Weight> affine_sharp_simple_roots(const RootSystem& rs);

/// The finite group W^#; throws DataError past `guard` elements.
std::vector<AffineWeylElement> generate_finite_sharp(const RootSystem& rs,
                                                     std::size_t guard = 2000000);

/// All w in the affine group of Delta^# with ht(rho_hat - w rho_hat) <= N,
/// in BFS order.  length() is the reduced length.
std::vector<AffineWeylElement> enumerate_affine_sharp(const RootSystem& rs, long N);

/// All elements of word length <= L in the affine group of Delta^#.
std::vector<AffineWeylElement> affine_sharp_ball(const RootSystem& rs, int L);

struct Decomposition {
    AffineWeylElement finite; // y in W^#
    Weight mu;                // w = t_mu y
};

/// Throws DataError when the recomposition fails.
Decomposition decompose(const BilinearForm& form, const AffineWeylElement& w);

/// {gamma in affine positive roots of height <= bound : w gamma < 0}.
std::vector<Root> inversion_set(const RootSystem& rs, const AffineWeylElement& w, long bound);

/// True when every frame coordinate of `nu` is <= 0 (and nu != 0).
bool is_negative(const HeightFrame& frame, const Weight& nu);

/// Order of W^# from the exponents of Delta^#_+ (height partition), as an
/// independent check on generate_finite_sharp.
Integer weyl_order_from_heights(const RootSystem& rs);

} // namespace superdenom
