#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace superdenom {

using Scalar = mpq_class;
using Integer = mpz_class;

enum class Parity { even, odd };

inline Parity operator+(Parity a, Parity b) {
    return a == b ? Parity::even : Parity::odd;
}

const char* to_string(Parity p);

/// Element of the dual Cartan subalgebra of the affinization.
///
/// Coordinates are stored flat: the eps symbols, then the del symbols, then
/// the coefficient of the minimal imaginary root (delta), then the level
/// (coefficient of Lambda_0).  Absent symbols are zero.
class Weight {
public:
    Weight() = default;
    explicit Weight(std::size_t finite_dim) : c_(finite_dim + 2) {}

    std::size_t finite_dim() const { return c_.size() - 2; }
    std::size_t size() const { return c_.size(); }

    Scalar& operator[](std::size_t i) { return c_[i]; }
    const Scalar& operator[](std::size_t i) const { return c_[i]; }

    Scalar& dcoef() { return c_[c_.size() - 2]; }
    const Scalar& dcoef() const { return c_[c_.size() - 2]; }
    Scalar& level() { return c_[c_.size() - 1]; }
    const Scalar& level() const { return c_[c_.size() - 1]; }

    bool is_zero() const;
    /// True when the finite part vanishes (zero or a multiple of delta/Lambda_0).
    bool finite_part_zero() const;
    /// Same weight with dcoef and level cleared.
    Weight finite_part() const;

    Weight& operator+=(const Weight& o);
    Weight& operator-=(const Weight& o);
    Weight& operator*=(const Scalar& s);

    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(const Scalar& s, Weight a) { return a *= s; }
    friend Weight operator*(Weight a, const Scalar& s) { return a *= s; }
    friend Weight operator-(Weight a) { return a *= Scalar(-1); }

    friend bool operator==(const Weight& a, const Weight& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
    /// Lexicographic order on coordinates; only used for canonical keys.
    friend bool operator<(const Weight& a, const Weight& b) { return a.c_ < b.c_; }

    std::size_t hash() const;

    const std::vector<Scalar>& coords() const { return c_; }

private:
    std::vector<Scalar> c_;
};

struct WeightHash {
    std::size_t operator()(const Weight& w) const { return w.hash(); }
};

/// Invariant bilinear form on the weight space of one family.
///
/// (eps_i, eps_j) = epsnorm * delta_ij, (del_i, del_j) = delnorm * delta_ij,
/// no cross terms.  With `eps_sum_zero` the eps Gram matrix is
/// epsnorm * (delta_ij - 1/3) and eps coordinates are kept with zero sum.
/// Affine part: (delta, Lambda_0) = 1, all other pairings with delta or
/// Lambda_0 vanish.
class BilinearForm {
public:
    BilinearForm(int eps_count, int del_count, Scalar epsnorm, Scalar delnorm,
                 bool eps_sum_zero = false);

    int eps_count() const { return eps_count_; }
    int del_count() const { return del_count_; }
    std::size_t finite_dim() const { return std::size_t(eps_count_ + del_count_); }
    const Scalar& epsnorm() const { return epsnorm_; }
    const Scalar& delnorm() const { return delnorm_; }
    bool eps_sum_zero() const { return eps_sum_zero_; }

    Weight zero() const { return Weight(finite_dim()); }
    /// Basis weights; indices are 1-based like the eps_i / del_i symbols.
    Weight eps(int i) const;
    Weight del(int j) const;
    Weight delta() const;
    Weight lambda0() const;

    Scalar pair(const Weight& a, const Weight& b) const;
    Scalar norm(const Weight& a) const { return pair(a, a); }

    /// Unique representative modulo eps_1 + eps_2 + eps_3 = 0 (identity otherwise).
    Weight canonical(Weight w) const;

    /// Human-readable form, e.g. "eps1-del1+2delta".
    std::string format(const Weight& w) const;

private:
    void check(const Weight& w) const;

    int eps_count_;
    int del_count_;
    Scalar epsnorm_;
    Scalar delnorm_;
    bool eps_sum_zero_;
};

using FormPtr = std::shared_ptr<const BilinearForm>;

/// Exact coordinates against an ordered, linearly independent simple-root list.
class HeightFrame {
public:
    explicit HeightFrame(std::vector<Weight> simple);

    std::size_t rank() const { return simple_.size(); }
    const std::vector<Weight>& simple() const { return simple_; }

    /// Coordinates of `nu`; throws SpanError when nu is outside the span.
    std::vector<Scalar> coords(const Weight& nu) const;
    std::optional<std::vector<Scalar>> try_coords(const Weight& nu) const;
    /// Integer coordinates; throws SpanError when some coordinate is fractional.
    std::vector<long> int_coords(const Weight& nu) const;
    Scalar height(const Weight& nu) const;
    Weight combine(const std::vector<Scalar>& coords) const;
    Weight combine(const std::vector<long>& coords) const;

private:
    std::vector<Weight> simple_;
    std::vector<std::size_t> pivots_;
    // Inverse of the pivot-row submatrix, row-major rank x rank.
    std::vector<Scalar> inverse_;
};

using FramePtr = std::shared_ptr<const HeightFrame>;

/// Exact solve of a square system; returns nullopt when singular.
std::optional<std::vector<Scalar>> solve_linear(std::vector<std::vector<Scalar>> a,
                                                std::vector<Scalar> b);

/// Determinant by exact elimination.
Scalar determinant(std::vector<std::vector<Scalar>> a);

} // namespace superdenom
