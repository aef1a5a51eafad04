#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "superdenom/weight.hpp"
#include "superdenom/weyl.hpp"

namespace superdenom {

constexpr std::size_t kMaxRank = 16;

/// Simple-root coordinates of (reference - exponent).
using Offsets = std::array<std::int32_t, kMaxRank>;

struct OffsetsHash {
    std::size_t operator()(const Offsets& v) const {
        std::size_t h = 0;
        for (auto x : v) h = h * 1000003u + std::size_t(std::uint32_t(x));
        return h;
    }
};

/// Truncation window: exponents reference - nu with nu in Q+ and ht(nu) <= bound.
class Window {
public:
    Window(FramePtr frame, Weight reference, long bound);

    const FramePtr& frame() const { return frame_; }
    const Weight& reference() const { return reference_; }
    long bound() const { return bound_; }
    std::size_t rank() const { return frame_->rank(); }

    /// nullopt when reference - exponent is not an integral root-lattice vector.
    std::optional<Offsets> offsets_of(const Weight& exponent) const;
    Weight exponent(const Offsets& v) const;

    bool admissible(const Offsets& v) const;
    /// Some admissible offset dominates v (sum of positive parts <= bound).
    bool reachable(const Offsets& v) const;

    /// Every admissible offset, ordered by height then lexicographically.
    std::vector<Offsets> admissible_points() const;

    /// Same frame, reference and bound.
    bool same_as(const Window& o) const;

private:
    FramePtr frame_;
    Weight reference_;
    long bound_;
};

long height_of(const Offsets& v, std::size_t rank);

struct FactoredSeries;

/// Truncated formal sum of c_lambda e^lambda with integer coefficients.
///
/// Unless clipped, the stored terms are exact on the reachable region of the
/// window.  Dropping a term beyond that region marks the series truncated (no
/// upward shifts); dropping a reachable but non-admissible term marks it
/// clipped (exact on the admissible window only, no shifts or products).
class Series {
public:
    explicit Series(Window window) : window_(std::move(window)) {}

    static Series monomial(const Window& window, const Weight& exponent, Integer c = 1);

    const Window& window() const { return window_; }
    bool truncated() const { return truncated_; }
    bool clipped() const { return clipped_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Throws WindowError for a non-admissible exponent.
    Integer coefficient(const Weight& exponent) const;
    Integer coefficient_at(const Offsets& v) const;

    /// (offsets, coefficient) sorted by height then offsets; admissible terms only.
    std::vector<std::pair<Offsets, Integer>> sorted_terms() const;
    std::vector<Weight> support() const;

    void add(const Offsets& v, const Integer& c);
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& scale(long s);

    /// Multiplies by (1 + sign e^{-alpha})^k.  For alpha of negative height the
    /// factor is rewritten as sign e^{-alpha} (1 + sign e^{alpha}) first.
    void mul_binomial_power(int sign, const Weight& alpha, long k);
    /// Multiplies by e^{shift}; throws WindowError when shift raises a
    /// truncated series.
    void shift(const Weight& delta_exponent);

    /// Drops everything outside the admissible window; marks the series clipped
    /// if a nonzero term was lost.
    void restrict_to_window();

    const std::unordered_map<Offsets, Integer, OffsetsHash>& raw_terms() const { return terms_; }

private:
    friend struct FactoredSeries;
    friend Series mul(const Series& a, const Series& b);

    void shift_offsets(const Offsets& d, int sign);
    void mul_positive(int sign, const Offsets& r, long k);

    Window window_;
    std::unordered_map<Offsets, Integer, OffsetsHash> terms_;
    bool truncated_ = false;
    bool clipped_ = false;
};

/// Product truncated to the window reference a.ref + b.ref, bound min(a, b).
/// Throws FrameError unless both share a height frame and neither operand has
/// terms outside its admissible window; throws WindowError for clipped operands.
Series mul(const Series& a, const Series& b);

/// Coefficient of lambda in the result is the coefficient of w^{-1} lambda in
/// a.  Throws WindowError when that coefficient is not known: a preimage
/// outside the admissible window of a clipped series, or beyond the reachable
/// region of a truncated one.
Series act(const AffineWeylElement& w, const Series& a, const Window& target);

struct BinomialFactor {
    int sign;     // factor 1 + sign e^{-root}
    Weight root;
    long power;
};

/// sign e^{monomial} prod (1 + s e^{-root})^power, kept unexpanded so that a
/// group element can act factor by factor.
struct FactoredSeries {
    int sign = 1;
    Weight monomial;
    std::vector<BinomialFactor> factors;

    FactoredSeries act(const AffineWeylElement& w) const;
    /// Rewrites every factor to a positive root, then expands in the window.
    Series expand(const Window& window) const;
};

struct Mismatch {
    Offsets offsets;
    Weight exponent;
    Integer lhs;
    Integer rhs;
};

/// First differing admissible exponent in (height, offsets) order.
std::optional<Mismatch> first_mismatch(const Series& a, const Series& b);

} // namespace superdenom
