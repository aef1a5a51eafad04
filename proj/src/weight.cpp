#include "superdenom/weight.hpp"

#include <sstream>

#include "superdenom/errors.hpp"

namespace superdenom {

const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

bool Weight::is_zero() const {
    for (const auto& x : c_)
        if (sgn(x) != 0) return false;
    return true;
}

bool Weight::finite_part_zero() const {
    for (std::size_t i = 0; i < finite_dim(); ++i)
        if (sgn(c_[i]) != 0) return false;
    return true;
}

Weight Weight::finite_part() const {
    Weight w = *this;
    w.dcoef() = 0;
    w.level() = 0;
    return w;
}

Weight& Weight::operator+=(const Weight& o) {
    if (o.c_.size() != c_.size()) throw ConfigError("weight dimension mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Weight& Weight::operator-=(const Weight& o) {
    if (o.c_.size() != c_.size()) throw ConfigError("weight dimension mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Weight& Weight::operator*=(const Scalar& s) {
    for (auto& x : c_) x *= s;
    return *this;
}

std::size_t Weight::hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& x : c_) {
        std::size_t v = std::size_t(mpz_get_si(x.get_num_mpz_t())) * 31u +
                        std::size_t(mpz_get_si(x.get_den_mpz_t()));
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

BilinearForm::BilinearForm(int eps_count, int del_count, Scalar epsnorm, Scalar delnorm,
                           bool eps_sum_zero)
    : eps_count_(eps_count),
      del_count_(del_count),
      epsnorm_(std::move(epsnorm)),
      delnorm_(std::move(delnorm)),
      eps_sum_zero_(eps_sum_zero) {
    if (eps_count < 0 || del_count < 0) throw ConfigError("negative basis size");
    if (sgn(epsnorm_) <= 0) throw ConfigError("epsnorm must be positive");
    if (sgn(delnorm_) >= 0) throw ConfigError("delnorm must be negative");
    if (eps_sum_zero && eps_count != 3) throw ConfigError("sum-zero presentation needs 3 eps");
}

void BilinearForm::check(const Weight& w) const {
    if (w.finite_dim() != finite_dim())
        throw ConfigError("weight does not belong to this family's basis");
}

Weight BilinearForm::eps(int i) const {
    if (i < 1 || i > eps_count_) throw ConfigError("eps index out of range");
    Weight w = zero();
    w[std::size_t(i - 1)] = 1;
    return canonical(std::move(w));
}

Weight BilinearForm::del(int j) const {
    if (j < 1 || j > del_count_) throw ConfigError("del index out of range");
    Weight w = zero();
    w[std::size_t(eps_count_ + j - 1)] = 1;
    return w;
}

Weight BilinearForm::delta() const {
    Weight w = zero();
    w.dcoef() = 1;
    return w;
}

Weight BilinearForm::lambda0() const {
    Weight w = zero();
    w.level() = 1;
    return w;
}

Scalar BilinearForm::pair(const Weight& a, const Weight& b) const {
    check(a);
    check(b);
    Scalar eps_part = 0;
    for (int i = 0; i < eps_count_; ++i) eps_part += a[std::size_t(i)] * b[std::size_t(i)];
    if (eps_sum_zero_) {
        Scalar sa = 0, sb = 0;
        for (int i = 0; i < eps_count_; ++i) {
            sa += a[std::size_t(i)];
            sb += b[std::size_t(i)];
        }
        eps_part -= sa * sb / 3;
    }
    Scalar del_part = 0;
    for (int j = 0; j < del_count_; ++j) {
        auto k = std::size_t(eps_count_ + j);
        del_part += a[k] * b[k];
    }
    return epsnorm_ * eps_part + delnorm_ * del_part + a.level() * b.dcoef() +
           a.dcoef() * b.level();
}

Weight BilinearForm::canonical(Weight w) const {
    check(w);
    if (!eps_sum_zero_) return w;
    Scalar mean = 0;
    for (int i = 0; i < eps_count_; ++i) mean += w[std::size_t(i)];
    mean /= eps_count_;
    for (int i = 0; i < eps_count_; ++i) w[std::size_t(i)] -= mean;
    return w;
}

namespace {

void append_term(std::ostringstream& os, const Scalar& c, const std::string& sym, bool& first) {
    if (sgn(c) == 0) return;
    Scalar a = abs(c);
    if (sgn(c) < 0)
        os << "-";
    else if (!first)
        os << "+";
    if (a != 1) os << a.get_str();
    os << sym;
    first = false;
}

} // namespace

std::string BilinearForm::format(const Weight& w) const {
    check(w);
    std::ostringstream os;
    bool first = true;
    if (eps_sum_zero_) {
        // Print the sum-zero eps part in the basis eps1, eps2 (eps3 = -eps1-eps2).
        Weight c = canonical(w);
        Scalar a1 = c[0] - c[2], a2 = c[1] - c[2];
        append_term(os, a1, "eps1", first);
        append_term(os, a2, "eps2", first);
    } else {
        for (int i = 0; i < eps_count_; ++i)
            append_term(os, w[std::size_t(i)], "eps" + std::to_string(i + 1), first);
    }
    for (int j = 0; j < del_count_; ++j)
        append_term(os, w[std::size_t(eps_count_ + j)], "del" + std::to_string(j + 1), first);
    append_term(os, w.dcoef(), "delta", first);
    append_term(os, w.level(), "Lambda0", first);
    if (first) return "0";
    return os.str();
}

std::optional<std::vector<Scalar>> solve_linear(std::vector<std::vector<Scalar>> a,
                                                std::vector<Scalar> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(a[piv][col]) == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(a[r][col]) == 0) continue;
            Scalar f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
    return b;
}

Scalar determinant(std::vector<std::vector<Scalar>> a) {
    const std::size_t n = a.size();
    Scalar det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(a[piv][col]) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (sgn(a[r][col]) == 0) continue;
            Scalar f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
        }
    }
    return det;
}

HeightFrame::HeightFrame(std::vector<Weight> simple) : simple_(std::move(simple)) {
    const std::size_t r = simple_.size();
    if (r == 0) return;
    const std::size_t d = simple_.front().size();
    for (const auto& s : simple_)
        if (s.size() != d) throw ConfigError("simple roots of different dimension");

    // Row-reduce the d x r matrix whose columns are the simple roots to find
    // r independent rows.
    std::vector<std::vector<Scalar>> m(d, std::vector<Scalar>(r));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < r; ++j) m[i][j] = simple_[j][i];
    std::vector<std::size_t> rows(d);
    for (std::size_t i = 0; i < d; ++i) rows[i] = i;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < r && rank < d; ++col) {
        std::size_t piv = rank;
        while (piv < d && sgn(m[piv][col]) == 0) ++piv;
        if (piv == d) throw DataError("simple roots are linearly dependent");
        std::swap(m[piv], m[rank]);
        std::swap(rows[piv], rows[rank]);
        for (std::size_t i = rank + 1; i < d; ++i) {
            if (sgn(m[i][col]) == 0) continue;
            Scalar f = m[i][col] / m[rank][col];
            for (std::size_t k = col; k < r; ++k) m[i][k] -= f * m[rank][k];
        }
        ++rank;
    }
    if (rank < r) throw DataError("simple roots are linearly dependent");
    pivots_.assign(rows.begin(), rows.begin() + std::ptrdiff_t(r));

    // Invert the r x r submatrix on the pivot rows, column by column.
    std::vector<std::vector<Scalar>> sub(r, std::vector<Scalar>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) sub[i][j] = simple_[j][pivots_[i]];
    inverse_.assign(r * r, Scalar(0));
    for (std::size_t k = 0; k < r; ++k) {
        std::vector<Scalar> e(r, Scalar(0));
        e[k] = 1;
        auto x = solve_linear(sub, e);
        if (!x) throw DataError("simple roots are linearly dependent");
        for (std::size_t i = 0; i < r; ++i) inverse_[i * r + k] = (*x)[i];
    }
}

std::optional<std::vector<Scalar>> HeightFrame::try_coords(const Weight& nu) const {
    const std::size_t r = rank();
    if (r == 0) {
        if (nu.is_zero()) return std::vector<Scalar>{};
        return std::nullopt;
    }
    if (nu.size() != simple_.front().size()) throw ConfigError("weight dimension mismatch");
    std::vector<Scalar> c(r, Scalar(0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) {
            const Scalar& v = nu[pivots_[k]];
            if (sgn(v) != 0) c[i] += inverse_[i * r + k] * v;
        }
    // Span membership: the reconstruction must match on every coordinate.
    for (std::size_t row = 0; row < nu.size(); ++row) {
        Scalar acc = 0;
        for (std::size_t j = 0; j < r; ++j)
            if (sgn(c[j]) != 0) acc += c[j] * simple_[j][row];
        if (acc != nu[row]) return std::nullopt;
    }
    return c;
}

std::vector<Scalar> HeightFrame::coords(const Weight& nu) const {
    auto c = try_coords(nu);
    if (!c) throw SpanError("weight is not in the span of the simple roots");
    return *c;
}

std::vector<long> HeightFrame::int_coords(const Weight& nu) const {
    auto c = coords(nu);
    std::vector<long> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].get_den() != 1) throw SpanError("weight is not in the root lattice");
        if (!c[i].get_num().fits_slong_p()) throw SpanError("coordinate overflow");
        out[i] = c[i].get_num().get_si();
    }
    return out;
}

Scalar HeightFrame::height(const Weight& nu) const {
    Scalar h = 0;
    for (const auto& x : coords(nu)) h += x;
    return h;
}

Weight HeightFrame::combine(const std::vector<Scalar>& coords) const {
    if (coords.size() != rank()) throw ConfigError("coordinate count mismatch");
    Weight w(simple_.empty() ? 0 : simple_.front().finite_dim());
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (sgn(coords[i]) != 0) w += coords[i] * simple_[i];
    return w;
}

Weight HeightFrame::combine(const std::vector<long>& coords) const {
    std::vector<Scalar> c(coords.begin(), coords.end());
    return combine(c);
}

} // namespace superdenom
