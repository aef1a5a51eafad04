#include "superdenom/series.hpp"

#include <algorithm>

#include "superdenom/errors.hpp"

namespace superdenom {

Window::Window(FramePtr frame, Weight reference, long bound)
    : frame_(std::move(frame)), reference_(std::move(reference)), bound_(bound) {
    if (!frame_) throw ConfigError("window without a height frame");
    if (frame_->rank() > kMaxRank) throw ConfigError("rank exceeds the series engine limit");
    if (bound_ < 0) throw ConfigError("negative window bound");
}

std::optional<Offsets> Window::offsets_of(const Weight& exponent) const {
    auto c = frame_->try_coords(reference_ - exponent);
    if (!c) return std::nullopt;
    Offsets v{};
    for (std::size_t i = 0; i < c->size(); ++i) {
        const Scalar& x = (*c)[i];
        if (x.get_den() != 1 || !x.get_num().fits_sint_p()) return std::nullopt;
        v[i] = std::int32_t(x.get_num().get_si());
    }
    return v;
}

Weight Window::exponent(const Offsets& v) const {
    std::vector<long> c(rank());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = v[i];
    return reference_ - frame_->combine(c);
}

long height_of(const Offsets& v, std::size_t rank) {
    long h = 0;
    for (std::size_t i = 0; i < rank; ++i) h += v[i];
    return h;
}

bool Window::admissible(const Offsets& v) const {
    long h = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (v[i] < 0) return false;
        h += v[i];
    }
    return h <= bound_;
}

bool Window::reachable(const Offsets& v) const {
    long h = 0;
    for (std::size_t i = 0; i < rank(); ++i)
        if (v[i] > 0) h += v[i];
    return h <= bound_;
}

namespace {

bool offsets_less(const Offsets& a, const Offsets& b, std::size_t rank) {
    long ha = height_of(a, rank), hb = height_of(b, rank);
    if (ha != hb) return ha < hb;
    return a < b;
}

void enumerate(std::size_t i, std::size_t rank, long left, Offsets& cur, std::vector<Offsets>& out) {
    if (i == rank) {
        out.push_back(cur);
        return;
    }
    for (long x = 0; x <= left; ++x) {
        cur[i] = std::int32_t(x);
        enumerate(i + 1, rank, left - x, cur, out);
    }
    cur[i] = 0;
}

Offsets add_offsets(const Offsets& a, const Offsets& b) {
    Offsets r;
    for (std::size_t i = 0; i < kMaxRank; ++i) r[i] = a[i] + b[i];
    return r;
}

} // namespace

std::vector<Offsets> Window::admissible_points() const {
    std::vector<Offsets> out;
    Offsets cur{};
    enumerate(0, rank(), bound_, cur, out);
    const std::size_t r = rank();
    std::sort(out.begin(), out.end(),
              [r](const Offsets& a, const Offsets& b) { return offsets_less(a, b, r); });
    return out;
}

bool Window::same_as(const Window& o) const {
    return bound_ == o.bound_ && reference_ == o.reference_ &&
           (frame_ == o.frame_ || frame_->simple() == o.frame_->simple());
}

Series Series::monomial(const Window& window, const Weight& exponent, Integer c) {
    Series s(window);
    auto v = window.offsets_of(exponent);
    if (!v) throw WindowError("exponent is not in the root lattice of the window");
    if (window.reachable(*v)) {
        if (sgn(c) != 0) s.terms_.emplace(*v, std::move(c));
    } else {
        s.truncated_ = true;
    }
    return s;
}

Integer Series::coefficient(const Weight& exponent) const {
    auto v = window_.offsets_of(exponent);
    if (!v || !window_.admissible(*v)) throw WindowError("exponent outside the window");
    return coefficient_at(*v);
}

Integer Series::coefficient_at(const Offsets& v) const {
    auto it = terms_.find(v);
    return it == terms_.end() ? Integer(0) : it->second;
}

std::vector<std::pair<Offsets, Integer>> Series::sorted_terms() const {
    std::vector<std::pair<Offsets, Integer>> out;
    for (const auto& [v, c] : terms_)
        if (sgn(c) != 0 && window_.admissible(v)) out.emplace_back(v, c);
    const std::size_t r = window_.rank();
    std::sort(out.begin(), out.end(),
              [r](const auto& a, const auto& b) { return offsets_less(a.first, b.first, r); });
    return out;
}

std::vector<Weight> Series::support() const {
    std::vector<Weight> out;
    for (const auto& t : sorted_terms()) out.push_back(window_.exponent(t.first));
    return out;
}

void Series::add(const Offsets& v, const Integer& c) {
    if (sgn(c) == 0) return;
    if (!window_.reachable(v)) {
        truncated_ = true;
        return;
    }
    auto [it, fresh] = terms_.emplace(v, c);
    if (!fresh) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Series& Series::operator+=(const Series& o) {
    if (!window_.same_as(o.window_)) throw FrameError("adding series over different windows");
    for (const auto& [v, c] : o.terms_) add(v, c);
    truncated_ = truncated_ || o.truncated_;
    clipped_ = clipped_ || o.clipped_;
    return *this;
}

Series& Series::operator-=(const Series& o) {
    if (!window_.same_as(o.window_)) throw FrameError("subtracting series over different windows");
    for (const auto& [v, c] : o.terms_) add(v, -c);
    truncated_ = truncated_ || o.truncated_;
    clipped_ = clipped_ || o.clipped_;
    return *this;
}

Series& Series::scale(long s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [v, c] : terms_) c *= s;
    return *this;
}

void Series::shift_offsets(const Offsets& d, int sign) {
    bool raises = false;
    for (std::size_t i = 0; i < window_.rank(); ++i)
        if (d[i] < 0) raises = true;
    if (raises && truncated_) throw WindowError("cannot raise a truncated series");
    if (clipped_ && std::any_of(d.begin(), d.begin() + window_.rank(), [](auto x) { return x != 0; }))
        throw WindowError("cannot shift a clipped series");
    std::unordered_map<Offsets, Integer, OffsetsHash> next;
    next.reserve(terms_.size());
    for (auto& [v, c] : terms_) {
        Offsets u = add_offsets(v, d);
        if (!window_.reachable(u)) {
            truncated_ = true;
            continue;
        }
        if (sign < 0) c = -c;
        next.emplace(u, std::move(c));
    }
    terms_ = std::move(next);
}

void Series::shift(const Weight& delta_exponent) {
    // e^{shift} moves every exponent up by shift, i.e. offsets down.
    auto c = window_.frame()->try_coords(delta_exponent);
    if (!c) throw WindowError("shift is not in the span of the window frame");
    Offsets d{};
    for (std::size_t i = 0; i < c->size(); ++i) {
        if ((*c)[i].get_den() != 1) throw WindowError("shift is not in the root lattice");
        d[i] = std::int32_t(-(*c)[i].get_num().get_si());
    }
    shift_offsets(d, 1);
}

void Series::mul_positive(int sign, const Offsets& r, long k) {
    // a dropped off-cone term could climb into the admissible window
    if (clipped_ && k != 0) throw WindowError("cannot multiply a clipped series");
    if (k > 0) {
        for (long rep = 0; rep < k; ++rep) {
            std::unordered_map<Offsets, Integer, OffsetsHash> next = terms_;
            for (const auto& [v, c] : terms_) {
                Offsets u = add_offsets(v, r);
                if (!window_.reachable(u)) {
                    truncated_ = true;
                    continue;
                }
                auto [it, fresh] = next.emplace(u, sign > 0 ? c : Integer(-c));
                if (!fresh) {
                    if (sign > 0)
                        it->second += c;
                    else
                        it->second -= c;
                }
            }
            std::erase_if(next, [](const auto& kv) { return sgn(kv.second) == 0; });
            terms_ = std::move(next);
        }
        return;
    }
    // 1 / (1 + s e^{-r}) = sum_j (-s)^j e^{-j r}.
    for (long rep = 0; rep < -k; ++rep) {
        auto acc = terms_;
        auto cur = terms_;
        while (!cur.empty()) {
            std::unordered_map<Offsets, Integer, OffsetsHash> next;
            for (const auto& [v, c] : cur) {
                Offsets u = add_offsets(v, r);
                if (!window_.reachable(u)) {
                    truncated_ = true;
                    continue;
                }
                auto [it, fresh] = next.emplace(u, sign > 0 ? Integer(-c) : c);
                if (!fresh) {
                    if (sign > 0)
                        it->second -= c;
                    else
                        it->second += c;
                }
            }
            std::erase_if(next, [](const auto& kv) { return sgn(kv.second) == 0; });
            for (const auto& [v, c] : next) {
                auto [it, fresh] = acc.emplace(v, c);
                if (!fresh) it->second += c;
            }
            cur = std::move(next);
        }
        std::erase_if(acc, [](const auto& kv) { return sgn(kv.second) == 0; });
        terms_ = std::move(acc);
    }
}

void Series::mul_binomial_power(int sign, const Weight& alpha, long k) {
    if (sign != 1 && sign != -1) throw ConfigError("binomial sign must be +1 or -1");
    if (alpha.is_zero()) throw DegenerateFactor("binomial factor with zero root");
    if (k == 0) return;
    auto c = window_.frame()->try_coords(alpha);
    if (!c) throw WindowError("factor root outside the window span");
    Offsets r{};
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < c->size(); ++i) {
        const Scalar& x = (*c)[i];
        if (x.get_den() != 1) throw WindowError("factor root is not integral in the window frame");
        r[i] = std::int32_t(x.get_num().get_si());
        if (r[i] > 0) pos = true;
        if (r[i] < 0) neg = true;
    }
    if (pos && neg) throw WindowError("factor root is neither positive nor negative");
    if (neg) {
        // 1 + s e^{gamma} = s e^{gamma} (1 + s e^{-gamma}) with gamma = -alpha.
        Offsets up{};
        for (std::size_t i = 0; i < kMaxRank; ++i) {
            r[i] = -r[i];
            up[i] = std::int32_t(-k * r[i]);
        }
        int s = (sign < 0 && (k % 2 != 0)) ? -1 : 1;
        shift_offsets(up, s);
    }
    mul_positive(sign, r, k);
}

void Series::restrict_to_window() {
    std::erase_if(terms_, [this](const auto& kv) {
        if (sgn(kv.second) == 0) return true;
        if (window_.admissible(kv.first)) return false;
        clipped_ = true;
        return true;
    });
}

Series mul(const Series& a, const Series& b) {
    const Window& wa = a.window();
    const Window& wb = b.window();
    if (wa.frame() != wb.frame() && wa.frame()->simple() != wb.frame()->simple())
        throw FrameError("multiplying series over different height frames");
    for (const auto* s : {&a, &b})
        for (const auto& [v, c] : s->raw_terms())
            if (!s->window().admissible(v))
                throw FrameError("product operands must be restricted to their windows");
    if (a.clipped() || b.clipped()) throw WindowError("cannot multiply a clipped series");
    Window w(wa.frame(), wa.reference() + wb.reference(), std::min(wa.bound(), wb.bound()));
    Series out(w);
    out.truncated_ = a.truncated() || b.truncated() || wa.bound() != wb.bound();
    for (const auto& [v, c] : a.raw_terms())
        for (const auto& [u, d] : b.raw_terms()) {
            Offsets s = add_offsets(v, u);
            if (w.admissible(s))
                out.add(s, c * d);
            else
                out.truncated_ = true;
        }
    return out;
}

Series act(const AffineWeylElement& w, const Series& a, const Window& target) {
    AffineWeylElement inv = w.inverse();
    Series out(target);
    for (const auto& u : target.admissible_points()) {
        Weight pre = inv.apply(target.exponent(u));
        auto v = a.window().offsets_of(pre);
        // every term of a lies in its lattice coset
        if (!v) continue;
        const Window& src = a.window();
        bool known = src.admissible(*v) || (!a.clipped() && (!a.truncated() || src.reachable(*v)));
        if (!known) throw WindowError("preimage of a target exponent lies outside the known part of the source");
        out.add(u, a.coefficient_at(*v));
    }
    return out;
}

FactoredSeries FactoredSeries::act(const AffineWeylElement& w) const {
    FactoredSeries out;
    out.sign = sign;
    out.monomial = w.apply(monomial);
    for (const auto& f : factors) out.factors.push_back({f.sign, w.apply(f.root), f.power});
    return out;
}

Series FactoredSeries::expand(const Window& window) const {
    // Normalize every factor to a positive root so that the expansion only
    // descends from the accumulated monomial.
    Weight top = monomial;
    int s = sign;
    std::vector<std::pair<int, Offsets>> pos;
    std::vector<long> powers;
    for (const auto& f : factors) {
        if (f.root.is_zero()) throw DegenerateFactor("binomial factor with zero root");
        if (f.power == 0) continue;
        auto c = window.frame()->try_coords(f.root);
        if (!c) throw WindowError("factor root outside the window span");
        Offsets r{};
        bool p = false, n = false;
        for (std::size_t i = 0; i < c->size(); ++i) {
            const Scalar& x = (*c)[i];
            if (x.get_den() != 1) throw WindowError("factor root is not integral in the window frame");
            r[i] = std::int32_t(x.get_num().get_si());
            if (r[i] > 0) p = true;
            if (r[i] < 0) n = true;
        }
        if (p && n) throw WindowError("factor root is neither positive nor negative");
        if (n) {
            for (auto& x : r) x = -x;
            top -= Scalar(f.power) * f.root;
            if (f.sign < 0 && f.power % 2 != 0) s = -s;
        }
        pos.emplace_back(f.sign, r);
        powers.push_back(f.power);
    }
    Series out = Series::monomial(window, top, Integer(s));
    // Polynomial factors first keeps intermediate supports small.
    for (std::size_t i = 0; i < pos.size() && !out.empty(); ++i)
        if (powers[i] > 0) out.mul_positive(pos[i].first, pos[i].second, powers[i]);
    for (std::size_t i = 0; i < pos.size() && !out.empty(); ++i)
        if (powers[i] < 0) out.mul_positive(pos[i].first, pos[i].second, powers[i]);
    out.restrict_to_window();
    return out;
}

std::optional<Mismatch> first_mismatch(const Series& a, const Series& b) {
    if (!a.window().same_as(b.window())) throw FrameError("comparing series over different windows");
    const Window& w = a.window();
    std::vector<Offsets> keys;
    for (const auto* s : {&a, &b})
        for (const auto& [v, c] : s->raw_terms())
            if (w.admissible(v)) keys.push_back(v);
    const std::size_t r = w.rank();
    std::sort(keys.begin(), keys.end(),
              [r](const Offsets& x, const Offsets& y) { return offsets_less(x, y, r); });
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (const auto& v : keys) {
        Integer ca = a.coefficient_at(v), cb = b.coefficient_at(v);
        if (ca != cb) return Mismatch{v, w.exponent(v), ca, cb};
    }
    return std::nullopt;
}

} // namespace superdenom
