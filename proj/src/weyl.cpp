#include "superdenom/weyl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "superdenom/errors.hpp"

namespace superdenom {

AffineWeylElement AffineWeylElement::identity(std::size_t dim) {
    AffineWeylElement e;
    e.dim_ = dim;
    e.m_.assign(dim * dim, Scalar(0));
    for (std::size_t i = 0; i < dim; ++i) e.m_[i * dim + i] = 1;
    return e;
}

Weight AffineWeylElement::apply(const Weight& w) const {
    if (w.size() != dim_) throw ConfigError("weight dimension mismatch in group action");
    Weight out(dim_ - 2);
    for (std::size_t j = 0; j < dim_; ++j) {
        const Scalar& x = w[j];
        if (sgn(x) == 0) continue;
        for (std::size_t i = 0; i < dim_; ++i) {
            const Scalar& a = m_[i * dim_ + j];
            if (sgn(a) != 0) out[i] += a * x;
        }
    }
    return out;
}

AffineWeylElement AffineWeylElement::compose(const AffineWeylElement& o) const {
    if (o.dim_ != dim_) throw ConfigError("group elements of different dimension");
    AffineWeylElement r;
    r.dim_ = dim_;
    r.m_.assign(dim_ * dim_, Scalar(0));
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t k = 0; k < dim_; ++k) {
            const Scalar& a = m_[i * dim_ + k];
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                const Scalar& b = o.m_[k * dim_ + j];
                if (sgn(b) != 0) r.m_[i * dim_ + j] += a * b;
            }
        }
    r.sign_ = sign_ * o.sign_;
    r.length_ = length_ + o.length_;
    return r;
}

AffineWeylElement AffineWeylElement::inverse() const {
    std::vector<std::vector<Scalar>> a(dim_, std::vector<Scalar>(dim_));
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) a[i][j] = at(i, j);
    AffineWeylElement r;
    r.dim_ = dim_;
    r.m_.assign(dim_ * dim_, Scalar(0));
    for (std::size_t k = 0; k < dim_; ++k) {
        std::vector<Scalar> e(dim_, Scalar(0));
        e[k] = 1;
        auto x = solve_linear(a, e);
        if (!x) throw DataError("singular group element");
        for (std::size_t i = 0; i < dim_; ++i) r.m_[i * dim_ + k] = (*x)[i];
    }
    r.sign_ = sign_;
    r.length_ = length_;
    return r;
}

Scalar AffineWeylElement::finite_determinant() const {
    const std::size_t f = dim_ - 2;
    std::vector<std::vector<Scalar>> a(f, std::vector<Scalar>(f));
    for (std::size_t i = 0; i < f; ++i)
        for (std::size_t j = 0; j < f; ++j) a[i][j] = at(i, j);
    return determinant(std::move(a));
}

bool AffineWeylElement::fixes_delta() const {
    const std::size_t d = dim_ - 2;
    for (std::size_t i = 0; i < dim_; ++i)
        if (at(i, d) != (i == d ? 1 : 0)) return false;
    return true;
}

std::size_t AffineWeylElement::hash() const {
    std::size_t h = dim_;
    for (const auto& x : m_) {
        std::size_t v = std::size_t(mpz_get_si(x.get_num_mpz_t())) * 1000003u +
                        std::size_t(mpz_get_si(x.get_den_mpz_t()));
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

AffineWeylElement AffineWeylElement::times_reflection(const Weight& alpha,
                                                      const std::vector<Scalar>& cov) const {
    // W s = W - (W alpha) (x) cov.
    Weight wa = apply(alpha);
    AffineWeylElement r = *this;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (sgn(wa[i]) == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            if (sgn(cov[j]) != 0) r.m_[i * dim_ + j] -= wa[i] * cov[j];
    }
    r.sign_ = -sign_;
    r.length_ = length_ + 1;
    return r;
}

namespace {

// cov[j] = pair(e_j, coroot) over the raw coordinate basis.
std::vector<Scalar> coroot_functional(const BilinearForm& form, const Weight& coroot) {
    const std::size_t dim = coroot.size();
    std::vector<Scalar> cov(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        Weight e(dim - 2);
        e[j] = 1;
        cov[j] = form.pair(e, coroot);
    }
    return cov;
}

struct Generator {
    Weight root;
    std::vector<Scalar> cov;
};

Generator make_generator(const BilinearForm& form, const Weight& alpha) {
    Scalar n = form.norm(alpha);
    if (sgn(n) == 0) throw ReflectError("isotropic root " + form.format(alpha));
    return {alpha, coroot_functional(form, Scalar(2) / n * alpha)};
}

struct ElementIndex {
    std::unordered_multimap<std::size_t, std::size_t> by_hash;

    std::optional<std::size_t> find(const std::vector<AffineWeylElement>& pool,
                                     const AffineWeylElement& w, std::size_t h) const {
        auto [lo, hi] = by_hash.equal_range(h);
        for (auto it = lo; it != hi; ++it)
            if (pool[it->second].same_action(w)) return it->second;
        return std::nullopt;
    }
};

} // namespace

AffineWeylElement make_reflection(const BilinearForm& form, const Weight& alpha,
                                  const Weight& coroot) {
    if (form.pair(alpha, coroot) != 2) throw ReflectError("pair(alpha, coroot) != 2");
    AffineWeylElement id = AffineWeylElement::identity(alpha.size());
    return id.times_reflection(alpha, coroot_functional(form, coroot));
}

AffineWeylElement reflection(const BilinearForm& form, const Weight& alpha) {
    Scalar n = form.norm(alpha);
    if (sgn(n) == 0) throw ReflectError("isotropic root " + form.format(alpha));
    return make_reflection(form, alpha, Scalar(2) / n * alpha);
}

AffineWeylElement translation(const BilinearForm& form, const Weight& mu) {
    if (sgn(mu.level()) != 0 || sgn(mu.dcoef()) != 0)
        throw TranslationError("translation weight must be finite: " + form.format(mu));
    const std::size_t dim = mu.size();
    const std::size_t d = dim - 2, l = dim - 1;
    AffineWeylElement t = AffineWeylElement::identity(dim);
    auto mu_cov = coroot_functional(form, mu);
    Scalar half = form.norm(mu) / 2;
    // Column j is t(e_j) = e_j + level_j mu - ((e_j,mu) + half level_j) delta.
    for (std::size_t j = 0; j < dim; ++j) {
        Scalar lev = (j == l) ? Scalar(1) : Scalar(0);
        if (sgn(lev) != 0)
            for (std::size_t i = 0; i < d; ++i) t.m_[i * dim + j] += lev * mu[i];
        t.m_[d * dim + j] -= mu_cov[j] + half * lev;
    }
    return t;
}

bool is_negative(const HeightFrame& frame, const Weight& nu) {
    if (nu.is_zero()) return false;
    for (const auto& c : frame.coords(nu))
        if (sgn(c) > 0) return false;
    return true;
}

std::vector<Weight> sharp_simple_roots(const RootSystem& rs) {
    std::vector<Weight> pos;
    for (const auto& r : rs.positive)
        if (r.parity == Parity::even && sgn(rs.form->norm(r.weight)) > 0) pos.push_back(r.weight);
    std::set<Weight> posset(pos.begin(), pos.end());
    std::vector<Weight> simple;
    for (const auto& a : pos) {
        bool decomposable = false;
        for (const auto& b : pos)
            if (b != a && posset.count(rs.form->canonical(a - b))) {
                decomposable = true;
                break;
            }
        if (!decomposable) simple.push_back(a);
    }
    return simple;
}

Weight sharp_highest_root(const RootSystem& rs) {
    auto simple = sharp_simple_roots(rs);
    std::set<Weight> sharp(rs.sharp.begin(), rs.sharp.end());
    std::vector<Weight> top;
    for (const auto& r : rs.positive) {
        if (!sharp.count(r.weight)) continue;
        bool maximal = true;
        for (const auto& s : simple)
            if (sharp.count(rs.form->canonical(r.weight + s))) {
                maximal = false;
                break;
            }
        if (maximal) top.push_back(r.weight);
    }
    if (top.size() != 1) throw DataError("positive-norm even subsystem has no unique highest root");
    return top.front();
}

std::vector<Weight> affine_sharp_simple_roots(const RootSystem& rs) {
    auto out = sharp_simple_roots(rs);
    out.push_back(rs.delta() - sharp_highest_root(rs));
    return out;
}

std::vector<AffineWeylElement> generate_finite_sharp(const RootSystem& rs, std::size_t guard) {
    std::vector<Generator> gens;
    for (const auto& a : sharp_simple_roots(rs)) gens.push_back(make_generator(*rs.form, a));
    std::vector<AffineWeylElement> pool{AffineWeylElement::identity(rs.form->finite_dim() + 2)};
    ElementIndex index;
    index.by_hash.emplace(pool[0].hash(), 0);
    for (std::size_t cur = 0; cur < pool.size(); ++cur) {
        for (const auto& g : gens) {
            AffineWeylElement nw = pool[cur].times_reflection(g.root, g.cov);
            std::size_t h = nw.hash();
            if (index.find(pool, nw, h)) continue;
            if (pool.size() >= guard) throw DataError("finite Weyl group exceeds the size guard");
            index.by_hash.emplace(h, pool.size());
            pool.push_back(std::move(nw));
        }
    }
    return pool;
}

std::vector<AffineWeylElement> enumerate_affine_sharp(const RootSystem& rs, long N) {
    const auto& form = *rs.form;
    std::vector<Generator> gens;
    for (const auto& a : affine_sharp_simple_roots(rs)) gens.push_back(make_generator(form, a));

    std::vector<AffineWeylElement> pool{AffineWeylElement::identity(form.finite_dim() + 2)};
    if (N < 0) return {};
    ElementIndex index;
    index.by_hash.emplace(pool[0].hash(), 0);
    for (std::size_t cur = 0; cur < pool.size(); ++cur) {
        for (const auto& g : gens) {
            AffineWeylElement nw = pool[cur].times_reflection(g.root, g.cov);
            Scalar ht = rs.affine_frame->height(rs.rho_hat - nw.apply(rs.rho_hat));
            if (ht > N) continue;
            std::size_t h = nw.hash();
            if (index.find(pool, nw, h)) continue;
            index.by_hash.emplace(h, pool.size());
            pool.push_back(std::move(nw));
        }
    }
    return pool;
}

std::vector<AffineWeylElement> affine_sharp_ball(const RootSystem& rs, int L) {
    const auto& form = *rs.form;
    std::vector<Generator> gens;
    for (const auto& a : affine_sharp_simple_roots(rs)) gens.push_back(make_generator(form, a));
    std::vector<AffineWeylElement> pool{AffineWeylElement::identity(form.finite_dim() + 2)};
    ElementIndex index;
    index.by_hash.emplace(pool[0].hash(), 0);
    for (std::size_t cur = 0; cur < pool.size(); ++cur) {
        if (pool[cur].length() >= L) continue;
        for (const auto& g : gens) {
            AffineWeylElement nw = pool[cur].times_reflection(g.root, g.cov);
            std::size_t h = nw.hash();
            if (index.find(pool, nw, h)) continue;
            index.by_hash.emplace(h, pool.size());
            pool.push_back(std::move(nw));
        }
    }
    return pool;
}

Decomposition decompose(const BilinearForm& form, const AffineWeylElement& w) {
    const std::size_t dim = w.dim();
    Weight mu = w.apply(form.lambda0()).finite_part();
    AffineWeylElement y = translation(form, -mu).compose(w);
    Weight lam = form.lambda0();
    if (y.apply(lam) != lam || !y.fixes_delta())
        throw DataError("finite part of a group element does not fix Lambda_0 and delta");
    for (std::size_t j = 0; j + 2 < dim; ++j)
        if (sgn(y.at(dim - 2, j)) != 0 || sgn(y.at(dim - 1, j)) != 0)
            throw DataError("finite part of a group element leaks into delta");
    y.set_word(w.length(), w.sign());
    if (!translation(form, mu).compose(y).same_action(w))
        throw DataError("decomposition does not recompose");
    return {std::move(y), std::move(mu)};
}

std::vector<Root> inversion_set(const RootSystem& rs, const AffineWeylElement& w, long bound) {
    std::vector<Root> out;
    for (const auto& e : affine_positive_roots(rs, bound)) {
        if (e.root.finite_part_zero()) continue; // imaginary roots are fixed
        if (is_negative(*rs.affine_frame, w.apply(e.root))) out.push_back({e.root, e.parity});
    }
    return out;
}

Integer weyl_order_from_heights(const RootSystem& rs) {
    auto simple = sharp_simple_roots(rs);
    HeightFrame frame(simple);
    std::map<long, long> count;
    for (const auto& r : rs.positive) {
        if (r.parity != Parity::even || sgn(rs.form->norm(r.weight)) <= 0) continue;
        Scalar h = frame.height(r.weight);
        if (h.get_den() != 1) throw DataError("fractional height in the even subsystem");
        ++count[h.get_num().get_si()];
    }
    // The exponents form the partition conjugate to the height distribution.
    Integer order = 1;
    long prev = long(simple.size());
    for (long k = 1;; ++k) {
        long nk = count.count(k) ? count[k] : 0;
        if (nk > prev) throw DataError("height distribution is not a partition");
        for (long i = 0; i < prev - nk; ++i) order *= k; // exponents equal to k-1
        prev = nk;
        if (nk == 0) break;
    }
    return order;
}

} // namespace superdenom
