#include "superdenom/root_data.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "superdenom/errors.hpp"

namespace superdenom {

const char* family_tag(Family f) {
    switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::F4: return "F4";
    case Family::G3: return "G3";
    }
    return "?";
}

Family parse_family(const std::string& tag) {
    std::string t;
    for (char c : tag) t += char(std::toupper(static_cast<unsigned char>(c)));
    if (t == "A") return Family::A;
    if (t == "B" || t == "BNN") return Family::B;
    if (t == "C") return Family::C;
    if (t == "D") return Family::D;
    if (t == "F4" || t == "F") return Family::F4;
    if (t == "G3" || t == "G") return Family::G3;
    throw SpecError("unknown family '" + tag + "'");
}

std::string FamilySpec::name() const {
    switch (family) {
    case Family::F4: return "F(4)";
    case Family::G3: return "G(3)";
    case Family::C: return "C(" + std::to_string(m) + ")";
    default:
        return std::string(family_tag(family)) + "(" + std::to_string(m) + "," +
               std::to_string(n) + ")";
    }
}

void FamilySpec::validate() const {
    switch (family) {
    case Family::A:
        if (m == n) throw UnsupportedFamily("A(n,n) has zero dual Coxeter number");
        if (n < 1 || m < 1) throw SpecError("A(m,n) needs m, n >= 1");
        if (m < n) throw SpecError("A(m,n) is taken with m > n (A(m,n) = A(n,m))");
        break;
    case Family::B:
        if (m < 0 || n < 1) throw SpecError("B(m,n) needs m >= 0, n >= 1");
        break;
    case Family::C:
        if (m < 2) throw SpecError("C(m) needs m >= 2");
        break;
    case Family::D:
        if (m == n + 1) throw UnsupportedFamily("D(n+1,n) has zero dual Coxeter number");
        if (m < 1 || n < 1) throw SpecError("D(m,n) needs m, n >= 1");
        break;
    case Family::F4:
    case Family::G3:
        break;
    }
    if (m > 12 || n > 12) throw SpecError("rank parameters above 12 are not supported");
}

bool RootSystem::is_root(const Weight& w) const { return parity_.count(w) != 0; }

Parity RootSystem::parity_of(const Weight& w) const {
    auto it = parity_.find(w);
    if (it == parity_.end()) throw DataError("not a root: " + form->format(w));
    return it->second;
}

std::vector<Root> RootSystem::positive_with(Parity p) const {
    std::vector<Root> out;
    for (const auto& r : positive)
        if (r.parity == p) out.push_back(r);
    return out;
}

namespace {

// Raw family data before derived quantities are computed.
struct Tables {
    FormPtr form;
    std::vector<Root> roots;
    std::vector<Weight> pi;
    std::vector<std::size_t> s_index;
    Weight theta;
    std::optional<Weight> xi;
    int cartan_dim = 0;
};

class TableBuilder {
public:
    explicit TableBuilder(FormPtr form) : form_(std::move(form)) {}

    Weight e(int i) const { return form_->eps(i); }
    Weight d(int j) const { return form_->del(j); }

    void add(const Weight& w, Parity p) {
        Weight c = form_->canonical(w);
        if (c.is_zero()) throw DataError("zero root in table");
        if (seen_.insert(c).second) roots_.push_back({c, p});
    }
    void add_pm(const Weight& w, Parity p) {
        add(w, p);
        add(-w, p);
    }

    // All +-x_i +- x_j (i<j) for a coordinate generator.
    template <class Gen>
    void add_pair_sums(Gen g, int count, Parity p) {
        for (int i = 1; i <= count; ++i)
            for (int j = i + 1; j <= count; ++j) {
                add_pm(g(i) + g(j), p);
                add_pm(g(i) - g(j), p);
            }
    }

    std::vector<Root> take() { return std::move(roots_); }

private:
    FormPtr form_;
    std::vector<Root> roots_;
    std::set<Weight> seen_;
};

// Pi from an ordered chain of basis symbols: consecutive differences.
struct Sym {
    bool eps;
    int index;
};

std::vector<Weight> chain(const TableBuilder& b, const std::vector<Sym>& seq) {
    std::vector<Weight> out;
    auto w = [&](const Sym& s) { return s.eps ? b.e(s.index) : b.d(s.index); };
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) out.push_back(w(seq[k]) - w(seq[k + 1]));
    return out;
}

std::size_t index_of(const std::vector<Weight>& v, const Weight& w) {
    auto it = std::find(v.begin(), v.end(), w);
    if (it == v.end()) throw DataError("maximal isotropic root is not simple");
    return std::size_t(it - v.begin());
}

Tables tables_A(int m, int n) {
    Tables t;
    t.form = std::make_shared<BilinearForm>(m, n, Scalar(1), Scalar(-1));
    TableBuilder b(t.form);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            if (i != j) b.add(b.e(i) - b.e(j), Parity::even);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) b.add(b.d(i) - b.d(j), Parity::even);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j) b.add_pm(b.e(i) - b.d(j), Parity::odd);
    t.roots = b.take();

    std::vector<Sym> seq;
    for (int k = 1; k <= n; ++k) {
        seq.push_back({true, k});
        seq.push_back({false, k});
    }
    for (int k = n + 1; k <= m; ++k) seq.push_back({true, k});
    t.pi = chain(b, seq);
    for (int i = 1; i <= n; ++i) t.s_index.push_back(index_of(t.pi, b.e(i) - b.d(i)));
    t.theta = b.e(1) - b.e(m);
    Weight xi = t.form->zero();
    for (int i = 1; i <= m; ++i) xi += Scalar(1, m) * b.e(i);
    for (int j = 1; j <= n; ++j) xi -= Scalar(1, n) * b.d(j);
    t.xi = xi;
    t.cartan_dim = m + n - 1;
    return t;
}

// B(m,n): orthosymplectic with an odd-dimensional orthogonal part.  The
// symplectic side carries positive norm when m <= n, the orthogonal side
// when m > n.
Tables tables_B(int m, int n) {
    Tables t;
    if (m <= n) {
        // eps: C_n side, del: B_m side.
        t.form = std::make_shared<BilinearForm>(n, m, Scalar(1), Scalar(-1));
        TableBuilder b(t.form);
        b.add_pair_sums([&](int i) { return b.e(i); }, n, Parity::even);
        for (int i = 1; i <= n; ++i) b.add_pm(2 * b.e(i), Parity::even);
        b.add_pair_sums([&](int i) { return b.d(i); }, m, Parity::even);
        for (int i = 1; i <= m; ++i) b.add_pm(b.d(i), Parity::even);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= m; ++j) {
                b.add_pm(b.e(i) + b.d(j), Parity::odd);
                b.add_pm(b.e(i) - b.d(j), Parity::odd);
            }
        for (int i = 1; i <= n; ++i) b.add_pm(b.e(i), Parity::odd);
        t.roots = b.take();

        std::vector<Sym> seq;
        if (m < n) {
            for (int k = 1; k <= m; ++k) {
                seq.push_back({true, k});
                seq.push_back({false, k});
            }
            for (int k = m + 1; k <= n; ++k) seq.push_back({true, k});
            t.pi = chain(b, seq);
            t.pi.push_back(b.e(n));
            for (int i = 1; i <= m; ++i) t.s_index.push_back(index_of(t.pi, b.e(i) - b.d(i)));
            t.theta = 2 * b.e(1);
        } else {
            for (int k = 1; k <= n; ++k) {
                seq.push_back({false, k});
                seq.push_back({true, k});
            }
            t.pi = chain(b, seq);
            t.pi.push_back(b.e(n));
            for (int i = 1; i <= n; ++i) t.s_index.push_back(index_of(t.pi, b.d(i) - b.e(i)));
            t.theta = b.d(1) + b.e(1);
        }
        t.cartan_dim = m + n;
        return t;
    }

    // m > n: eps: B_m side, del: C_n side.
    t.form = std::make_shared<BilinearForm>(m, n, Scalar(1), Scalar(-1));
    TableBuilder b(t.form);
    b.add_pair_sums([&](int i) { return b.e(i); }, m, Parity::even);
    for (int i = 1; i <= m; ++i) b.add_pm(b.e(i), Parity::even);
    b.add_pair_sums([&](int i) { return b.d(i); }, n, Parity::even);
    for (int j = 1; j <= n; ++j) b.add_pm(2 * b.d(j), Parity::even);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j) {
            b.add_pm(b.e(i) + b.d(j), Parity::odd);
            b.add_pm(b.e(i) - b.d(j), Parity::odd);
        }
    for (int j = 1; j <= n; ++j) b.add_pm(b.d(j), Parity::odd);
    t.roots = b.take();

    std::vector<Sym> seq;
    if (m == n + 1) {
        // No simple system with positive-norm maximal root exists here; the
        // alternating chain gives an isotropic maximal root as for B(n,n).
        for (int k = 1; k <= n; ++k) {
            seq.push_back({true, k});
            seq.push_back({false, k});
        }
        seq.push_back({true, n + 1});
        t.pi = chain(b, seq);
        t.pi.push_back(b.e(m));
        for (int i = 1; i <= n; ++i) t.s_index.push_back(index_of(t.pi, b.e(i) - b.d(i)));
        t.theta = b.e(1) + b.d(1);
    } else {
        seq.push_back({true, 1});
        seq.push_back({true, 2});
        for (int k = 1; k <= n; ++k) {
            seq.push_back({false, k});
            seq.push_back({true, k + 2});
        }
        for (int k = n + 3; k <= m; ++k) seq.push_back({true, k});
        t.pi = chain(b, seq);
        t.pi.push_back(b.e(m));
        for (int i = 1; i <= n; ++i)
            t.s_index.push_back(index_of(t.pi, b.e(i + 1) - b.d(i)));
        t.theta = b.e(1) + b.e(2);
    }
    t.cartan_dim = m + n;
    return t;
}

Tables tables_C(int m) {
    Tables t;
    t.form = std::make_shared<BilinearForm>(m, 1, Scalar(1), Scalar(-1));
    TableBuilder b(t.form);
    b.add_pair_sums([&](int i) { return b.e(i); }, m, Parity::even);
    for (int i = 1; i <= m; ++i) b.add_pm(2 * b.e(i), Parity::even);
    for (int i = 1; i <= m; ++i) {
        b.add_pm(b.e(i) + b.d(1), Parity::odd);
        b.add_pm(b.e(i) - b.d(1), Parity::odd);
    }
    t.roots = b.take();
    std::vector<Sym> seq;
    for (int k = 1; k <= m; ++k) seq.push_back({true, k});
    t.pi = chain(b, seq);
    t.pi.push_back(b.e(m) - b.d(1));
    t.pi.push_back(b.e(m) + b.d(1));
    t.s_index.push_back(index_of(t.pi, b.e(m) - b.d(1)));
    t.theta = 2 * b.e(1);
    t.xi = b.d(1);
    t.cartan_dim = m + 1;
    return t;
}

// D(m,n): orthosymplectic with an even-dimensional orthogonal part.
Tables tables_D(int m, int n) {
    Tables t;
    if (n >= m) {
        // eps: C_n side, del: D_m side.
        t.form = std::make_shared<BilinearForm>(n, m, Scalar(1), Scalar(-1));
        TableBuilder b(t.form);
        b.add_pair_sums([&](int i) { return b.e(i); }, n, Parity::even);
        for (int i = 1; i <= n; ++i) b.add_pm(2 * b.e(i), Parity::even);
        b.add_pair_sums([&](int i) { return b.d(i); }, m, Parity::even);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= m; ++j) {
                b.add_pm(b.e(i) + b.d(j), Parity::odd);
                b.add_pm(b.e(i) - b.d(j), Parity::odd);
            }
        t.roots = b.take();
        std::vector<Sym> seq;
        for (int k = 1; k <= m; ++k) {
            seq.push_back({true, k});
            seq.push_back({false, k});
        }
        if (n > m) {
            for (int k = m + 1; k <= n; ++k) seq.push_back({true, k});
            t.pi = chain(b, seq);
            t.pi.push_back(2 * b.e(n));
        } else {
            t.pi = chain(b, seq);
            t.pi.push_back(b.e(m) + b.d(m));
        }
        for (int i = 1; i <= m; ++i) t.s_index.push_back(index_of(t.pi, b.e(i) - b.d(i)));
        t.theta = 2 * b.e(1);
        t.cartan_dim = m + n;
        return t;
    }

    // m > n + 1: eps: D_m side, del: C_n side.
    t.form = std::make_shared<BilinearForm>(m, n, Scalar(1), Scalar(-1));
    TableBuilder b(t.form);
    b.add_pair_sums([&](int i) { return b.e(i); }, m, Parity::even);
    b.add_pair_sums([&](int i) { return b.d(i); }, n, Parity::even);
    for (int j = 1; j <= n; ++j) b.add_pm(2 * b.d(j), Parity::even);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j) {
            b.add_pm(b.e(i) + b.d(j), Parity::odd);
            b.add_pm(b.e(i) - b.d(j), Parity::odd);
        }
    t.roots = b.take();
    std::vector<Sym> seq{{true, 1}, {true, 2}};
    for (int k = 1; k <= n; ++k) {
        seq.push_back({false, k});
        seq.push_back({true, k + 2});
    }
    for (int k = n + 3; k <= m; ++k) seq.push_back({true, k});
    t.pi = chain(b, seq);
    if (m == n + 2)
        t.pi.push_back(b.d(n) + b.e(m));
    else
        t.pi.push_back(b.e(m - 1) + b.e(m));
    for (int i = 1; i <= n; ++i) t.s_index.push_back(index_of(t.pi, b.e(i + 1) - b.d(i)));
    t.theta = b.e(1) + b.e(2);
    t.cartan_dim = m + n;
    return t;
}

Tables tables_F4() {
    Tables t;
    t.form = std::make_shared<BilinearForm>(3, 1, Scalar(1), Scalar(-3));
    TableBuilder b(t.form);
    b.add_pair_sums([&](int i) { return b.e(i); }, 3, Parity::even);
    for (int i = 1; i <= 3; ++i) b.add_pm(b.e(i), Parity::even);
    b.add_pm(b.d(1), Parity::even);
    for (int s1 : {1, -1})
        for (int s2 : {1, -1})
            for (int s3 : {1, -1})
                for (int s4 : {1, -1})
                    b.add(Scalar(1, 2) * (s1 * b.e(1) + s2 * b.e(2) + s3 * b.e(3) + s4 * b.d(1)),
                          Parity::odd);
    t.roots = b.take();
    const Scalar h(1, 2);
    t.pi = {h * (b.e(1) + b.e(2) + b.e(3) + b.d(1)), h * (-b.e(1) + b.e(2) + b.e(3) - b.d(1)),
            h * (-b.e(1) - b.e(2) - b.e(3) + b.d(1)), b.e(1) - b.e(2)};
    t.s_index = {0};
    t.theta = b.e(3) - b.e(2);
    t.cartan_dim = 4;
    return t;
}

Tables tables_G3() {
    Tables t;
    t.form = std::make_shared<BilinearForm>(3, 1, Scalar(1), Scalar(-2, 3), true);
    TableBuilder b(t.form);
    for (int i = 1; i <= 3; ++i) b.add_pm(b.e(i), Parity::even);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (i != j) b.add(b.e(i) - b.e(j), Parity::even);
    b.add_pm(2 * b.d(1), Parity::even);
    b.add_pm(b.d(1), Parity::odd);
    for (int i = 1; i <= 3; ++i) {
        b.add_pm(b.e(i) + b.d(1), Parity::odd);
        b.add_pm(b.e(i) - b.d(1), Parity::odd);
    }
    t.roots = b.take();
    t.pi = {b.d(1) - b.e(2), b.e(3) - b.d(1), -b.e(3) - b.e(1)};
    for (auto& p : t.pi) p = t.form->canonical(p);
    t.s_index = {0};
    t.theta = t.form->canonical(b.e(3) - b.e(1));
    t.cartan_dim = 3;
    return t;
}

Tables tables_for(const FamilySpec& spec) {
    switch (spec.family) {
    case Family::A: return tables_A(spec.m, spec.n);
    case Family::B: return tables_B(spec.m, spec.n);
    case Family::C: return tables_C(spec.m);
    case Family::D: return tables_D(spec.m, spec.n);
    case Family::F4: return tables_F4();
    case Family::G3: return tables_G3();
    }
    throw SpecError("unknown family");
}

bool all_sign(const std::vector<long>& c, int s) {
    for (long x : c)
        if ((s > 0 && x < 0) || (s < 0 && x > 0)) return false;
    return true;
}

} // namespace

RootSystem build_root_system(const FamilySpec& spec, const RootOptions& options) {
    spec.validate();
    Tables t = tables_for(spec);

    RootSystem rs;
    rs.spec = spec;
    rs.form = t.form;
    rs.roots = std::move(t.roots);
    for (const auto& r : rs.roots) rs.parity_[r.weight] = r.parity;
    const auto& form = *rs.form;

    rs.pi = t.pi;
    for (const auto& p : rs.pi) rs.pi_parity.push_back(rs.parity_of(p));
    rs.frame = std::make_shared<HeightFrame>(rs.pi);

    // Positive system: every root must be a non-negative or non-positive
    // integer combination of pi.
    for (const auto& r : rs.roots) {
        auto c = rs.frame->int_coords(r.weight);
        if (all_sign(c, 1))
            rs.positive.push_back(r);
        else if (!all_sign(c, -1))
            throw DataError("root " + form.format(r.weight) + " has mixed-sign coordinates");
    }
    if (rs.positive.size() * 2 != rs.roots.size()) throw DataError("root list is not symmetric");
    std::stable_sort(rs.positive.begin(), rs.positive.end(), [&](const Root& a, const Root& b) {
        return rs.frame->height(a.weight) < rs.frame->height(b.weight);
    });

    for (const auto& r : rs.roots) {
        if (r.parity != Parity::even) continue;
        int s = sgn(form.norm(r.weight));
        if (s > 0)
            rs.sharp.push_back(r.weight);
        else if (s < 0)
            rs.delta2.push_back(r.weight);
        else
            throw DataError("isotropic even root " + form.format(r.weight));
    }

    for (std::size_t i : t.s_index) rs.s_set.push_back(rs.pi.at(i));
    for (const auto& b : rs.s_set) {
        if (sgn(form.norm(b)) != 0) throw DataError("element of S is not isotropic");
        if (rs.parity_of(b) != Parity::odd) throw DataError("element of S is not odd");
    }
    for (std::size_t i = 0; i < rs.s_set.size(); ++i)
        for (std::size_t j = i + 1; j < rs.s_set.size(); ++j)
            if (sgn(form.pair(rs.s_set[i], rs.s_set[j])) != 0)
                throw DataError("S is not pairwise orthogonal");
    for (const auto& p : rs.pi)
        if (sgn(form.norm(p)) < 0) throw DataError("simple root of negative norm");

    // rho inside span(pi): Gram system 2 (rho, alpha) = (alpha, alpha).
    {
        const std::size_t r = rs.pi.size();
        std::vector<std::vector<Scalar>> gram(r, std::vector<Scalar>(r));
        std::vector<Scalar> rhs(r);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j) gram[i][j] = form.pair(rs.pi[i], rs.pi[j]);
            rhs[i] = form.norm(rs.pi[i]) / 2;
        }
        auto x = solve_linear(gram, rhs);
        if (!x) throw DataError("form is degenerate on the root span");
        rs.rho = rs.frame->combine(*x);
    }

    rs.theta = t.theta;
    if (maximal_root(rs) != rs.theta)
        throw DataError("tabulated maximal root disagrees with the root list");
    if (sgn(form.norm(rs.theta)) < 0) throw DataError("maximal root has negative norm");

    rs.xi = t.xi;
    if (rs.xi) {
        if (sgn(form.norm(*rs.xi)) >= 0) throw DataError("xi must have negative norm");
        for (const auto& r : rs.roots)
            if (r.parity == Parity::even && sgn(form.pair(*rs.xi, r.weight)) != 0)
                throw DataError("xi is not orthogonal to the even roots");
    }

    rs.hdual = dual_coxeter(rs);
    rs.rho_hat = rs.rho + rs.hdual * form.lambda0();

    rs.affine_pi = rs.pi;
    rs.affine_pi.push_back(form.delta() - rs.theta);
    rs.affine_pi_parity = rs.pi_parity;
    rs.affine_pi_parity.push_back(rs.parity_of(rs.theta));
    rs.affine_frame = std::make_shared<HeightFrame>(rs.affine_pi);
    for (const auto& b : rs.affine_pi)
        if (form.pair(rs.rho_hat, b) * 2 != form.norm(b))
            throw DataError("rho_hat fails 2(rho_hat, beta) = (beta, beta)");

    rs.cartan_dim = t.cartan_dim;
    rs.imaginary_multiplicity = options.imaginary_multiplicity.value_or(t.cartan_dim);
    if (options.drop_s_index) {
        if (*options.drop_s_index >= rs.s_set.size()) throw ConfigError("drop_s_index out of range");
        rs.s_set.erase(rs.s_set.begin() + std::ptrdiff_t(*options.drop_s_index));
    }
    return rs;
}

Weight maximal_root(const RootSystem& rs) {
    std::vector<Weight> candidates;
    for (const auto& r : rs.positive) {
        bool maximal = true;
        for (const auto& b : rs.pi)
            if (rs.is_root(r.weight + b)) {
                maximal = false;
                break;
            }
        if (maximal) candidates.push_back(r.weight);
    }
    if (candidates.size() != 1) throw DataError("maximal root is not unique");
    const Weight& theta = candidates.front();
    for (const auto& r : rs.positive)
        if (!all_sign(rs.frame->int_coords(theta - r.weight), 1))
            throw DataError("maximal root does not dominate every positive root");
    return theta;
}

Scalar dual_coxeter(const RootSystem& rs) {
    const auto& form = *rs.form;
    Scalar h = form.pair(rs.rho, rs.theta) + form.norm(rs.theta) / 2;
    if (sgn(h) == 0) throw UnsupportedFamily(rs.spec.name() + " has zero dual Coxeter number");
    return h;
}

std::vector<AffineRootEntry> affine_positive_roots(const RootSystem& rs, long height_bound) {
    std::vector<AffineRootEntry> out;
    if (height_bound <= 0) return out;
    const auto& frame = *rs.affine_frame;
    const Weight delta = rs.delta();
    const long hdelta = frame.int_coords(delta).size() ? [&] {
        long s = 0;
        for (long c : frame.int_coords(delta)) s += c;
        return s;
    }() : 0;

    struct Finite {
        Weight w;
        Parity p;
        long h;
    };
    std::vector<Finite> finite;
    long max_abs = 0;
    for (const auto& r : rs.roots) {
        long h = 0;
        for (long c : frame.int_coords(r.weight)) h += c;
        finite.push_back({r.weight, r.parity, h});
        max_abs = std::max(max_abs, std::labs(h));
    }

    for (long s = 0; s * hdelta - max_abs <= height_bound; ++s) {
        if (s > 0 && s * hdelta <= height_bound)
            out.push_back({Scalar(s) * delta, Parity::even, rs.imaginary_multiplicity,
                           s * hdelta});
        for (const auto& f : finite) {
            long h = s * hdelta + f.h;
            if (h <= 0 || h > height_bound) continue;
            if (s == 0 && f.h < 0) continue;
            out.push_back({Scalar(s) * delta + f.w, f.p, 1, h});
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const AffineRootEntry& a, const AffineRootEntry& b) {
                         return a.height < b.height;
                     });
    return out;
}

} // namespace superdenom
