#include "superdenom/simple_systems.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "superdenom/errors.hpp"

namespace superdenom {

std::vector<Weight> SimpleSystem::key() const {
    std::vector<Weight> k = roots;
    std::sort(k.begin(), k.end());
    return k;
}

SimpleSystem start_system(const RootSystem& rs, bool affine) {
    SimpleSystem ss;
    ss.form = rs.form;
    ss.roots = affine ? rs.affine_pi : rs.pi;
    ss.parities = affine ? rs.affine_pi_parity : rs.pi_parity;
    ss.rho_shift = rs.form->zero();

    Scalar k = 0;
    for (const auto& a : ss.roots) k = std::max(k, rs.form->norm(a));
    if (sgn(k) == 0) k = 2;
    for (const auto& a : ss.roots) {
        Scalar n = rs.form->norm(a);
        ss.coroots.push_back(sgn(n) != 0 ? Scalar(2) / n * a : Scalar(2) / k * a);
    }
    cartan_matrix(ss);
    return ss;
}

namespace {

bool is_integer(const Scalar& x) { return x.get_den() == 1; }

std::string entry(std::size_t i, std::size_t j) {
    return "a[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

} // namespace

CartanMatrix cartan_matrix(const SimpleSystem& ss) {
    const std::size_t r = ss.size();
    CartanMatrix cm;
    cm.a.assign(r, std::vector<Scalar>(r));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) cm.a[i][j] = ss.coroot_pairing(ss.roots[j], i);
        if (ss.parities[i] == Parity::odd) cm.tau.push_back(i);
    }
    for (std::size_t i = 0; i < r; ++i) {
        const Scalar& d = cm.a[i][i];
        if (d != 0 && d != 2) throw AssumptionError(entry(i, i) + " is not 0 or 2");
        if (ss.parities[i] == Parity::even && d != 2)
            throw AssumptionError("even simple root with " + entry(i, i) + " = 0");
        for (std::size_t j = 0; j < r; ++j) {
            if (i == j) continue;
            const Scalar& x = cm.a[i][j];
            if ((sgn(x) == 0) != (sgn(cm.a[j][i]) == 0))
                throw AssumptionError(entry(i, j) + " and " + entry(j, i) + " disagree on zero");
            if (d != 2) continue;
            if (!is_integer(x) || sgn(x) > 0)
                throw AssumptionError(entry(i, j) + " is not a nonpositive integer");
            if (ss.parities[i] == Parity::odd && x.get_num() % 2 != 0)
                throw AssumptionError(entry(i, j) + " is odd in an odd non-isotropic row");
        }
    }
    return cm;
}

SimpleSystem odd_reflect(const SimpleSystem& ss, std::size_t bi) {
    if (bi >= ss.size()) throw ReflectError("index out of range");
    const Weight& beta = ss.roots[bi];
    const Weight& bv = ss.coroots[bi];
    if (ss.parities[bi] != Parity::odd) throw ReflectError("root is even");
    if (sgn(ss.coroot_pairing(beta, bi)) != 0) throw ReflectError("root is not isotropic");

    SimpleSystem out;
    out.form = ss.form;
    out.parities = ss.parities;
    out.rho_shift = ss.rho_shift + beta;
    for (std::size_t i = 0; i < ss.size(); ++i) {
        const Weight& a = ss.roots[i];
        const Weight& av = ss.coroots[i];
        if (i == bi) {
            out.roots.push_back(-a);
            out.coroots.push_back(av);
            continue;
        }
        Scalar a_ab = ss.coroot_pairing(beta, i); // <beta, alpha^vee>
        Scalar a_ba = ss.coroot_pairing(a, bi);   // <alpha, beta^vee>
        Scalar a_aa = ss.coroot_pairing(a, i);
        if (sgn(a_ab) == 0) {
            out.roots.push_back(a);
            out.coroots.push_back(av);
            continue;
        }
        Weight cv = a_ab * bv + a_ba * av;
        Scalar t = a_aa + 2 * a_ab;
        if (sgn(t) != 0) cv *= Scalar(2) / (a_ba * t);
        out.roots.push_back(a + beta);
        out.coroots.push_back(cv);
        // a + beta changes parity only when beta is odd, which it is.
        out.parities[i] = ss.parities[i] + Parity::odd;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        Scalar d = out.coroot_pairing(out.roots[i], i);
        if (d != 0 && d != 2) throw ReflectError("reflected coroot is not normalized");
    }
    cartan_matrix(out);
    return out;
}

ThetaBall explore_theta(const SimpleSystem& start, int depth) {
    ThetaBall ball;
    std::map<std::vector<Weight>, std::size_t> index;
    ball.systems.push_back(start);
    index.emplace(start.key(), 0);
    std::vector<std::size_t> frontier{0};
    for (int d = 0; d < depth && !frontier.empty(); ++d) {
        std::vector<std::size_t> next;
        for (std::size_t node : frontier) {
            for (std::size_t i = 0; i < ball.systems[node].size(); ++i) {
                const SimpleSystem& cur = ball.systems[node];
                if (cur.parities[i] != Parity::odd || sgn(cur.coroot_pairing(cur.roots[i], i)) != 0)
                    continue;
                SimpleSystem nb = odd_reflect(cur, i);
                auto [it, fresh] = index.emplace(nb.key(), ball.systems.size());
                if (fresh) {
                    ball.systems.push_back(std::move(nb));
                    next.push_back(it->second);
                }
                ball.edges.push_back({node, it->second, i});
            }
        }
        frontier = std::move(next);
    }
    ball.closed = frontier.empty();
    return ball;
}

std::vector<PrincipalRoot> principal_roots(const std::vector<SimpleSystem>& systems) {
    std::map<Weight, Weight> found;
    for (const auto& ss : systems) {
        for (std::size_t i = 0; i < ss.size(); ++i) {
            const Weight& a = ss.roots[i];
            Scalar d = ss.coroot_pairing(a, i);
            Weight root, coroot;
            if (ss.parities[i] == Parity::even) {
                root = a;
                coroot = ss.coroots[i];
            } else if (sgn(d) != 0) {
                root = 2 * a;
                coroot = Scalar(1, 2) * ss.coroots[i];
            } else {
                continue;
            }
            auto [it, fresh] = found.emplace(root, coroot);
            if (!fresh && it->second != coroot)
                throw DataError("principal root " + ss.form->format(root) +
                                " carries two different coroots");
        }
    }
    std::vector<PrincipalRoot> out;
    for (auto& [r, c] : found) out.push_back({r, c});
    return out;
}

std::string theta_dot(const ThetaBall& ball) {
    std::ostringstream os;
    os << "graph theta {\n";
    for (std::size_t i = 0; i < ball.systems.size(); ++i) {
        const auto& ss = ball.systems[i];
        os << "  n" << i << " [label=\"";
        for (std::size_t k = 0; k < ss.size(); ++k)
            os << (k ? ", " : "") << ss.form->format(ss.roots[k]);
        os << "\"];\n";
    }
    // Each odd reflection is an involution, so keep one edge per pair.
    for (const auto& e : ball.edges)
        if (e.from < e.to) os << "  n" << e.from << " -- n" << e.to << " [label=\"" << e.index << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace superdenom
