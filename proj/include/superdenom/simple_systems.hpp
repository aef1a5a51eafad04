#pragma once

#include <cstddef>
#include <vector>

#include "superdenom/root_data.hpp"

namespace superdenom {

/// An ordered set of simple roots with coroots.
///
/// Coroots are stored as weights: <mu, alpha^vee> := form.pair(mu, coroot).
/// rho_shift is rho_{Pi'} - rho for the start system the chain began from.
struct SimpleSystem {
    FormPtr form;
    std::vector<Weight> roots;
    std::vector<Weight> coroots;
    std::vector<Parity> parities;
    Weight rho_shift;

    std::size_t size() const { return roots.size(); }
    Scalar coroot_pairing(const Weight& mu, std::size_t i) const {
        return form->pair(mu, coroots[i]);
    }
    /// Roots in sorted order; two systems are the same node of Theta iff keys agree.
    std::vector<Weight> key() const;
};

struct CartanMatrix {
    std::vector<std::vector<Scalar>> a; // a[i][j] = <alpha_j, alpha_i^vee>
    std::vector<std::size_t> tau;       // odd indices
};

/// Start system for pi (affine == false) or the affine pi (affine == true).
/// Isotropic coroots are 2 alpha / K with K the largest norm in the set.
SimpleSystem start_system(const RootSystem& rs, bool affine);

/// Throws AssumptionError when the matrix leaves the admissible class.
CartanMatrix cartan_matrix(const SimpleSystem& ss);

/// Odd reflection at roots[beta_index]; throws ReflectError unless that root
/// is odd with <beta, beta^vee> = 0.
SimpleSystem odd_reflect(const SimpleSystem& ss, std::size_t beta_index);

struct ThetaEdge {
    std::size_t from;
    std::size_t to;
    std::size_t index; // reflecting root index in `from`
};

struct ThetaBall {
    std::vector<SimpleSystem> systems; // BFS order, start first
    std::vector<ThetaEdge> edges;
    bool closed = false;               // true when the BFS ran out of new nodes
};

/// BFS over odd reflections up to `depth` steps, deduplicated by root set.
ThetaBall explore_theta(const SimpleSystem& start, int depth);

struct PrincipalRoot {
    Weight root;
    Weight coroot;
};

/// Even alpha in some Pi', and 2 alpha for odd non-isotropic alpha in Pi'.
/// Sorted by root and deduplicated.
std::vector<PrincipalRoot> principal_roots(const std::vector<SimpleSystem>& systems);

/// Graphviz dump of a Theta ball.
std::string theta_dot(const ThetaBall& ball);

} // namespace superdenom
