#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "minkl/balance.hpp"
#include "minkl/binary.hpp"
#include "minkl/distribution.hpp"

namespace minkl {

// D*(v,Q) = inf { D(P||Q) : V(P,Q) >= v }, the minimum KL divergence over
// the complement of the total-variation ball of radius v around Q.

enum class DStarMethod {
    closed_form_thm1b,  // kl2(beta - v/2, beta), exact for beta > 1/2, v < 4(beta - 1/2)
    upper_bound_thm1a,  // kl2(x - v/2, x) at an achievable mass x >= 1/2; upper bound only
    enumeration,        // exact subset minimum of kl2(Q(A) + v/2, Q(A))
    full_range_thm2,    // L(v): exact when the range of Q is all of [0,1]
};

struct DStarResult {
    ExtendedReal value;
    DStarMethod method = DStarMethod::enumeration;
    // Minimizing distribution, when one exists and is finite.
    std::optional<DiscreteDistribution> extremal;
    // The subset onto which the extremal moves mass (v/2 of it), when known.
    std::optional<std::vector<std::size_t>> achieving_subset;
    // Set when `value` is only an upper bound on D* (large-support fallback).
    bool upper_bound_only = false;
    // Companion lower bound L(v), reported alongside upper-bound-only results
    // so the caller gets a bracket rather than a point estimate.
    std::optional<double> lower;
};

// The unique minimizer of D(.||Q) among distributions at TV distance v from
// Q that gain mass exactly on A: p* = a*q on A, b*q off A, with
// a = 1 + v/(2 Q(A)) and b = 1 - v/(2(1 - Q(A))).
// Requires 0 < Q(A) < 1 and 0 < v <= 2(1 - Q(A)).
DiscreteDistribution extremal_tilt(const DiscreteDistribution& q,
                                   std::span<const std::size_t> a, double v);

// Exact D* by minimizing kl2(Q(A) + v/2, Q(A)) over all subsets A with
// Q(A) <= 1 - v/2. Subsets of zero mass contribute +infinity, so a point
// mass yields +infinity. The achieving subset is reported with ties broken
// toward smaller cardinality then lexicographic index order, and the
// minimizer itself is reconstructed via extremal_tilt.
// Requires 0 < v < 2 and support size <= k_max.
DStarResult dstar_enumerate(const DiscreteDistribution& q, double v,
                            std::size_t k_max = kDefaultKMax);

struct DStarOptions {
    bool full_range = false;  // treat Q as full-range; answer is L(v) exactly
    enum class Method { automatic, enumerate, closed } method = Method::automatic;
    std::size_t k_max = kDefaultKMax;
};

// Dispatcher. With full_range: L(v). Otherwise, for supports up to k_max the
// exact balance coefficient decides: the closed form kl2(beta - v/2, beta)
// when beta > 1/2 and v < 4(beta - 1/2), else exact enumeration. For larger
// supports and v < 1 the result degrades to an upper bound evaluated at the
// greedy achievable mass, flagged upper_bound_only with L(v) as companion
// lower bound; for v >= 1 no bound is claimed and capacity_error is thrown.
// Requires 0 < v < 2.
DStarResult dstar(const DiscreteDistribution& q, double v, const DStarOptions& opts = {});

// Pinsker: D >= v^2/2, so v^2/2 lower-bounds D*(v,Q) for every Q.
// Requires 0 <= v <= 2.
double pinsker_lower(double v);

// Ordentlich-Weinberger: D >= (phi(Q)/4) V^2 with the exact balance
// coefficient. Propagates the beta = 1 domain error (point mass) and the
// capacity error for supports beyond k_max.
double ow_lower(const DiscreteDistribution& q, double v, std::size_t k_max = kDefaultKMax);

// Partial sums of the small-v expansion of kl2(beta - v/2, beta):
//   order 2:  v^2 / (8 beta (1-beta))
//   order 3:  ... - (2 beta - 1) v^3 / (48 beta^2 (1-beta)^2)
// Requires beta in [1/2, 1) and order in {2, 3}.
double expansion_thm1(double beta, double v, int order);

// Two-cell coarsening (P(A), 1 - P(A)) of P along the partition {A, A^c}.
BinaryDistribution binary_coarsen(const DiscreteDistribution& p,
                                  std::span<const std::size_t> a);

}  // namespace minkl
