#pragma once

#include <cstddef>
#include <vector>

#include "minkl/distribution.hpp"

namespace minkl {

// Largest support size for which exact subset enumeration is attempted by
// default (2^24 subset masses). Overridable per call; the CLI also honors
// the MINKL_KMAX environment variable.
inline constexpr std::size_t kDefaultKMax = 24;

enum class BalanceMethod {
    exact,        // beta is the exact minimum subset mass >= 1/2
    greedy_bound, // beta is only a valid upper bound on the true coefficient
};

struct BalanceReport {
    // Smallest achievable set mass >= 1/2 (exact), or the best upper bound
    // found (greedy); always in [1/2, 1].
    double beta = 1.0;
    // Atom indices of the subset attaining beta; filled only for exact.
    std::vector<std::size_t> achieving_subset;
    BalanceMethod method = BalanceMethod::exact;
    // Valid upper bound on the balance coefficient. Equals beta for both
    // methods; kept separate so greedy reports read unambiguously.
    double upper_bound = 1.0;
    // The distribution-free bound 1/2 + q_max/2; upper_bound never exceeds
    // it (beyond 1e-12).
    double qmax_bound = 1.0;
    // phi evaluated at this report's beta: (1/(2b-1)) ln(b/(1-b)), equal to
    // 2 at b = 1/2 and +infinity at b = 1 (point mass).
    double phi = 2.0;
};

// Exact balance coefficient by enumerating all 2^k subset masses.
// Ties among achieving subsets break toward smaller cardinality, then
// lexicographically by index sequence. Masses within 1e-12 of 1/2 count as
// >= 1/2. Throws capacity_error when the support exceeds k_max.
BalanceReport balance_exact(const DiscreteDistribution& q, std::size_t k_max = kDefaultKMax);

// Greedy upper bound: scan atoms by descending weight, growing a set A
// while its mass stays under 1/2; at the first atom w that would cross,
// min(mass(A + w), mass(complement of A)) is an achievable mass >= 1/2 and
// hence bounds beta. When q_max >= 1/2 the bound is q_max itself. Always
// at most 1/2 + q_max/2. Linear in k after sorting; never fails.
BalanceReport balance_greedy(const DiscreteDistribution& q);

// phi(beta) = (1/(2*beta - 1)) * ln(beta/(1-beta)) for beta in (1/2, 1),
// with phi(1/2) = 2 exactly (the limit). Computed as atanh(2t)/t,
// t = beta - 1/2, which is smooth through t = 0. Throws domain_error for
// beta outside [1/2, 1), including beta = 1.
double phi_coefficient(double beta);

}  // namespace minkl
