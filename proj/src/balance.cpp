#include "minkl/balance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "minkl/errors.hpp"

namespace minkl {

namespace {

constexpr double kHalfTolerance = 1e-12;

// Partial-sum table over one half of the index range: sums[s] is the mass of
// the subset encoded by bitmask s. Each entry is a sum of at most `bits`
// weights in a fixed order, so the rounding error stays at ~bits ulp.
std::vector<double> mass_table(const std::vector<double>& w, unsigned offset, unsigned bits) {
    std::vector<double> sums(std::size_t{1} << bits, 0.0);
    for (std::uint32_t s = 1; s < sums.size(); ++s) {
        const unsigned low = static_cast<unsigned>(std::countr_zero(s));
        sums[s] = sums[s & (s - 1)] + w[offset + low];
    }
    return sums;
}

// Lexicographic order on subsets viewed as ascending index sequences:
// the mask holding the lowest differing index comes first.
bool lex_less(std::uint32_t a, std::uint32_t b) {
    const std::uint32_t x = a ^ b;
    if (x == 0) return false;
    return (a & (x & -x)) != 0;
}

bool subset_before(std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return lex_less(a, b);
}

std::vector<std::size_t> mask_to_indices(std::uint32_t mask) {
    std::vector<std::size_t> idx;
    for (unsigned i = 0; mask != 0; ++i, mask >>= 1) {
        if (mask & 1u) idx.push_back(i);
    }
    return idx;
}

}  // namespace

BalanceReport balance_exact(const DiscreteDistribution& q, std::size_t k_max) {
    const std::size_t k = q.size();
    if (k > k_max || k > 30) {  // subset masks are 32-bit
        throw capacity_error("support size " + std::to_string(k) + " exceeds K_max " +
                             std::to_string(std::min<std::size_t>(k_max, 30)) +
                             "; use balance_greedy");
    }
    const unsigned lo_bits = static_cast<unsigned>((k + 1) / 2);
    const unsigned hi_bits = static_cast<unsigned>(k) - lo_bits;
    const auto lo = mass_table(q.weights(), 0, lo_bits);
    const auto hi = mass_table(q.weights(), lo_bits, hi_bits);
    const std::uint32_t lo_mask = (lo_bits ? (std::uint32_t{1} << lo_bits) : 1u) - 1u;
    const std::uint64_t total = std::uint64_t{1} << k;

    double best_mass = 2.0;
    for (std::uint64_t s = 1; s < total; ++s) {
        const double m = lo[s & lo_mask] + hi[s >> lo_bits];
        if (m >= 0.5 - kHalfTolerance && m < best_mass) best_mass = m;
    }
    // The full set has mass ~1, so a qualifying subset always exists.
    std::uint32_t best_mask = static_cast<std::uint32_t>(total - 1);
    bool have_mask = false;
    for (std::uint64_t s = 1; s < total; ++s) {
        const double m = lo[s & lo_mask] + hi[s >> lo_bits];
        if (m >= 0.5 - kHalfTolerance && std::abs(m - best_mass) <= kHalfTolerance) {
            const auto mask = static_cast<std::uint32_t>(s);
            if (!have_mask || subset_before(mask, best_mask)) {
                best_mask = mask;
                have_mask = true;
            }
        }
    }

    BalanceReport report;
    report.beta = std::clamp(best_mass, 0.5, 1.0);
    report.achieving_subset = mask_to_indices(best_mask);
    report.method = BalanceMethod::exact;
    report.upper_bound = report.beta;
    report.qmax_bound = 0.5 + q.max_weight() / 2.0;
    report.phi = report.beta < 1.0 ? phi_coefficient(report.beta)
                                   : std::numeric_limits<double>::infinity();
    return report;
}

BalanceReport balance_greedy(const DiscreteDistribution& q) {
    const auto& w = q.weights();
    const double q_max = q.max_weight();

    double bound;
    if (q_max >= 0.5 - kHalfTolerance) {
        bound = q_max;
    } else {
        std::vector<std::size_t> order(w.size());
        std::iota(order.begin(), order.end(), 0);
        // Descending by weight; equal weights keep index order.
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
        double mass_a = 0.0;
        bound = 1.0;
        for (std::size_t idx : order) {
            const double next = mass_a + w[idx];
            if (next >= 0.5 - kHalfTolerance) {
                bound = std::min(next, 1.0 - mass_a);
                break;
            }
            mass_a = next;
        }
    }

    BalanceReport report;
    report.beta = std::clamp(bound, 0.5, 1.0);
    report.method = BalanceMethod::greedy_bound;
    report.upper_bound = report.beta;
    report.qmax_bound = 0.5 + q_max / 2.0;
    report.phi = report.beta < 1.0 ? phi_coefficient(report.beta)
                                   : std::numeric_limits<double>::infinity();
    return report;
}

double phi_coefficient(double beta) {
    if (!(beta >= 0.5 && beta < 1.0)) {
        throw domain_error("phi is defined for beta in [1/2, 1)");
    }
    const double t = beta - 0.5;
    if (t == 0.0) return 2.0;
    return std::atanh(2.0 * t) / t;
}

}  // namespace minkl
