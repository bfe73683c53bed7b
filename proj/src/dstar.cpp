#include "minkl/dstar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "minkl/errors.hpp"
#include "minkl/vajda.hpp"

namespace minkl {

namespace {

constexpr double kBoundaryTolerance = 1e-12;

void require_v_open(double v) {
    if (!(v > 0.0 && v < 2.0)) {
        throw domain_error("v must lie in the open interval (0, 2)");
    }
}

std::vector<double> mass_table(const std::vector<double>& w, unsigned offset, unsigned bits) {
    std::vector<double> sums(std::size_t{1} << bits, 0.0);
    for (std::uint32_t s = 1; s < sums.size(); ++s) {
        const unsigned low = static_cast<unsigned>(std::countr_zero(s));
        sums[s] = sums[s & (s - 1)] + w[offset + low];
    }
    return sums;
}

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

std::vector<std::size_t> complement_indices(std::span<const std::size_t> a, std::size_t k) {
    std::vector<bool> in(k, false);
    for (std::size_t i : a) in[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < k; ++i) {
        if (!in[i]) out.push_back(i);
    }
    return out;
}

}  // namespace

DiscreteDistribution extremal_tilt(const DiscreteDistribution& q,
                                   std::span<const std::size_t> a, double v) {
    const double qa = q.mass(a);
    if (!(qa > 0.0 && qa < 1.0)) {
        throw domain_error("extremal_tilt requires 0 < Q(A) < 1");
    }
    if (!(v > 0.0 && v <= 2.0 * (1.0 - qa) + kBoundaryTolerance)) {
        throw domain_error("extremal_tilt requires v in (0, 2(1 - Q(A))]");
    }
    const double scale_in = 1.0 + v / (2.0 * qa);
    const double scale_out = std::max(0.0, 1.0 - v / (2.0 * (1.0 - qa)));

    std::vector<bool> in(q.size(), false);
    for (std::size_t i : a) in[i] = true;
    std::vector<double> w(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        w[i] = (in[i] ? scale_in : scale_out) * q[i];
    }
    return DiscreteDistribution(std::move(w));
}

DStarResult dstar_enumerate(const DiscreteDistribution& q, double v, std::size_t k_max) {
    require_v_open(v);
    const std::size_t k = q.size();
    if (k > k_max || k > 30) {
        throw capacity_error("support size " + std::to_string(k) +
                             " exceeds K_max for exact enumeration");
    }

    const unsigned lo_bits = static_cast<unsigned>((k + 1) / 2);
    const unsigned hi_bits = static_cast<unsigned>(k) - lo_bits;
    const auto lo = mass_table(q.weights(), 0, lo_bits);
    const auto hi = mass_table(q.weights(), lo_bits, hi_bits);
    const std::uint32_t lo_mask = (std::uint32_t{1} << lo_bits) - 1u;
    const std::uint64_t total = std::uint64_t{1} << k;
    const double half_v = v / 2.0;
    // closed constraint Q(A) <= 1 - v/2; admit half the tilt tolerance so
    // every admitted certificate is reconstructible by extremal_tilt
    const double mass_cap = 1.0 - half_v + 0.5 * kBoundaryTolerance;

    // min over subsets A of kl2(Q(A) + v/2, Q(A)), Q(A) <= 1 - v/2.
    // Zero-mass A would mean creating mass on atoms Q never sees: +inf.
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_mask = 0;
    bool have_best = false;
    for (std::uint64_t s = 1; s < total; ++s) {
        const double m = lo[s & lo_mask] + hi[s >> lo_bits];
        if (m <= 0.0 || m > mass_cap) continue;
        const double val = kl2(std::min(m + half_v, 1.0), m);
        const auto mask = static_cast<std::uint32_t>(s);
        if (!have_best || val < best) {
            best = val;
            best_mask = mask;
            have_best = true;
        } else if (val == best && subset_before(mask, best_mask)) {
            best_mask = mask;
        }
    }

    DStarResult result;
    result.method = DStarMethod::enumeration;
    if (!have_best) {
        result.value = ExtendedReal::infinity();
        return result;
    }
    result.value = ExtendedReal(best);
    result.achieving_subset = mask_to_indices(best_mask);
    result.extremal = extremal_tilt(q, *result.achieving_subset, v);
    return result;
}

namespace {

// Closed form kl2(beta - v/2, beta) with its certificate. The balance
// subset attains mass beta by losing weight, so the mass-gaining set of the
// tilt is its complement.
DStarResult closed_form_result(const DiscreteDistribution& q, const BalanceReport& balance,
                               double v, DStarMethod method) {
    DStarResult result;
    result.method = method;
    result.value = kl2(balance.beta - v / 2.0, balance.beta);
    if (balance.beta < 1.0 && result.value.is_finite()) {
        auto gain_set = complement_indices(balance.achieving_subset, q.size());
        result.extremal = extremal_tilt(q, gain_set, v);
        result.achieving_subset = std::move(gain_set);
    }
    return result;
}

}  // namespace

DStarResult dstar(const DiscreteDistribution& q, double v, const DStarOptions& opts) {
    require_v_open(v);
    if (opts.full_range) {
        DStarResult result;
        result.method = DStarMethod::full_range_thm2;
        result.value = ExtendedReal(vajda_L(v));
        return result;
    }

    using Method = DStarOptions::Method;
    if (opts.method == Method::enumerate) {
        return dstar_enumerate(q, v, opts.k_max);
    }
    if (opts.method == Method::closed) {
        const BalanceReport balance = balance_exact(q, opts.k_max);
        if (balance.beta > 0.5 + kBoundaryTolerance && v < 4.0 * (balance.beta - 0.5)) {
            return closed_form_result(q, balance, v, DStarMethod::closed_form_thm1b);
        }
        if (v < 1.0) {
            DStarResult result = closed_form_result(q, balance, v, DStarMethod::upper_bound_thm1a);
            result.upper_bound_only = true;
            result.lower = vajda_L(v);
            return result;
        }
        throw domain_error("closed form requires beta > 1/2 with v < 4(beta - 1/2), or v < 1");
    }

    if (q.size() <= opts.k_max && q.size() <= 30) {
        const BalanceReport balance = balance_exact(q, opts.k_max);
        if (balance.beta > 0.5 + kBoundaryTolerance && v < 4.0 * (balance.beta - 0.5)) {
            return closed_form_result(q, balance, v, DStarMethod::closed_form_thm1b);
        }
        return dstar_enumerate(q, v, opts.k_max);
    }

    // Support too large for exact beta. For v < 1 the greedy achievable mass
    // x >= beta still yields a valid upper bound kl2(x - v/2, x); pair it
    // with L(v) so the caller sees a bracket, not a point value.
    if (v < 1.0) {
        const BalanceReport greedy = balance_greedy(q);
        DStarResult result;
        result.method = DStarMethod::upper_bound_thm1a;
        result.value = kl2(greedy.beta - v / 2.0, greedy.beta);
        result.upper_bound_only = true;
        result.lower = vajda_L(v);
        return result;
    }
    throw capacity_error(
        "support too large for enumeration and the upper bound is only claimed for v < 1");
}

double pinsker_lower(double v) {
    if (!(v >= 0.0 && v <= 2.0)) {
        throw domain_error("pinsker_lower requires v in [0, 2]");
    }
    return v * v / 2.0;
}

double ow_lower(const DiscreteDistribution& q, double v, std::size_t k_max) {
    if (!(v >= 0.0 && v <= 2.0)) {
        throw domain_error("ow_lower requires v in [0, 2]");
    }
    const BalanceReport balance = balance_exact(q, k_max);
    return phi_coefficient(balance.beta) / 4.0 * v * v;
}

double expansion_thm1(double beta, double v, int order) {
    if (!(beta >= 0.5 && beta < 1.0)) {
        throw domain_error("expansion_thm1 requires beta in [1/2, 1)");
    }
    if (order != 2 && order != 3) {
        throw domain_error("expansion order must be 2 or 3");
    }
    const double b1 = 1.0 - beta;
    double s = v * v / (8.0 * beta * b1);
    if (order >= 3) {
        s -= (2.0 * beta - 1.0) * v * v * v / (48.0 * beta * beta * b1 * b1);
    }
    return s;
}

BinaryDistribution binary_coarsen(const DiscreteDistribution& p,
                                  std::span<const std::size_t> a) {
    return BinaryDistribution(std::clamp(p.mass(a), 0.0, 1.0));
}

}  // namespace minkl
