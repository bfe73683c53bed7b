#include "minkl/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "minkl/errors.hpp"

namespace minkl {

DiscreteDistribution::DiscreteDistribution(std::vector<double> weights, bool renormalize)
    : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw input_error("distribution needs at least one atom");
    }
    double sum = 0.0;
    for (double w : weights_) {
        if (!std::isfinite(w)) {
            throw input_error("weights must be finite");
        }
        if (w < 0.0) {
            throw input_error("weights must be nonnegative");
        }
        sum += w;
    }
    if (renormalize) {
        if (sum <= 0.0) {
            throw input_error("cannot renormalize a zero-mass weight vector");
        }
        for (double& w : weights_) w /= sum;
    } else if (std::abs(sum - 1.0) > kWeightSumTolerance) {
        throw input_error("weights must sum to 1 within 1e-12 (pass renormalize to rescale)");
    }
}

double DiscreteDistribution::mass(std::span<const std::size_t> indices) const {
    std::vector<bool> seen(weights_.size(), false);
    double m = 0.0;
    for (std::size_t i : indices) {
        if (i >= weights_.size()) {
            throw input_error("subset index out of range");
        }
        if (seen[i]) {
            throw input_error("subset contains a duplicate index");
        }
        seen[i] = true;
        m += weights_[i];
    }
    return m;
}

double DiscreteDistribution::max_weight() const noexcept {
    return *std::max_element(weights_.begin(), weights_.end());
}

std::size_t DiscreteDistribution::support_size() const noexcept {
    std::size_t k = 0;
    for (double w : weights_) k += (w > 0.0) ? 1 : 0;
    return k;
}

double total_variation(const DiscreteDistribution& p, const DiscreteDistribution& q) {
    const std::size_t n = std::max(p.size(), q.size());
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double pi = i < p.size() ? p[i] : 0.0;
        const double qi = i < q.size() ? q[i] : 0.0;
        s += std::abs(pi - qi);
    }
    return std::clamp(s, 0.0, 2.0);
}

namespace detail {

double entropy_remainder(double u) {
    if (u == -1.0) return 1.0;
    if (std::abs(u) > 0.3) {
        return (1.0 + u) * std::log1p(u) - u;
    }
    // sum_{k>=2} (-1)^k u^k / (k (k-1)); all partial information is carried
    // by terms of the same sign pattern, no cancellation against u itself.
    double term = u * u / 2.0;  // k = 2
    double sum = term;
    double uk = u * u;
    for (int k = 3; k < 60; ++k) {
        uk *= -u;
        term = uk / (static_cast<double>(k) * (k - 1));
        sum += term;
        if (std::abs(term) < 1e-18 * sum) break;
    }
    return sum;
}

double kl_term(double p, double q, double diff) {
    const double u = diff / q;
    if (u > 1e6) {
        return p * std::log(p / q) - diff;
    }
    return q * entropy_remainder(u);
}

double kl_term(double p, double q) { return kl_term(p, q, p - q); }

}  // namespace detail

ExtendedReal kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q) {
    const std::size_t n = std::max(p.size(), q.size());
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double pi = i < p.size() ? p[i] : 0.0;
        const double qi = i < q.size() ? q[i] : 0.0;
        if (qi == 0.0) {
            if (pi > 0.0) return ExtendedReal::infinity();
            continue;  // 0 ln(0/0) = 0
        }
        // p ln(p/q) - p + q per atom; the -p + q corrections cancel over
        // the full sum, leaving sum_i p_i ln(p_i/q_i) >= 0 termwise.
        s += detail::kl_term(pi, qi);
    }
    return ExtendedReal(s);
}

}  // namespace minkl
