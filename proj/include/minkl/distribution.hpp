#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "minkl/extended_real.hpp"

namespace minkl {

// Weight sum must be within this of 1 at construction (unless renormalizing).
inline constexpr double kWeightSumTolerance = 1e-12;

// A probability distribution on a finite set of atoms, stored as the full
// weight vector. Zero-weight atoms are kept so that subset indices stay
// stable across operations; the divergence conventions below handle them.
class DiscreteDistribution {
public:
    // Validates: k >= 1, every weight finite and >= 0, |sum - 1| <= 1e-12.
    // With renormalize=true any positive total is accepted and divided out.
    explicit DiscreteDistribution(std::vector<double> weights, bool renormalize = false);

    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    // Q(A) for A given as atom indices. Throws input_error on out-of-range
    // or duplicate indices.
    double mass(std::span<const std::size_t> indices) const;

    double max_weight() const noexcept;

    // Number of atoms with strictly positive weight.
    std::size_t support_size() const noexcept;

    bool operator==(const DiscreteDistribution& other) const noexcept {
        return weights_ == other.weights_;
    }

private:
    std::vector<double> weights_;
};

// Total variation V(P,Q) = sum_i |p_i - q_i|, the full L1 norm with range
// [0,2]. This is NOT the halved convention used elsewhere in the literature.
// Distributions of different lengths are aligned by padding the shorter one
// with zero atoms.
double total_variation(const DiscreteDistribution& p, const DiscreteDistribution& q);

// KL divergence D(P||Q) = sum_i p_i ln(p_i/q_i) in nats, with the
// conventions 0*ln(0/q) = 0 and p>0, q=0 => +infinity. Lengths are aligned
// by zero padding. Computed as a sum of nonnegative per-atom terms
// q*((1+u)ln(1+u) - u), u = (p-q)/q, so the result is never negative.
ExtendedReal kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q);

namespace detail {

// g(u) = (1+u)ln(1+u) - u on [-1, inf); g >= 0, g(-1) = 1. The per-atom
// relative-entropy remainder. Series evaluation for |u| <= 0.3 keeps full
// relative precision through the cancellation region near u = 0.
double entropy_remainder(double u);

// One atom's contribution p ln(p/q) - p + q >= 0, for q > 0. Evaluated as
// q*g((p-q)/q) except at extreme ratios, where that intermediate would
// overflow before the q multiplication scales it back. The three-argument
// form takes the difference p - q precomputed; kl2 derives both of its
// terms from the single difference so the complementary term does not
// re-round it.
double kl_term(double p, double q, double diff);
double kl_term(double p, double q);

}  // namespace detail

}  // namespace minkl
