#pragma once

#include <span>

#include "minkl/extended_real.hpp"

namespace minkl {

// Distribution on two outcomes; q0 is the mass of the first.
class BinaryDistribution {
public:
    explicit BinaryDistribution(double q0);

    double q0() const noexcept { return q0_; }
    double q1() const noexcept { return 1.0 - q0_; }

private:
    double q0_;
};

// KL2(p,q) = p ln(p/q) + (1-p) ln((1-p)/(1-q)), the divergence between
// Bernoulli(p) and Bernoulli(q), in nats.
//
// Boundary conventions (continuity limits):
//   kl2(0,q) = ln(1/(1-q)) for q < 1      kl2(p,0) = +inf for p > 0
//   kl2(1,q) = ln(1/q)     for q > 0      kl2(p,1) = +inf for p < 1
//   kl2(0,0) = kl2(1,1) = 0
//
// Evaluated as q*g((p-q)/q) + (1-q)*g((q-p)/(1-q)) with
// g(u) = (1+u)ln(1+u) - u >= 0, so both terms are nonnegative and there is
// no cancellation near p = q; relative error stays at a few ulp even for
// |p-q| ~ 1e-8.
ExtendedReal kl2(double p, double q);

struct BinaryExtremal {
    BinaryDistribution extremal;  // the minimizing P*
    ExtendedReal value;           // D*(v,Q) = kl2(q0 - v/2, q0)
};

// For binary Q with q0 > 1/2 and v in (0, 2*q0], the closest-in-KL
// distribution at TV distance exactly v is P* = (q0 - v/2, 1 - q0 + v/2).
BinaryExtremal extremal_binary(const BinaryDistribution& q, double v);

// True iff x -> kl2(x - delta, x) is strictly increasing across the given
// ascending grid. The grid must lie inside [1/2 + delta/2, 1); delta must be
// in (0, 1/2). Diagnostic utility backing the closed-form dispatch.
bool kl2_shift_increasing_check(double delta, std::span<const double> grid);

}  // namespace minkl
