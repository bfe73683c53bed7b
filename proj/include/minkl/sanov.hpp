#pragma once

#include <cstdint>

#include "minkl/binary.hpp"
#include "minkl/distribution.hpp"

namespace minkl {

// Monte Carlo study of J_n = V(Q, Q_hat_n), the total variation between Q
// and the empirical distribution of n i.i.d. samples, whose tail decays at
// the Sanov rate D*(eps, Q).

// Deterministic per-trial random stream: a splitmix64 sequence whose state
// is derived from (seed, trial) only. Trials can therefore run on any
// number of threads and still reproduce bit-identically.
class TrialStream {
public:
    TrialStream(std::uint64_t seed, std::uint64_t trial) noexcept;

    std::uint64_t next() noexcept;
    // Uniform in [0, 1), 53 bits.
    double next_uniform() noexcept;

private:
    std::uint64_t state_;
};

struct SimConfig {
    DiscreteDistribution q;
    std::int64_t n = 1;          // sample size per trial
    double epsilon = 0.1;        // tail threshold, > 0 (J_n <= 2, so eps >= 2 gives empty tails)
    std::int64_t trials = 1;
    std::uint64_t seed = 0;
    int threads = 1;             // worker threads; results do not depend on it
};

struct SanovEstimate {
    double p_hat_ge_eps = 0.0;       // estimate of Pr(J_n >= eps)
    double p_hat_centered = 0.0;     // estimate of Pr(|J_n - EJ_n_hat| > eps)
    ExtendedReal rate_estimate;      // -(1/n) ln p_hat_ge_eps; +inf when p_hat = 0
    double e_jn_hat = 0.0;           // Monte Carlo mean of J_n
    double e_jn_se = 0.0;            // standard error of that mean
    double ci_halfwidth = 0.0;       // 95% normal half-width on p_hat_ge_eps
    bool insufficient_trials = false;  // set when p_hat = 0 forced the +inf rate
};

// One realization of J_n: draw n indices from Q using `stream`, form the
// empirical distribution, return V(Q, empirical).
double sample_jn(const DiscreteDistribution& q, std::int64_t n, TrialStream& stream);

// Runs config.trials independent replicates of sample_jn and aggregates.
// Trial i always consumes the stream TrialStream(seed, i), and reductions
// run in index order after all trials complete, so the estimate is
// bit-identical for any thread count. The centered tail is measured against
// the same run's mean (two passes over the stored samples).
SanovEstimate monte_carlo(const SimConfig& config);

// Exact Pr(J_n >= eps) for binary Q, where J_n >= eps iff the empirical
// frequency differs from q0 by at least eps/2. Binomial tail summed in the
// log domain; relative error ~1e-12 for n up to ~1e6. Requires q0 in (0,1).
double binary_tail_exact(const BinaryDistribution& q, std::int64_t n, double epsilon);

// McDiarmid: Pr(|J_n - E J_n| > eps) <= 2 exp(-n eps^2 / 2), capped at 1.
double mcdiarmid_bound(std::int64_t n, double epsilon);

struct LambdaBounds {
    double lambda;          // n^{-1/2} sum_{q_j >= 1/n} sqrt(q_j) + 2 sum_{q_j < 1/n} q_j
    double lower;           // (lambda - n^{-1/2}) / 4  <=  E J_n
    double upper_sqrt_k;    // sqrt(k/n), k = number of positive atoms
    double upper_sum_sqrt;  // n^{-1/2} sum_j sqrt(q_j)
};

// The computable envelope (lambda - n^{-1/2})/4 <= E J_n <= lambda together
// with the two cruder upper bounds. The atom split uses the inclusive
// convention q_j >= 1/n. Requires n >= 2 (the envelope needs it).
LambdaBounds lambda_n(const DiscreteDistribution& q, std::int64_t n);

}  // namespace minkl
