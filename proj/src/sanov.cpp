#include "minkl/sanov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "minkl/errors.hpp"

namespace minkl {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

}  // namespace

TrialStream::TrialStream(std::uint64_t seed, std::uint64_t trial) noexcept
    : state_(mix64(seed + kGolden * (trial + 1))) {}

std::uint64_t TrialStream::next() noexcept {
    state_ += kGolden;
    return mix64(state_);
}

double TrialStream::next_uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double sample_jn(const DiscreteDistribution& q, std::int64_t n, TrialStream& stream) {
    if (n < 1) {
        throw domain_error("sample_jn requires n >= 1");
    }
    const std::size_t k = q.size();
    std::vector<double> cdf(k);
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        acc += q[i];
        cdf[i] = acc;
    }
    cdf[k - 1] = 1.0;  // guard against the sum rounding below a late uniform

    std::vector<std::int64_t> counts(k, 0);
    for (std::int64_t draw = 0; draw < n; ++draw) {
        const double u = stream.next_uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        ++counts[static_cast<std::size_t>(it - cdf.begin())];
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    double tv = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        tv += std::abs(q[i] - static_cast<double>(counts[i]) * inv_n);
    }
    return std::clamp(tv, 0.0, 2.0);
}

SanovEstimate monte_carlo(const SimConfig& config) {
    if (config.n < 1) throw domain_error("monte_carlo requires n >= 1");
    if (config.trials < 1) throw domain_error("monte_carlo requires trials >= 1");
    if (!(config.epsilon > 0.0)) throw domain_error("monte_carlo requires epsilon > 0");

    const auto trials = static_cast<std::size_t>(config.trials);
    std::vector<double> jn(trials);
    const int threads = std::clamp(config.threads, 1, 256);
    const auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t trial = begin; trial < end; ++trial) {
            TrialStream stream(config.seed, trial);
            jn[trial] = sample_jn(config.q, config.n, stream);
        }
    };
    if (threads == 1 || trials < 2) {
        run_range(0, trials);
    } else {
        // Static partition; each entry depends only on (seed, trial), so the
        // fill is identical no matter how trials are divided among workers.
        std::vector<std::thread> pool;
        const std::size_t chunk = (trials + threads - 1) / static_cast<std::size_t>(threads);
        for (int w = 0; w < threads; ++w) {
            const std::size_t begin = std::min(trials, static_cast<std::size_t>(w) * chunk);
            const std::size_t end = std::min(trials, begin + chunk);
            if (begin < end) pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    // All reductions below walk jn in index order.
    SanovEstimate est;
    std::size_t tail_count = 0;
    double sum = 0.0;
    for (double x : jn) {
        if (x >= config.epsilon) ++tail_count;
        sum += x;
    }
    const double inv_trials = 1.0 / static_cast<double>(trials);
    est.e_jn_hat = sum * inv_trials;
    est.p_hat_ge_eps = static_cast<double>(tail_count) * inv_trials;

    double sq = 0.0;
    std::size_t centered_count = 0;
    for (double x : jn) {
        const double d = x - est.e_jn_hat;
        sq += d * d;
        if (std::abs(d) > config.epsilon) ++centered_count;
    }
    est.p_hat_centered = static_cast<double>(centered_count) * inv_trials;
    const double var = trials > 1 ? sq / static_cast<double>(trials - 1) : 0.0;
    est.e_jn_se = std::sqrt(var * inv_trials);
    est.ci_halfwidth =
        1.96 * std::sqrt(est.p_hat_ge_eps * (1.0 - est.p_hat_ge_eps) * inv_trials);

    if (tail_count == 0) {
        est.rate_estimate = ExtendedReal::infinity();
        est.insufficient_trials = true;
    } else {
        est.rate_estimate = ExtendedReal(
            std::max(0.0, -std::log(est.p_hat_ge_eps) / static_cast<double>(config.n)));
    }
    return est;
}

double binary_tail_exact(const BinaryDistribution& q, std::int64_t n, double epsilon) {
    const double q0 = q.q0();
    if (!(q0 > 0.0 && q0 < 1.0)) {
        throw domain_error("binary_tail_exact requires q0 in (0, 1)");
    }
    if (n < 1) throw domain_error("binary_tail_exact requires n >= 1");
    if (epsilon < 0.0) throw domain_error("binary_tail_exact requires epsilon >= 0");
    if (epsilon == 0.0) return 1.0;

    // J_n >= eps  <=>  |count/n - q0| >= eps/2. Threshold tested on the
    // count scale with a 1e-6-count slack so an exactly-boundary k is kept.
    const double nd = static_cast<double>(n);
    const double center = nd * q0;
    const double radius = nd * epsilon / 2.0 - 1e-6;
    const double log_q0 = std::log(q0);
    const double log_q1 = std::log1p(-q0);
    const double lgamma_n1 = std::lgamma(nd + 1.0);
    const auto log_pmf = [&](std::int64_t count) {
        const double kd = static_cast<double>(count);
        return lgamma_n1 - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) +
               kd * log_q0 + (nd - kd) * log_q1;
    };

    // two passes: peak first, then sum scaled by the peak
    double max_log = -std::numeric_limits<double>::infinity();
    for (std::int64_t count = 0; count <= n; ++count) {
        if (std::abs(static_cast<double>(count) - center) < radius) continue;
        max_log = std::max(max_log, log_pmf(count));
    }
    if (std::isinf(max_log)) return 0.0;
    double scaled = 0.0;
    for (std::int64_t count = 0; count <= n; ++count) {
        if (std::abs(static_cast<double>(count) - center) < radius) continue;
        scaled += std::exp(log_pmf(count) - max_log);
    }
    return std::min(1.0, std::exp(max_log) * scaled);
}

double mcdiarmid_bound(std::int64_t n, double epsilon) {
    if (n < 1) throw domain_error("mcdiarmid_bound requires n >= 1");
    if (!(epsilon > 0.0)) throw domain_error("mcdiarmid_bound requires epsilon > 0");
    return std::min(1.0, 2.0 * std::exp(-static_cast<double>(n) * epsilon * epsilon / 2.0));
}

LambdaBounds lambda_n(const DiscreteDistribution& q, std::int64_t n) {
    if (n < 2) {
        throw domain_error("lambda_n requires n >= 2 (the mean envelope is stated for n >= 2)");
    }
    const double nd = static_cast<double>(n);
    const double inv_sqrt_n = 1.0 / std::sqrt(nd);
    const double cut = 1.0 / nd;  // atoms with q_j >= 1/n count as heavy
    double heavy = 0.0, light = 0.0, all_sqrt = 0.0;
    std::size_t support = 0;
    for (double w : q.weights()) {
        if (w > 0.0) ++support;
        all_sqrt += std::sqrt(w);
        if (w >= cut) {
            heavy += std::sqrt(w);
        } else {
            light += w;
        }
    }
    LambdaBounds out;
    out.lambda = inv_sqrt_n * heavy + 2.0 * light;
    out.lower = (out.lambda - inv_sqrt_n) / 4.0;
    out.upper_sqrt_k = std::sqrt(static_cast<double>(support) / nd);
    out.upper_sum_sqrt = inv_sqrt_n * all_sqrt;
    return out;
}

}  // namespace minkl
