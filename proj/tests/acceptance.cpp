// Acceptance suite: prints one PASS/FAIL line per criterion and exits with
// the number of failures. Pass the CLI binary path as argv[1] so the
// determinism criterion can exercise the real executable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "minkl/balance.hpp"
#include "minkl/binary.hpp"
#include "minkl/distribution.hpp"
#include "minkl/dstar.hpp"
#include "minkl/errors.hpp"
#include "minkl/sanov.hpp"
#include "minkl/vajda.hpp"
#include "test_support.hpp"

using namespace minkl;
using namespace minkl::testing;

namespace {

struct Runner {
    int failures = 0;

    void run(int id, const std::string& name, const std::function<bool(std::string&)>& body,
             double time_limit = 0.0) {
        std::string detail;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && time_limit > 0.0 && seconds > time_limit) {
            ok = false;
            detail += " [exceeded time limit]";
        }
        std::printf("%s  %2d  %s  (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                    seconds, detail.empty() ? "" : "  -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

// Q with balance coefficient >= 0.51: rejection sampling over a generator
// that alternates generic draws with heavy-atom draws whose beta is the
// heavy mass itself, so rejection terminates fast at every support size.
DiscreteDistribution sample_unbalanced(std::mt19937_64& rng, std::size_t k, double& beta_out) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int attempt = 0;; ++attempt) {
        const bool generic = attempt % 4 == 0 && attempt < 40;
        const auto q = generic ? random_distribution(rng, k)
                               : heavy_atom_distribution(rng, k, 0.52 + 0.43 * uni(rng));
        const auto balance = balance_exact(q);
        if (balance.beta >= 0.51) {
            beta_out = balance.beta;
            return q;
        }
    }
}

std::optional<std::string> capture_command(const std::string& cmd) {
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return std::nullopt;
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    if (pclose(pipe) != 0) return std::nullopt;
    return out;
}

double naive_beta(const DiscreteDistribution& q) {
    const std::size_t k = q.size();
    double best = 2.0;
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << k); ++s) {
        double m = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            if (s >> i & 1u) m += q[i];
        }
        if (m >= 0.5 - 1e-12) best = std::min(best, m);
    }
    return std::clamp(best, 0.5, 1.0);
}

DiscreteDistribution sample_in_class(std::mt19937_64& rng, const DiscreteDistribution& q,
                                     const std::vector<std::size_t>& a, double v) {
    std::uniform_real_distribution<double> uni(0.05, 1.0);
    std::vector<bool> in(q.size(), false);
    for (std::size_t i : a) in[i] = true;
    std::vector<double> w(q.weights());
    double gain_total = 0.0;
    std::vector<double> gain(q.size(), 0.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (in[i]) gain_total += (gain[i] = uni(rng));
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (in[i]) w[i] += gain[i] / gain_total * (v / 2.0);
    }
    for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<double> loss(q.size(), 0.0);
        double loss_total = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (!in[i]) loss_total += (loss[i] = uni(rng) * q[i]);
        }
        const double scale = (v / 2.0) / loss_total;
        bool feasible = true;
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (!in[i] && loss[i] * scale > q[i]) feasible = false;
        }
        if (!feasible) continue;
        std::vector<double> out(w);
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (!in[i]) out[i] -= loss[i] * scale;
        }
        return DiscreteDistribution(std::move(out), true);
    }
    std::vector<double> out(w);
    const double rest = 1.0 - q.mass(a);
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (!in[i]) out[i] -= q[i] * (v / 2.0) / rest;
    }
    return DiscreteDistribution(std::move(out), true);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli_path = argc > 1 ? argv[1] : "";
    Runner runner;

    runner.run(1, "closed form equals subset enumeration for unbalanced Q", [](std::string& d) {
        std::mt19937_64 rng(90001);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const std::size_t k = 2 + rng() % 11;
            double beta = 0.0;
            const auto q = sample_unbalanced(rng, k, beta);
            for (int j = 0; j < 5; ++j) {
                const double v = (0.01 + 0.98 * uni(rng)) * 4.0 * (beta - 0.5);
                const double closed = kl2(beta - v / 2.0, beta);
                const double exact = dstar_enumerate(q, v).value.value();
                worst = std::max(worst, std::abs(closed - exact));
            }
        }
        std::ostringstream os;
        os << "max |closed - enumeration| = " << worst;
        d = os.str();
        return worst <= 1e-12;
    }, 10.0);

    runner.run(2, "L(v) <= D* <= kl2(beta - v/2, beta) for v in (0,1)", [](std::string& d) {
        std::mt19937_64 rng(90001);  // same instance families as criterion 1
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        bool ok = true;
        for (int i = 0; i < 200 && ok; ++i) {
            const std::size_t k = 2 + rng() % 11;
            double beta = 0.0;
            const auto q = sample_unbalanced(rng, k, beta);
            for (int j = 0; j < 5 && ok; ++j) {
                const double v = 0.01 + 0.98 * uni(rng);
                const double exact = dstar_enumerate(q, v).value.value();
                ok = vajda_L(v) - 1e-9 <= exact &&
                     exact <= kl2(beta - v / 2.0, beta).value() + 1e-12;
                if (!ok) {
                    std::ostringstream os;
                    os << "violated at k=" << k << " beta=" << beta << " v=" << v;
                    d = os.str();
                }
            }
        }
        return ok;
    });

    runner.run(3, "vajda: parametric vs minimization, round trip, quartic term",
               [](std::string& d) {
                   double worst_cross = 0.0;
                   for (double v = 0.01; v < 1.995; v += 0.01) {
                       worst_cross =
                           std::max(worst_cross, std::abs(vajda_L(v) - vajda_by_minimization(v)));
                   }
                   double worst_round = 0.0;
                   for (int i = 0; i <= 60; ++i) {
                       const double t = std::pow(10.0, -3.0 + 4.0 * i / 60.0);
                       const auto p = vajda_parametric(t);
                       worst_round = std::max(worst_round, std::abs(vajda_L(p.v) - p.L));
                   }
                   const double ratio = (vajda_L(0.01) - 0.01 * 0.01 / 2.0) / 1e-8;
                   std::ostringstream os;
                   os << "cross=" << worst_cross << " round=" << worst_round
                      << " (L-v^2/2)/v^4 @0.01=" << ratio;
                   d = os.str();
                   return worst_cross <= 1e-8 && worst_round <= 1e-9 &&
                          std::abs(ratio - 1.0 / 36.0) <= 0.05 / 36.0;
               });

    runner.run(4, "expansion partial sums bracket the truth; remainder is quartic",
               [](std::string& d) {
                   const double truth = kl2(0.6, 0.7);
                   const double o2 = expansion_thm1(0.7, 0.2, 2);
                   const double o3 = expansion_thm1(0.7, 0.2, 3);
                   bool ok = std::abs(o2 - 0.023809523809523810) <= 1e-15 &&
                             std::abs(o3 - 0.022297808012093726) <= 1e-15 &&
                             std::abs(truth - 0.022582421084357388) <= 1e-15 && o3 < truth &&
                             truth < o2;
                   double worst_ratio = 0.0;
                   for (const double beta : {0.55, 0.7, 0.9}) {
                       for (int j = 3; j <= 12; ++j) {
                           const double v = std::ldexp(1.0, -j);
                           const double gap =
                               kl2(beta - v / 2.0, beta).value() - expansion_thm1(beta, v, 3);
                           worst_ratio = std::max(worst_ratio, std::abs(gap) / (v * v * v * v));
                       }
                   }
                   ok = ok && worst_ratio < 1e3;
                   std::ostringstream os;
                   os << "remainder/v^4 bounded by " << worst_ratio;
                   d = os.str();
                   return ok;
               });

    runner.run(5, "pythagorean identity and minimality of the tilt", [](std::string& d) {
        std::mt19937_64 rng(90005);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        double worst = 0.0;
        int done = 0;
        while (done < 1000) {
            const std::size_t k = 2 + rng() % 7;
            const auto q = random_distribution(rng, k);
            std::vector<std::size_t> a;
            for (std::size_t i = 0; i < k; ++i) {
                if (uni(rng) < 0.5) a.push_back(i);
            }
            if (a.empty() || a.size() == k) continue;
            const double qa = q.mass(a);
            const double v = uni(rng) * 1.9 * (1.0 - qa) + 1e-6;
            if (v >= 2.0 * (1.0 - qa)) continue;
            ++done;
            const auto p_star = extremal_tilt(q, a, v);
            const auto p = sample_in_class(rng, q, a, v);
            const double d_pq = kl_divergence(p, q);
            const double d_pp = kl_divergence(p, p_star);
            const double d_sq = kl_divergence(p_star, q);
            worst = std::max(worst, std::abs(d_pq - d_pp - d_sq));
            if (d_sq > d_pq + 1e-12) {
                d = "tilt was not minimal";
                return false;
            }
        }
        std::ostringstream os;
        os << "max identity defect = " << worst;
        d = os.str();
        return worst <= 1e-10;
    });

    runner.run(6, "pinsker <= ordentlich-weinberger <= D*; coefficient consistency",
               [](std::string& d) {
                   std::mt19937_64 rng(90006);
                   std::uniform_real_distribution<double> uni(0.0, 1.0);
                   for (int i = 0; i < 300; ++i) {
                       const std::size_t k = 2 + rng() % 9;
                       const auto q = random_distribution(rng, k);
                       const double v = 0.01 + 1.8 * uni(rng);
                       const double pl = pinsker_lower(v);
                       const double ol = ow_lower(q, v);
                       const double exact = dstar_enumerate(q, v).value.value();
                       if (!(pl <= ol + 1e-12) || !(ol <= exact + 1e-12)) {
                           d = "ordering violated";
                           return false;
                       }
                   }
                   for (double beta = 0.5005; beta < 0.9999; beta += 0.0005) {
                       const double lhs =
                           std::log(beta / (1.0 - beta)) / (4.0 * (2.0 * beta - 1.0));
                       const double rhs = 1.0 / (8.0 * beta * (1.0 - beta));
                       if (!(lhs <= rhs + 1e-12)) {
                           d = "consistency inequality violated";
                           return false;
                       }
                   }
                   return true;
               });

    runner.run(7, "balance: exact equals naive scan; greedy bound is sandwiched",
               [](std::string& d) {
                   std::mt19937_64 rng(90007);
                   double worst = 0.0;
                   for (int i = 0; i < 500; ++i) {
                       const std::size_t k = 1 + rng() % 12;
                       const auto q = random_distribution(rng, k);
                       const auto exact = balance_exact(q);
                       worst = std::max(worst, std::abs(exact.beta - naive_beta(q)));
                       const auto greedy = balance_greedy(q);
                       if (greedy.upper_bound < exact.beta - 1e-12 ||
                           greedy.upper_bound > 0.5 + q.max_weight() / 2.0 + 1e-12) {
                           d = "greedy bound escaped its sandwich";
                           return false;
                       }
                   }
                   std::ostringstream os;
                   os << "max |exact - naive| = " << worst;
                   d = os.str();
                   return worst <= 1e-12;
               });

    runner.run(8, "exact binomial tails decay at the sanov rate", [](std::string& d) {
        const double target = kl2(0.6, 0.7);
        double prev = 1e9;
        bool monotone = true;
        double final_rate = 0.0;
        for (const std::int64_t n : {100, 1000, 10000}) {
            const double p = binary_tail_exact(BinaryDistribution(0.7), n, 0.2);
            const double rate = -std::log(p) / static_cast<double>(n);
            monotone = monotone && rate < prev && rate > target;
            prev = rate;
            final_rate = rate;
        }
        std::ostringstream os;
        os << "rate at n=1e4 is " << final_rate << " vs " << target;
        d = os.str();
        return monotone && std::abs(final_rate - target) / target <= 0.03;
    }, 5.0);

    runner.run(9, "monte carlo mean sits in the lambda envelope; mcdiarmid holds",
               [](std::string& d) {
                   const DiscreteDistribution q({0.5, 0.5});
                   const auto lb = lambda_n(q, 100);
                   SimConfig cfg{q, 100, 0.2, 100000, 20240801, 4};
                   const auto est = monte_carlo(cfg);
                   const bool envelope =
                       est.e_jn_hat >= lb.lower - 3.0 * est.e_jn_se &&
                       est.e_jn_hat <= lb.lambda + 3.0 * est.e_jn_se;
                   bool mcd_ok = true;
                   for (const double eps : {0.05, 0.1, 0.2}) {
                       SimConfig c = cfg;
                       c.epsilon = eps;
                       const auto e = monte_carlo(c);
                       mcd_ok = mcd_ok && e.p_hat_centered <= mcdiarmid_bound(100, eps);
                   }
                   std::ostringstream os;
                   os << "mean " << est.e_jn_hat << " in [" << lb.lower << ", " << lb.lambda
                      << "]";
                   d = os.str();
                   return envelope && mcd_ok;
               }, 30.0);

    runner.run(10, "sanov CLI output is byte-identical across seeds reruns and threads",
               [&](std::string& d) {
                   if (cli_path.empty()) {
                       d = "no CLI path given";
                       return false;
                   }
                   const std::string base = cli_path +
                                            " sanov --dist 0.7,0.2,0.1 --n 100 --eps 0.2"
                                            " --trials 20000 --seed 99 --threads ";
                   const auto one = capture_command(base + "1");
                   const auto one_again = capture_command(base + "1");
                   const auto eight = capture_command(base + "8");
                   if (!one || !one_again || !eight) {
                       d = "CLI invocation failed";
                       return false;
                   }
                   if (one->empty() || *one != *one_again || *one != *eight) {
                       d = "outputs differ";
                       return false;
                   }
                   return true;
               });

    std::printf("%s: %d of 10 criteria passed\n", runner.failures == 0 ? "OK" : "FAILURES",
                10 - runner.failures);
    return runner.failures;
}
