// Command-line front end: single evaluations, curve sweeps, and Monte Carlo
// runs with machine-readable output (JSON for scalar results, CSV for
// sweeps). Exit codes: 0 success, 2 input error, 3 capacity error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
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

namespace {

using json = nlohmann::ordered_json;

// All numeric output carries 12 significant digits; +infinity serializes as
// the string "inf".
double round12(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

json num(double x) {
    if (std::isinf(x)) return json("inf");
    return json(round12(x));
}

std::string fmt12(double x) {
    if (std::isinf(x)) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::vector<double> parse_weight_text(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        throw minkl::input_error("empty distribution input");
    }
    std::vector<double> weights;
    if (text[first] == '[') {
        json arr;
        try {
            arr = json::parse(text);
        } catch (const json::parse_error& e) {
            throw minkl::input_error(std::string("bad JSON distribution: ") + e.what());
        }
        if (!arr.is_array()) {
            throw minkl::input_error("JSON distribution must be an array of numbers");
        }
        for (const auto& x : arr) {
            if (!x.is_number()) {
                throw minkl::input_error("JSON distribution must contain only numbers");
            }
            weights.push_back(x.get<double>());
        }
        return weights;
    }
    // comma-separated inline, or one weight per line from a file
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        std::istringstream fields(token);
        std::string field;
        while (fields >> field) {
            std::size_t used = 0;
            double w = 0.0;
            try {
                w = std::stod(field, &used);
            } catch (const std::exception&) {
                throw minkl::input_error("cannot parse weight '" + field + "'");
            }
            if (used != field.size()) {
                throw minkl::input_error("cannot parse weight '" + field + "'");
            }
            weights.push_back(w);
        }
    }
    return weights;
}

// --dist accepts: "-" (stdin), a path to a file (one weight per line or a
// JSON array), an inline JSON array, or an inline comma-separated list.
minkl::DiscreteDistribution parse_distribution(const std::string& arg, bool renormalize) {
    std::string text;
    if (arg == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else if (std::error_code ec; std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream file(arg);
        if (!file) {
            throw minkl::input_error("cannot open distribution file '" + arg + "'");
        }
        std::ostringstream buf;
        buf << file.rdbuf();
        text = buf.str();
    } else {
        text = arg;
    }
    return minkl::DiscreteDistribution(parse_weight_text(text), renormalize);
}

struct GridSpec {
    double start, stop, step;
};

GridSpec parse_grid(const std::string& arg) {
    GridSpec g{};
    char colon1 = 0, colon2 = 0;
    std::istringstream in(arg);
    if (!(in >> g.start >> colon1 >> g.stop >> colon2 >> g.step) || colon1 != ':' ||
        colon2 != ':' || !(in >> std::ws).eof()) {
        throw minkl::input_error("grid must be start:stop:step");
    }
    if (!(g.start < g.stop) || !(g.step > 0.0)) {
        throw minkl::input_error("grid requires start < stop and step > 0");
    }
    if ((g.stop - g.start) / g.step > 1e6) {
        throw minkl::input_error("grid would exceed 1e6 points");
    }
    return g;
}

std::vector<double> grid_points(const GridSpec& g) {
    std::vector<double> pts;
    for (double x = g.start; x <= g.stop + 1e-12 * g.step; x += g.step) {
        pts.push_back(x);
    }
    return pts;
}

std::size_t default_k_max() {
    if (const char* env = std::getenv("MINKL_KMAX")) {
        char* end = nullptr;
        const unsigned long parsed = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && parsed >= 1) {
            return static_cast<std::size_t>(parsed);
        }
        throw minkl::input_error("MINKL_KMAX must be a positive integer");
    }
    return minkl::kDefaultKMax;
}

const char* method_name(minkl::DStarMethod m) {
    switch (m) {
        case minkl::DStarMethod::closed_form_thm1b: return "closed_form_thm1b";
        case minkl::DStarMethod::upper_bound_thm1a: return "upper_bound_thm1a";
        case minkl::DStarMethod::enumeration: return "enumeration";
        case minkl::DStarMethod::full_range_thm2: return "full_range_thm2";
    }
    return "unknown";
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int run(int argc, char** argv) {
    CLI::App app{"minimum KL divergence outside a total-variation ball"};
    app.require_subcommand(1);

    std::string dist_arg, p_arg, q_arg, grid_arg;
    bool renormalize = false;
    std::size_t k_max = default_k_max();
    double v = 0.0;
    bool full_range = false, emit_extremal = false, greedy = false;
    std::string method = "auto";
    std::int64_t n = 100, trials = 10000;
    double epsilon = 0.1;
    std::uint64_t seed = 0;
    int threads = 1;

    auto* divergence = app.add_subcommand("divergence", "KL divergence and total variation");
    divergence->add_option("--p", p_arg, "first distribution (P)")->required();
    divergence->add_option("--q", q_arg, "second distribution (Q)")->required();
    divergence->add_flag("--renormalize", renormalize, "rescale weights to sum to 1");

    auto* dstar_cmd = app.add_subcommand("dstar", "minimum divergence at TV distance >= v");
    dstar_cmd->add_option("--dist", dist_arg, "distribution Q")->required();
    dstar_cmd->add_option("--v", v, "total variation radius, in (0,2)")->required();
    dstar_cmd->add_flag("--full-range", full_range, "treat Q as full-range (answer is L(v))");
    dstar_cmd->add_option("--method", method, "auto|enumerate|closed")
        ->check(CLI::IsMember({"auto", "enumerate", "closed"}));
    dstar_cmd->add_flag("--emit-extremal", emit_extremal, "include the minimizing weights");
    dstar_cmd->add_option("--k-max", k_max, "enumeration capacity limit");
    dstar_cmd->add_flag("--renormalize", renormalize);

    auto* balance_cmd = app.add_subcommand("balance", "balance coefficient and phi(Q)");
    balance_cmd->add_option("--dist", dist_arg)->required();
    balance_cmd->add_flag("--greedy", greedy, "use the greedy bound instead of exact search");
    balance_cmd->add_option("--k-max", k_max);
    balance_cmd->add_flag("--renormalize", renormalize);

    auto* vajda_cmd = app.add_subcommand("vajda", "Vajda's tight lower bound L(v)");
    auto* vajda_v = vajda_cmd->add_option("--v", v, "single evaluation point");
    auto* vajda_grid = vajda_cmd->add_option("--grid", grid_arg, "CSV sweep start:stop:step");

    auto* bounds_cmd = app.add_subcommand("bounds", "CSV sweep of all bounds for a fixed Q");
    bounds_cmd->add_option("--dist", dist_arg)->required();
    bounds_cmd->add_option("--grid", grid_arg, "v sweep start:stop:step")->required();
    bounds_cmd->add_option("--k-max", k_max);
    bounds_cmd->add_flag("--renormalize", renormalize);

    auto* sanov_cmd = app.add_subcommand("sanov", "Monte Carlo empirical-deviation study");
    sanov_cmd->add_option("--dist", dist_arg)->required();
    sanov_cmd->add_option("--n", n, "sample size per trial")->required();
    sanov_cmd->add_option("--eps", epsilon, "tail threshold")->required();
    sanov_cmd->add_option("--trials", trials)->required();
    sanov_cmd->add_option("--seed", seed)->required();
    sanov_cmd->add_option("--threads", threads);
    sanov_cmd->add_option("--k-max", k_max);
    sanov_cmd->add_flag("--renormalize", renormalize);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (divergence->parsed()) {
        const auto p = parse_distribution(p_arg, renormalize);
        const auto q = parse_distribution(q_arg, renormalize);
        json out;
        out["kl"] = num(minkl::kl_divergence(p, q));
        out["tv"] = num(minkl::total_variation(p, q));
        emit(out);
        return 0;
    }

    if (dstar_cmd->parsed()) {
        const auto q = parse_distribution(dist_arg, renormalize);
        minkl::DStarOptions opts;
        opts.full_range = full_range;
        opts.k_max = k_max;
        if (method == "enumerate") opts.method = minkl::DStarOptions::Method::enumerate;
        if (method == "closed") opts.method = minkl::DStarOptions::Method::closed;
        const auto result = minkl::dstar(q, v, opts);
        json out;
        out["v"] = num(v);
        out["value"] = num(result.value);
        out["method"] = method_name(result.method);
        if (result.upper_bound_only) {
            out["upper_bound_only"] = true;
            if (result.lower) out["lower"] = num(*result.lower);
        }
        if (result.achieving_subset) {
            out["achieving_subset"] = *result.achieving_subset;
        }
        if (emit_extremal && result.extremal) {
            json weights = json::array();
            for (double w : result.extremal->weights()) weights.push_back(num(w));
            out["extremal"] = weights;
        }
        emit(out);
        return 0;
    }

    if (balance_cmd->parsed()) {
        const auto q = parse_distribution(dist_arg, renormalize);
        const auto report = greedy ? minkl::balance_greedy(q) : minkl::balance_exact(q, k_max);
        json out;
        out["beta"] = num(report.beta);
        out["method"] = report.method == minkl::BalanceMethod::exact ? "exact" : "greedy_bound";
        out["phi"] = num(report.phi);
        if (report.method == minkl::BalanceMethod::exact) {
            out["achieving_subset"] = report.achieving_subset;
        }
        out["upper_bound"] = num(report.upper_bound);
        out["qmax_bound"] = num(report.qmax_bound);
        emit(out);
        return 0;
    }

    if (vajda_cmd->parsed()) {
        if (static_cast<bool>(*vajda_v) == static_cast<bool>(*vajda_grid)) {
            throw minkl::input_error("vajda needs exactly one of --v or --grid");
        }
        if (*vajda_v) {
            std::cout << fmt12(minkl::vajda_L(v)) << "\n";
            return 0;
        }
        std::cout << "v,L,pinsker\n";
        for (const double x : grid_points(parse_grid(grid_arg))) {
            std::cout << fmt12(x) << "," << fmt12(minkl::vajda_L(x)) << ","
                      << fmt12(x * x / 2.0) << "\n";
        }
        return 0;
    }

    if (bounds_cmd->parsed()) {
        const auto q = parse_distribution(dist_arg, renormalize);
        const auto balance = minkl::balance_exact(q, k_max);
        const GridSpec grid = parse_grid(grid_arg);
        if (grid.start <= 0.0 || grid.stop >= 2.0) {
            throw minkl::input_error("bounds sweep requires 0 < start and stop < 2");
        }
        minkl::DStarOptions opts;
        opts.k_max = k_max;
        std::cout << "v,pinsker,ow,vajda_L,dstar,thm1a_upper\n";
        for (const double x : grid_points(grid)) {
            const double ow =
                balance.beta < 1.0 ? minkl::phi_coefficient(balance.beta) / 4.0 * x * x
                                   : std::numeric_limits<double>::infinity();
            const auto ds = minkl::dstar(q, x, opts);
            std::cout << fmt12(x) << "," << fmt12(x * x / 2.0) << "," << fmt12(ow) << ","
                      << fmt12(minkl::vajda_L(x)) << "," << fmt12(ds.value) << ",";
            if (x < 1.0) {
                std::cout << fmt12(minkl::kl2(balance.beta - x / 2.0, balance.beta));
            }
            std::cout << "\n";
        }
        return 0;
    }

    if (sanov_cmd->parsed()) {
        const auto q = parse_distribution(dist_arg, renormalize);
        minkl::SimConfig cfg{q, n, epsilon, trials, seed, threads};
        const auto est = minkl::monte_carlo(cfg);
        json out;
        out["n"] = n;
        out["epsilon"] = num(epsilon);
        out["trials"] = trials;
        out["seed"] = seed;
        out["p_hat_ge_eps"] = num(est.p_hat_ge_eps);
        out["ci_halfwidth"] = num(est.ci_halfwidth);
        out["p_hat_centered"] = num(est.p_hat_centered);
        out["rate_estimate"] = num(est.rate_estimate);
        out["e_jn_hat"] = num(est.e_jn_hat);
        out["e_jn_se"] = num(est.e_jn_se);
        out["insufficient_trials"] = est.insufficient_trials;
        if (epsilon > 0.0 && epsilon < 2.0) {
            try {
                const auto ref = minkl::dstar(q, epsilon, {.k_max = k_max});
                out["dstar_ref"] = num(ref.value);
                out["dstar_method"] = method_name(ref.method);
            } catch (const minkl::capacity_error&) {
                out["dstar_ref"] = nullptr;
            }
        } else {
            out["dstar_ref"] = nullptr;
        }
        out["mcdiarmid"] = num(minkl::mcdiarmid_bound(n, epsilon));
        if (n >= 2) {
            const auto lb = minkl::lambda_n(q, n);
            out["lambda"] = {{"lambda", num(lb.lambda)},
                             {"lower", num(lb.lower)},
                             {"upper_sqrt_k", num(lb.upper_sqrt_k)},
                             {"upper_sum_sqrt", num(lb.upper_sum_sqrt)}};
        } else {
            out["lambda"] = nullptr;
        }
        emit(out);
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const minkl::capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const minkl::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const minkl::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
