#include "minkl/vajda.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "minkl/binary.hpp"
#include "minkl/errors.hpp"

namespace minkl {

namespace {

// Taylor coefficients of the parametric curve about t = 0 (exact rationals).
// Both coordinates are differences of quantities that agree to O(t^2), so
// direct evaluation below t ~ 0.5 loses relative precision; the truncated
// series at t = 0.5 is still accurate to ~1e-19 relative (radius pi).
//
//   v(t) = t - t^3/9 + 2 t^5/135 - ...
//   L(t) = t^2/2 - t^4/12 + t^6/81 - ...
constexpr double kSwitchT = 0.5;

double v_series(double t) {
    const double t2 = t * t;
    double acc = 2631724.0 / 410906739852984375.0;
    acc = acc * t2 - 472728182.0 / 8076782878550260875.0;
    acc = acc * t2 + 310732.0 / 584689432201875.0;
    acc = acc * t2 - 349222.0 / 72920450728125.0;
    acc = acc * t2 + 87734.0 / 2051541867375.0;
    acc = acc * t2 - 3617.0 / 9577693125.0;
    acc = acc * t2 + 4.0 / 1216215.0;
    acc = acc * t2 - 1382.0 / 49116375.0;
    acc = acc * t2 + 2.0 / 8505.0;
    acc = acc * t2 - 1.0 / 525.0;
    acc = acc * t2 + 2.0 / 135.0;
    acc = acc * t2 - 1.0 / 9.0;
    return t * (1.0 + t2 * acc);
}

double l_series(double t) {
    const double t2 = t * t;
    double acc = -236364091.0 / 4213973675765353500.0;
    acc = acc * t2 + 155366.0 / 306265893058125.0;
    acc = acc * t2 - 174611.0 / 38379184593750.0;
    acc = acc * t2 + 43867.0 / 1086110400375.0;
    acc = acc * t2 - 3617.0 / 10216206000.0;
    acc = acc * t2 + 2.0 / 654885.0;
    acc = acc * t2 - 691.0 / 26790750.0;
    acc = acc * t2 + 1.0 / 4725.0;
    acc = acc * t2 - 1.0 / 600.0;
    acc = acc * t2 + 1.0 / 81.0;
    acc = acc * t2 - 1.0 / 12.0;
    return t2 * (0.5 + t2 * acc);
}

}  // namespace

VajdaPoint vajda_parametric(double t) {
    if (!(t > 0.0)) {
        throw domain_error("vajda_parametric requires t > 0");
    }
    if (t < kSwitchT) {
        return VajdaPoint{t, v_series(t), l_series(t)};
    }

    // coth t - 1 = 2/(e^{2t} - 1); tracking that correction separately keeps
    // everything finite and well conditioned for arbitrarily large t
    // (sinh overflows past t ~ 710, e^{-2t} underflows harmlessly to 0).
    const double coth_excess = (2.0 * t < 700.0) ? 2.0 / std::expm1(2.0 * t) : 0.0;
    const double one_minus_c = 1.0 / t - coth_excess;           // 1 - (coth t - 1/t)
    const double c = 1.0 - one_minus_c;
    const double v = t * one_minus_c * (1.0 + c);

    // ln sinh t = t + ln((1 - e^{-2t})/2)
    const double log_sinh = t + std::log1p(-std::exp(-2.0 * t)) - std::log(2.0);
    const double log_ratio = std::log(t) - log_sinh;             // ln(t / sinh t)
    const double ratio_sq = std::exp(2.0 * log_ratio);           // (t / sinh t)^2
    // ln(t/sinh t) + t coth t = ln t + ln 2 - ln(1 - e^{-2t}) + t*(coth t - 1)
    const double l = std::log(t) + std::log(2.0) - std::log1p(-std::exp(-2.0 * t)) +
                     t * coth_excess - ratio_sq;
    return VajdaPoint{t, v, l};
}

double vajda_L(double v) {
    if (!(v > 0.0 && v < 2.0)) {
        throw domain_error("vajda_L requires v in (0, 2)");
    }
    double lo = v / 2.0;
    double hi = std::max(4.0, 2.0 / (2.0 - v));
    // v(t) < t everywhere and v(t) -> 2 like 2 - 1/t, so this bracket holds;
    // widen defensively anyway rather than fail on a rounding edge.
    for (int i = 0; i < 8 && vajda_parametric(hi).v < v; ++i) hi *= 2.0;
    if (vajda_parametric(lo).v >= v || vajda_parametric(hi).v < v) {
        throw std::runtime_error("vajda_L: failed to bracket the curve parameter");
    }
    double t_mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        t_mid = 0.5 * (lo + hi);
        const double vm = vajda_parametric(t_mid).v;
        if (std::abs(vm - v) <= 1e-12) break;
        if (vm < v) {
            lo = t_mid;
        } else {
            hi = t_mid;
        }
        if (hi - lo <= 1e-15 * t_mid) break;
    }
    return vajda_parametric(t_mid).L;
}

double vajda_by_minimization(double v, std::size_t grid_points) {
    if (!(v > 0.0 && v < 2.0)) {
        throw domain_error("vajda_by_minimization requires v in (0, 2)");
    }
    if (grid_points < 8) grid_points = 8;
    const double half_v = v / 2.0;
    const double lo = 1e-12;
    const double hi = 1.0 - half_v - 1e-12;
    const auto g = [&](double x) { return static_cast<double>(kl2(x + half_v, x)); };

    const std::size_t n = grid_points;
    double best = g(lo);
    std::size_t best_i = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
        const double val = g(x);
        if (val < best) {
            best = val;
            best_i = i;
        }
    }

    // Golden-section refinement on the cells flanking the grid argmin.
    const double step = (hi - lo) / static_cast<double>(n);
    double a = lo + step * static_cast<double>(best_i == 0 ? 0 : best_i - 1);
    double b = std::min(hi, lo + step * static_cast<double>(best_i + 1));
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = g(x1), f2 = g(x2);
    for (int iter = 0; iter < 200 && (b - a) > 1e-13; ++iter) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = g(x2);
        }
        best = std::min(best, std::min(f1, f2));
    }
    return std::min({best, f1, f2});
}

}  // namespace minkl
