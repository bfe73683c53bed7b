#include "minkl/binary.hpp"

#include <cmath>

#include "minkl/distribution.hpp"
#include "minkl/errors.hpp"

namespace minkl {

BinaryDistribution::BinaryDistribution(double q0) : q0_(q0) {
    if (!(q0 >= 0.0 && q0 <= 1.0)) {
        throw domain_error("binary distribution requires q0 in [0,1]");
    }
}

ExtendedReal kl2(double p, double q) {
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
        throw domain_error("kl2 requires arguments in [0,1]");
    }
    if (q == 0.0) {
        if (p == 0.0) return ExtendedReal(0.0);
        return ExtendedReal::infinity();
    }
    if (q == 1.0) {
        if (p == 1.0) return ExtendedReal(0.0);
        return ExtendedReal::infinity();
    }
    if (p == 0.0) return ExtendedReal(-std::log1p(-q));  // ln(1/(1-q))
    if (p == 1.0) return ExtendedReal(-std::log(q));     // ln(1/q)
    const double d = p - q;
    return ExtendedReal(detail::kl_term(p, q, d) + detail::kl_term(1.0 - p, 1.0 - q, -d));
}

BinaryExtremal extremal_binary(const BinaryDistribution& q, double v) {
    const double q0 = q.q0();
    if (!(q0 > 0.5)) {
        throw domain_error("extremal_binary requires q0 > 1/2");
    }
    if (!(v > 0.0 && v <= 2.0 * q0)) {
        throw domain_error("extremal_binary requires v in (0, 2*q0]");
    }
    const double p0 = q0 - v / 2.0;
    return BinaryExtremal{BinaryDistribution(p0), kl2(p0, q0)};
}

bool kl2_shift_increasing_check(double delta, std::span<const double> grid) {
    if (!(delta > 0.0 && delta < 0.5)) {
        throw domain_error("kl2_shift_increasing_check requires delta in (0, 1/2)");
    }
    const double lo = 0.5 + delta / 2.0;
    double prev_x = lo;
    bool have_prev = false;
    double prev_val = 0.0;
    for (double x : grid) {
        if (x < lo - 1e-15 || x >= 1.0) {
            throw domain_error("grid point outside [1/2 + delta/2, 1)");
        }
        if (have_prev && x <= prev_x) {
            throw domain_error("grid must be strictly ascending");
        }
        const double val = kl2(x - delta, x);
        if (have_prev && !(val > prev_val)) return false;
        prev_val = val;
        prev_x = x;
        have_prev = true;
    }
    return true;
}

}  // namespace minkl
