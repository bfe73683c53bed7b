#pragma once

#include <cmath>
#include <limits>

#include "minkl/errors.hpp"

namespace minkl {

// Nonnegative real extended with +infinity. Divergences live here: D(P||Q)
// and KL2 are either a finite nonnegative value or +infinity.
class ExtendedReal {
public:
    ExtendedReal() = default;

    // Implicit by design: divergence results flow into and out of doubles.
    ExtendedReal(double v) : value_(v) {
        if (std::isnan(v) || v < 0.0) {
            throw domain_error("ExtendedReal requires a nonnegative value or +infinity");
        }
    }

    static ExtendedReal infinity() noexcept {
        ExtendedReal r;
        r.value_ = std::numeric_limits<double>::infinity();
        return r;
    }

    bool is_finite() const noexcept { return std::isfinite(value_); }
    bool is_infinite() const noexcept { return std::isinf(value_); }

    // +infinity maps to the IEEE infinity.
    double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; }

private:
    double value_ = 0.0;
};

}  // namespace minkl
