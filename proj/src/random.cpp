#include "infoflow/random.hpp"

#include <cmath>

#include "infoflow/errors.hpp"

namespace infoflow {

double RandomStream::uniform() {
    for (;;) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        if (u > 0.0) return u;
    }
}

double RandomStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double x, y, s;
    do {
        x = 2.0 * uniform() - 1.0;
        y = 2.0 * uniform() - 1.0;
        s = x * x + y * y;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = y * f;
    has_spare_ = true;
    return x * f;
}

double RandomStream::log_gamma(double shape) {
    if (!(shape > 0.0) || !std::isfinite(shape))
        throw InvalidParameterError("gamma shape must be positive and finite");
    if (shape < 1.0) return log_gamma(shape + 1.0) + std::log(uniform()) / shape;

    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d * v);
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return std::log(d * v);
    }
}

double RandomStream::gamma(double shape) { return std::exp(log_gamma(shape)); }

}  // namespace infoflow
