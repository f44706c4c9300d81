#include "wavedecay/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace wavedecay {

WeightValue psi(double t, double x1, double x2, const WeightParams& params)
{
    if (t < 0.0)
        throw std::invalid_argument("weight: negative time");
    const double c = std::sqrt(params.k0);
    const double s = c * t;
    const double r = std::hypot(x1, x2);
    WeightValue w{};
    if (r >= s) {
        w.value = 1.0 + r - s;
        w.dt = -c;
        if (r > 0.0) {
            w.dx1 = x1 / r;
            w.dx2 = x2 / r;
        }
    } else {
        const double d = 1.0 + s - r;
        const double inv2 = 1.0 / (d * d);
        w.value = 1.0 / d;
        w.dt = -c * inv2;
        if (r > 0.0) {
            w.dx1 = x1 / r * inv2;
            w.dx2 = x2 / r * inv2;
        }
    }
    return w;
}

double eikonal_residual(double t, double x1, double x2, const WeightParams& params)
{
    const WeightValue w = psi(t, x1, x2, params);
    return params.k0 * (w.dx1 * w.dx1 + w.dx2 * w.dx2) - w.dt * w.dt;
}

PhiValue phi(double t, const WeightParams& params)
{
    if (t < 0.0)
        throw std::invalid_argument("weight: negative time");
    const double c = std::sqrt(params.k0);
    const double s = c * t;
    if (params.r0 >= s)
        return {1.0 + params.r0 - s, -c};
    const double d = 1.0 + s - params.r0;
    return {1.0 / d, -c / (d * d)};
}

} // namespace wavedecay
