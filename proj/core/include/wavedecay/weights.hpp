#ifndef WAVEDECAY_WEIGHTS_HPP
#define WAVEDECAY_WEIGHTS_HPP

namespace wavedecay {

struct WeightParams {
    double k0 = 1.0;  // far-field modulus
    double r0 = 1.0;  // far-field radius
};

struct WeightValue {
    double value;
    double dt;
    double dx1;
    double dx2;
};

/// Space-time weight: 1 + |x| - sqrt(k0)*t outside the light cone,
/// (1 + sqrt(k0)*t - |x|)^{-1} inside. Positive, strictly decreasing in t,
/// and k0|grad|^2 = (d/dt)^2 holds identically away from the origin. The
/// spatial gradient at x = 0 is taken as the zero vector.
WeightValue psi(double t, double x1, double x2, const WeightParams& params);

/// k0 |grad psi|^2 - (psi_t)^2 from the closed-form derivatives.
double eikonal_residual(double t, double x1, double x2, const WeightParams& params);

struct PhiValue {
    double value;
    double dt;
};

/// Time-only weight: psi evaluated on the circle |x| = r0.
PhiValue phi(double t, const WeightParams& params);

} // namespace wavedecay

#endif
