#ifndef WAVEDECAY_COEFFICIENTS_HPP
#define WAVEDECAY_COEFFICIENTS_HPP

#include <functional>
#include <optional>
#include <string>

#include "wavedecay/field.hpp"

namespace wavedecay {

/// Analytic radial profile of a bulk modulus together with the constants the
/// estimates consume. k1 = sup sqrt(K) bounds the propagation speed; the
/// profile equals k0 exactly for r >= r0.
struct RadialCoefficient {
    std::string family;
    std::function<double(double)> value;  // K(r)
    std::function<double(double)> slope;  // K'(r)
    double k_m = 0.0;                     // lower ellipticity bound
    double k0 = 0.0;                      // far-field constant value
    double k1 = 0.0;                      // sup sqrt(K)
    double r0 = 0.0;                      // far-field radius
    double lip_grad_sup = 0.0;            // sup |K'| from the analytic formula
    std::optional<double> gamma0;         // ratio bound: x.grad K <= gamma0 K
    std::optional<double> eta0;           // r0 * lip_grad_sup / k_m
};

/// Grid samples of a coefficient plus the analytic metadata.
struct CoefficientField {
    ScalarField samples;
    RadialCoefficient profile;

    double k_m() const { return profile.k_m; }
    double k0() const { return profile.k0; }
    double k1() const { return profile.k1; }
    double r0() const { return profile.r0; }
};

// the standard bump: exp(1 - 1/(1-s^2)) for |s| < 1, else 0
double bump(double s);
double bump_derivative(double s);

RadialCoefficient constant_profile(double k0);
RadialCoefficient power_growth_profile(double gamma0, double r0);
RadialCoefficient radial_decreasing_profile(double k_peak, double k0, double r0);
RadialCoefficient ripple_profile(double k0, double amplitude, double r0);
RadialCoefficient profile_by_family(const std::string& family, double k0, double gamma0,
                                    double k_peak, double amplitude, double r0);

CoefficientField sample_on_grid(const RadialCoefficient& profile, const Grid2D& grid);

CoefficientField make_constant(double k0, const Grid2D& grid);
CoefficientField make_power_growth(double gamma0, double r0, const Grid2D& grid);
CoefficientField make_radial_decreasing(double k_peak, double k0, double r0, const Grid2D& grid);
CoefficientField make_ripple(double k0, double amplitude, double r0, const Grid2D& grid);

/// Numeric validation of the hypothesis set: ellipticity (min sample vs k_m),
/// radial monotonicity (max x.grad K), far-field constancy (exact equality
/// beyond r0), the ratio bound (max x.grad K / K), and the gradient bound
/// (max |grad K| vs the analytic sup). Gradients via the field module.
struct ConditionCheck {
    bool pass = false;
    double worst = 0.0;  // signed worst violation; <= 0 within tolerance means pass
};

struct ConditionReport {
    ConditionCheck ellipticity;        // K(x) >= k_m
    ConditionCheck radial_monotone;    // x.grad K <= 0
    ConditionCheck farfield_constant;  // K = k0 beyond r0, node-exact
    ConditionCheck ratio_bound;        // x.grad K <= gamma0 K
    ConditionCheck gradient_bound;     // |grad K| <= lip_grad_sup
    double measured_gamma0 = 0.0;      // max over nodes of x.grad K / K
    double measured_lip = 0.0;         // max over nodes of |grad K|

    bool all_pass() const
    {
        return ellipticity.pass && radial_monotone.pass && farfield_constant.pass &&
               ratio_bound.pass && gradient_bound.pass;
    }
};

ConditionReport validate_conditions(const CoefficientField& K);

} // namespace wavedecay

#endif
