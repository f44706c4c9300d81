#ifndef WAVEDECAY_INITIAL_DATA_HPP
#define WAVEDECAY_INITIAL_DATA_HPP

#include <string>

#include "wavedecay/field.hpp"

namespace wavedecay {

/// Compactly supported initial data (displacement, velocity) with the norms
/// and the velocity moment the estimates consume. Both fields vanish
/// node-exactly outside the ball of radius L.
struct InitialData {
    ScalarField u0;
    ScalarField u1;
    double L = 0.0;
    double norm_u0_l2 = 0.0;
    double norm_u1_l2 = 0.0;
    double norm_u1_l1 = 0.0;
    double norm_u1_linf = 0.0;
    double moment = 0.0;  // integral of the velocity
};

/// Smooth bump amplitude * exp(1 - 1/(1 - s^2)), s = |x - center|/radius,
/// zero outside the ball.
ScalarField make_bump(double center1, double center2, double radius, double amplitude, const Grid2D& grid);

double moment(const ScalarField& u1);

struct DataSpec {
    std::string preset = "bump-velocity";  // bump-velocity | bump-displacement | dipole-velocity
    double L = 1.0;
    double amplitude = 1.0;
};

InitialData make_dataset(const DataSpec& spec, const Grid2D& grid);

} // namespace wavedecay

#endif
