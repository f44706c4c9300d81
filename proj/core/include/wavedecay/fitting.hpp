#ifndef WAVEDECAY_FITTING_HPP
#define WAVEDECAY_FITTING_HPP

#include <string>
#include <vector>

#include "wavedecay/diagnostics.hpp"

namespace wavedecay {

struct LinFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LinFit ols(const std::vector<double>& x, const std::vector<double>& y);

/// Log-log decay-rate fit of a localized-energy series over [t_a, t_b]:
/// free power-law slope plus residuals of the three fixed-shape models.
struct DecayFit {
    double slope = 0.0;       // free log-log slope
    double intercept = 0.0;
    double r2 = 0.0;
    double prefactor = 0.0;   // c in E = c t^-1 sqrt(log t)
    double rms_t1 = 0.0;              // model t^-1
    double rms_t1_sqrtlog = 0.0;      // model t^-1 sqrt(log t)
    double rms_gamma_sqrtlog = 0.0;   // model t^(gamma-1) sqrt(log t)
    double gamma = 0.0;
    std::string best_model;
    int used = 0;
    int excluded = 0;
};

DecayFit decay_fit_points(const std::vector<double>& t, const std::vector<double>& e, double t_a,
                          double t_b, double gamma);
DecayFit decay_fit(const RunSeries& s, double t_a, double t_b, double gamma);

} // namespace wavedecay

#endif
