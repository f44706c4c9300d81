#ifndef WAVEDECAY_POTENTIAL_HPP
#define WAVEDECAY_POTENTIAL_HPP

#include <array>
#include <span>
#include <vector>

#include "wavedecay/audit.hpp"
#include "wavedecay/field.hpp"

namespace wavedecay {

using Point = std::array<double, 2>;

/// Logarithmic-kernel potential h = -(1/2pi) int log|x-y| u1(y) dy and its
/// gradient evaluated by cell quadrature, plus the localized gradient energy
/// over the disc of radius 2L.
struct PotentialField {
    std::vector<Point> points;
    std::vector<double> h;
    std::vector<Point> grad;
    double I_h = 0.0;        // integral of |grad h|^2 over |x| <= 2L
    double sup_grad_2L = 0.0;  // max |grad h| over the same disc
    double L = 0.0;

    double grad_norm(std::size_t i) const;
};

/// Quadrature over the support cells: midpoint for regular cells, 4x4
/// sub-sampled midpoint for cells near the evaluation point, and the
/// closed-form integral of log over the cell containing it (gradient taken
/// as zero there by symmetry). The gradient energy I_h is computed on a
/// dedicated node-aligned grid of the same spacing.
PotentialField newtonian_potential(const ScalarField& u1, std::span<const Point> eval_points, double L);

/// Potential and gradient at the given points only (no I_h pass).
struct PotentialValues {
    std::vector<double> h;
    std::vector<Point> grad;
};
PotentialValues evaluate_potential(const ScalarField& u1, std::span<const Point> eval_points);

/// Exact integral of log|z| over the square [-a, a]^2.
double log_cell_integral(double a);

/// Integral of |grad h|^2 over the annulus r_in <= |x| <= r_out, by
/// Gauss-Legendre panels in log radius and a periodic trapezoid in angle.
/// Intended for radii beyond the support where the integrand is smooth.
double annulus_grad_sq(const ScalarField& u1, double r_in, double r_out);

/// Cached cumulative annulus integrals from 2L outward, for per-sample bound
/// audits along a time series.
class RadialGradStore {
  public:
    RadialGradStore() = default;
    RadialGradStore(const ScalarField& u1, double L, double r_max);
    /// integral of |grad h|^2 over 2L <= |x| <= rho (0 when rho <= 2L)
    double cumulative(double rho) const;

  private:
    double base_ = 0.0;  // 2L
    std::vector<double> log_r_;
    std::vector<double> F_;
};

/// Dense polar sample of the annulus [2L, 10L], for the far-field bound.
std::vector<Point> farfield_sample_points(double L);

/// max over |x| >= 2L of |x| |grad h| against ||u1||_1 / pi.
AuditEntry certify_farfield_gradient(const PotentialField& pf, const ScalarField& u1, double L);

/// integral over |x| <= 2L + k1 t of |grad h|^2 against
/// I_h + (2/pi) ||u1||_1^2 log(2L + k1 t), for each listed time.
AuditEntry certify_annulus_log_growth(const ScalarField& u1, double I_h, double L, double k1,
                                      std::span<const double> times);

/// sup of |grad h| over the disc of radius 2L against 4L ||u1||_inf, and
/// I_h against 64 pi L^4 ||u1||_inf^2.
AuditEntry certify_gradient_sup(const PotentialField& pf, const ScalarField& u1, double L);

} // namespace wavedecay

#endif
