#ifndef WAVEDECAY_DIAGNOSTICS_HPP
#define WAVEDECAY_DIAGNOSTICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "wavedecay/coefficients.hpp"
#include "wavedecay/field.hpp"
#include "wavedecay/initial_data.hpp"
#include "wavedecay/solver.hpp"
#include "wavedecay/weights.hpp"

namespace wavedecay {

/// Per-sample diagnostics. Field quantities are evaluated at the half step
/// t - dt/2 with the centered velocity; running integrals accumulate by
/// trapezoid at the sample stride.
struct SeriesPoint {
    double t = 0.0;
    double E_total = 0.0;
    double E_loc = 0.0;
    double E_ext = 0.0;
    double l2_norm = 0.0;
    double weighted_ext = 0.0;     // psi-weighted energy outside r0
    double support_radius = 0.0;
    double morawetz_residual = 0.0;
    double K_integral = 0.0;       // running (1/2) int_0^t int (x.grad K)|grad u|^2
    double cross_ut_u = 0.0;       // int u_t u dx
    double cross_ut_xgradu = 0.0;  // int u_t (x.grad u) dx
    double int_e_loc = 0.0;        // running int_0^t E_loc ds
    double v_energy = 0.0;         // (1/2)||v_t||^2 + (1/2)||sqrt(K) grad v||^2
    double v_source = 0.0;         // int u1 v dx
};

struct RunSeries {
    std::vector<SeriesPoint> points;

    // initial-data scalars
    double j0 = 0.0;      // (1/2) int u1 u0 + int u1 (x.grad u0)
    double e0 = 0.0;      // total energy at t = 0
    double e_loc0 = 0.0;  // localized energy at t = 0
    double w0 = 0.0;      // int (1+|x|) e(0,x) dx

    // run context consumed by the audits
    double dt = 0.0;
    double dx = 0.0;
    double R = 0.0;
    double L = 0.0;
    double norm_u0_l2 = 0.0, norm_u1_l2 = 0.0, norm_u1_l1 = 0.0, norm_u1_linf = 0.0;
    double moment = 0.0;
    double k_m = 0.0, k0 = 0.0, k1 = 0.0, r0 = 0.0;
    std::optional<double> gamma0;
    std::optional<double> eta0;
    std::string family;
};

struct EnergyDensity {
    ScalarField e;
    double total = 0.0;
};

/// Pointwise energy density e = (1/2)(u_t^2 + K |grad u|^2) at the state's
/// half step, displacement taken as the two-level average; gradient via the
/// field module.
EnergyDensity energy(const WaveState& state, const CoefficientField& K, double dt);

/// The same at t = 0 from the initial data.
EnergyDensity initial_energy(const InitialData& data, const CoefficientField& K);

/// Energy restricted to the disc of radius R; requires R > r0.
double local_energy(const EnergyDensity& density, const CoefficientField& K, double R);

/// (1/2) int u1 u0 + int u1 (x.grad u0)
double compute_j0(const InitialData& data);

/// int (1 + |x|) e(0, x) dx
double weighted_initial_mass(const InitialData& data, const CoefficientField& K);

/// Streams solver samples into a RunSeries; owns the antiderivative field and
/// the running trapezoid accumulators.
class Sampler : public SampleSink {
  public:
    Sampler(const CoefficientField& K, const InitialData& data, double R);

    void on_sample(const WaveState& state, double dt) override;

    /// Emits the t = 0 record computed from the data alone (used when the
    /// run performs no steps).
    void append_initial_record();

    const RunSeries& series() const { return series_; }
    RunSeries&& take_series() { return std::move(series_); }

  private:
    struct PassResult {
        double e_total = 0.0, e_loc = 0.0, e_ext = 0.0;
        double l2sq = 0.0, wext = 0.0, kterm = 0.0;
        double cross1 = 0.0, cross2 = 0.0;
        double wmass = 0.0, max_abs_u = 0.0;
    };

    // ub = ca*P + cb*Q, ut = da*P + db*Q evaluated nodewise; when update_v is
    // set the antiderivative advances by trapezoid over [t_prev, t_rec].
    PassResult field_pass(const double* P, const double* Q, double ca, double cb, double da,
                          double db, double t_rec, bool update_v, double dt_samp);
    double support_radius(const double* P, const double* Q, double ca, double cb,
                          double threshold) const;
    void finish_sample(const PassResult& pass, double t_rec, double dt_samp, const double* P,
                       const double* Q, double ca, double cb);

    const CoefficientField& K_;
    const InitialData& data_;
    ScalarField kdot_;  // x . grad K via the field module
    std::vector<double> frac_R_, frac_r0_;
    ScalarField v_;         // antiderivative, trapezoid at the sample stride
    ScalarField u_half_prev_;
    double t_prev_ = 0.0;
    double g_prev_ = 0.0;      // int (x.grad K)|grad u|^2 at the previous sample
    double e_loc_prev_ = 0.0;
    double kint_acc_ = 0.0;    // int_0^t of the above
    double ieloc_acc_ = 0.0;   // int_0^t E_loc
    WeightParams wp_;
    RunSeries series_;
};

} // namespace wavedecay

#endif
