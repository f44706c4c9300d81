#ifndef WAVEDECAY_SOLVER_HPP
#define WAVEDECAY_SOLVER_HPP

#include <functional>

#include "wavedecay/coefficients.hpp"
#include "wavedecay/field.hpp"
#include "wavedecay/initial_data.hpp"

namespace wavedecay {

/// Two consecutive time levels of the discrete solution. u_curr is the
/// displacement at time t = step * dt, u_prev one step earlier.
struct WaveState {
    ScalarField u_prev;
    ScalarField u_curr;
    double t = 0.0;
    long step = 0;
};

/// Test forcing f(t, x1, x2); used only by manufactured-solution runs.
using Forcing = std::function<double(double, double, double)>;

/// Domain half width L + k1 * t_max + 8 dx, rounded up to the node lattice.
double lattice_half_width(double L, double k1, double t_max, double dx);

/// Grid covering the support for the whole run, not smaller than min_half
/// (so diagnostic discs always fit). Throws when the node count per side
/// would exceed max_nodes_per_side, reporting the required count.
Grid2D domain_grid(double L, double k1, double t_max, double dx, int max_nodes_per_side,
                   double min_half = 0.0);

/// dt = cfl * dx / (k1 * sqrt(2)), the stability bound of the five-point
/// scheme at the maximal wave speed.
double cfl_timestep(double dx, double k1, double cfl);

/// Second-order Taylor start: u(dt) = u0 + dt u1 + dt^2/2 (div(K grad u0) + f(0)).
WaveState first_step(const InitialData& data, const CoefficientField& K, double dt,
                     const Forcing* forcing = nullptr);

/// Leapfrog update u_next = 2 u_curr - u_prev + dt^2 (div(K grad u_curr) + f(t)).
/// Aborts with the step index when a non-finite value appears.
void step(WaveState& state, const CoefficientField& K, double dt, const Forcing* forcing = nullptr);

/// Centered velocity (u_curr - u_prev)/dt, second order at t - dt/2.
ScalarField velocity(const WaveState& state, double dt);

/// Sink for per-sample diagnostics; invoked at step 1, at every stride-th
/// step, and at the final step.
class SampleSink {
  public:
    virtual ~SampleSink() = default;
    virtual void on_sample(const WaveState& state, double dt) = 0;
};

/// Steps the state to t_max, forwarding samples to the sink.
void run(WaveState& state, const CoefficientField& K, double dt, double t_max, int sample_stride,
         SampleSink& sink, const Forcing* forcing = nullptr);

} // namespace wavedecay

#endif
