#include "wavedecay/solver.hpp"

#include <cmath>
#include <sstream>

namespace wavedecay {

double lattice_half_width(double L, double k1, double t_max, double dx)
{
    const double raw = L + k1 * t_max + 8.0 * dx;
    return std::ceil(raw / dx - 1e-9) * dx;
}

Grid2D domain_grid(double L, double k1, double t_max, double dx, int max_nodes_per_side,
                   double min_half)
{
    const double half = std::max(lattice_half_width(L, k1, t_max, dx),
                                 std::ceil(min_half / dx - 1e-9) * dx);
    const long m = std::lround(half / dx);
    const long n = 2 * m + 1;
    if (n > max_nodes_per_side) {
        std::ostringstream os;
        os << "solver: domain needs " << n << " nodes per side (cap " << max_nodes_per_side << ")";
        throw std::invalid_argument(os.str());
    }
    return make_grid(static_cast<int>(n), dx);
}

double cfl_timestep(double dx, double k1, double cfl)
{
    if (!(dx > 0.0 && k1 > 0.0 && cfl > 0.0))
        throw std::invalid_argument("solver: timestep inputs must be positive");
    return cfl * dx / (k1 * std::sqrt(2.0));
}

namespace {

// flux-form div(K grad u) at one node, matching div_k_grad
inline double flux_at(const double* K, const double* u, int ix, int iy, int n, double invdx2)
{
    const long c = static_cast<long>(ix) * n + iy;
    const double kc = K[c];
    const double uc = u[c];
    double acc = 0.0;
    acc += (ix > 0) ? 0.5 * (kc + K[c - n]) * (u[c - n] - uc) : kc * (0.0 - uc);
    acc += (ix < n - 1) ? 0.5 * (kc + K[c + n]) * (u[c + n] - uc) : kc * (0.0 - uc);
    acc += (iy > 0) ? 0.5 * (kc + K[c - 1]) * (u[c - 1] - uc) : kc * (0.0 - uc);
    acc += (iy < n - 1) ? 0.5 * (kc + K[c + 1]) * (u[c + 1] - uc) : kc * (0.0 - uc);
    return acc * invdx2;
}

} // namespace

WaveState first_step(const InitialData& data, const CoefficientField& K, double dt, const Forcing* forcing)
{
    if (!(data.u0.grid == K.samples.grid))
        throw std::invalid_argument("solver: data and coefficient grids differ");
    WaveState s;
    s.u_prev = data.u0;
    s.u_curr = data.u0;
    const ScalarField lap = div_k_grad(K.samples, data.u0);
    const Grid2D& g = data.u0.grid;
    const int n = g.n;
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        const double x1 = g.coord(ix);
        for (int iy = 0; iy < n; ++iy) {
            const long c = g.index(ix, iy);
            double acc = lap.v[c];
            if (forcing)
                acc += (*forcing)(0.0, x1, g.coord(iy));
            s.u_curr.v[c] = data.u0.v[c] + dt * data.u1.v[c] + 0.5 * dt * dt * acc;
        }
    }
    s.t = dt;
    s.step = 1;
    return s;
}

void step(WaveState& state, const CoefficientField& K, double dt, const Forcing* forcing)
{
    const Grid2D& g = state.u_curr.grid;
    if (!(K.samples.grid == g))
        throw std::invalid_argument("solver: state and coefficient grids differ");
    const int n = g.n;
    const double invdx2 = 1.0 / (g.dx * g.dx);
    const double dt2 = dt * dt;
    const double t_now = state.t;
    const double* Kp = K.samples.v.data();
    const double* uc = state.u_curr.v.data();
    double* up = state.u_prev.v.data();  // overwritten in place with u_next
    std::vector<double> row_sq(n, 0.0);
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        const double x1 = g.coord(ix);
        double sq = 0.0;
        const bool edge_row = (ix == 0 || ix == n - 1);
        if (edge_row || forcing) {
            for (int iy = 0; iy < n; ++iy) {
                const long c = g.index(ix, iy);
                double acc = flux_at(Kp, uc, ix, iy, n, invdx2);
                if (forcing)
                    acc += (*forcing)(t_now, x1, g.coord(iy));
                const double un = 2.0 * uc[c] - up[c] + dt2 * acc;
                up[c] = un;
                sq += un * un;
            }
        } else {
            // interior row: branch-free stencil over the inner columns
            const long c0 = g.index(ix, 0);
            {
                double acc = flux_at(Kp, uc, ix, 0, n, invdx2);
                const double un = 2.0 * uc[c0] - up[c0] + dt2 * acc;
                up[c0] = un;
                sq += un * un;
            }
            const double* kr = Kp + c0;
            const double* ur = uc + c0;
            double* wr = up + c0;
            for (int iy = 1; iy < n - 1; ++iy) {
                const double kc = kr[iy];
                const double uij = ur[iy];
                const double acc = 0.5 * invdx2 *
                                   ((kc + kr[iy - n]) * (ur[iy - n] - uij) +
                                    (kc + kr[iy + n]) * (ur[iy + n] - uij) +
                                    (kc + kr[iy - 1]) * (ur[iy - 1] - uij) +
                                    (kc + kr[iy + 1]) * (ur[iy + 1] - uij));
                const double un = 2.0 * uij - wr[iy] + dt2 * acc;
                wr[iy] = un;
                sq += un * un;
            }
            {
                const long c1 = g.index(ix, n - 1);
                double acc = flux_at(Kp, uc, ix, n - 1, n, invdx2);
                const double un = 2.0 * uc[c1] - up[c1] + dt2 * acc;
                up[c1] = un;
                sq += un * un;
            }
        }
        row_sq[ix] = sq;
    }
    double total = 0.0;
    for (double v : row_sq)
        total += v;
    state.u_prev.v.swap(state.u_curr.v);
    state.step += 1;
    state.t = state.step * dt;
    if (!std::isfinite(total)) {
        std::ostringstream os;
        os << "solver: non-finite value at step " << state.step << " (instability)";
        throw std::runtime_error(os.str());
    }
}

ScalarField velocity(const WaveState& state, double dt)
{
    ScalarField v = make_field(state.u_curr.grid);
    const long sz = state.u_curr.grid.size();
    const double inv = 1.0 / dt;
    for (long i = 0; i < sz; ++i)
        v.v[i] = (state.u_curr.v[i] - state.u_prev.v[i]) * inv;
    return v;
}

void run(WaveState& state, const CoefficientField& K, double dt, double t_max, int sample_stride,
         SampleSink& sink, const Forcing* forcing)
{
    if (sample_stride < 1)
        throw std::invalid_argument("solver: sample stride must be at least 1");
    const long n_steps = std::max<long>(1, static_cast<long>(std::ceil(t_max / dt - 1e-9)));
    sink.on_sample(state, dt);
    while (state.step < n_steps) {
        step(state, K, dt, forcing);
        if (state.step % sample_stride == 0 || state.step == n_steps)
            sink.on_sample(state, dt);
    }
}

} // namespace wavedecay
