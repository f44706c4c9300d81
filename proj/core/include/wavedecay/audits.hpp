#ifndef WAVEDECAY_AUDITS_HPP
#define WAVEDECAY_AUDITS_HPP

#include <functional>

#include "wavedecay/audit.hpp"
#include "wavedecay/diagnostics.hpp"
#include "wavedecay/potential.hpp"

namespace wavedecay {

/// Tolerances pinned from the acceptance gates: identity residuals at 0.02,
/// conservation at 1e-3, simulation-dependent inequalities at 5 percent
/// relative slack, pure-quadrature certificates at 1e-6.
struct AuditTolerances {
    double conservation = 1e-3;
    double identity_residual = 0.02;
    double sim_slack = 0.05;
    double quad_slack = 1e-6;
};

AuditEntry audit_energy_conservation(const RunSeries& s, const AuditTolerances& tol = {});

/// Containment of the 1e-12-relative support inside B(L + k1 t) plus the
/// scheme's dispersive precursor width.
AuditEntry audit_support_containment(const RunSeries& s);

/// Worst excess of the 1e-12-relative support over B(L + k1 t + 8 dx), the
/// fixed-margin form of the containment statement.
double support_excess_fixed_margin(const RunSeries& s);
AuditEntry audit_morawetz(const RunSeries& s, const AuditTolerances& tol = {});

/// psi-weighted exterior energy against (1 + r0) times the weighted initial mass.
AuditEntry audit_weighted_exterior(const RunSeries& s, const AuditTolerances& tol = {});

/// Residual of the antiderivative energy identity.
AuditEntry audit_antiderivative(const RunSeries& s, const AuditTolerances& tol = {});

/// ||u(t)||^2 <= ||u0||^2 + (2/k_m) * gradient energy of h over B(2L + k1 t),
/// with the computed potential on the right-hand side.
AuditEntry audit_l2_energy_bound(const RunSeries& s, double I_h, const RadialGradStore& store,
                                 const AuditTolerances& tol = {});

/// The fully explicit growth chain: ||u(t)||^2 <= ||u0||^2 +
/// (2/k_m)[64 pi L^4 ||u1||_inf^2 + (2/pi) ||u1||_1^2 log(2L + k1 t)] for
/// t >= 10, plus the least-squares fit ||u||^2 ~ a + b log t.
struct GrowthAudit {
    AuditEntry entry;
    double a = 0.0, b = 0.0, r2 = 0.0;
    int n_samples = 0;
};
GrowthAudit audit_l2_growth(const RunSeries& s, const AuditTolerances& tol = {});

/// t E(t) <= J0 - (1/2) int u_t u - int u_t (x.grad u), valid under radial
/// monotonicity of the coefficient.
AuditEntry audit_time_weighted_energy(const RunSeries& s, const AuditTolerances& tol = {});

/// Explicit surrogate constants of the bound chain; c3 = sqrt(2) max(c1, c2).
struct ChainConstants {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
    std::function<double(double)> A0;  // J0 + c3 sqrt(E0) (norm sum) sqrt(log t) + (1+r0)/sqrt(k_m) W0
};
ChainConstants chain_constants(const RunSeries& s, double t_min_audited);

/// (t - R/sqrt(k_m)) E_loc(t) <= A0(t) + gamma int_0^t E_loc ds at every
/// audited sample (t beyond both R/sqrt(k_m) and e).
AuditEntry audit_energy_inequality(const RunSeries& s, double gamma, const AuditTolerances& tol = {});

/// Discrete w' audit of the integrated inequality plus the certified
/// prefactor C* with E_loc(t) <= C* t^(gamma-1) sqrt(log t) on [t0, T].
struct GronwallWindow {
    AuditEntry entry;
    double c_star = 0.0;
    double t0 = 0.0;
    bool w_audit_pass = false;
    double worst_interval_t = 0.0;
};
GronwallWindow gronwall_window(const RunSeries& s, double gamma, double t0_hint = -1.0,
                               const AuditTolerances& tol = {});

double first_audited_time(const RunSeries& s);

} // namespace wavedecay

#endif
