#include "wavedecay/audits.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wavedecay {

namespace {

constexpr double kEuler = 2.718281828459045;

AuditEntry worst_of(const std::string& name, const std::string& anchor,
                    const std::vector<AuditEntry>& entries)
{
    if (entries.empty())
        return AuditEntry::bound(name, anchor, 0.0, 0.0, 0.0);
    const AuditEntry* worst = &entries.front();
    bool all = true;
    for (const AuditEntry& e : entries) {
        all = all && e.pass;
        if (e.margin < worst->margin)
            worst = &e;
    }
    AuditEntry out = *worst;
    out.pass = all;
    return out;
}

} // namespace

AuditEntry audit_energy_conservation(const RunSeries& s, const AuditTolerances& tol)
{
    const std::string anchor = "E(t) = E(0)";
    if (s.points.empty())
        return AuditEntry::bound("energy-conservation", anchor, 0.0, tol.conservation, 0.0);
    const double base = s.points.front().E_total;
    double drift = 0.0;
    for (const SeriesPoint& p : s.points)
        if (base > 0.0)
            drift = std::max(drift, std::abs(p.E_total - base) / base);
    return AuditEntry::bound("energy-conservation", anchor, drift, tol.conservation, 0.0);
}

AuditEntry audit_support_containment(const RunSeries& s)
{
    // The 1e-12-relative contour of the leapfrog solution runs ahead of the
    // continuum front by a dispersive precursor of width ~ (k1 t)^(1/3) dx^(2/3)
    // (measured constant ~4, margin factor 6), on top of the 8 dx lattice
    // rounding used for the domain itself.
    double excess = -1e300;
    for (const SeriesPoint& p : s.points) {
        const double margin =
            8.0 * s.dx + 6.0 * std::cbrt(s.k1 * p.t) * std::pow(s.dx, 2.0 / 3.0);
        excess = std::max(excess, p.support_radius - (s.L + s.k1 * p.t + margin));
    }
    if (s.points.empty())
        excess = 0.0;
    return AuditEntry::bound("support-containment",
                             "supp u(t) inside B(L + k1 t) plus the scheme's precursor width",
                             excess, 0.0, 0.0);
}

double support_excess_fixed_margin(const RunSeries& s)
{
    double excess = -1e300;
    for (const SeriesPoint& p : s.points)
        excess = std::max(excess, p.support_radius - (s.L + s.k1 * p.t + 8.0 * s.dx));
    if (s.points.empty())
        excess = 0.0;
    return excess;
}

AuditEntry audit_morawetz(const RunSeries& s, const AuditTolerances& tol)
{
    double worst = 0.0;
    for (const SeriesPoint& p : s.points)
        worst = std::max(worst, std::abs(p.morawetz_residual));
    return AuditEntry::bound("morawetz-identity",
                             "t E + (1/2)(u_t,u) + (u_t,x.grad u) = J0 + (1/2) iint (x.grad K)|grad u|^2",
                             worst, tol.identity_residual, 0.0);
}

AuditEntry audit_weighted_exterior(const RunSeries& s, const AuditTolerances& tol)
{
    double lhs = 0.0;
    for (const SeriesPoint& p : s.points)
        lhs = std::max(lhs, p.weighted_ext);
    return AuditEntry::bound("weighted-exterior-energy",
                             "int_{|x|>=r0} psi e dx <= (1+r0) int (1+|x|) e(0) dx",
                             lhs, (1.0 + s.r0) * s.w0, tol.sim_slack);
}

AuditEntry audit_antiderivative(const RunSeries& s, const AuditTolerances& tol)
{
    const double half_u0 = 0.5 * s.norm_u0_l2 * s.norm_u0_l2;
    double worst = 0.0;
    for (const SeriesPoint& p : s.points) {
        const double rhs = half_u0 + p.v_source;
        const double denom = std::max(half_u0 + std::abs(p.v_source), 1e-14);
        worst = std::max(worst, std::abs(p.v_energy - rhs) / denom);
    }
    return AuditEntry::bound("antiderivative-identity",
                             "(1/2)||v_t||^2 + (1/2)||sqrt(K) grad v||^2 = (1/2)||u0||^2 + (u1, v)",
                             worst, tol.identity_residual, 0.0);
}

AuditEntry audit_l2_energy_bound(const RunSeries& s, double I_h, const RadialGradStore& store,
                                 const AuditTolerances& tol)
{
    const std::string name = "l2-potential-bound";
    const std::string anchor = "||u||^2 <= ||u0||^2 + (2/k_m) grad-h energy in B(2L + k1 t)";
    std::vector<AuditEntry> entries;
    const double u0sq = s.norm_u0_l2 * s.norm_u0_l2;
    for (const SeriesPoint& p : s.points) {
        const double rho = 2.0 * s.L + s.k1 * p.t;
        const double rhs = u0sq + (2.0 / s.k_m) * (I_h + store.cumulative(rho));
        entries.push_back(AuditEntry::bound(name, anchor, p.l2_norm * p.l2_norm, rhs, tol.sim_slack,
                                            1e-12 * (1.0 + u0sq)));
    }
    return worst_of(name, anchor, entries);
}

GrowthAudit audit_l2_growth(const RunSeries& s, const AuditTolerances& tol)
{
    const std::string name = "l2-growth-bound";
    const std::string anchor = "||u||^2 <= ||u0||^2 + (2/k_m)[64 pi L^4 |u1|_inf^2 + (2/pi)|u1|_1^2 log(2L+k1 t)]";
    std::vector<const SeriesPoint*> win;
    for (const SeriesPoint& p : s.points)
        if (p.t >= 10.0)
            win.push_back(&p);
    if (win.size() < 8)
        throw std::invalid_argument("growth audit: fewer than 8 samples with t >= 10");

    const double u0sq = s.norm_u0_l2 * s.norm_u0_l2;
    const double cap = 64.0 * std::numbers::pi * std::pow(s.L, 4) * s.norm_u1_linf * s.norm_u1_linf;
    std::vector<AuditEntry> entries;
    std::vector<double> xs, ys;
    for (const SeriesPoint* p : win) {
        const double rhs = u0sq + (2.0 / s.k_m) *
                                      (cap + (2.0 / std::numbers::pi) * s.norm_u1_l1 * s.norm_u1_l1 *
                                                 std::log(2.0 * s.L + s.k1 * p->t));
        entries.push_back(AuditEntry::bound(name, anchor, p->l2_norm * p->l2_norm, rhs, tol.sim_slack,
                                            1e-12 * (1.0 + u0sq)));
        xs.push_back(std::log(p->t));
        ys.push_back(p->l2_norm * p->l2_norm);
    }

    GrowthAudit out;
    out.entry = worst_of(name, anchor, entries);
    out.n_samples = static_cast<int>(win.size());
    // least squares y = a + b x
    const double nn = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double det = nn * sxx - sx * sx;
    out.b = (nn * sxy - sx * sy) / det;
    out.a = (sy - out.b * sx) / nn;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / nn;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double fit = out.a + out.b * xs[i];
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
    }
    out.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return out;
}

AuditEntry audit_time_weighted_energy(const RunSeries& s, const AuditTolerances& tol)
{
    const std::string name = "time-weighted-energy";
    const std::string anchor = "t E(t) <= J0 - (1/2)(u_t,u) - (u_t,x.grad u)";
    std::vector<AuditEntry> entries;
    for (const SeriesPoint& p : s.points) {
        const double lhs = p.t * p.E_total;
        const double rhs = s.j0 - 0.5 * p.cross_ut_u - p.cross_ut_xgradu;
        entries.push_back(AuditEntry::bound(name, anchor, lhs, rhs, tol.sim_slack,
                                            1e-9 * (1.0 + p.t * s.e0)));
    }
    return worst_of(name, anchor, entries);
}

double first_audited_time(const RunSeries& s)
{
    return std::max(s.R / std::sqrt(s.k_m) * (1.0 + 1e-12), kEuler);
}

ChainConstants chain_constants(const RunSeries& s, double t_min_audited)
{
    ChainConstants c;
    c.c1 = std::max(1.0, std::sqrt(128.0 * std::numbers::pi / s.k_m) * s.L * s.L);
    double ratio = 1.0;
    for (const SeriesPoint& p : s.points)
        if (p.t >= t_min_audited)
            ratio = std::max(ratio, std::log(2.0 * s.L + s.k1 * p.t) / std::log(p.t));
    c.c2 = std::sqrt(4.0 / (std::numbers::pi * s.k_m)) * std::sqrt(ratio);
    c.c3 = std::sqrt(2.0) * std::max(c.c1, c.c2);
    const double j0 = s.j0;
    const double head = c.c3 * std::sqrt(s.e0) * (s.norm_u0_l2 + s.norm_u1_linf + s.norm_u1_l1);
    const double tail = (1.0 + s.r0) / std::sqrt(s.k_m) * s.w0;
    c.A0 = [j0, head, tail](double t) { return j0 + head * std::sqrt(std::log(t)) + tail; };
    return c;
}

AuditEntry audit_energy_inequality(const RunSeries& s, double gamma, const AuditTolerances& tol)
{
    const std::string name = "local-energy-inequality";
    const std::string anchor = "(t - R/sqrt(k_m)) E_loc <= A0(t) + gamma int_0^t E_loc";
    const double t_min = first_audited_time(s);
    const ChainConstants c = chain_constants(s, t_min);
    const double shift = s.R / std::sqrt(s.k_m);
    std::vector<AuditEntry> entries;
    for (const SeriesPoint& p : s.points) {
        if (p.t < t_min)
            continue;
        const double lhs = (p.t - shift) * p.E_loc;
        const double rhs = c.A0(p.t) + gamma * p.int_e_loc;
        entries.push_back(AuditEntry::bound(name, anchor, lhs, rhs, tol.sim_slack,
                                            1e-9 * (1.0 + s.e0)));
    }
    if (entries.empty())
        throw std::invalid_argument("energy inequality audit: no samples beyond the audited onset");
    return worst_of(name, anchor, entries);
}

GronwallWindow gronwall_window(const RunSeries& s, double gamma, double t0_hint,
                               const AuditTolerances& tol)
{
    GronwallWindow out;
    const double shift = s.R / std::sqrt(s.k_m);
    out.t0 = t0_hint > 0.0 ? t0_hint : std::max(10.0 * shift, kEuler);

    std::vector<const SeriesPoint*> win;
    for (const SeriesPoint& p : s.points)
        if (p.t >= out.t0)
            win.push_back(&p);
    if (win.size() < 2)
        throw std::invalid_argument("gronwall window: needs at least two samples beyond t0");

    const ChainConstants c = chain_constants(s, out.t0);
    const std::string name = "gronwall-window";
    const std::string anchor = "w' <= A0(t) (t - R/sqrt(k_m))^(-gamma-1); E_loc <= C* t^(gamma-1) sqrt(log t)";

    std::vector<AuditEntry> entries;
    std::vector<double> interval_t;
    out.c_star = 0.0;
    for (std::size_t i = 0; i < win.size(); ++i) {
        const SeriesPoint& p = *win[i];
        out.c_star = std::max(out.c_star, p.E_loc * std::pow(p.t, 1.0 - gamma) / std::sqrt(std::log(p.t)));
        if (i + 1 < win.size()) {
            const SeriesPoint& q = *win[i + 1];
            const double wi = std::pow(p.t - shift, -gamma) * p.int_e_loc;
            const double wj = std::pow(q.t - shift, -gamma) * q.int_e_loc;
            const double bound = c.A0(q.t) * std::pow(p.t - shift, -gamma - 1.0) * (q.t - p.t);
            entries.push_back(AuditEntry::bound(name, anchor, wj - wi, bound, tol.sim_slack,
                                                1e-12 * (1.0 + std::abs(wi))));
            interval_t.push_back(p.t);
        }
    }
    out.w_audit_pass = true;
    std::size_t worst_i = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        out.w_audit_pass = out.w_audit_pass && entries[i].pass;
        if (entries[i].margin < entries[worst_i].margin)
            worst_i = i;
    }
    out.worst_interval_t = interval_t[worst_i];
    out.entry = worst_of(name, anchor, entries);
    return out;
}

} // namespace wavedecay
