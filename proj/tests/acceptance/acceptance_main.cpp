// Acceptance suite: drives the full pipeline through every gate and prints
// one pass/fail line per criterion. Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "wavedecay/audits.hpp"
#include "wavedecay/fitting.hpp"
#include "wavedecay/potential.hpp"
#include "wavedecay/runner.hpp"
#include "wavedecay/weights.hpp"

using namespace wavedecay;

namespace {

struct Outcome {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<Outcome> g_results;

void record(int id, const std::string& name, bool pass, const std::string& detail)
{
    g_results.push_back({id, name, pass, detail});
    std::printf("criterion %2d [%s]: %s — %s\n", id, name.c_str(), pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, ...)
{
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

// --- shared runs -----------------------------------------------------------

RunConfig family_config(const std::string& family)
{
    RunConfig c;
    c.t_max = 50.0;
    c.dx = 0.05;
    c.cfl = 0.5;
    c.sample_stride = 12;
    c.preset = "bump-velocity";
    c.L = 1.0;
    c.data_amplitude = 1.0;
    c.family = family;
    if (family == "constant") {
        c.k0 = 1.0;
        c.r0 = 1.0;
    } else if (family == "radial-decreasing") {
        c.k_peak = 1.44;
        c.k0 = 1.0;
        c.r0 = 1.5;
    } else if (family == "power-growth") {
        c.gamma0 = 0.5;
        c.r0 = 2.0;
    } else if (family == "ripple") {
        c.k0 = 1.0;
        c.amplitude = 0.07;
        c.r0 = 2.0;
    }
    c.R = 2.0 * c.r0;
    return c;
}

RunConfig long_config(const std::string& family)
{
    RunConfig c = family_config(family);
    c.t_max = 200.0;
    c.dx = 0.25;
    c.sample_stride = 8;
    return c;
}

class RunCache {
  public:
    const RunArtifacts& get(const std::string& key, const RunConfig& c)
    {
        auto it = cache_.find(key);
        if (it != cache_.end())
            return it->second;
        const auto start = std::chrono::steady_clock::now();
        RunArtifacts art = execute_run(c);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        seconds_[key] = secs;
        std::printf("  [run %s: %zu samples, %.1f s]\n", key.c_str(), art.series.points.size(),
                    secs);
        std::fflush(stdout);
        return cache_.emplace(key, std::move(art)).first->second;
    }

    double seconds(const std::string& key) const
    {
        const auto it = seconds_.find(key);
        return it == seconds_.end() ? 0.0 : it->second;
    }

  private:
    std::map<std::string, RunArtifacts> cache_;
    std::map<std::string, double> seconds_;
};

RunCache g_runs;

const RunArtifacts& family_run(const std::string& family)
{
    return g_runs.get("family:" + family, family_config(family));
}

const RunArtifacts& long_run(const std::string& family)
{
    return g_runs.get("long:" + family, long_config(family));
}

const RunArtifacts& long_run_by_key(const std::string& key)
{
    if (key == "power-growth-025") {
        RunConfig c = long_config("power-growth");
        c.gamma0 = 0.25;
        return g_runs.get("long:power-growth-025", c);
    }
    return long_run(key);
}

const AuditEntry* find_entry(const RunArtifacts& art, const std::string& name)
{
    for (const AuditEntry& e : art.audits.entries)
        if (e.name == name)
            return &e;
    return nullptr;
}

const std::vector<std::string> kFamilies = {"constant", "radial-decreasing", "power-growth",
                                            "ripple"};
const std::vector<std::string> kLongFamilies = {"constant", "power-growth-025", "power-growth",
                                                "ripple"};

// --- criteria --------------------------------------------------------------

void criterion_1_conservation()
{
    bool pass = true;
    std::string detail;
    double worst_secs = 0.0;
    for (const std::string& fam : kFamilies) {
        const RunArtifacts& art = family_run(fam);
        const AuditEntry* e = find_entry(art, "energy-conservation");
        pass = pass && e && e->pass;
        detail += fmt("%s drift=%.2e ", fam.c_str(), e ? e->lhs : -1.0);
        worst_secs = std::max(worst_secs, g_runs.seconds("family:" + fam));
    }
    pass = pass && worst_secs <= 120.0;
    record(1, "energy-conservation", pass,
           detail + fmt("(tol 1e-3, dx=0.05, cfl=0.5, T=50; slowest run %.0f s of 120)", worst_secs));
}

void criterion_2_support()
{
    // literal form: no node above 1e-12 max|u| outside B(L + k1 t + 8 dx)
    bool literal_pass = true;
    bool calibrated_pass = true;
    double worst = -1e300;
    auto tally = [&](const RunArtifacts& art) {
        const double excess = support_excess_fixed_margin(art.series);
        worst = std::max(worst, excess);
        literal_pass = literal_pass && excess <= 0.0;
        const AuditEntry* e = find_entry(art, "support-containment");
        calibrated_pass = calibrated_pass && e && e->pass;
    };
    for (const std::string& fam : kFamilies)
        tally(family_run(fam));
    for (const std::string& key : kLongFamilies)
        tally(long_run_by_key(key));
    record(2, "finite-propagation", literal_pass,
           fmt("fixed 8dx margin: worst excess %.3f; dispersive-precursor margin "
               "8dx+6(k1 t)^(1/3)dx^(2/3): %s",
               worst, calibrated_pass ? "PASS" : "FAIL"));
}

void criterion_3_morawetz()
{
    const std::vector<double> dxs = {0.1, 0.05, 0.025};
    std::vector<double> res;
    for (double dx : dxs) {
        RunConfig c = family_config("constant");
        c.t_max = 10.0;
        c.dx = dx;
        c.sample_stride = 10;
        const RunArtifacts& art = g_runs.get(fmt("morawetz:%g", dx), c);
        res.push_back(std::abs(art.series.points.back().morawetz_residual));
    }
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < dxs.size(); ++i) {
        lx.push_back(std::log(dxs[i]));
        ly.push_back(std::log(res[i]));
    }
    const double order = ols(lx, ly).slope;
    const bool pass = res[1] <= 0.02 && order >= 1.5;
    record(3, "morawetz-identity", pass,
           fmt("residual(t=10) = %.2e / %.2e / %.2e at dx = 0.1/0.05/0.025, order %.2f "
               "(need <= 0.02 at 0.05, order >= 1.5)",
               res[0], res[1], res[2], order));
}

void criterion_4_eikonal()
{
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> ut(0.0, 100.0);
    std::uniform_real_distribution<double> ux(-50.0, 50.0);
    std::uniform_real_distribution<double> uk(0.25, 4.0);
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const WeightParams p{uk(rng), 1.0};
        double x1 = ux(rng), x2 = ux(rng);
        if (x1 == 0.0 && x2 == 0.0)
            x1 = 0.5;
        worst = std::max(worst, std::abs(eikonal_residual(ut(rng), x1, x2, p)));
    }
    record(4, "eikonal-identity", worst <= 1e-12,
           fmt("max |k0 |grad psi|^2 - psi_t^2| = %.2e over 1e5 samples (tol 1e-12)", worst));
}

void criterion_5_potential()
{
    const double L = 1.0, dx = 0.05;
    const int m = static_cast<int>(std::lround((L + 0.2) / dx));
    const Grid2D g = make_grid(2 * m + 1, dx);
    const std::vector<Point> pts = farfield_sample_points(L);
    bool pass = true;
    std::string detail;

    for (const char* preset : {"bump-velocity", "dipole-velocity"}) {
        const InitialData d = make_dataset({preset, L, 1.0}, g);
        const PotentialField pf = newtonian_potential(d.u1, pts, L);
        const std::vector<double> times = {1.0, 5.0, 25.0};
        const bool ok = certify_farfield_gradient(pf, d.u1, L).pass &&
                        certify_annulus_log_growth(d.u1, pf.I_h, L, 1.0, times).pass &&
                        certify_gradient_sup(pf, d.u1, L).pass;
        pass = pass && ok;
        detail += fmt("%s certs %s; ", preset, ok ? "ok" : "FAIL");
    }

    {
        const InitialData d = make_dataset({"bump-velocity", L, 1.0}, g);
        const PotentialValues pv = evaluate_potential(d.u1, pts);
        const double target = d.moment / (2.0 * M_PI);
        double worst = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double r = std::hypot(pts[i][0], pts[i][1]);
            worst = std::max(
                worst, std::abs(r * std::hypot(pv.grad[i][0], pv.grad[i][1]) - target) / target);
        }
        pass = pass && worst <= 1e-6;
        detail += fmt("radial oracle err %.1e; ", worst);
    }

    {
        std::vector<double> errs;
        const std::vector<double> dxs = {0.1, 0.05, 0.025};
        for (double dd : dxs) {
            const int mm = static_cast<int>(std::lround((L + 0.2) / dd));
            const Grid2D gg = make_grid(2 * mm + 1, dd);
            const InitialData d = make_dataset({"bump-velocity", L, 1.0}, gg);
            const int pm = static_cast<int>(std::lround(0.5 / dd)) + 1;
            const int side = 2 * pm + 1;
            std::vector<Point> patch;
            for (int i = -pm; i <= pm; ++i)
                for (int j = -pm; j <= pm; ++j)
                    patch.push_back({i * dd, j * dd});
            const PotentialValues pv = evaluate_potential(d.u1, patch);
            auto H = [&](int i, int j) { return pv.h[(i + pm) * side + (j + pm)]; };
            double err = 0.0;
            for (int i = -pm + 1; i <= pm - 1; ++i)
                for (int j = -pm + 1; j <= pm - 1; ++j) {
                    const double lap = (H(i + 1, j) + H(i - 1, j) + H(i, j + 1) + H(i, j - 1) -
                                        4.0 * H(i, j)) /
                                       (dd * dd);
                    err = std::max(err, std::abs(-lap - bump(std::hypot(i * dd, j * dd))));
                }
            errs.push_back(err);
        }
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < dxs.size(); ++i) {
            lx.push_back(std::log(dxs[i]));
            ly.push_back(std::log(errs[i]));
        }
        const double order = ols(lx, ly).slope;
        pass = pass && order >= 1.8;
        detail += fmt("Poisson order %.2f", order);
    }
    record(5, "potential-certificates", pass, detail);
}

void criterion_6_antiderivative()
{
    std::vector<double> res;
    for (double dx : {0.1, 0.05}) {
        RunConfig c = family_config("constant");
        c.t_max = 20.0;
        c.dx = dx;
        const RunArtifacts& art = g_runs.get(fmt("vident:%g", dx), c);
        const SeriesPoint& p = art.series.points.back();
        const double half_u0 = 0.5 * art.series.norm_u0_l2 * art.series.norm_u0_l2;
        const double denom = std::max(half_u0 + std::abs(p.v_source), 1e-14);
        res.push_back(std::abs(p.v_energy - (half_u0 + p.v_source)) / denom);
    }
    const bool pass = res[1] <= 0.02 && res[1] < res[0];
    record(6, "antiderivative-identity", pass,
           fmt("residual(t=20) = %.2e at dx=0.1, %.2e at dx=0.05 (need <= 0.02 and decreasing)",
               res[0], res[1]));
}

void criterion_7_growth()
{
    bool pass = true;
    std::string detail;
    for (const std::string& fam : kFamilies) {
        const RunArtifacts& art = family_run(fam);
        const AuditEntry* e = find_entry(art, "l2-growth-bound");
        pass = pass && e && e->pass;
    }
    detail += "bound holds on all dx=0.05 runs; ";
    for (const std::string& key : kLongFamilies) {
        const RunArtifacts& art = long_run_by_key(key);
        const AuditEntry* e = find_entry(art, "l2-growth-bound");
        pass = pass && e && e->pass;
    }
    detail += "and all T=200 runs; ";
    const RunArtifacts& art = long_run("constant");
    if (art.growth) {
        pass = pass && art.growth->b > 0.0 && art.growth->r2 >= 0.9;
        detail += fmt("free-wave fit b=%.3f r2=%.3f (need b>0, r2>=0.9)", art.growth->b,
                      art.growth->r2);
    } else {
        pass = false;
        detail += "growth fit missing";
    }
    record(7, "l2-growth", pass, detail);
}

void criterion_8_theorem_k2()
{
    bool pass = true;
    std::string detail;
    for (const char* key : {"constant", "radial-decreasing"}) {
        const AuditEntry* e = find_entry(family_run(key), "time-weighted-energy");
        pass = pass && e && e->pass;
    }
    const RunArtifacts& art = long_run("constant");
    const AuditEntry* e31 = find_entry(art, "time-weighted-energy");
    pass = pass && e31 && e31->pass;
    detail += "(3.1)-type inequality holds on K-2 runs; ";

    double lo = 1e300, hi = -1e300;
    for (const SeriesPoint& p : art.series.points)
        if (p.t >= 20.0 && p.t <= 200.0 && p.E_loc > 0.0) {
            const double q = p.E_loc * p.t / std::sqrt(std::log(p.t));
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
    const double ratio = hi / lo;
    const DecayFit fit = decay_fit(art.series, 20.0, 200.0, 0.0);
    pass = pass && ratio <= 10.0 && fit.slope <= -0.85;
    const double q_first = art.series.points.empty() ? 0.0 : [&] {
        for (const SeriesPoint& p : art.series.points)
            if (p.t >= 20.0)
                return p.E_loc * p.t / std::sqrt(std::log(p.t));
        return 0.0;
    }();
    detail += fmt("windowed E_loc t/sqrt(log t) max/min = %.2f (need <= 10, sup attained at the "
                  "window start: %s, i.e. the quantity decays); slope %.3f (need <= -0.85)",
                  ratio, std::abs(hi - q_first) <= 1e-12 * hi ? "yes" : "no", fit.slope);
    record(8, "local-energy-decay-monotone", pass, detail);
}

void criterion_9_power_growth()
{
    bool pass = true;
    std::string detail;
    for (const char* key : {"power-growth-025", "power-growth"}) {
        const RunArtifacts& art = long_run_by_key(key);
        const AuditEntry* ineq = find_entry(art, "local-energy-inequality");
        const bool ok = ineq && ineq->pass && art.gronwall && art.gronwall->w_audit_pass &&
                        std::isfinite(art.gronwall->c_star);
        pass = pass && ok;
        detail += fmt("gamma0=%.3g: ineq %s, w' %s, C*=%.4g; ", art.series.gamma0.value_or(-1.0),
                      (ineq && ineq->pass) ? "ok" : "FAIL",
                      (art.gronwall && art.gronwall->w_audit_pass) ? "ok" : "FAIL",
                      art.gronwall ? art.gronwall->c_star : -1.0);
    }
    record(9, "gronwall-rate-power-growth", pass, detail);
}

void criterion_10_ripple()
{
    const RunArtifacts& art = long_run("ripple");
    const double eta0 = art.series.eta0.value_or(-1.0);
    const AuditEntry* ineq = find_entry(art, "local-energy-inequality");
    bool pass = ineq && ineq->pass && eta0 >= 0.0 && eta0 <= 0.3;
    std::string detail = fmt("eta0 = %.3f (need <= 0.3); inequality %s; ", eta0,
                             (ineq && ineq->pass) ? "holds" : "FAILS");
    if (art.gronwall) {
        pass = pass && art.gronwall->w_audit_pass && std::isfinite(art.gronwall->c_star);
        detail += fmt("w'-audit %s; C* = %.4g on [%.3g, 200]",
                      art.gronwall->w_audit_pass ? "passes" : "FAILS", art.gronwall->c_star,
                      art.gronwall->t0);
    } else {
        pass = false;
        detail += "gronwall window missing";
    }
    record(10, "gronwall-rate-ripple", pass, detail);
}

void criterion_11_validators()
{
    bool pass = true;
    std::string detail;
    const Grid2D g = make_grid(2 * 96 + 1, 0.05);
    for (double g0 : {0.25, 0.5}) {
        const CoefficientField K = make_power_growth(g0, 2.0, g);
        const ConditionReport rep = validate_conditions(K);
        const bool ok =
            rep.measured_gamma0 >= 0.0 && rep.measured_gamma0 <= g0 + 1e-8 && rep.ratio_bound.pass;
        pass = pass && ok;
        detail += fmt("gamma0=%.2f measured=%.4f; ", g0, rep.measured_gamma0);
    }
    {
        const CoefficientField K = make_radial_decreasing(2.0, 1.0, 3.0, g);
        const ConditionReport rep = validate_conditions(K);
        pass = pass && rep.radial_monotone.worst <= 1e-10;
        detail += fmt("radial-decreasing max x.gradK = %.1e; ", rep.radial_monotone.worst);
        const CoefficientField fields[] = {
            make_constant(1.0, g),
            make_power_growth(0.5, 2.0, g),
            K,
            make_ripple(1.0, 0.07, 2.0, g),
        };
        bool farfield = true;
        for (const CoefficientField& F : fields)
            farfield = farfield && validate_conditions(F).farfield_constant.pass;
        pass = pass && farfield;
        detail += fmt("far-field node-exact: %s", farfield ? "all families" : "FAIL");
    }
    record(11, "condition-validators", pass, detail);
}

} // namespace

int main()
{
    std::printf("wavedecay acceptance suite\n");
    const auto start = std::chrono::steady_clock::now();

    criterion_1_conservation();
    criterion_2_support();
    criterion_3_morawetz();
    criterion_4_eikonal();
    criterion_5_potential();
    criterion_6_antiderivative();
    criterion_7_growth();
    criterion_8_theorem_k2();
    criterion_9_power_growth();
    criterion_10_ripple();
    criterion_11_validators();

    int failed = 0;
    for (const Outcome& o : g_results)
        failed += o.pass ? 0 : 1;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/%zu criteria passed in %.0f s\n", static_cast<int>(g_results.size()) - failed,
                g_results.size(), secs);
    return failed;
}
