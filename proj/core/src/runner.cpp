#include "wavedecay/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "wavedecay/csv.hpp"
#include "wavedecay/potential.hpp"
#include "wavedecay/solver.hpp"

namespace fs = std::filesystem;

namespace wavedecay {

namespace {

CoefficientField build_coefficient(const RunConfig& c, const Grid2D& grid)
{
    if (c.family == "power-growth")
        return make_power_growth(c.gamma0, c.r0, grid);
    return sample_on_grid(profile_by_family(c.family, c.k0, c.gamma0, c.k_peak, c.amplitude, c.r0),
                          grid);
}

void print_entry(std::ostream& os, const AuditEntry& e)
{
    os << "  " << e.name << " [" << e.anchor << "] lhs=" << format_number(e.lhs)
       << " rhs=" << format_number(e.rhs) << " margin=" << format_number(e.margin) << ' '
       << (e.pass ? "PASS" : "FAIL") << '\n';
}

void print_condition(std::ostream& os, const char* name, const ConditionCheck& c)
{
    os << "  " << name << ' ' << (c.pass ? "PASS" : "FAIL") << " (worst " << format_number(c.worst)
       << ")\n";
}

void write_report(const std::string& path, const RunConfig& c, const RunArtifacts& art)
{
    std::ofstream os(path);
    const RunSeries& s = art.series;
    os << "wavedecay run report\n";
    os << "config: family=" << c.family << " preset=" << c.preset << " dx=" << format_number(c.dx)
       << " cfl=" << format_number(c.cfl) << " t_max=" << format_number(c.t_max)
       << " R=" << format_number(s.R) << " stride=" << c.sample_stride << '\n';
    os << "coefficient: k_m=" << format_number(s.k_m) << " k0=" << format_number(s.k0)
       << " k1=" << format_number(s.k1) << " r0=" << format_number(s.r0);
    if (s.gamma0)
        os << " gamma0=" << format_number(*s.gamma0);
    if (s.eta0)
        os << " eta0=" << format_number(*s.eta0);
    os << '\n';
    os << "data: L=" << format_number(s.L) << " |u0|=" << format_number(s.norm_u0_l2)
       << " |u1|_1=" << format_number(s.norm_u1_l1) << " |u1|_inf=" << format_number(s.norm_u1_linf)
       << " moment=" << format_number(s.moment) << '\n';
    os << "initial: E0=" << format_number(s.e0) << " J0=" << format_number(s.j0)
       << " W0=" << format_number(s.w0) << " I_h=" << format_number(art.I_h) << '\n';
    os << "samples: " << s.points.size() << '\n';
    os << "conditions:\n";
    print_condition(os, "ellipticity       ", art.conditions.ellipticity);
    print_condition(os, "radial-monotone   ", art.conditions.radial_monotone);
    print_condition(os, "farfield-constant ", art.conditions.farfield_constant);
    print_condition(os, "ratio-bound       ", art.conditions.ratio_bound);
    print_condition(os, "gradient-bound    ", art.conditions.gradient_bound);
    os << "  measured_gamma0=" << format_number(art.conditions.measured_gamma0)
       << " measured_lip=" << format_number(art.conditions.measured_lip) << '\n';
    os << "audits:\n";
    for (const AuditEntry& e : art.audits.entries)
        print_entry(os, e);
    for (const std::string& name : art.skipped)
        os << "  " << name << " skipped (not applicable to this run)\n";
    if (art.growth)
        os << "growth fit: a=" << format_number(art.growth->a) << " b=" << format_number(art.growth->b)
           << " r2=" << format_number(art.growth->r2) << " n=" << art.growth->n_samples << '\n';
    if (art.gronwall)
        os << "gronwall: C*=" << format_number(art.gronwall->c_star)
           << " t0=" << format_number(art.gronwall->t0) << " w-audit "
           << (art.gronwall->w_audit_pass ? "PASS" : "FAIL") << '\n';
    if (art.fit)
        os << "decay fit: slope=" << format_number(art.fit->slope)
           << " prefactor=" << format_number(art.fit->prefactor) << " best=" << art.fit->best_model
           << " rms[t^-1]=" << format_number(art.fit->rms_t1)
           << " rms[t^-1 sqrt(log t)]=" << format_number(art.fit->rms_t1_sqrtlog)
           << " rms[t^(g-1) sqrt(log t)]=" << format_number(art.fit->rms_gamma_sqrtlog)
           << " used=" << art.fit->used << " excluded=" << art.fit->excluded << '\n';
    os << "exit: " << art.exit_code << '\n';
}

int sweep_threads()
{
    const char* env = std::getenv("WAVEDECAY_THREADS");
    if (!env)
        return 1;
    const int n = std::atoi(env);
    return n > 0 ? n : 1;
}

} // namespace

RunArtifacts execute_run(const RunConfig& c)
{
    RunArtifacts art;

    const RadialCoefficient profile =
        profile_by_family(c.family, c.k0, c.gamma0, c.k_peak, c.amplitude, c.r0);
    const Grid2D grid =
        domain_grid(c.L, profile.k1, c.t_max, c.dx, c.max_nodes_per_side, c.R + 2.0 * c.dx);
    const CoefficientField K = build_coefficient(c, grid);
    const InitialData data = make_dataset(DataSpec{c.preset, c.L, c.data_amplitude}, grid);
    art.conditions = validate_conditions(K);

    Sampler sampler(K, data, c.R);
    const double dt = cfl_timestep(c.dx, K.k1(), c.cfl);
    if (c.t_max < dt) {
        sampler.append_initial_record();
    } else {
        WaveState state = first_step(data, K, dt);
        run(state, K, dt, c.t_max, c.sample_stride, sampler);
    }
    art.series = sampler.take_series();
    const RunSeries& s = art.series;

    // potential-side quantities for the solution-size bounds
    RadialGradStore store;
    if (c.audit_enabled("l2-bound")) {
        const std::vector<Point> origin = {{0.0, 0.0}};
        const PotentialField pf = newtonian_potential(data.u1, origin, data.L);
        art.I_h = pf.I_h;
        store = RadialGradStore(data.u1, data.L, 2.0 * data.L + s.k1 * c.t_max + 1.0);
    }

    auto add = [&](const AuditEntry& e) { art.audits.entries.push_back(e); };
    auto skip = [&](const std::string& name) { art.skipped.push_back(name); };

    if (c.audit_enabled("conservation"))
        add(audit_energy_conservation(s));
    if (c.audit_enabled("support"))
        add(audit_support_containment(s));
    if (c.audit_enabled("morawetz"))
        add(audit_morawetz(s));
    if (c.audit_enabled("weighted-exterior"))
        add(audit_weighted_exterior(s));
    if (c.audit_enabled("antiderivative"))
        add(audit_antiderivative(s));
    if (c.audit_enabled("l2-bound"))
        add(audit_l2_energy_bound(s, art.I_h, store));
    if (c.audit_enabled("growth")) {
        try {
            GrowthAudit g = audit_l2_growth(s);
            add(g.entry);
            art.growth = g;
        } catch (const std::invalid_argument&) {
            skip("growth");
        }
    }
    if (c.audit_enabled("time-weighted")) {
        if (art.conditions.radial_monotone.pass)
            add(audit_time_weighted_energy(s));
        else
            skip("time-weighted");
    }
    const std::optional<double> gamma = s.eta0 ? s.eta0 : s.gamma0;
    if (c.audit_enabled("energy-inequality")) {
        if (gamma) {
            try {
                add(audit_energy_inequality(s, *gamma));
            } catch (const std::invalid_argument&) {
                skip("energy-inequality");
            }
        } else {
            skip("energy-inequality");
        }
    }
    if (c.audit_enabled("gronwall")) {
        if (gamma) {
            try {
                GronwallWindow gw = gronwall_window(s, *gamma, c.gronwall_t0);
                add(gw.entry);
                art.gronwall = gw;
            } catch (const std::invalid_argument&) {
                skip("gronwall");
            }
        } else {
            skip("gronwall");
        }
    }
    if (c.audit_enabled("decay-fit")) {
        const double ta = c.fit_t_a > 0.0 ? c.fit_t_a : std::max(10.0, 0.1 * c.t_max);
        const double tb = c.fit_t_b > 0.0 ? c.fit_t_b : c.t_max;
        try {
            art.fit = decay_fit(s, ta, tb, gamma.value_or(0.0));
        } catch (const std::invalid_argument&) {
            skip("decay-fit");
        }
    }

    art.exit_code = art.audits.all_pass() ? 0 : 2;
    return art;
}

int cmd_run(const RunConfig& config, const std::string& outdir)
{
    try {
        fs::create_directories(outdir);
        const RunArtifacts art = execute_run(config);
        write_series_csv((fs::path(outdir) / "series.csv").string(), art.series);
        write_audits_csv((fs::path(outdir) / "audits.csv").string(), art.audits);
        write_report((fs::path(outdir) / "report.txt").string(), config, art);
        return art.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_sweep(const RunConfig& config, const std::string& param,
              const std::vector<std::string>& values, const std::string& outdir)
{
    try {
        if (values.empty())
            throw std::invalid_argument("sweep: no values given");
        fs::create_directories(outdir);

        struct Row {
            std::string value;
            double slope = std::nan("");
            double c_star = std::nan("");
            bool all_pass = false;
            int exit_code = 1;
        };
        std::vector<Row> rows(values.size());
        std::vector<RunConfig> configs(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            RunConfig cc = config;
            const double v = std::strtod(values[i].c_str(), nullptr);
            if (param == "gamma0")
                cc.gamma0 = v;
            else if (param == "k0")
                cc.k0 = v;
            else if (param == "r0")
                cc.r0 = v;
            else if (param == "k_peak")
                cc.k_peak = v;
            else if (param == "amplitude")
                cc.amplitude = v;
            else if (param == "dx")
                cc.dx = v;
            else if (param == "cfl")
                cc.cfl = v;
            else if (param == "t_max")
                cc.t_max = v;
            else if (param == "R")
                cc.R = v;
            else if (param == "L")
                cc.L = v;
            else
                throw std::invalid_argument("sweep: unknown parameter '" + param + "'");
            configs[i] = cc;
        }

        const int workers = std::min<int>(sweep_threads(), static_cast<int>(values.size()));
        std::atomic<std::size_t> next{0};
        auto work = [&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= values.size())
                    return;
                const std::string dir = (fs::path(outdir) / (param + "=" + values[i])).string();
                rows[i].value = values[i];
                rows[i].exit_code = cmd_run(configs[i], dir);
                rows[i].all_pass = rows[i].exit_code == 0;
                try {
                    const CsvTable audits = read_csv((fs::path(dir) / "audits.csv").string());
                    (void)audits;
                    std::ifstream rep(fs::path(dir) / "report.txt");
                    std::string line;
                    while (std::getline(rep, line)) {
                        std::istringstream ls(line);
                        std::string head;
                        ls >> head;
                        if (head == "decay") {
                            const auto pos = line.find("slope=");
                            if (pos != std::string::npos)
                                rows[i].slope = std::strtod(line.c_str() + pos + 6, nullptr);
                        } else if (head == "gronwall:") {
                            const auto pos = line.find("C*=");
                            if (pos != std::string::npos)
                                rows[i].c_star = std::strtod(line.c_str() + pos + 3, nullptr);
                        }
                    }
                } catch (const std::exception&) {
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 1; w < workers; ++w)
            pool.emplace_back(work);
        work();
        for (std::thread& th : pool)
            th.join();

        std::ofstream sum(fs::path(outdir) / "summary.csv");
        sum << "param,value,fitted_slope,c_star,all_pass\n";
        int rc = 0;
        for (const Row& r : rows) {
            sum << param << ',' << r.value << ',' << format_number(r.slope) << ','
                << format_number(r.c_star) << ',' << (r.all_pass ? "true" : "false") << '\n';
            rc = std::max(rc, r.exit_code);
        }
        return rc;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_certify_potential(const RunConfig& c, const std::string& outdir)
{
    try {
        fs::create_directories(outdir);
        const RadialCoefficient profile =
            profile_by_family(c.family, c.k0, c.gamma0, c.k_peak, c.amplitude, c.r0);
        const Grid2D grid = domain_grid(c.L, profile.k1, 0.0, c.dx, c.max_nodes_per_side);
        const InitialData data = make_dataset(DataSpec{c.preset, c.L, c.data_amplitude}, grid);

        const std::vector<Point> pts = farfield_sample_points(c.L);
        const PotentialField pf = newtonian_potential(data.u1, pts, c.L);
        const std::vector<double> times = {1.0, 5.0, 25.0};

        AuditReport report;
        report.entries.push_back(certify_farfield_gradient(pf, data.u1, c.L));
        report.entries.push_back(
            certify_annulus_log_growth(data.u1, pf.I_h, c.L, profile.k1, times));
        report.entries.push_back(certify_gradient_sup(pf, data.u1, c.L));
        write_audits_csv((fs::path(outdir) / "audits.csv").string(), report);

        std::ofstream os(fs::path(outdir) / "report.txt");
        os << "wavedecay potential certificates\n";
        os << "data: preset=" << c.preset << " L=" << format_number(c.L)
           << " amplitude=" << format_number(c.data_amplitude)
           << " |u1|_1=" << format_number(norm_l1(data.u1))
           << " |u1|_inf=" << format_number(max_abs(data.u1))
           << " moment=" << format_number(data.moment) << '\n';
        os << "I_h=" << format_number(pf.I_h) << " sup|grad h| on B(2L)=" << format_number(pf.sup_grad_2L)
           << '\n';
        os << "audits:\n";
        for (const AuditEntry& e : report.entries)
            print_entry(os, e);
        const int rc = report.all_pass() ? 0 : 2;
        os << "exit: " << rc << '\n';
        return rc;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_fit(const std::string& csv_path, double t_a, double t_b, double gamma, std::ostream& out)
{
    try {
        const CsvTable table = read_csv(csv_path);
        const int ct = table.column("t");
        const int ce = table.column("E_loc");
        if (ct < 0 || ce < 0)
            throw std::runtime_error("fit: series file lacks t/E_loc columns");
        std::vector<double> t, e;
        for (const auto& row : table.rows) {
            t.push_back(row[ct]);
            e.push_back(row[ce]);
        }
        if (t.empty())
            throw std::runtime_error("fit: empty series");
        if (t_a <= 0.0)
            t_a = std::max(1.0 + 1e-9, t.front());
        if (t_b <= 0.0)
            t_b = t.back();
        const DecayFit f = decay_fit_points(t, e, t_a, t_b, gamma);
        out << "window [" << format_number(t_a) << ", " << format_number(t_b) << "] used=" << f.used
            << " excluded=" << f.excluded << '\n';
        out << "slope=" << format_number(f.slope) << " r2=" << format_number(f.r2)
            << " prefactor=" << format_number(f.prefactor) << '\n';
        out << "rms[t^-1]=" << format_number(f.rms_t1) << " rms[t^-1 sqrt(log t)]="
            << format_number(f.rms_t1_sqrtlog) << " rms[t^(g-1) sqrt(log t)]="
            << format_number(f.rms_gamma_sqrtlog) << '\n';
        out << "best=" << f.best_model << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace wavedecay
