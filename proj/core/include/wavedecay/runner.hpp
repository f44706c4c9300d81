#ifndef WAVEDECAY_RUNNER_HPP
#define WAVEDECAY_RUNNER_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wavedecay/audits.hpp"
#include "wavedecay/config.hpp"
#include "wavedecay/fitting.hpp"

namespace wavedecay {

/// Everything one experiment produces, before any file is written.
struct RunArtifacts {
    RunSeries series;
    AuditReport audits;
    ConditionReport conditions;
    std::optional<GrowthAudit> growth;
    std::optional<GronwallWindow> gronwall;
    std::optional<DecayFit> fit;
    std::vector<std::string> skipped;  // enabled audits not applicable to this run
    double I_h = 0.0;
    int exit_code = 0;  // 0 all audits pass, 2 an audit failed
};

RunArtifacts execute_run(const RunConfig& config);

/// run subcommand: writes series.csv, audits.csv, report.txt into outdir.
/// Exit 0 when every audit passes, 2 on an audit failure, 1 on a runtime error.
int cmd_run(const RunConfig& config, const std::string& outdir);

/// sweep subcommand: one run directory per value plus summary.csv. Runs are
/// independent; parallelism is capped by WAVEDECAY_THREADS (default 1).
int cmd_sweep(const RunConfig& config, const std::string& param,
              const std::vector<std::string>& values, const std::string& outdir);

/// certify-potential subcommand: the three potential certificates without a
/// PDE run.
int cmd_certify_potential(const RunConfig& config, const std::string& outdir);

/// fit subcommand: decay-rate fit of a recorded series.csv over a window.
int cmd_fit(const std::string& csv_path, double t_a, double t_b, double gamma, std::ostream& out);

} // namespace wavedecay

#endif
