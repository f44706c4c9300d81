#ifndef WAVEDECAY_CONFIG_HPP
#define WAVEDECAY_CONFIG_HPP

#include <set>
#include <stdexcept>
#include <string>

namespace wavedecay {

struct ConfigError : std::runtime_error {
    ConfigError(const std::string& msg, const std::string& key, int line);
    std::string key;
    int line;
};

/// Parsed experiment configuration. Text format: `key = value` lines under
/// [solver], [coefficient], [data] and [audits] sections, with # comments.
struct RunConfig {
    // [solver]
    double t_max = 50.0;
    double dx = 0.05;
    double cfl = 0.5;
    int sample_stride = 10;
    double R = -1.0;  // default 2 r0, resolved at parse time
    int max_nodes_per_side = 5001;

    // [coefficient]
    std::string family = "constant";
    double k0 = 1.0;
    double gamma0 = 0.0;
    double r0 = 1.0;
    double k_peak = 2.0;
    double amplitude = 0.25;

    // [data]
    std::string preset = "bump-velocity";
    double L = 1.0;
    double data_amplitude = 1.0;

    // [audits]
    std::set<std::string> audits;  // empty means all applicable
    double fit_t_a = -1.0;         // default max(10, 0.1 t_max)
    double fit_t_b = -1.0;         // default t_max
    double gronwall_t0 = -1.0;     // default 10 R / sqrt(k_m)

    bool operator==(const RunConfig&) const = default;

    bool audit_enabled(const std::string& name) const
    {
        return audits.empty() || audits.count(name) > 0;
    }
};

extern const std::set<std::string> kKnownAudits;

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize(const RunConfig& c);

} // namespace wavedecay

#endif
