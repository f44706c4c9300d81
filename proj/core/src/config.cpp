#include "wavedecay/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wavedecay {

const std::set<std::string> kKnownAudits = {
    "conservation",   "support",      "morawetz",          "weighted-exterior",
    "antiderivative", "l2-bound",     "growth",            "time-weighted",
    "energy-inequality", "gronwall",  "decay-fit",
};

namespace {

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& msg, const std::string& key, int line)
{
    throw ConfigError(msg, key, line);
}

double parse_double(const std::string& v, const std::string& key, int line)
{
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size())
            fail("value '" + v + "' is not a number", key, line);
        return x;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail("value '" + v + "' is not a number", key, line);
    }
}

int parse_int(const std::string& v, const std::string& key, int line)
{
    int x = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        fail("value '" + v + "' is not an integer", key, line);
    return x;
}

} // namespace

ConfigError::ConfigError(const std::string& msg, const std::string& key, int line)
    : std::runtime_error("config: " + msg + (key.empty() ? "" : " (key '" + key + "'") +
                         (key.empty() ? "" : ", line " + std::to_string(line) + ")")),
      key(key),
      line(line)
{
}

RunConfig parse_config(const std::string& text)
{
    RunConfig c;
    bool r_set = false;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail("malformed section header '" + line + "'", "", lineno);
            section = line.substr(1, line.size() - 2);
            if (section != "solver" && section != "coefficient" && section != "data" && section != "audits")
                fail("unknown section '" + section + "'", section, lineno);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail("expected 'key = value'", "", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            fail("expected 'key = value'", key, lineno);

        if (section == "solver") {
            if (key == "t_max")
                c.t_max = parse_double(value, key, lineno);
            else if (key == "dx")
                c.dx = parse_double(value, key, lineno);
            else if (key == "cfl")
                c.cfl = parse_double(value, key, lineno);
            else if (key == "sample_stride")
                c.sample_stride = parse_int(value, key, lineno);
            else if (key == "R") {
                c.R = parse_double(value, key, lineno);
                r_set = true;
            } else if (key == "max_nodes_per_side")
                c.max_nodes_per_side = parse_int(value, key, lineno);
            else
                fail("unknown key '" + key + "' in [solver]", key, lineno);
        } else if (section == "coefficient") {
            if (key == "family")
                c.family = value;
            else if (key == "k0")
                c.k0 = parse_double(value, key, lineno);
            else if (key == "gamma0")
                c.gamma0 = parse_double(value, key, lineno);
            else if (key == "r0")
                c.r0 = parse_double(value, key, lineno);
            else if (key == "k_peak")
                c.k_peak = parse_double(value, key, lineno);
            else if (key == "amplitude")
                c.amplitude = parse_double(value, key, lineno);
            else
                fail("unknown key '" + key + "' in [coefficient]", key, lineno);
        } else if (section == "data") {
            if (key == "preset")
                c.preset = value;
            else if (key == "L")
                c.L = parse_double(value, key, lineno);
            else if (key == "amplitude")
                c.data_amplitude = parse_double(value, key, lineno);
            else
                fail("unknown key '" + key + "' in [data]", key, lineno);
        } else if (section == "audits") {
            if (key == "enable") {
                if (value != "all") {
                    std::istringstream items(value);
                    std::string item;
                    while (std::getline(items, item, ',')) {
                        item = trim(item);
                        if (!kKnownAudits.count(item))
                            fail("unknown audit '" + item + "'", key, lineno);
                        c.audits.insert(item);
                    }
                }
            } else if (key == "fit_t_a")
                c.fit_t_a = parse_double(value, key, lineno);
            else if (key == "fit_t_b")
                c.fit_t_b = parse_double(value, key, lineno);
            else if (key == "gronwall_t0")
                c.gronwall_t0 = parse_double(value, key, lineno);
            else
                fail("unknown key '" + key + "' in [audits]", key, lineno);
        } else {
            fail("key '" + key + "' outside any section", key, lineno);
        }
    }

    // cross-key validation
    if (!(c.t_max >= 0.0))
        fail("t_max must be nonnegative", "t_max", 0);
    if (!(c.dx > 0.0))
        fail("dx must be positive", "dx", 0);
    if (!(c.cfl > 0.0 && c.cfl < 1.0))
        fail("cfl must lie in (0, 1)", "cfl", 0);
    if (c.sample_stride < 1)
        fail("sample_stride must be at least 1", "sample_stride", 0);
    if (!(c.L > 0.0))
        fail("L must be positive", "L", 0);
    if (!(c.r0 > 0.0))
        fail("r0 must be positive", "r0", 0);
    if (c.family == "power-growth" && !(c.gamma0 >= 0.0 && c.gamma0 < 1.0))
        fail("gamma0 must lie in [0, 1)", "gamma0", 0);
    if (!r_set)
        c.R = 2.0 * c.r0;
    if (!(c.R > c.r0))
        fail("R must exceed the far-field radius r0", "R", 0);
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize(const RunConfig& c)
{
    std::ostringstream os;
    os.precision(17);
    os << "[solver]\n"
       << "t_max = " << c.t_max << "\n"
       << "dx = " << c.dx << "\n"
       << "cfl = " << c.cfl << "\n"
       << "sample_stride = " << c.sample_stride << "\n"
       << "R = " << c.R << "\n"
       << "max_nodes_per_side = " << c.max_nodes_per_side << "\n"
       << "\n[coefficient]\n"
       << "family = " << c.family << "\n"
       << "k0 = " << c.k0 << "\n"
       << "gamma0 = " << c.gamma0 << "\n"
       << "r0 = " << c.r0 << "\n"
       << "k_peak = " << c.k_peak << "\n"
       << "amplitude = " << c.amplitude << "\n"
       << "\n[data]\n"
       << "preset = " << c.preset << "\n"
       << "L = " << c.L << "\n"
       << "amplitude = " << c.data_amplitude << "\n"
       << "\n[audits]\n";
    if (c.audits.empty()) {
        os << "enable = all\n";
    } else {
        os << "enable = ";
        bool first = true;
        for (const std::string& a : c.audits) {
            os << (first ? "" : ",") << a;
            first = false;
        }
        os << "\n";
    }
    if (c.fit_t_a > 0.0)
        os << "fit_t_a = " << c.fit_t_a << "\n";
    if (c.fit_t_b > 0.0)
        os << "fit_t_b = " << c.fit_t_b << "\n";
    if (c.gronwall_t0 > 0.0)
        os << "gronwall_t0 = " << c.gronwall_t0 << "\n";
    return os.str();
}

} // namespace wavedecay
