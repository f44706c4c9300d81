#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wavedecay/config.hpp"
#include "wavedecay/runner.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"2-D variable-coefficient wave simulator and estimate auditor"};
    app.require_subcommand(1);

    std::string config_path, outdir = "out";
    std::string param, values_csv;
    std::string series_path, window;
    double gamma = 0.0;

    CLI::App* c_run = app.add_subcommand("run", "simulate and audit one configuration");
    c_run->add_option("config", config_path, "config file")->required();
    c_run->add_option("--out", outdir, "output directory");

    CLI::App* c_sweep = app.add_subcommand("sweep", "run one configuration across parameter values");
    c_sweep->add_option("config", config_path, "config file")->required();
    c_sweep->add_option("--param", param, "parameter key to vary")->required();
    c_sweep->add_option("--values", values_csv, "comma-separated values")->required();
    c_sweep->add_option("--out", outdir, "output directory");

    CLI::App* c_cert = app.add_subcommand("certify-potential", "potential certificates, no PDE run");
    c_cert->add_option("config", config_path, "config file")->required();
    c_cert->add_option("--out", outdir, "output directory");

    CLI::App* c_fit = app.add_subcommand("fit", "decay-rate fit of a recorded series.csv");
    c_fit->add_option("series", series_path, "series.csv path")->required();
    c_fit->add_option("--window", window, "fit window a,b");
    c_fit->add_option("--gamma", gamma, "growth exponent for the third model");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_run->parsed())
            return wavedecay::cmd_run(wavedecay::load_config(config_path), outdir);
        if (c_sweep->parsed())
            return wavedecay::cmd_sweep(wavedecay::load_config(config_path), param,
                                        split_csv(values_csv), outdir);
        if (c_cert->parsed())
            return wavedecay::cmd_certify_potential(wavedecay::load_config(config_path), outdir);
        if (c_fit->parsed()) {
            double a = -1.0, b = -1.0;
            if (!window.empty()) {
                const auto parts = split_csv(window);
                if (parts.size() != 2) {
                    std::cerr << "error: --window expects a,b\n";
                    return 1;
                }
                a = std::stod(parts[0]);
                b = std::stod(parts[1]);
            }
            return wavedecay::cmd_fit(series_path, a, b, gamma, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
