#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "owcsa/commands.hpp"
#include "owcsa/errors.hpp"
#include "owcsa/version.hpp"

using namespace owcsa;

namespace {

std::vector<double> parse_values(const std::string& list)
{
    std::vector<double> out;
    std::stringstream ss(list);
    for (std::string item; std::getline(ss, item, ',');) {
        const auto b = item.find_first_not_of(' '), e = item.find_last_not_of(' ');
        if (b == std::string::npos)
            throw CLI::ValidationError("--values", "empty entry in '" + list + "'");
        item = item.substr(b, e - b + 1);
        double v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size())
            throw CLI::ValidationError("--values", "not a number: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw CLI::ValidationError("--values", "no values given");
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Outage analysis of slotted ALOHA with capture in an indoor optical wireless cell"};
    app.set_version_flag("--version", std::string("owcsa ") + kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_path, mode_name = "analytic", seed, trials, threshold, n_active;
    std::string axis_name = "users", values_list;
    app.add_option("--config", config_path, "Config file (see docs/config.md)");
    app.add_option("--out", out_path, "Output path, '-' for stdout");
    app.add_option("--mode", mode_name, "analytic|mc|both")->check(CLI::IsMember({"analytic", "mc", "both"}));
    app.add_option("--seed", seed, "MC seed (u64)");
    app.add_option("--trials", trials, "MC trials");
    app.add_option("--threshold", threshold, "SINR threshold, linear or with dB suffix");
    app.add_option("--n-active", n_active, "Active users in the slot (cdf)");
    app.add_option("--axis", axis_name, "users|semi_angle|radius|activation_prob")
        ->check(CLI::IsMember({"users", "semi_angle", "radius", "activation_prob"}));
    app.add_option("--values", values_list, "Comma-separated sweep values (semi_angle in deg)");

    auto* cdf = app.add_subcommand("cdf", "Conditional SINR distribution");
    auto* outage = app.add_subcommand("outage", "Unconditional outage probability");
    auto* sweep = app.add_subcommand("sweep", "Outage along one parameter axis");
    auto* validate = app.add_subcommand("validate", "Analytic results against independent oracles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    RunConfig config;
    std::vector<double> values;
    try {
        if (!config_path.empty())
            config = load_config(config_path);
        if (!seed.empty())
            apply_setting(config, "seed", seed);
        if (!trials.empty())
            apply_setting(config, "trials", trials);
        if (!threshold.empty())
            apply_setting(config, "threshold", threshold);
        if (!n_active.empty())
            apply_setting(config, "n_active", n_active);
        if (!out_path.empty())
            config.out = out_path;
        if (sweep->parsed()) {
            if (values_list.empty())
                throw CLI::RequiredError("--values");
            values = parse_values(values_list);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    std::ostringstream buffer;
    int status = kExitOk;
    try {
        const OutputMode mode = parse_output_mode(mode_name);
        if (cdf->parsed())
            status = cmd_cdf(config, mode, buffer);
        else if (outage->parsed())
            status = cmd_outage(config, mode, buffer);
        else if (sweep->parsed())
            status = cmd_sweep(config, parse_sweep_axis(axis_name), values, mode, buffer);
        else if (validate->parsed())
            status = cmd_validate(config, buffer);
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitConfig;
    }

    if (config.out == "-") {
        std::cout << buffer.str();
    } else {
        std::ofstream f(config.out, std::ios::binary);
        if (!(f << buffer.str())) {
            std::cerr << "error: cannot write '" << config.out << "'\n";
            return kExitConfig;
        }
    }
    return status;
}
