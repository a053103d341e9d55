// Command-line front end: run one configured iteration, sweep a parameter, or
// print the Smith factorization of the Stokes symbol.
//
//   smithdd run   --config <file>
//   smithdd sweep --config <file> --axis <h|B|c> --values <list> [--algorithms <list>]
//   smithdd smith --dim <2|3> --nu <rat> --k <rat[,rat]>
//
// Exit codes: 0 success, 1 configuration or usage error, 2 solver error.

#include "smithdd/cli.hpp"
#include "smithdd/linear_system.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace smithdd;

constexpr int kConfigError = 1;
constexpr int kSolverError = 2;

cli::RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw cli::ConfigError(0, "cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return cli::parse_config(text.str());
    } catch (const cli::ConfigError& e) {
        throw cli::ConfigError(0, path + ": " + e.what());
    }
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty())
        return;
    std::ofstream out(path);
    if (!out)
        throw cli::ConfigError(0, "cannot write output file '" + path + "'");
    out << text;
}

int cmd_run(const std::string& config_path)
{
    const cli::RunConfig config = load_config(config_path);
    const IterationLog log = cli::execute_run(config);
    std::ostringstream csv;
    log.write_csv(csv);
    std::cout << csv.str();
    write_output(config.output_path, csv.str());
    std::cerr << algorithm_name(log.algorithm) << ": " << verdict_name(log.verdict) << " after "
              << log.iterations << " iterations\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& axis_name, const std::string& values,
              const std::string& algorithms)
{
    const cli::RunConfig base = load_config(config_path);
    const cli::SweepAxis axis = cli::parse_axis(axis_name);
    const auto algs = cli::parse_algorithm_list(algorithms);
    const auto rows = cli::run_sweep(base, axis, cli::parse_value_list(values), algs);
    const std::string csv = cli::sweep_csv(rows);
    std::cout << csv;
    std::cerr << cli::sweep_table(rows, axis, algs);
    write_output(base.output_path, csv);
    return 0;
}

int cmd_smith(int dim, const std::string& nu_text, const std::string& k_text)
{
    mpq_class nu;
    std::vector<mpq_class> k;
    try {
        nu = exact::parse_rational(nu_text);
        std::istringstream in(k_text);
        std::string item;
        while (std::getline(in, item, ','))
            k.push_back(exact::parse_rational(item));
    } catch (const std::exception& e) {
        throw cli::ConfigError(0, e.what());
    }
    cli::SmithReport report;
    try {
        report = cli::smith_report(nu, k, dim);
    } catch (const std::invalid_argument& e) {
        throw cli::ConfigError(0, e.what());
    }
    std::cout << report.text;
    return report.exact_reconstruction ? 0 : kSolverError;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Substructuring iterations for Stokes and bi-Laplacian interface problems"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run one iteration and print its per-iteration log as CSV");
    run->add_option("--config", config_path, "Config file")->required();

    std::string axis, values, algorithms = "smith-ddm,neumann-neumann";
    auto* sweep = app.add_subcommand("sweep", "Iteration counts over a list of h, B or c values");
    sweep->add_option("--config", config_path, "Base config file")->required();
    sweep->add_option("--axis", axis, "h, B or c")->required();
    sweep->add_option("--values", values, "Comma-separated values")->required();
    sweep->add_option("--algorithms", algorithms, "Comma-separated algorithm names")->capture_default_str();

    int dim = 2;
    std::string nu = "1", k;
    auto* smith = app.add_subcommand("smith", "Smith factorization of the Stokes symbol");
    smith->add_option("--dim", dim, "2 or 3")->check(CLI::IsMember({2, 3}))->capture_default_str();
    smith->add_option("--nu", nu, "Viscosity, rational")->capture_default_str();
    smith->add_option("--k", k, "Wavenumber(s): k for dim 2, k2,k3 for dim 3")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (*run)
            return cmd_run(config_path);
        if (*sweep)
            return cmd_sweep(config_path, axis, values, algorithms);
        return cmd_smith(dim, nu, k);
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const SolveError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kSolverError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSolverError;
    }
}
