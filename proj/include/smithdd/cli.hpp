#pragma once

// Experiment configuration, parameter sweeps and the Smith-form report.
//
// Config format: one "section.key = value" per line, '#' starts a comment.
//   geometry.A, geometry.B      subdomain widths (default 1)
//   grid.h                      mesh size (required)
//   physics.nu, physics.c       viscosity (default 1), reaction (default 0)
//   algorithm.name              smith-ddm | neumann-neumann | bilap-ddm (required)
//   stop.reduction              default 1e-4
//   stop.max_iter               default 200
//   forcing.kind                trig | poly (default trig)
//   output.path                 CSV destination (iteration log or sweep table)
//   output.fields               prefix for CSV field dumps of the last iterate

#include "smithdd/ddm.hpp"
#include "smithdd/exactalg.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace smithdd::cli {

class ConfigError : public std::runtime_error {
public:
    /// line is 1-based; 0 when the error concerns the file as a whole.
    ConfigError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

struct RunConfig {
    double a = 1.0;
    double b = 1.0;
    double h = 0.0;
    double nu = 1.0;
    double c = 0.0;
    Algorithm algorithm = Algorithm::kSmithDdm;
    double reduction = 1e-4;
    int max_iter = 200;
    ForcingKind forcing = ForcingKind::kTrig;
    std::string output_path;
    std::string output_fields;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(const std::string& text);
/// Text that parse_config maps back to the same config; doubles use %.17g.
std::string render_config(const RunConfig& config);

/// Throws ConfigError without a line when invariants fail (used after sweeps
/// override a value).
void validate(const RunConfig& config);

DdProblem to_problem(const RunConfig& config);

/// Runs the configured iteration; writes field dumps when output.fields is set.
IterationLog execute_run(const RunConfig& config);

enum class SweepAxis { kH, kB, kC };

/// "h", "B" or "c"; throws ConfigError otherwise.
SweepAxis parse_axis(const std::string& name);
std::vector<double> parse_value_list(const std::string& text);
std::vector<Algorithm> parse_algorithm_list(const std::string& text);

struct SweepRow {
    double axis_value = 0.0;
    Algorithm algorithm = Algorithm::kSmithDdm;
    int iterations = 0;
    Verdict verdict = Verdict::kConverged;
    /// Non-empty when the run failed; the sweep goes on.
    std::string error;
};

/// Rows ordered by value, then by algorithm in the given order.
std::vector<SweepRow> run_sweep(const RunConfig& base, SweepAxis axis, const std::vector<double>& values,
                                const std::vector<Algorithm>& algorithms);

/// Header axis_value,algorithm,iterations,verdict; "--" replaces the count of
/// diverged runs.
std::string sweep_csv(const std::vector<SweepRow>& rows);
/// One line per value, one column per algorithm.
std::string sweep_table(const std::vector<SweepRow>& rows, SweepAxis axis,
                        const std::vector<Algorithm>& algorithms);

struct SmithReport {
    std::string text;
    bool exact_reconstruction = false;
};

/// A, E, D, F, det E, det F for the Stokes symbol, with D = diag of monic
/// invariant factors and the unit-normalized diagonal. k holds one wavenumber
/// for dim 2 and two for dim 3.
SmithReport smith_report(const mpq_class& nu, const std::vector<mpq_class>& k, int dim);

}  // namespace smithdd::cli
