#include "doctest.h"

#include "smithdd/cli.hpp"

#include <string>

using namespace smithdd;
using namespace smithdd::cli;

namespace {

int error_line(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return -1;
}

bool contains(const std::string& haystack, const std::string& needle)
{
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("minimal config fills defaults")
{
    const RunConfig c = parse_config("grid.h = 0.1\nalgorithm.name = neumann-neumann\n");
    CHECK(c.a == 1.0);
    CHECK(c.b == 1.0);
    CHECK(c.h == 0.1);
    CHECK(c.nu == 1.0);
    CHECK(c.c == 0.0);
    CHECK(c.reduction == 1e-4);
    CHECK(c.max_iter == 200);
    CHECK(c.algorithm == Algorithm::kNeumannNeumann);
    CHECK(c.forcing == ForcingKind::kTrig);
}

TEST_CASE("comments and blank lines are ignored")
{
    const RunConfig c = parse_config("# setup\n\n  grid.h = 0.2   # coarse\nalgorithm.name=bilap-ddm\n");
    CHECK(c.h == 0.2);
    CHECK(c.algorithm == Algorithm::kBilapDdm);
}

TEST_CASE("grid divisibility error carries the grid.h line")
{
    const std::string text = "# unit square halves\nalgorithm.name = smith-ddm\ngrid.h = 0.3\n";
    CHECK(error_line(text) == 3);
    try {
        parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(contains(e.what(), "not an integer multiple"));
    }
}

TEST_CASE("malformed configs report the offending line")
{
    CHECK(error_line("grid.h = 0.1\nalgorithm.name = smith-ddm\nsolver.tol = 1\n") == 3);
    CHECK(error_line("grid.h = 0.1\ngrid.h = 0.2\nalgorithm.name = smith-ddm\n") == 2);
    CHECK(error_line("grid.h = abc\nalgorithm.name = smith-ddm\n") == 1);
    CHECK(error_line("grid.h = 0.1\nalgorithm.name = schwarz\n") == 2);
    CHECK(error_line("grid.h 0.1\n") == 1);
    CHECK(error_line("grid.h = 0.1\nalgorithm.name = smith-ddm\nphysics.c = -1\n") == 3);
    CHECK(error_line("grid.h = 0.1\nalgorithm.name = smith-ddm\nstop.reduction = 1.5\n") == 3);
    CHECK(error_line("grid.h = 0.1\nalgorithm.name = smith-ddm\nstop.max_iter = 2.5\n") == 3);
    CHECK(error_line("grid.h = 0.1\nalgorithm.name = smith-ddm\ngeometry.B = 0\n") == 3);
    CHECK(error_line("algorithm.name = smith-ddm\n") == 0);
    CHECK(error_line("grid.h = 0.1\n") == 0);
}

TEST_CASE("render and parse round-trip")
{
    RunConfig c;
    c.a = 1.0;
    c.b = 3.0;
    c.h = 0.025;
    c.nu = 0.1;
    c.c = 1.0 / 3.0;
    c.algorithm = Algorithm::kNeumannNeumann;
    c.reduction = 1e-6;
    c.max_iter = 37;
    c.forcing = ForcingKind::kPoly;
    c.output_path = "/tmp/out.csv";
    c.output_fields = "/tmp/fields";
    CHECK(parse_config(render_config(c)) == c);

    const RunConfig d = parse_config("grid.h = 0.2\nalgorithm.name = smith-ddm\n");
    CHECK(parse_config(render_config(d)) == d);
}

TEST_CASE("aspect-ratio config with neumann-neumann parses")
{
    const RunConfig c =
        parse_config("geometry.A = 1\ngeometry.B = 10\ngrid.h = 0.1\nalgorithm.name = neumann-neumann\n");
    CHECK(c.b == 10.0);
    const DdProblem p = to_problem(c);
    CHECK(p.grid.nx_right == 100);
    CHECK(p.algorithm == Algorithm::kNeumannNeumann);
}

TEST_CASE("list parsing")
{
    CHECK(parse_axis("h") == SweepAxis::kH);
    CHECK(parse_axis("B") == SweepAxis::kB);
    CHECK(parse_axis("c") == SweepAxis::kC);
    CHECK_THROWS_AS(parse_axis("nu"), ConfigError);
    CHECK(parse_value_list("0.1, 0.05,0.2") == std::vector<double>{0.1, 0.05, 0.2});
    CHECK_THROWS_AS(parse_value_list("0.1,x"), ConfigError);
    CHECK(parse_algorithm_list("smith-ddm,neumann-neumann") ==
          std::vector<Algorithm>{Algorithm::kSmithDdm, Algorithm::kNeumannNeumann});
    CHECK_THROWS_AS(parse_algorithm_list("smith-ddm,fast"), ConfigError);
}

TEST_CASE("sweep rows, errors and determinism")
{
    const RunConfig base = parse_config("grid.h = 0.2\nalgorithm.name = smith-ddm\n");
    const std::vector<Algorithm> algs{Algorithm::kSmithDdm, Algorithm::kNeumannNeumann};
    const auto rows = run_sweep(base, SweepAxis::kH, {0.2, 0.3}, algs);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].algorithm == Algorithm::kSmithDdm);
    CHECK(rows[1].algorithm == Algorithm::kNeumannNeumann);
    CHECK(rows[0].error.empty());
    CHECK(rows[0].verdict == Verdict::kConverged);
    CHECK(!rows[2].error.empty());
    CHECK(!rows[3].error.empty());

    const std::string csv = sweep_csv(rows);
    CHECK(csv.rfind("axis_value,algorithm,iterations,verdict\n", 0) == 0);
    CHECK(contains(csv, "0.3,smith-ddm,,error\n"));
    CHECK(sweep_csv(run_sweep(base, SweepAxis::kH, {0.2, 0.3}, algs)) == csv);

    const std::string table = sweep_table(rows, SweepAxis::kH, algs);
    CHECK(contains(table, "neumann-neumann"));
    CHECK(contains(table, "not an integer multiple"));
}

TEST_CASE("diverged runs render as --")
{
    SweepRow r;
    r.axis_value = 10;
    r.algorithm = Algorithm::kNeumannNeumann;
    r.iterations = 4;
    r.verdict = Verdict::kDiverged;
    CHECK(sweep_csv({r}) == "axis_value,algorithm,iterations,verdict\n10,neumann-neumann,--,diverged\n");
    CHECK(contains(sweep_table({r}, SweepAxis::kB, {Algorithm::kNeumannNeumann}), "--"));
}

TEST_CASE("smith report for the 2D symbol")
{
    const SmithReport r = smith_report(1, {1}, 2);
    CHECK(r.exact_reconstruction);
    CHECK(contains(r.text, "D (monic invariant factors) = diag(1, 1, L^4 - 2*L^2 + 1)\n"));
    CHECK(contains(r.text, "D = diag(1, 1, -L^4 + 2*L^2 - 1)\n"));
    CHECK(contains(r.text, "det(E) = 1\n"));
    CHECK(contains(r.text, "det(F) = 1\n"));
    CHECK(contains(r.text, "EDF - A = 0 (exact)\n"));
}

TEST_CASE("smith report for the 3D symbol")
{
    const SmithReport r = smith_report(1, {1, 2}, 3);
    CHECK(r.exact_reconstruction);
    CHECK(contains(r.text, "D = diag(1, 1, -L^2 + 5, -L^4 + 10*L^2 - 25)\n"));
    CHECK(contains(r.text, "EDF - A = 0 (exact)\n"));

    const SmithReport s = smith_report(mpq_class(1, 3), {mpq_class(2), mpq_class(-1, 2)}, 3);
    CHECK(s.exact_reconstruction);
    CHECK(contains(s.text, "D (monic invariant factors) = diag(1, 1, L^2 - 17/4, L^4 - 17/2*L^2 + 289/16)\n"));
}

TEST_CASE("smith report argument checks")
{
    CHECK_THROWS_AS(smith_report(0, {1}, 2), std::invalid_argument);
    CHECK_THROWS_AS(smith_report(1, {1, 2}, 2), std::invalid_argument);
    CHECK_THROWS_AS(smith_report(1, {1}, 3), std::invalid_argument);
    CHECK_THROWS_AS(smith_report(1, {1}, 4), std::invalid_argument);
}
