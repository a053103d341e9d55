#include "smithdd/cli.hpp"

#include "smithdd/smith.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace smithdd::cli {

namespace {

std::string with_line(int line, const std::string& message)
{
    return line > 0 ? "line " + std::to_string(line) + ": " + message : message;
}

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

double to_double(const std::string& text, int line, const std::string& key)
{
    double v = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        throw ConfigError(line, key + ": '" + text + "' is not a number");
    return v;
}

int to_int(const std::string& text, int line, const std::string& key)
{
    int v = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(line, key + ": '" + text + "' is not an integer");
    return v;
}

const char* forcing_name(ForcingKind k) { return k == ForcingKind::kTrig ? "trig" : "poly"; }

struct Lines {
    std::map<std::string, int> of;
    int at(const std::string& key) const
    {
        auto it = of.find(key);
        return it == of.end() ? 0 : it->second;
    }
};

void check_invariants(const RunConfig& c, const Lines& lines)
{
    auto require = [&](bool ok, const char* key, const std::string& message) {
        if (!ok)
            throw ConfigError(lines.at(key), std::string(key) + ": " + message);
    };
    require(c.a > 0, "geometry.A", "must be positive");
    require(c.b > 0, "geometry.B", "must be positive");
    require(c.h > 0, "grid.h", "must be positive");
    require(c.nu > 0, "physics.nu", "must be positive");
    require(c.c >= 0, "physics.c", "must be non-negative");
    require(c.reduction > 0 && c.reduction < 1, "stop.reduction", "must lie in (0, 1)");
    require(c.max_iter >= 1, "stop.max_iter", "must be at least 1");
    try {
        build_grid(c.a, c.b, c.h);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(lines.at("grid.h"), std::string("grid.h: ") + e.what());
    }
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(with_line(line, message)), line_(line)
{
}

RunConfig parse_config(const std::string& text)
{
    static const std::set<std::string> known{"geometry.A",     "geometry.B",  "grid.h",         "physics.nu",
                                             "physics.c",      "algorithm.name", "stop.reduction", "stop.max_iter",
                                             "forcing.kind",   "output.path", "output.fields"};
    RunConfig c;
    Lines lines;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line_no, "expected 'section.key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known.count(key))
            throw ConfigError(line_no, "unknown key '" + key + "'");
        if (lines.of.count(key))
            throw ConfigError(line_no, "duplicate key '" + key + "'");
        if (value.empty())
            throw ConfigError(line_no, key + ": missing value");
        lines.of[key] = line_no;

        if (key == "geometry.A")
            c.a = to_double(value, line_no, key);
        else if (key == "geometry.B")
            c.b = to_double(value, line_no, key);
        else if (key == "grid.h")
            c.h = to_double(value, line_no, key);
        else if (key == "physics.nu")
            c.nu = to_double(value, line_no, key);
        else if (key == "physics.c")
            c.c = to_double(value, line_no, key);
        else if (key == "stop.reduction")
            c.reduction = to_double(value, line_no, key);
        else if (key == "stop.max_iter")
            c.max_iter = to_int(value, line_no, key);
        else if (key == "algorithm.name") {
            auto a = parse_algorithm(value);
            if (!a)
                throw ConfigError(line_no, "algorithm.name: unknown algorithm '" + value +
                                               "' (expected smith-ddm, neumann-neumann or bilap-ddm)");
            c.algorithm = *a;
        } else if (key == "forcing.kind") {
            if (value == "trig")
                c.forcing = ForcingKind::kTrig;
            else if (value == "poly")
                c.forcing = ForcingKind::kPoly;
            else
                throw ConfigError(line_no, "forcing.kind: expected trig or poly, got '" + value + "'");
        } else if (key == "output.path")
            c.output_path = value;
        else
            c.output_fields = value;
    }
    for (const char* required : {"grid.h", "algorithm.name"})
        if (!lines.of.count(required))
            throw ConfigError(0, std::string("missing required key '") + required + "'");
    check_invariants(c, lines);
    return c;
}

std::string render_config(const RunConfig& c)
{
    std::ostringstream os;
    os << "geometry.A = " << format_double(c.a) << "\n"
       << "geometry.B = " << format_double(c.b) << "\n"
       << "grid.h = " << format_double(c.h) << "\n"
       << "physics.nu = " << format_double(c.nu) << "\n"
       << "physics.c = " << format_double(c.c) << "\n"
       << "algorithm.name = " << algorithm_name(c.algorithm) << "\n"
       << "stop.reduction = " << format_double(c.reduction) << "\n"
       << "stop.max_iter = " << c.max_iter << "\n"
       << "forcing.kind = " << forcing_name(c.forcing) << "\n";
    if (!c.output_path.empty())
        os << "output.path = " << c.output_path << "\n";
    if (!c.output_fields.empty())
        os << "output.fields = " << c.output_fields << "\n";
    return os.str();
}

void validate(const RunConfig& config) { check_invariants(config, Lines{}); }

DdProblem to_problem(const RunConfig& c)
{
    DdProblem p;
    p.algorithm = c.algorithm;
    p.grid = build_grid(c.a, c.b, c.h);
    p.params = {c.nu, c.c};
    p.forcing = c.forcing;
    p.stop.reduction = c.reduction;
    p.stop.max_iter = c.max_iter;
    return p;
}

IterationLog execute_run(const RunConfig& config)
{
    const DdProblem p = to_problem(config);
    if (config.output_fields.empty())
        return run(p);
    if (p.algorithm == Algorithm::kBilapDdm) {
        BilapManufactured m = make_bilap_manufactured(p.grid, p.params.nu);
        BilapDd dd(p.grid, p.params.nu, m.forcing);
        BilapState last;
        IterationLog log = run_bilap(dd, dd.initial_state(), p.stop, &last);
        dump_scalar_pair_csv(config.output_fields + "_left", last.left, p.grid, Side::kLeft);
        dump_scalar_pair_csv(config.output_fields + "_right", last.right, p.grid, Side::kRight);
        return log;
    }
    StokesManufactured m = make_stokes_manufactured(p.forcing, p.grid, p.params);
    StokesDd dd(p.grid, p.params, m.forcing);
    StokesState last;
    IterationLog log = run_stokes(dd, p.algorithm, dd.initial_state(p.algorithm), p.stop, &last);
    dump_stokes_field_csv(config.output_fields + "_left", last.left, p.grid, Side::kLeft);
    dump_stokes_field_csv(config.output_fields + "_right", last.right, p.grid, Side::kRight);
    return log;
}

// ---------------------------------------------------------------------------

SweepAxis parse_axis(const std::string& name)
{
    if (name == "h")
        return SweepAxis::kH;
    if (name == "B")
        return SweepAxis::kB;
    if (name == "c")
        return SweepAxis::kC;
    throw ConfigError(0, "sweep axis must be h, B or c, got '" + name + "'");
}

std::vector<double> parse_value_list(const std::string& text)
{
    std::vector<double> values;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        values.push_back(to_double(trim(item), 0, "--values"));
    if (values.empty())
        throw ConfigError(0, "--values: empty list");
    return values;
}

std::vector<Algorithm> parse_algorithm_list(const std::string& text)
{
    std::vector<Algorithm> algorithms;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto a = parse_algorithm(trim(item));
        if (!a)
            throw ConfigError(0, "--algorithms: unknown algorithm '" + trim(item) + "'");
        algorithms.push_back(*a);
    }
    if (algorithms.empty())
        throw ConfigError(0, "--algorithms: empty list");
    return algorithms;
}

std::vector<SweepRow> run_sweep(const RunConfig& base, SweepAxis axis, const std::vector<double>& values,
                                const std::vector<Algorithm>& algorithms)
{
    std::vector<SweepRow> rows;
    for (double v : values)
        for (Algorithm a : algorithms) {
            RunConfig c = base;
            c.algorithm = a;
            c.output_fields.clear();
            if (axis == SweepAxis::kH)
                c.h = v;
            else if (axis == SweepAxis::kB)
                c.b = v;
            else
                c.c = v;
            SweepRow row;
            row.axis_value = v;
            row.algorithm = a;
            try {
                validate(c);
                IterationLog log = run(to_problem(c));
                row.iterations = log.iterations;
                row.verdict = log.verdict;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            rows.push_back(row);
        }
    return rows;
}

namespace {

std::string count_cell(const SweepRow& r)
{
    if (!r.error.empty())
        return "error";
    if (r.verdict == Verdict::kDiverged)
        return "--";
    return std::to_string(r.iterations);
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows)
{
    std::ostringstream os;
    os << "axis_value,algorithm,iterations,verdict\n";
    for (const auto& r : rows) {
        os << short_double(r.axis_value) << ',' << algorithm_name(r.algorithm) << ',';
        if (r.error.empty())
            os << count_cell(r) << ',' << verdict_name(r.verdict) << '\n';
        else
            os << ",error\n";
    }
    return os.str();
}

std::string sweep_table(const std::vector<SweepRow>& rows, SweepAxis axis,
                        const std::vector<Algorithm>& algorithms)
{
    const char* axis_label = axis == SweepAxis::kH ? "h" : axis == SweepAxis::kB ? "B" : "c";
    std::ostringstream os;
    os << std::left << std::setw(10) << axis_label;
    for (Algorithm a : algorithms)
        os << std::right << std::setw(18) << algorithm_name(a);
    os << '\n';
    const std::size_t per_value = algorithms.size();
    for (std::size_t k = 0; k + per_value <= rows.size(); k += per_value) {
        os << std::left << std::setw(10) << short_double(rows[k].axis_value);
        for (std::size_t m = 0; m < per_value; ++m)
            os << std::right << std::setw(18) << count_cell(rows[k + m]);
        os << '\n';
    }
    for (const auto& r : rows)
        if (!r.error.empty())
            os << axis_label << " = " << short_double(r.axis_value) << ", " << algorithm_name(r.algorithm)
               << ": " << r.error << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------

SmithReport smith_report(const mpq_class& nu, const std::vector<mpq_class>& k, int dim)
{
    using namespace smith;
    if (sgn(nu) <= 0)
        throw std::invalid_argument("nu must be positive");
    if (dim == 2 && k.size() != 1)
        throw std::invalid_argument("dim 2 takes one wavenumber");
    if (dim == 3 && k.size() != 2)
        throw std::invalid_argument("dim 3 takes two wavenumbers k2,k3");
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("dim must be 2 or 3");

    const PolyMatrix a = dim == 2 ? stokes_symbol_2d(nu, k[0]) : stokes_symbol_3d(nu, k[0], k[1]);
    const SmithTriple monic = smith_normal_form(a);
    SmithTriple t = normalize_unit_determinants(monic);
    if (dim == 3)
        t = transfer_unit(std::move(t), 3, 2, exact::GaussianRational(-nu));

    auto diag = [](const PolyMatrix& d) {
        std::string s = "diag(";
        for (int i = 0; i < d.size(); ++i)
            s += (i ? ", " : "") + d(i, i).to_string();
        return s + ")";
    };

    std::ostringstream os;
    os << "nu = " << nu.get_str() << ", k = ";
    for (std::size_t i = 0; i < k.size(); ++i)
        os << (i ? "," : "") << k[i].get_str();
    os << ", dim = " << dim << " (L is the symbol of d/dx)\n";
    os << "A =\n" << a.to_string();
    os << "D (monic invariant factors) = " << diag(monic.d) << "\n";
    os << "D = " << diag(t.d) << "\n";
    os << "E =\n" << t.e.to_string();
    os << "F =\n" << t.f.to_string();
    os << "det(E) = " << poly_matrix_det(t.e).to_string() << "\n";
    os << "det(F) = " << poly_matrix_det(t.f).to_string() << "\n";

    const PolyMatrix r = t.e * t.d * t.f - a;
    const PolyMatrix r_monic = monic.e * monic.d * monic.f - a;
    SmithReport rep;
    rep.exact_reconstruction = r.max_degree() == exact::Poly::kDegreeMinusInfinity &&
                               r_monic.max_degree() == exact::Poly::kDegreeMinusInfinity;
    if (rep.exact_reconstruction)
        os << "EDF - A = 0 (exact)\n";
    else
        os << "EDF - A != 0 (max degree " << std::max(r.max_degree(), r_monic.max_degree()) << ")\n";
    rep.text = os.str();
    return rep;
}

}  // namespace smithdd::cli
