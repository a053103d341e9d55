#include "smithdd/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace smithdd {

namespace {

constexpr double kPi = std::numbers::pi;

int checked_cells(double extent, double h, const std::string& name)
{
    const double ratio = extent / h;
    const double n = std::round(ratio);
    if (n < 1.0 || std::abs(ratio - n) > 1e-12 * std::max(1.0, ratio)) {
        std::ostringstream os;
        os << "extent " << name << " = " << extent << " is not an integer multiple of h = " << h;
        throw std::invalid_argument(os.str());
    }
    return static_cast<int>(n);
}

// Coefficient list of one matrix row plus its source term.
struct Stencil {
    std::vector<std::pair<int, double>> entries;
    double source = 0.0;

    void add(int col, double value)
    {
        if (col >= 0)
            entries.emplace_back(col, value);
    }
    double apply(const Eigen::VectorXd& x) const
    {
        double s = 0.0;
        for (auto [col, value] : entries)
            s += value * x[col];
        return s;
    }
};

// Adds scale * (-d2/ds2) on a node with neighbours at distances hm, hp;
// a neighbour column of -1 is a homogeneous wall value.
void add_neg_second_difference(Stencil& s, int center, int minus, double hm, int plus, double hp, double scale)
{
    const double w = 2.0 / (hm + hp);
    s.add(center, scale * w * (1.0 / hm + 1.0 / hp));
    s.add(minus, -scale * w / hm);
    s.add(plus, -scale * w / hp);
}

// ---------------------------------------------------------------------------
// Stokes, canonical frame: local xi in [0, W], outer wall at xi = 0, interface
// at xi = W, xi-velocity is the own-frame normal velocity. The right
// subdomain is the mirror image of this frame.

struct StokesLayout {
    int nx;
    int ny;

    int n_u() const { return nx * ny; }
    int n_v() const { return nx * (ny - 1); }
    int n_vg() const { return ny - 1; }
    int n_p() const { return nx * ny; }
    int size() const { return n_u() + n_v() + n_vg() + n_p(); }

    // u at xi = i h, i = 1..nx; i = 0 is the wall.
    int u(int i, int j) const { return (i <= 0 || j < 0 || j >= ny) ? -1 : (i - 1) * ny + j; }
    // v at xi = (i+1/2) h, i = 0..nx-1, y = j h, interior j = 1..ny-1.
    int v(int i, int j) const { return (j <= 0 || j >= ny) ? -1 : n_u() + i * (ny - 1) + (j - 1); }
    int vg(int j) const { return (j <= 0 || j >= ny) ? -1 : n_u() + n_v() + (j - 1); }
    int p(int i, int j) const { return n_u() + n_v() + n_vg() + i * ny + j; }
};

struct LocalForcing {
    PointFunction fu;
    PointFunction fv;
};

LocalForcing localize(const StokesForcing& forcing, const MacGrid& grid, Side side)
{
    const double sign = side == Side::kLeft ? 1.0 : -1.0;
    return {
        [=](double xi, double y) { return sign * forcing.fu(grid.x_of(side, xi), y); },
        [=](double xi, double y) { return forcing.fv(grid.x_of(side, xi), y); },
    };
}

class StokesStencils {
public:
    StokesStencils(const StokesLayout& layout, double h, const PhysicsParams& params, const LocalForcing& f)
        : l_(layout), h_(h), nu_(params.nu), c_(params.c), f_(f)
    {
    }

    // Vertical -nu d2/dy2 for a u-type row (nodes at (j+1/2)h, walls h/2 away).
    void add_u_vertical(Stencil& s, int center, int col_i, int j, double scale) const
    {
        const double hm = j == 0 ? h_ / 2 : h_;
        const double hp = j == l_.ny - 1 ? h_ / 2 : h_;
        add_neg_second_difference(s, center, l_.u(col_i, j - 1), hm, l_.u(col_i, j + 1), hp, scale);
    }

    Stencil momentum_u(int i, int j) const
    {
        Stencil s;
        const int center = l_.u(i, j);
        add_neg_second_difference(s, center, l_.u(i - 1, j), h_, l_.u(i + 1, j), h_, nu_);
        add_u_vertical(s, center, i, j, nu_);
        s.add(center, c_);
        s.add(l_.p(i, j), 1.0 / h_);
        s.add(l_.p(i - 1, j), -1.0 / h_);
        s.source = f_.fu(i * h_, (j + 0.5) * h_);
        return s;
    }

    Stencil momentum_v(int i, int j) const
    {
        Stencil s;
        const int center = l_.v(i, j);
        const int minus = i > 0 ? l_.v(i - 1, j) : -1;
        const double hm = i > 0 ? h_ : h_ / 2;
        const int plus = i + 1 < l_.nx ? l_.v(i + 1, j) : l_.vg(j);
        const double hp = i + 1 < l_.nx ? h_ : h_ / 2;
        add_neg_second_difference(s, center, minus, hm, plus, hp, nu_);
        add_neg_second_difference(s, center, l_.v(i, j - 1), h_, l_.v(i, j + 1), h_, nu_);
        s.add(center, c_);
        s.add(l_.p(i, j), 1.0 / h_);
        s.add(l_.p(i, j - 1), -1.0 / h_);
        s.source = f_.fv((i + 0.5) * h_, j * h_);
        return s;
    }

    // -div at cell (i,j).
    Stencil continuity(int i, int j) const
    {
        Stencil s;
        s.add(l_.u(i + 1, j), -1.0 / h_);
        s.add(l_.u(i, j), 1.0 / h_);
        s.add(l_.v(i, j + 1), -1.0 / h_);
        s.add(l_.v(i, j), 1.0 / h_);
        return s;
    }

    // Own-frame normal stress on the interface face j: momentum balance of the
    // half cell [W - h/2, W] around u(nx, j).
    Stencil normal_stress(int j) const
    {
        Stencil s;
        const int center = l_.u(l_.nx, j);
        s.add(center, nu_ / h_ + c_ * h_ / 2);
        s.add(l_.u(l_.nx - 1, j), -nu_ / h_);
        s.add(l_.p(l_.nx - 1, j), -1.0);
        add_u_vertical(s, center, l_.nx, j, nu_ * h_ / 2);
        s.source = h_ / 2 * f_.fu(l_.nx * h_, (j + 0.5) * h_);
        return s;
    }

    // Own-frame tangential stress at interface node y = j h: balance of the
    // quarter-width volume between v(nx-1, j) and v_gamma(j).
    Stencil tangential_stress(int j) const
    {
        Stencil s;
        const int center = l_.vg(j);
        const double q = h_ / 4;
        s.add(center, nu_ / (h_ / 2) + c_ * q);
        s.add(l_.v(l_.nx - 1, j), -nu_ / (h_ / 2));
        add_neg_second_difference(s, center, l_.vg(j - 1), h_, l_.vg(j + 1), h_, nu_ * q);
        s.add(l_.p(l_.nx - 1, j), q / h_);
        s.add(l_.p(l_.nx - 1, j - 1), -q / h_);
        s.source = q * f_.fv(l_.nx * h_, j * h_);
        return s;
    }

private:
    StokesLayout l_;
    double h_;
    double nu_;
    double c_;
    LocalForcing f_;
};

bool needs_pressure_gauge(BcVariant v)
{
    return v == BcVariant::kDirichletVelocity || v == BcVariant::kMixedCorrection;
}

int global_column(Side side, int nx, int local_i) { return side == Side::kLeft ? local_i : nx - local_i; }
int global_cell(Side side, int nx, int local_i) { return side == Side::kLeft ? local_i : nx - 1 - local_i; }

UnknownMap stokes_unknowns(const StokesLayout& l, Side side)
{
    UnknownMap map;
    for (int i = 1; i <= l.nx; ++i)
        for (int j = 0; j < l.ny; ++j)
            map.add({Unknown::kU, global_column(side, l.nx, i), j});
    for (int i = 0; i < l.nx; ++i)
        for (int j = 1; j < l.ny; ++j)
            map.add({Unknown::kV, global_cell(side, l.nx, i), j});
    for (int j = 1; j < l.ny; ++j)
        map.add({Unknown::kVGamma, 0, j});
    for (int i = 0; i < l.nx; ++i)
        for (int j = 0; j < l.ny; ++j)
            map.add({Unknown::kP, global_cell(side, l.nx, i), j});
    return map;
}

// Mirror x -> -x of a subdomain field: flips column order and the sign of u.
// It maps the right subdomain's global-order arrays to the canonical frame
// and back.
StokesField mirror(const StokesField& f)
{
    StokesField m = StokesField::zeros(f.nx, f.ny);
    for (int i = 0; i <= f.nx; ++i)
        for (int j = 0; j < f.ny; ++j)
            m.u(i, j) = -f.u(f.nx - i, j);
    for (int i = 0; i < f.nx; ++i) {
        for (int j = 0; j <= f.ny; ++j)
            m.v(i, j) = f.v(f.nx - 1 - i, j);
        for (int j = 0; j < f.ny; ++j)
            m.p(i, j) = f.p(f.nx - 1 - i, j);
    }
    m.v_gamma = f.v_gamma;
    return m;
}

StokesField to_canonical(const StokesField& f, Side side) { return side == Side::kLeft ? f : mirror(f); }

Eigen::VectorXd canonical_vector(const StokesField& local, const StokesLayout& l)
{
    Eigen::VectorXd x = Eigen::VectorXd::Zero(l.size());
    for (int i = 1; i <= l.nx; ++i)
        for (int j = 0; j < l.ny; ++j)
            x[l.u(i, j)] = local.u(i, j);
    for (int i = 0; i < l.nx; ++i)
        for (int j = 1; j < l.ny; ++j)
            x[l.v(i, j)] = local.v(i, j);
    for (int j = 1; j < l.ny; ++j)
        x[l.vg(j)] = local.v_gamma[static_cast<std::size_t>(j)];
    for (int i = 0; i < l.nx; ++i)
        for (int j = 0; j < l.ny; ++j)
            x[l.p(i, j)] = local.p(i, j);
    return x;
}

StokesField canonical_field(const Eigen::VectorXd& x, const StokesLayout& l)
{
    StokesField f = StokesField::zeros(l.nx, l.ny);
    for (int i = 1; i <= l.nx; ++i)
        for (int j = 0; j < l.ny; ++j)
            f.u(i, j) = x[l.u(i, j)];
    for (int i = 0; i < l.nx; ++i)
        for (int j = 1; j < l.ny; ++j)
            f.v(i, j) = x[l.v(i, j)];
    for (int j = 1; j < l.ny; ++j)
        f.v_gamma[static_cast<std::size_t>(j)] = x[l.vg(j)];
    for (int i = 0; i < l.nx; ++i)
        for (int j = 0; j < l.ny; ++j)
            f.p(i, j) = x[l.p(i, j)];
    return f;
}

// Canonical-frame system; row r belongs to unknown r (momentum rows to
// velocity unknowns, interface rows to interface unknowns, continuity rows to
// pressure unknowns).
struct CanonicalStokes {
    StokesLayout layout;
    std::vector<Eigen::Triplet<double>> triplets;
    Eigen::VectorXd rhs;
};

void put(CanonicalStokes& sys, int row, const Stencil& s, double rhs)
{
    for (auto [col, value] : s.entries)
        sys.triplets.emplace_back(row, col, value);
    sys.rhs[row] = rhs;
}

CanonicalStokes assemble_canonical_stokes(const MacGrid& grid, Side side, const PhysicsParams& params,
                                          const InterfaceBcSpec& bc, const StokesForcing& forcing)
{
    if (!is_stokes_variant(bc.variant))
        throw std::invalid_argument("assemble_stokes: '" + std::string(variant_name(bc.variant)) +
                                    "' is not a Stokes interface condition");
    bc.validate(grid.ny);
    const StokesLayout l{grid.nx(side), grid.ny};
    const StokesStencils st(l, grid.h, params, localize(forcing, grid, side));
    CanonicalStokes sys{l, {}, Eigen::VectorXd::Zero(l.size())};
    sys.triplets.reserve(static_cast<std::size_t>(l.size()) * 8);

    for (int i = 1; i < l.nx; ++i)
        for (int j = 0; j < l.ny; ++j) {
            Stencil s = st.momentum_u(i, j);
            put(sys, l.u(i, j), s, s.source);
        }
    for (int i = 0; i < l.nx; ++i)
        for (int j = 1; j < l.ny; ++j) {
            Stencil s = st.momentum_v(i, j);
            put(sys, l.v(i, j), s, s.source);
        }

    const auto& data = bc.data.values;
    const bool dirichlet_un = bc.variant == BcVariant::kDirichletVelocity || bc.variant == BcVariant::kMixedCorrection;
    const bool dirichlet_ut = bc.variant == BcVariant::kDirichletVelocity || bc.variant == BcVariant::kMixedUpdate;
    for (int j = 0; j < l.ny; ++j) {
        const int row = l.u(l.nx, j);
        if (dirichlet_un) {
            sys.triplets.emplace_back(row, row, 1.0);
            sys.rhs[row] = data.at(Channel::kUn)[static_cast<std::size_t>(j)];
        } else {
            Stencil s = st.normal_stress(j);
            put(sys, row, s, data.at(Channel::kSigmaN)[static_cast<std::size_t>(j)] + s.source);
        }
    }
    for (int j = 1; j < l.ny; ++j) {
        const int row = l.vg(j);
        if (dirichlet_ut) {
            sys.triplets.emplace_back(row, row, 1.0);
            sys.rhs[row] = data.at(Channel::kUtau)[static_cast<std::size_t>(j - 1)];
        } else {
            Stencil s = st.tangential_stress(j);
            put(sys, row, s, data.at(Channel::kSigmaTau)[static_cast<std::size_t>(j - 1)] + s.source);
        }
    }

    const bool gauge = needs_pressure_gauge(bc.variant);
    for (int i = 0; i < l.nx; ++i)
        for (int j = 0; j < l.ny; ++j) {
            const int row = l.p(i, j);
            if (gauge && i == 0 && j == 0) {
                const double w = 1.0 / l.n_p();
                for (int ii = 0; ii < l.nx; ++ii)
                    for (int jj = 0; jj < l.ny; ++jj)
                        sys.triplets.emplace_back(row, l.p(ii, jj), w);
                sys.rhs[row] = bc.pressure_mean;
                continue;
            }
            put(sys, row, st.continuity(i, j), 0.0);
        }
    return sys;
}

// ---------------------------------------------------------------------------
// Bi-Laplacian, canonical frame: nodes xi = i h (i = 0 wall, i = nx interface),
// y = j h; unknowns at i = 1..nx, j = 1..ny-1.

struct PoissonLayout {
    int nx;
    int ny;
    int size() const { return nx * (ny - 1); }
    int at(int i, int j) const { return (i <= 0 || j <= 0 || j >= ny) ? -1 : (i - 1) * (ny - 1) + (j - 1); }
};

// Outward normal flux of z at interface node j, scaled by 1/kappa, without
// the source contribution: (z_G - z_prev)/h + (h/2) (-d2z/dy2).
Stencil poisson_flux(const PoissonLayout& l, double h, int j)
{
    Stencil s;
    const int center = l.at(l.nx, j);
    s.add(center, 1.0 / h);
    s.add(l.at(l.nx - 1, j), -1.0 / h);
    add_neg_second_difference(s, center, l.at(l.nx, j - 1), h, l.at(l.nx, j + 1), h, h / 2);
    return s;
}

Stencil poisson_interior(const PoissonLayout& l, double h, int i, int j)
{
    Stencil s;
    const int center = l.at(i, j);
    add_neg_second_difference(s, center, l.at(i - 1, j), h, l.at(i + 1, j), h, 1.0);
    add_neg_second_difference(s, center, l.at(i, j - 1), h, l.at(i, j + 1), h, 1.0);
    return s;
}

Eigen::VectorXd poisson_vector(const Array2D& local, const PoissonLayout& l)
{
    Eigen::VectorXd x(l.size());
    for (int i = 1; i <= l.nx; ++i)
        for (int j = 1; j < l.ny; ++j)
            x[l.at(i, j)] = local(i, j);
    return x;
}

Array2D mirror_nodes(const Array2D& a)
{
    Array2D m(a.rows(), a.cols());
    const int nx = a.rows() - 1;
    for (int i = 0; i <= nx; ++i)
        for (int j = 0; j < a.cols(); ++j)
            m(i, j) = a(nx - i, j);
    return m;
}

Array2D nodes_to_canonical(const Array2D& a, Side side) { return side == Side::kLeft ? a : mirror_nodes(a); }

void write_csv(const std::string& path, const std::vector<std::array<double, 3>>& rows)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out.precision(17);
    out << "x,y,value\n";
    for (const auto& r : rows)
        out << r[0] << ',' << r[1] << ',' << r[2] << '\n';
}

double x0_of(const MacGrid& grid, Side side) { return side == Side::kLeft ? -grid.a : 0.0; }

}  // namespace

MacGrid build_grid(double a, double b, double h)
{
    if (!(a > 0) || !(b > 0) || !(h > 0))
        throw std::invalid_argument("grid extents and mesh size must be positive");
    MacGrid g;
    g.a = a;
    g.b = b;
    g.h = h;
    g.nx_left = checked_cells(a, h, "A");
    g.nx_right = checked_cells(b, h, "B");
    g.ny = checked_cells(1.0, h, "height 1");
    if (g.ny < 2)
        throw std::invalid_argument("mesh size h must be at most 1/2");
    return g;
}

// ---------------------------------------------------------------------------

StokesField StokesField::zeros(int nx, int ny)
{
    StokesField f;
    f.nx = nx;
    f.ny = ny;
    f.u = Array2D(nx + 1, ny);
    f.v = Array2D(nx, ny + 1);
    f.p = Array2D(nx, ny);
    f.v_gamma.assign(static_cast<std::size_t>(ny + 1), 0.0);
    return f;
}

namespace {

template <typename Op>
void combine(std::vector<double>& a, const std::vector<double>& b, Op op)
{
    if (a.size() != b.size())
        throw std::invalid_argument("field shape mismatch");
    for (std::size_t k = 0; k < a.size(); ++k)
        a[k] = op(a[k], b[k]);
}

double max_abs_of(const std::vector<double>& a)
{
    double m = 0.0;
    for (double v : a)
        m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

StokesField& StokesField::operator+=(const StokesField& o)
{
    auto add = [](double x, double y) { return x + y; };
    combine(u.data(), o.u.data(), add);
    combine(v.data(), o.v.data(), add);
    combine(p.data(), o.p.data(), add);
    combine(v_gamma, o.v_gamma, add);
    return *this;
}

StokesField& StokesField::operator-=(const StokesField& o)
{
    auto sub = [](double x, double y) { return x - y; };
    combine(u.data(), o.u.data(), sub);
    combine(v.data(), o.v.data(), sub);
    combine(p.data(), o.p.data(), sub);
    combine(v_gamma, o.v_gamma, sub);
    return *this;
}

StokesField& StokesField::operator*=(double s)
{
    for (auto* a : {&u.data(), &v.data(), &p.data(), &v_gamma})
        for (double& x : *a)
            x *= s;
    return *this;
}

double StokesField::max_abs() const
{
    return std::max({max_abs_of(u.data()), max_abs_of(v.data()), max_abs_of(p.data()), max_abs_of(v_gamma)});
}

double StokesField::mean_pressure() const
{
    double s = 0.0;
    for (double x : p.data())
        s += x;
    return p.data().empty() ? 0.0 : s / static_cast<double>(p.data().size());
}

ScalarPair ScalarPair::zeros(int nx, int ny)
{
    return {nx, ny, Array2D(nx + 1, ny + 1), Array2D(nx + 1, ny + 1)};
}

ScalarPair& ScalarPair::operator+=(const ScalarPair& o)
{
    auto add = [](double x, double y) { return x + y; };
    combine(w.data(), o.w.data(), add);
    combine(phi.data(), o.phi.data(), add);
    return *this;
}

ScalarPair& ScalarPair::operator-=(const ScalarPair& o)
{
    auto sub = [](double x, double y) { return x - y; };
    combine(w.data(), o.w.data(), sub);
    combine(phi.data(), o.phi.data(), sub);
    return *this;
}

ScalarPair& ScalarPair::operator*=(double s)
{
    for (double& x : w.data())
        x *= s;
    for (double& x : phi.data())
        x *= s;
    return *this;
}

double ScalarPair::max_abs() const { return std::max(max_abs_of(w.data()), max_abs_of(phi.data())); }

StokesForcing StokesForcing::zero()
{
    return {[](double, double) { return 0.0; }, [](double, double) { return 0.0; }};
}

BilapForcing BilapForcing::zero()
{
    return {[](double, double) { return 0.0; }};
}

// ---------------------------------------------------------------------------

StokesManufactured make_stokes_manufactured(ForcingKind kind, const MacGrid& grid, const PhysicsParams& params)
{
    // psi(x, y) = Q(x) T(y); u = Q T', v = -Q' T.
    struct Profile {
        std::function<std::array<double, 4>(double)> q;  // Q, Q', Q'', Q'''
    };
    const double a = grid.a;
    const double b = grid.b;
    const double len = a + b;
    Profile prof;
    if (kind == ForcingKind::kTrig) {
        const double k = kPi / len;
        prof.q = [=](double x) {
            const double t = k * (x + a);
            const double s = std::sin(t);
            return std::array<double, 4>{s * s, k * std::sin(2 * t), 2 * k * k * std::cos(2 * t),
                                         -4 * k * k * k * std::sin(2 * t)};
        };
    } else {
        // x (x+a)^2 (x-b)^2 / len^5 expanded into monomial coefficients.
        std::vector<double> c{1.0};
        auto times_linear = [&c](double root) {
            std::vector<double> out(c.size() + 1, 0.0);
            for (std::size_t n = 0; n < c.size(); ++n) {
                out[n + 1] += c[n];
                out[n] -= root * c[n];
            }
            c = out;
        };
        for (double root : {0.0, -a, -a, b, b})
            times_linear(root);
        const double scale = std::pow(len, -5);
        for (double& v : c)
            v *= scale;
        prof.q = [c](double x) {
            std::array<double, 4> r{};
            for (int d = 0; d < 4; ++d) {
                double s = 0.0;
                for (int n = static_cast<int>(c.size()) - 1; n >= d; --n) {
                    double falling = 1.0;
                    for (int m = 0; m < d; ++m)
                        falling *= n - m;
                    s = s * x + falling * c[static_cast<std::size_t>(n)];
                }
                // Horner over n >= d yields sum falling * c_n x^(n-d).
                r[static_cast<std::size_t>(d)] = s;
            }
            return r;
        };
    }
    auto t = [](double y) {
        return std::array<double, 4>{std::pow(std::sin(kPi * y), 2), kPi * std::sin(2 * kPi * y),
                                     2 * kPi * kPi * std::cos(2 * kPi * y),
                                     -4 * kPi * kPi * kPi * std::sin(2 * kPi * y)};
    };
    const double nu = params.nu;
    const double c = params.c;
    StokesManufactured m;
    m.u = [=](double x, double y) { return prof.q(x)[0] * t(y)[1]; };
    m.v = [=](double x, double y) { return -prof.q(x)[1] * t(y)[0]; };
    m.p = [](double x, double y) { return std::cos(kPi * x) * std::cos(kPi * y); };
    m.forcing.fu = [=](double x, double y) {
        auto q = prof.q(x);
        auto ty = t(y);
        const double u = q[0] * ty[1];
        const double lap = q[2] * ty[1] + q[0] * ty[3];
        const double px = -kPi * std::sin(kPi * x) * std::cos(kPi * y);
        return c * u - nu * lap + px;
    };
    m.forcing.fv = [=](double x, double y) {
        auto q = prof.q(x);
        auto ty = t(y);
        const double v = -q[1] * ty[0];
        const double lap = -(q[3] * ty[0] + q[1] * ty[2]);
        const double py = -kPi * std::cos(kPi * x) * std::sin(kPi * y);
        return c * v - nu * lap + py;
    };
    return m;
}

BilapManufactured make_bilap_manufactured(const MacGrid& grid, double nu)
{
    const double k = kPi / (grid.a + grid.b);
    const double a = grid.a;
    const double kk = k * k + kPi * kPi;
    BilapManufactured m;
    m.w = [=](double x, double y) { return std::sin(k * (x + a)) * std::sin(kPi * y); };
    m.phi = [=](double x, double y) { return -kk * std::sin(k * (x + a)) * std::sin(kPi * y); };
    m.forcing.g = [=](double x, double y) { return -nu * kk * kk * std::sin(k * (x + a)) * std::sin(kPi * y); };
    return m;
}

StokesField sample_stokes(const StokesManufactured& exact, const MacGrid& grid, Side side)
{
    const int nx = grid.nx(side);
    const int ny = grid.ny;
    const double h = grid.h;
    const double x0 = x0_of(grid, side);
    StokesField f = StokesField::zeros(nx, ny);
    for (int i = 0; i <= nx; ++i)
        for (int j = 0; j < ny; ++j)
            f.u(i, j) = exact.u(x0 + i * h, (j + 0.5) * h);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j <= ny; ++j)
            f.v(i, j) = exact.v(x0 + (i + 0.5) * h, j * h);
        for (int j = 0; j < ny; ++j)
            f.p(i, j) = exact.p(x0 + (i + 0.5) * h, (j + 0.5) * h);
    }
    for (int j = 0; j <= ny; ++j)
        f.v_gamma[static_cast<std::size_t>(j)] = exact.v(0.0, j * h);
    return f;
}

ScalarPair sample_bilap(const BilapManufactured& exact, const MacGrid& grid, Side side)
{
    const int nx = grid.nx(side);
    const double x0 = x0_of(grid, side);
    ScalarPair s = ScalarPair::zeros(nx, grid.ny);
    for (int i = 0; i <= nx; ++i)
        for (int j = 0; j <= grid.ny; ++j) {
            s.w(i, j) = exact.w(x0 + i * grid.h, j * grid.h);
            s.phi(i, j) = exact.phi(x0 + i * grid.h, j * grid.h);
        }
    return s;
}

// ---------------------------------------------------------------------------

LinearSystem assemble_stokes(const MacGrid& grid, Side side, const PhysicsParams& params, const InterfaceBcSpec& bc,
                             const StokesForcing& forcing)
{
    CanonicalStokes c = assemble_canonical_stokes(grid, side, params, bc, forcing);
    LinearSystem sys;
    sys.matrix.resize(c.layout.size(), c.layout.size());
    sys.matrix.setFromTriplets(c.triplets.begin(), c.triplets.end());
    sys.rhs = std::move(c.rhs);
    sys.unknowns = stokes_unknowns(c.layout, side);
    return sys;
}

StokesField stokes_field_from_solution(const MacGrid& grid, Side side, const UnknownMap& unknowns,
                                       const Eigen::VectorXd& x)
{
    const StokesLayout l{grid.nx(side), grid.ny};
    if (unknowns.size() != l.size() || x.size() != l.size())
        throw std::invalid_argument("solution vector does not match the subdomain layout");
    // Canonical ordering is the unknown ordering.
    StokesField local = canonical_field(x, l);
    return side == Side::kLeft ? local : mirror(local);
}

InterfaceTrace extract_stokes_trace(const StokesField& field, const MacGrid& grid, Side side,
                                    const PhysicsParams& params, const StokesForcing& forcing)
{
    const StokesLayout l{grid.nx(side), grid.ny};
    if (field.nx != l.nx || field.ny != l.ny)
        throw std::invalid_argument("field shape does not match the subdomain");
    const StokesField local = to_canonical(field, side);
    const Eigen::VectorXd x = canonical_vector(local, l);
    const StokesStencils st(l, grid.h, params, localize(forcing, grid, side));

    InterfaceTrace t;
    t.kind = TraceKind::kStokes;
    auto& un = t[Channel::kUn];
    auto& sn = t[Channel::kSigmaN];
    auto& ut = t[Channel::kUtau];
    auto& stau = t[Channel::kSigmaTau];
    for (int j = 0; j < l.ny; ++j) {
        un.push_back(local.u(l.nx, j));
        Stencil s = st.normal_stress(j);
        sn.push_back(s.apply(x) - s.source);
    }
    for (int j = 1; j < l.ny; ++j) {
        ut.push_back(local.v_gamma[static_cast<std::size_t>(j)]);
        Stencil s = st.tangential_stress(j);
        stau.push_back(s.apply(x) - s.source);
    }
    return t;
}

double max_divergence(const StokesField& f, double h)
{
    double m = 0.0;
    for (int i = 0; i < f.nx; ++i)
        for (int j = 0; j < f.ny; ++j) {
            const double div = (f.u(i + 1, j) - f.u(i, j)) / h + (f.v(i, j + 1) - f.v(i, j)) / h;
            m = std::max(m, std::abs(div));
        }
    return m;
}

// ---------------------------------------------------------------------------

BilapSystem assemble_bilaplacian(const MacGrid& grid, Side side, double nu, const InterfaceBcSpec& bc,
                                 const BilapForcing& forcing)
{
    if (bc.variant != BcVariant::kBilapNeumann && bc.variant != BcVariant::kBilapDirichlet)
        throw std::invalid_argument("assemble_bilaplacian: '" + std::string(variant_name(bc.variant)) +
                                    "' is not a bi-Laplacian interface condition");
    bc.validate(grid.ny);
    const PoissonLayout l{grid.nx(side), grid.ny};
    const double h = grid.h;
    const bool neumann = bc.variant == BcVariant::kBilapNeumann;
    auto g = [&](int i, int j) { return forcing.g(grid.x_of(side, i * h), j * h); };

    std::vector<Eigen::Triplet<double>> tphi, tw, tc;
    Eigen::VectorXd rphi = Eigen::VectorXd::Zero(l.size());
    Eigen::VectorXd rw = Eigen::VectorXd::Zero(l.size());
    auto put = [](std::vector<Eigen::Triplet<double>>& t, int row, const Stencil& s, double scale) {
        for (auto [col, value] : s.entries)
            t.emplace_back(row, col, scale * value);
    };

    // -nu lap phi = g and -lap w = -phi.
    for (int i = 1; i < l.nx; ++i)
        for (int j = 1; j < l.ny; ++j) {
            const int row = l.at(i, j);
            Stencil s = poisson_interior(l, h, i, j);
            put(tphi, row, s, nu);
            rphi[row] = g(i, j);
            put(tw, row, s, 1.0);
            tc.emplace_back(row, row, -1.0);
        }
    for (int j = 1; j < l.ny; ++j) {
        const int row = l.at(l.nx, j);
        const std::size_t k = static_cast<std::size_t>(j - 1);
        if (neumann) {
            Stencil s = poisson_flux(l, h, j);
            put(tphi, row, s, 1.0);
            rphi[row] = bc.data.at(Channel::kDnLapW)[k] + h / 2 * g(l.nx, j) / nu;
            put(tw, row, s, 1.0);
            rw[row] = bc.data.at(Channel::kDnW)[k];
            tc.emplace_back(row, row, -h / 2);
        } else {
            tphi.emplace_back(row, row, 1.0);
            rphi[row] = bc.data.at(Channel::kLapW)[k];
            tw.emplace_back(row, row, 1.0);
            rw[row] = bc.data.at(Channel::kW)[k];
        }
    }

    BilapSystem sys;
    const int n = l.size();
    sys.phi.matrix.resize(n, n);
    sys.phi.matrix.setFromTriplets(tphi.begin(), tphi.end());
    sys.phi.rhs = std::move(rphi);
    sys.w.matrix.resize(n, n);
    sys.w.matrix.setFromTriplets(tw.begin(), tw.end());
    sys.w.rhs = std::move(rw);
    sys.coupling.resize(n, n);
    sys.coupling.setFromTriplets(tc.begin(), tc.end());
    for (int i = 1; i <= l.nx; ++i)
        for (int j = 1; j < l.ny; ++j) {
            const int gi = global_column(side, l.nx, i);
            sys.phi.unknowns.add({Unknown::kPhi, gi, j});
            sys.w.unknowns.add({Unknown::kW, gi, j});
        }
    return sys;
}

ScalarPair scalar_pair_from_solution(const MacGrid& grid, Side side, const UnknownMap& unknowns,
                                     const Eigen::VectorXd& phi, const Eigen::VectorXd& w)
{
    const PoissonLayout l{grid.nx(side), grid.ny};
    if (unknowns.size() != l.size() || phi.size() != l.size() || w.size() != l.size())
        throw std::invalid_argument("solution vectors do not match the subdomain layout");
    ScalarPair s = ScalarPair::zeros(l.nx, l.ny);
    for (int i = 1; i <= l.nx; ++i)
        for (int j = 1; j < l.ny; ++j) {
            const int gi = global_column(side, l.nx, i);
            s.w(gi, j) = w[l.at(i, j)];
            s.phi(gi, j) = phi[l.at(i, j)];
        }
    return s;
}

InterfaceTrace extract_bilap_trace(const ScalarPair& pair, const MacGrid& grid, Side side, double nu,
                                   const BilapForcing& forcing)
{
    const PoissonLayout l{grid.nx(side), grid.ny};
    if (pair.nx != l.nx || pair.ny != l.ny)
        throw std::invalid_argument("scalar pair shape does not match the subdomain");
    const double h = grid.h;
    const Array2D w = nodes_to_canonical(pair.w, side);
    const Array2D phi = nodes_to_canonical(pair.phi, side);
    const Eigen::VectorXd xw = poisson_vector(w, l);
    const Eigen::VectorXd xphi = poisson_vector(phi, l);

    InterfaceTrace t;
    t.kind = TraceKind::kBilaplacian;
    for (int j = 1; j < l.ny; ++j) {
        Stencil s = poisson_flux(l, h, j);
        const double g = forcing.g(grid.x_of(side, l.nx * h), j * h);
        t[Channel::kW].push_back(w(l.nx, j));
        t[Channel::kLapW].push_back(phi(l.nx, j));
        t[Channel::kDnW].push_back(s.apply(xw) + h / 2 * phi(l.nx, j));
        t[Channel::kDnLapW].push_back(s.apply(xphi) - h / 2 * g / nu);
    }
    return t;
}

// ---------------------------------------------------------------------------

StokesSingleDomain solve_stokes_single_domain(const MacGrid& grid, const PhysicsParams& params,
                                              const StokesForcing& forcing)
{
    // Both halves with flux rows on the interface, then glue.
    const InterfaceBcSpec flux = InterfaceBcSpec::zero(BcVariant::kStress, grid.ny);
    const CanonicalStokes left = assemble_canonical_stokes(grid, Side::kLeft, params, flux, forcing);
    const CanonicalStokes right = assemble_canonical_stokes(grid, Side::kRight, params, flux, forcing);
    const StokesLayout& ll = left.layout;
    const StokesLayout& rl = right.layout;
    const int n_left = ll.size();

    // Right-local unknown -> (global column, sign); interface unknowns are shared
    // and the canonical right normal velocity is minus the global one.
    std::vector<int> col(static_cast<std::size_t>(rl.size()), -1);
    std::vector<double> sign(static_cast<std::size_t>(rl.size()), 1.0);
    std::vector<int> rhs_row_sign(static_cast<std::size_t>(rl.size()), 0);
    for (int j = 0; j < rl.ny; ++j) {
        const auto r = static_cast<std::size_t>(rl.u(rl.nx, j));
        col[r] = ll.u(ll.nx, j);
        sign[r] = -1.0;
        rhs_row_sign[r] = -1;  // sigma_n1 - sigma_n2 = 0
    }
    for (int j = 1; j < rl.ny; ++j) {
        const auto r = static_cast<std::size_t>(rl.vg(j));
        col[r] = ll.vg(j);
        rhs_row_sign[r] = 1;  // sigma_tau1 + sigma_tau2 = 0
    }
    int next = n_left;
    std::vector<int> row_of(static_cast<std::size_t>(rl.size()), -1);
    for (int r = 0; r < rl.size(); ++r)
        if (col[static_cast<std::size_t>(r)] < 0) {
            col[static_cast<std::size_t>(r)] = next;
            row_of[static_cast<std::size_t>(r)] = next;
            ++next;
        }
    const int n = next;

    const int gauge_row = ll.p(0, 0);
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(left.triplets.size() + right.triplets.size());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (const auto& t : left.triplets)
        if (t.row() != gauge_row)
            triplets.push_back(t);
    rhs.head(n_left) = left.rhs;
    for (const auto& t : right.triplets) {
        const auto r = static_cast<std::size_t>(t.row());
        const auto c = static_cast<std::size_t>(t.col());
        const double value = t.value() * sign[c];
        if (row_of[r] >= 0)
            triplets.emplace_back(row_of[r], col[c], value);
        else
            triplets.emplace_back(col[r], col[c], rhs_row_sign[r] * value);
    }
    for (int r = 0; r < rl.size(); ++r) {
        const auto k = static_cast<std::size_t>(r);
        if (row_of[k] >= 0)
            rhs[row_of[k]] = right.rhs[r];
        else
            rhs[col[k]] += rhs_row_sign[k] * right.rhs[r];
    }
    // Zero mean pressure over the rectangle replaces one continuity row.
    rhs[gauge_row] = 0.0;
    const double w = 1.0 / (ll.n_p() + rl.n_p());
    for (int i = 0; i < ll.nx; ++i)
        for (int j = 0; j < ll.ny; ++j)
            triplets.emplace_back(gauge_row, ll.p(i, j), w);
    for (int i = 0; i < rl.nx; ++i)
        for (int j = 0; j < rl.ny; ++j)
            triplets.emplace_back(gauge_row, col[static_cast<std::size_t>(rl.p(i, j))], w);

    SparseRowMatrix a(n, n);
    a.setFromTriplets(triplets.begin(), triplets.end());
    LinearSystem sys{std::move(a), std::move(rhs), {}};
    const Eigen::VectorXd x = solve(sys);

    Eigen::VectorXd xl = x.head(n_left);
    Eigen::VectorXd xr(rl.size());
    for (int r = 0; r < rl.size(); ++r)
        xr[r] = sign[static_cast<std::size_t>(r)] * x[col[static_cast<std::size_t>(r)]];
    return {canonical_field(xl, ll), mirror(canonical_field(xr, rl))};
}

BilapSingleDomain solve_bilap_single_domain(const MacGrid& grid, double nu, const BilapForcing& forcing)
{
    const int nx = grid.nx_left + grid.nx_right;
    const int ny = grid.ny;
    const double h = grid.h;
    // Interior nodes of the full rectangle, x = -A + i h.
    auto at = [&](int i, int j) { return (i <= 0 || i >= nx || j <= 0 || j >= ny) ? -1 : (i - 1) * (ny - 1) + (j - 1); };
    const int n = (nx - 1) * (ny - 1);
    std::vector<Eigen::Triplet<double>> t;
    Eigen::VectorXd g(n);
    for (int i = 1; i < nx; ++i)
        for (int j = 1; j < ny; ++j) {
            const int row = at(i, j);
            t.emplace_back(row, row, 4.0 / (h * h));
            for (int nb : {at(i - 1, j), at(i + 1, j), at(i, j - 1), at(i, j + 1)})
                if (nb >= 0)
                    t.emplace_back(row, nb, -1.0 / (h * h));
            g[row] = forcing.g(-grid.a + i * h, j * h);
        }
    SparseRowMatrix lap(n, n);
    lap.setFromTriplets(t.begin(), t.end());
    DirectSolver solver(lap);
    const Eigen::VectorXd phi = solver.solve(g / nu);
    const Eigen::VectorXd w = solver.solve(-phi);

    BilapSingleDomain out{ScalarPair::zeros(grid.nx_left, ny), ScalarPair::zeros(grid.nx_right, ny)};
    for (int i = 1; i < nx; ++i)
        for (int j = 1; j < ny; ++j) {
            const int k = at(i, j);
            if (i <= grid.nx_left) {
                out.left.w(i, j) = w[k];
                out.left.phi(i, j) = phi[k];
            }
            if (i >= grid.nx_left) {
                out.right.w(i - grid.nx_left, j) = w[k];
                out.right.phi(i - grid.nx_left, j) = phi[k];
            }
        }
    return out;
}

// ---------------------------------------------------------------------------

void dump_stokes_field_csv(const std::string& prefix, const StokesField& f, const MacGrid& grid, Side side)
{
    const double h = grid.h;
    const double x0 = x0_of(grid, side);
    std::vector<std::array<double, 3>> u, v, p;
    for (int i = 0; i <= f.nx; ++i)
        for (int j = 0; j < f.ny; ++j)
            u.push_back({x0 + i * h, (j + 0.5) * h, f.u(i, j)});
    for (int i = 0; i < f.nx; ++i)
        for (int j = 0; j <= f.ny; ++j)
            v.push_back({x0 + (i + 0.5) * h, j * h, f.v(i, j)});
    for (int j = 0; j <= f.ny; ++j)
        v.push_back({0.0, j * h, f.v_gamma[static_cast<std::size_t>(j)]});
    for (int i = 0; i < f.nx; ++i)
        for (int j = 0; j < f.ny; ++j)
            p.push_back({x0 + (i + 0.5) * h, (j + 0.5) * h, f.p(i, j)});
    write_csv(prefix + "_u.csv", u);
    write_csv(prefix + "_v.csv", v);
    write_csv(prefix + "_p.csv", p);
}

void dump_scalar_pair_csv(const std::string& prefix, const ScalarPair& s, const MacGrid& grid, Side side)
{
    const double x0 = x0_of(grid, side);
    std::vector<std::array<double, 3>> w, phi;
    for (int i = 0; i <= s.nx; ++i)
        for (int j = 0; j <= s.ny; ++j) {
            w.push_back({x0 + i * grid.h, j * grid.h, s.w(i, j)});
            phi.push_back({x0 + i * grid.h, j * grid.h, s.phi(i, j)});
        }
    write_csv(prefix + "_w.csv", w);
    write_csv(prefix + "_phi.csv", phi);
}

}  // namespace smithdd
