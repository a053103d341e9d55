#include "doctest.h"

#include "smithdd/grid.hpp"

#include <cmath>

using namespace smithdd;

namespace {

double max_u_error(const StokesField& f, const StokesField& exact)
{
    double m = 0.0;
    for (std::size_t k = 0; k < f.u.data().size(); ++k)
        m = std::max(m, std::abs(f.u.data()[k] - exact.u.data()[k]));
    for (std::size_t k = 0; k < f.v.data().size(); ++k)
        m = std::max(m, std::abs(f.v.data()[k] - exact.v.data()[k]));
    return m;
}

double max_p_error(const StokesField& f, const StokesField& exact)
{
    double m = 0.0;
    for (std::size_t k = 0; k < f.p.data().size(); ++k)
        m = std::max(m, std::abs(f.p.data()[k] - exact.p.data()[k]));
    return m;
}

double max_diff(const Array2D& a, const Array2D& b)
{
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k)
        m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

double max_diff(const StokesField& a, const StokesField& b)
{
    StokesField d = a;
    d -= b;
    return d.max_abs();
}

struct StokesErrors {
    double velocity;
    double pressure;
};

StokesErrors single_domain_errors(ForcingKind kind, double a, double b, double h, const PhysicsParams& params)
{
    MacGrid g = build_grid(a, b, h);
    StokesManufactured m = make_stokes_manufactured(kind, g, params);
    StokesSingleDomain s = solve_stokes_single_domain(g, params, m.forcing);
    StokesField el = sample_stokes(m, g, Side::kLeft);
    StokesField er = sample_stokes(m, g, Side::kRight);
    return {std::max(max_u_error(s.left, el), max_u_error(s.right, er)),
            std::max(max_p_error(s.left, el), max_p_error(s.right, er))};
}

}  // namespace

TEST_CASE("grid cell counts")
{
    MacGrid g = build_grid(1.0, 2.0, 0.1);
    CHECK(g.nx_left == 10);
    CHECK(g.nx_right == 20);
    CHECK(g.ny == 10);
    CHECK(g.x_of(Side::kLeft, 0.0) == -1.0);
    CHECK(g.x_of(Side::kRight, 0.0) == 2.0);
    CHECK(g.x_of(Side::kRight, 2.0) == 0.0);
}

TEST_CASE("grid rejects a mesh size that does not divide the extents")
{
    CHECK_THROWS_WITH_AS(build_grid(1.0, 1.0, 0.3), doctest::Contains("A = 1"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(build_grid(1.0, 1.5, 0.2), doctest::Contains("B = 1.5"), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(1.0, 1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("stress traces of a linear velocity and a constant pressure")
{
    MacGrid g = build_grid(1.0, 1.0, 0.125);
    PhysicsParams params{2.0, 0.0};
    for (Side side : {Side::kLeft, Side::kRight}) {
        StokesField f = StokesField::zeros(g.nx(side), g.ny);
        const double x0 = side == Side::kLeft ? -1.0 : 0.0;
        for (int i = 0; i <= f.nx; ++i)
            for (int j = 0; j < f.ny; ++j)
                f.u(i, j) = x0 + i * g.h;
        InterfaceTrace t = extract_stokes_trace(f, g, side, params, StokesForcing::zero());
        // u = x vanishes on x = 0, and d(u.n)/dn = 1 from either side.
        for (double s : t.at(Channel::kSigmaN))
            CHECK(s == doctest::Approx(2.0));
        for (double s : t.at(Channel::kUn))
            CHECK(s == doctest::Approx(0.0));

        StokesField q = StokesField::zeros(g.nx(side), g.ny);
        for (double& p : q.p.data())
            p = 3.0;
        InterfaceTrace tq = extract_stokes_trace(q, g, side, params, StokesForcing::zero());
        for (double s : tq.at(Channel::kSigmaN))
            CHECK(s == doctest::Approx(-3.0));
        for (double s : tq.at(Channel::kSigmaTau))
            CHECK(s == doctest::Approx(0.0));
    }
}

TEST_CASE("own-frame normal velocity flips sign across the interface")
{
    MacGrid g = build_grid(1.0, 1.0, 0.25);
    for (Side side : {Side::kLeft, Side::kRight}) {
        StokesField f = StokesField::zeros(g.nx(side), g.ny);
        for (double& u : f.u.data())
            u = 1.0;
        InterfaceTrace t = extract_stokes_trace(f, g, side, {}, StokesForcing::zero());
        const double expected = side == Side::kLeft ? 1.0 : -1.0;
        for (double s : t.at(Channel::kUn))
            CHECK(s == expected);
    }
}

TEST_CASE("normal derivative trace of w = x")
{
    MacGrid g = build_grid(1.0, 1.0, 0.125);
    for (Side side : {Side::kLeft, Side::kRight}) {
        ScalarPair s = ScalarPair::zeros(g.nx(side), g.ny);
        const double x0 = side == Side::kLeft ? -1.0 : 0.0;
        for (int i = 0; i <= s.nx; ++i)
            for (int j = 1; j < s.ny; ++j)
                s.w(i, j) = x0 + i * g.h;
        InterfaceTrace t = extract_bilap_trace(s, g, side, 1.0, BilapForcing::zero());
        const double expected = side == Side::kLeft ? 1.0 : -1.0;
        for (double d : t.at(Channel::kDnW))
            CHECK(d == doctest::Approx(expected));
        for (double w : t.at(Channel::kW))
            CHECK(w == doctest::Approx(0.0));
    }
}

TEST_CASE("assembled subdomain system has one row per unknown")
{
    MacGrid g = build_grid(1.0, 2.0, 0.25);
    for (BcVariant v : {BcVariant::kDirichletVelocity, BcVariant::kStress, BcVariant::kMixedCorrection,
                        BcVariant::kMixedUpdate}) {
        LinearSystem sys = assemble_stokes(g, Side::kRight, {}, InterfaceBcSpec::zero(v, g.ny), StokesForcing::zero());
        const int n = 8 * 4 + 8 * 3 + 3 + 8 * 4;  // u, v, v_gamma, p
        CHECK(sys.matrix.rows() == n);
        CHECK(sys.matrix.cols() == n);
        CHECK(sys.unknowns.size() == n);
        CHECK(sys.unknowns.index({Unknown::kU, 0, 0}) >= 0);   // interface column of the right side
        CHECK(sys.unknowns.index({Unknown::kU, 8, 0}) == -1);  // outer wall
        CHECK(sys.unknowns.index({Unknown::kVGamma, 0, 1}) >= 0);
    }
}

TEST_CASE("assembly rejects mismatched interface data")
{
    MacGrid g = build_grid(1.0, 1.0, 0.25);
    CHECK_THROWS_AS(assemble_stokes(g, Side::kLeft, {}, InterfaceBcSpec::zero(BcVariant::kStress, 3),
                                    StokesForcing::zero()),
                    std::invalid_argument);
    CHECK_THROWS_AS(assemble_stokes(g, Side::kLeft, {}, InterfaceBcSpec::zero(BcVariant::kBilapNeumann, 4),
                                    StokesForcing::zero()),
                    std::invalid_argument);
    CHECK_THROWS_AS(assemble_bilaplacian(g, Side::kLeft, 1.0, InterfaceBcSpec::zero(BcVariant::kStress, 4),
                                         BilapForcing::zero()),
                    std::invalid_argument);
}

TEST_CASE("single-domain Stokes solution is discretely divergence free with zero-mean pressure")
{
    MacGrid g = build_grid(1.0, 2.0, 0.0625);
    PhysicsParams params{0.7, 0.3};
    StokesManufactured m = make_stokes_manufactured(ForcingKind::kTrig, g, params);
    StokesSingleDomain s = solve_stokes_single_domain(g, params, m.forcing);
    CHECK(max_divergence(s.left, g.h) < 1e-10);
    CHECK(max_divergence(s.right, g.h) < 1e-10);
    const double mean = (s.left.mean_pressure() * g.nx_left + s.right.mean_pressure() * g.nx_right) /
                        (g.nx_left + g.nx_right);
    CHECK(std::abs(mean) < 1e-12);
    for (int j = 0; j < g.ny; ++j)
        CHECK(s.left.u(g.nx_left, j) == doctest::Approx(s.right.u(0, j)).epsilon(1e-12));
}

TEST_CASE("single-domain Stokes converges at second order")
{
    for (ForcingKind kind : {ForcingKind::kTrig, ForcingKind::kPoly}) {
        PhysicsParams params{1.0, 0.5};
        StokesErrors coarse = single_domain_errors(kind, 1.0, 1.0, 1.0 / 16, params);
        StokesErrors fine = single_domain_errors(kind, 1.0, 1.0, 1.0 / 32, params);
        const double slope = std::log2(coarse.velocity / fine.velocity);
        MESSAGE("velocity slope " << slope << ", pressure slope " << std::log2(coarse.pressure / fine.pressure));
        CHECK(slope >= 1.8);
        CHECK(fine.velocity < 1e-2);
    }
}

TEST_CASE("single-domain bi-Laplacian converges at second order")
{
    double previous = 0.0;
    for (double h : {1.0 / 16, 1.0 / 32}) {
        MacGrid g = build_grid(1.0, 2.0, h);
        BilapManufactured m = make_bilap_manufactured(g, 1.3);
        BilapSingleDomain s = solve_bilap_single_domain(g, 1.3, m.forcing);
        const double err = std::max(max_diff(s.left.w, sample_bilap(m, g, Side::kLeft).w),
                                    max_diff(s.right.w, sample_bilap(m, g, Side::kRight).w));
        if (previous > 0.0)
            CHECK(std::log2(previous / err) >= 1.8);
        previous = err;
    }
}

TEST_CASE("subdomain problem with glued interface data reproduces the single-domain solution")
{
    MacGrid g = build_grid(1.0, 1.5, 0.125);
    PhysicsParams params{0.8, 1.0};
    StokesManufactured m = make_stokes_manufactured(ForcingKind::kTrig, g, params);
    StokesSingleDomain s = solve_stokes_single_domain(g, params, m.forcing);
    for (Side side : {Side::kLeft, Side::kRight}) {
        const StokesField& ref = side == Side::kLeft ? s.left : s.right;
        InterfaceTrace t = extract_stokes_trace(ref, g, side, params, m.forcing);
        for (BcVariant v : {BcVariant::kDirichletVelocity, BcVariant::kStress, BcVariant::kMixedCorrection,
                            BcVariant::kMixedUpdate}) {
            InterfaceBcSpec bc = InterfaceBcSpec::zero(v, g.ny);
            for (auto& [ch, values] : bc.data.values)
                values = t.at(ch);
            bc.pressure_mean = ref.mean_pressure();
            LinearSystem sys = assemble_stokes(g, side, params, bc, m.forcing);
            StokesField f = stokes_field_from_solution(g, side, sys.unknowns, solve(sys));
            CAPTURE(variant_name(v));
            CHECK(max_diff(f, ref) < 1e-9);
        }
    }
}

TEST_CASE("bi-Laplacian subdomain problems reproduce the single-domain solution")
{
    MacGrid g = build_grid(2.0, 1.0, 0.125);
    const double nu = 0.9;
    BilapManufactured m = make_bilap_manufactured(g, nu);
    BilapSingleDomain s = solve_bilap_single_domain(g, nu, m.forcing);
    for (Side side : {Side::kLeft, Side::kRight}) {
        const ScalarPair& ref = side == Side::kLeft ? s.left : s.right;
        InterfaceTrace t = extract_bilap_trace(ref, g, side, nu, m.forcing);
        for (BcVariant v : {BcVariant::kBilapNeumann, BcVariant::kBilapDirichlet}) {
            InterfaceBcSpec bc = InterfaceBcSpec::zero(v, g.ny);
            for (auto& [ch, values] : bc.data.values)
                values = t.at(ch);
            BilapSystem sys = assemble_bilaplacian(g, side, nu, bc, m.forcing);
            Eigen::VectorXd phi = solve(sys.phi);
            LinearSystem w = sys.w;
            w.rhs += sys.coupling * phi;
            ScalarPair f = scalar_pair_from_solution(g, side, w.unknowns, phi, solve(w));
            CAPTURE(variant_name(v));
            CHECK(max_diff(f.w, ref.w) < 1e-9);
            CHECK(max_diff(f.phi, ref.phi) < 1e-9);
        }
    }
}

TEST_CASE("field arithmetic")
{
    StokesField a = StokesField::zeros(2, 2);
    a.u(1, 0) = 2.0;
    a.p(0, 1) = -4.0;
    StokesField b = a;
    b *= 0.5;
    a -= b;
    CHECK(a.u(1, 0) == 1.0);
    CHECK(a.max_abs() == 2.0);
    CHECK(a.mean_pressure() == -0.5);
    StokesField c = StokesField::zeros(3, 2);
    CHECK_THROWS_AS(a += c, std::invalid_argument);
}
