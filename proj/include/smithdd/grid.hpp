#pragma once

// Staggered (MAC) finite differences for the Stokes system and node-based
// 5-point differences for the mixed-form bi-Laplacian, on the two
// subdomains (-A,0)x(0,1) and (0,B)x(0,1) of a rectangle split at x = 0.
//
// Conventions on the interface x = 0:
//   n1 = (1,0) on the left, n2 = (-1,0) on the right, tau = (0,1) on both.
// Trace channels are stored in each subdomain's own frame: u_n = u.n_i,
// sigma_n = (sigma n_i).n_i, sigma_tau = (sigma n_i).tau, dn_* = d/dn_i.
// With sigma(u,p) n = nu du/dn - p n, continuity across the interface reads
//   u_n1 + u_n2 = 0, u_tau1 = u_tau2, sigma_n1 = sigma_n2, sigma_tau1 + sigma_tau2 = 0.

#include "smithdd/interface.hpp"
#include "smithdd/linear_system.hpp"

#include <functional>
#include <string>
#include <vector>

namespace smithdd {

enum class Side { kLeft, kRight };

inline Side other(Side s) { return s == Side::kLeft ? Side::kRight : Side::kLeft; }

struct MacGrid {
    double a = 1.0;
    double b = 1.0;
    double h = 0.1;
    int nx_left = 0;
    int nx_right = 0;
    int ny = 0;

    int nx(Side s) const { return s == Side::kLeft ? nx_left : nx_right; }
    double width(Side s) const { return s == Side::kLeft ? a : b; }
    /// Global x of the local coordinate xi (distance from the outer wall).
    double x_of(Side s, double xi) const { return s == Side::kLeft ? xi - a : b - xi; }
};

/// Throws std::invalid_argument when A/h, B/h or 1/h is not an integer.
MacGrid build_grid(double a, double b, double h);

struct PhysicsParams {
    double nu = 1.0;
    double c = 0.0;
};

class Array2D {
public:
    Array2D() = default;
    Array2D(int rows, int cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), value)
    {
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    friend bool operator==(const Array2D&, const Array2D&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// Velocity and pressure on one subdomain, indexed in global x order.
///   u(i,j): x-velocity at x = x0 + i h, y = (j+1/2) h       (nx+1) x ny
///   v(i,j): y-velocity at x = x0 + (i+1/2) h, y = j h       nx x (ny+1)
///   p(i,j): pressure at cell centres                        nx x ny
///   v_gamma(j): y-velocity on the interface at y = j h      ny+1
/// x0 = -A on the left and 0 on the right. Wall values are stored as zeros.
struct StokesField {
    int nx = 0;
    int ny = 0;
    Array2D u;
    Array2D v;
    Array2D p;
    std::vector<double> v_gamma;

    static StokesField zeros(int nx, int ny);
    StokesField& operator+=(const StokesField& o);
    StokesField& operator-=(const StokesField& o);
    StokesField& operator*=(double s);
    double max_abs() const;
    double mean_pressure() const;
};

/// w and phi = lap(w) at grid nodes, (nx+1) x (ny+1), global x order.
struct ScalarPair {
    int nx = 0;
    int ny = 0;
    Array2D w;
    Array2D phi;

    static ScalarPair zeros(int nx, int ny);
    ScalarPair& operator+=(const ScalarPair& o);
    ScalarPair& operator-=(const ScalarPair& o);
    ScalarPair& operator*=(double s);
    double max_abs() const;
};

using PointFunction = std::function<double(double, double)>;

/// Right-hand side (f_u, f_v) of the momentum equations in global coordinates.
struct StokesForcing {
    PointFunction fu;
    PointFunction fv;
    static StokesForcing zero();
};

/// g in -nu lap^2 w = g, global coordinates.
struct BilapForcing {
    PointFunction g;
    static BilapForcing zero();
};

/// Polynomial/trigonometric manufactured solutions used for forcing and verification.
enum class ForcingKind {
    // psi = sin^2(pi (x+A)/(A+B)) sin^2(pi y), p = cos(pi x) cos(pi y)
    kTrig,
    // psi = x (x+A)^2 (x-B)^2 sin^2(pi y) / (A+B)^5, p = cos(pi x) cos(pi y)
    kPoly,
};

struct StokesManufactured {
    PointFunction u;
    PointFunction v;
    PointFunction p;
    StokesForcing forcing;
};

StokesManufactured make_stokes_manufactured(ForcingKind kind, const MacGrid& grid, const PhysicsParams& params);

struct BilapManufactured {
    PointFunction w;
    PointFunction phi;
    BilapForcing forcing;
};

/// w = sin(pi (x+A)/(A+B)) sin(pi y); phi = lap w; g = -nu lap^2 w.
BilapManufactured make_bilap_manufactured(const MacGrid& grid, double nu);

/// Samples the exact fields onto a subdomain's staggered locations.
StokesField sample_stokes(const StokesManufactured& exact, const MacGrid& grid, Side side);
ScalarPair sample_bilap(const BilapManufactured& exact, const MacGrid& grid, Side side);

/// Subdomain Stokes system. Unknown keys use global-order indices (as StokesField).
LinearSystem assemble_stokes(const MacGrid& grid, Side side, const PhysicsParams& params, const InterfaceBcSpec& bc,
                             const StokesForcing& forcing);

/// Scatters a solution vector of assemble_stokes back into a field.
StokesField stokes_field_from_solution(const MacGrid& grid, Side side, const UnknownMap& unknowns,
                                       const Eigen::VectorXd& x);

/// Chained Poisson systems: solve phi with `phi`, then w with rhs = w.rhs + coupling * phi.
struct BilapSystem {
    LinearSystem phi;
    LinearSystem w;
    SparseRowMatrix coupling;
};

BilapSystem assemble_bilaplacian(const MacGrid& grid, Side side, double nu, const InterfaceBcSpec& bc,
                                 const BilapForcing& forcing);

ScalarPair scalar_pair_from_solution(const MacGrid& grid, Side side, const UnknownMap& unknowns,
                                     const Eigen::VectorXd& phi, const Eigen::VectorXd& w);

/// Traces on the interface: u_n, u_tau (ny-1 interior nodes), sigma_n, sigma_tau.
/// Stress traces are the discrete fluxes of the half control volumes adjacent
/// to the interface, so imposing them through the same rows is exact.
InterfaceTrace extract_stokes_trace(const StokesField& field, const MacGrid& grid, Side side,
                                    const PhysicsParams& params, const StokesForcing& forcing);

InterfaceTrace extract_bilap_trace(const ScalarPair& pair, const MacGrid& grid, Side side, double nu,
                                   const BilapForcing& forcing);

/// Monolithic discretization of the whole rectangle: the two subdomain
/// discretizations glued by continuity of (u, v_gamma) and balance of their
/// interface fluxes, with zero-mean pressure over the rectangle.
struct StokesSingleDomain {
    StokesField left;
    StokesField right;
};

StokesSingleDomain solve_stokes_single_domain(const MacGrid& grid, const PhysicsParams& params,
                                              const StokesForcing& forcing);

struct BilapSingleDomain {
    ScalarPair left;
    ScalarPair right;
};

BilapSingleDomain solve_bilap_single_domain(const MacGrid& grid, double nu, const BilapForcing& forcing);

/// Discrete divergence at cell centres, max norm.
double max_divergence(const StokesField& field, double h);

/// One CSV file per channel (columns x,y,value) named <prefix>_<channel>.csv.
void dump_stokes_field_csv(const std::string& prefix, const StokesField& field, const MacGrid& grid, Side side);
void dump_scalar_pair_csv(const std::string& prefix, const ScalarPair& pair, const MacGrid& grid, Side side);

}  // namespace smithdd
