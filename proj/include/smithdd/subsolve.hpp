#pragma once

#include "smithdd/grid.hpp"

#include <map>
#include <memory>

namespace smithdd {

/// Stokes solves on one subdomain. The matrix depends only on the interface
/// condition variant, so one factorization per variant is kept.
class StokesSubdomainSolver {
public:
    StokesSubdomainSolver(const MacGrid& grid, Side side, const PhysicsParams& params);

    StokesField solve(const InterfaceBcSpec& bc, const StokesForcing& forcing);

    const MacGrid& grid() const { return grid_; }
    Side side() const { return side_; }

private:
    MacGrid grid_;
    Side side_;
    PhysicsParams params_;
    std::map<BcVariant, std::unique_ptr<DirectSolver>> factors_;
};

/// Chained Poisson solves (phi, then w) on one subdomain with cached factors.
class BilapSubdomainSolver {
public:
    BilapSubdomainSolver(const MacGrid& grid, Side side, double nu);

    ScalarPair solve(const InterfaceBcSpec& bc, const BilapForcing& forcing);

private:
    struct Factors {
        std::unique_ptr<DirectSolver> phi;
        std::unique_ptr<DirectSolver> w;
    };

    MacGrid grid_;
    Side side_;
    double nu_;
    std::map<BcVariant, Factors> factors_;
};

StokesField solve_stokes_subdomain(const MacGrid& grid, Side side, const PhysicsParams& params,
                                   const InterfaceBcSpec& bc, const StokesForcing& forcing);

ScalarPair solve_bilap_subdomain(const MacGrid& grid, Side side, double nu, const InterfaceBcSpec& bc,
                                 const BilapForcing& forcing);

}  // namespace smithdd
