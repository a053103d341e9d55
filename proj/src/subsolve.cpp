#include "smithdd/subsolve.hpp"

namespace smithdd {

StokesSubdomainSolver::StokesSubdomainSolver(const MacGrid& grid, Side side, const PhysicsParams& params)
    : grid_(grid), side_(side), params_(params)
{
}

StokesField StokesSubdomainSolver::solve(const InterfaceBcSpec& bc, const StokesForcing& forcing)
{
    LinearSystem sys = assemble_stokes(grid_, side_, params_, bc, forcing);
    auto& lu = factors_[bc.variant];
    if (!lu)
        lu = std::make_unique<DirectSolver>(sys.matrix);
    return stokes_field_from_solution(grid_, side_, sys.unknowns, lu->solve(sys.rhs));
}

BilapSubdomainSolver::BilapSubdomainSolver(const MacGrid& grid, Side side, double nu)
    : grid_(grid), side_(side), nu_(nu)
{
}

ScalarPair BilapSubdomainSolver::solve(const InterfaceBcSpec& bc, const BilapForcing& forcing)
{
    BilapSystem sys = assemble_bilaplacian(grid_, side_, nu_, bc, forcing);
    Factors& f = factors_[bc.variant];
    if (!f.phi) {
        f.phi = std::make_unique<DirectSolver>(sys.phi.matrix);
        f.w = std::make_unique<DirectSolver>(sys.w.matrix);
    }
    const Eigen::VectorXd phi = f.phi->solve(sys.phi.rhs);
    const Eigen::VectorXd w = f.w->solve(sys.w.rhs + sys.coupling * phi);
    return scalar_pair_from_solution(grid_, side_, sys.w.unknowns, phi, w);
}

StokesField solve_stokes_subdomain(const MacGrid& grid, Side side, const PhysicsParams& params,
                                   const InterfaceBcSpec& bc, const StokesForcing& forcing)
{
    return StokesSubdomainSolver(grid, side, params).solve(bc, forcing);
}

ScalarPair solve_bilap_subdomain(const MacGrid& grid, Side side, double nu, const InterfaceBcSpec& bc,
                                 const BilapForcing& forcing)
{
    return BilapSubdomainSolver(grid, side, nu).solve(bc, forcing);
}

}  // namespace smithdd
