#pragma once

// Two-subdomain interface iterations: a correction solve driven by the
// interface jumps of the current iterate, then an update solve whose interface
// data is the current trace shifted by averaged correction traces.

#include "smithdd/subsolve.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace smithdd {

enum class Algorithm { kSmithDdm, kNeumannNeumann, kBilapDdm };

std::string_view algorithm_name(Algorithm a);
/// Accepts "smith-ddm", "neumann-neumann", "bilap-ddm".
std::optional<Algorithm> parse_algorithm(std::string_view name);

using JumpNorms = std::map<Channel, double>;

/// Iterates on both subdomains plus the interface jumps of every iterate.
/// history[k] belongs to the k-th iterate; history[0] is the initial guess.
template <typename Field>
struct DdState {
    Field left;
    Field right;
    int iteration = 0;
    std::vector<JumpNorms> history;

    const Field& on(Side s) const { return s == Side::kLeft ? left : right; }
};

using StokesState = DdState<StokesField>;
using BilapState = DdState<ScalarPair>;

enum class Verdict { kConverged, kDiverged, kMaxIter };

std::string_view verdict_name(Verdict v);

struct IterationRecord {
    int iter = 0;
    JumpNorms jumps;
};

struct IterationLog {
    Algorithm algorithm = Algorithm::kSmithDdm;
    Channel stopping_channel = Channel::kSigmaTau;
    /// Number of iterates computed, counting the initial one.
    int iterations = 0;
    Verdict verdict = Verdict::kMaxIter;
    std::vector<IterationRecord> per_iter;

    /// Stopping-channel values in iteration order.
    std::vector<double> stopping_history() const;
    /// Columns iter,channel,jump_norm,reduction_factor; the reduction factor is
    /// relative to the first iterate.
    void write_csv(std::ostream& out) const;
};

struct StopCriteria {
    double reduction = 1e-4;
    int max_iter = 200;
    double divergence_factor = 1e6;
};

/// Stokes iterations for fixed grid, physics and forcing. Keeps factorized
/// subdomain matrices across steps.
class StokesDd {
public:
    StokesDd(const MacGrid& grid, const PhysicsParams& params, StokesForcing forcing);

    /// Solves both subdomains once with zero interface data: mixed_update for
    /// smith-ddm (so the initial traces satisfy the stress/tangential-velocity
    /// compatibility the update step preserves), dirichlet_velocity otherwise.
    StokesState initial_state(Algorithm algorithm);
    /// Wraps given fields into a state and records their jumps.
    StokesState make_state(StokesField left, StokesField right) const;

    StokesState smith_step(const StokesState& state);
    StokesState neumann_neumann_step(const StokesState& state);
    StokesState step(Algorithm algorithm, const StokesState& state);

    JumpNorms jumps(const StokesField& left, const StokesField& right) const;
    InterfaceTrace trace(const StokesField& field, Side side) const;

    const MacGrid& grid() const { return grid_; }
    const PhysicsParams& params() const { return params_; }

private:
    InterfaceTrace correction_trace(const StokesField& field, Side side) const;
    StokesState advance(const StokesState& state, StokesField left, StokesField right) const;
    StokesSubdomainSolver& solver(Side s) { return s == Side::kLeft ? left_ : right_; }

    MacGrid grid_;
    PhysicsParams params_;
    StokesForcing forcing_;
    StokesSubdomainSolver left_;
    StokesSubdomainSolver right_;
};

class BilapDd {
public:
    BilapDd(const MacGrid& grid, double nu, BilapForcing forcing);

    /// bilap_dirichlet with zero data on both subdomains.
    BilapState initial_state();
    BilapState make_state(ScalarPair left, ScalarPair right) const;
    BilapState step(const BilapState& state);

    JumpNorms jumps(const ScalarPair& left, const ScalarPair& right) const;
    InterfaceTrace trace(const ScalarPair& field, Side side) const;

    const MacGrid& grid() const { return grid_; }

private:
    BilapSubdomainSolver& solver(Side s) { return s == Side::kLeft ? left_ : right_; }

    MacGrid grid_;
    double nu_;
    BilapForcing forcing_;
    BilapSubdomainSolver left_;
    BilapSubdomainSolver right_;
};

/// One correction + update cycle. These build fresh subdomain solvers; loops
/// should hold a StokesDd / BilapDd instead.
BilapState bilap_ddm_step(const BilapState& state, const MacGrid& grid, double nu, const BilapForcing& g);
StokesState stokes_smith_ddm_step(const StokesState& state, const MacGrid& grid, const PhysicsParams& params,
                                  const StokesForcing& forcing);
StokesState stokes_neumann_neumann_step(const StokesState& state, const MacGrid& grid,
                                        const PhysicsParams& params, const StokesForcing& forcing);

/// Scalar the stopping test looks at: jump of d(u_tau)/dn, i.e. the
/// tangential-stress jump over nu, for Stokes; jump of dw/dn for the
/// bi-Laplacian.
Channel stopping_channel(Algorithm algorithm);
double stopping_value(Algorithm algorithm, const JumpNorms& jumps, double nu);

struct DdProblem {
    Algorithm algorithm = Algorithm::kSmithDdm;
    MacGrid grid;
    PhysicsParams params;
    ForcingKind forcing = ForcingKind::kTrig;
    StopCriteria stop;
};

/// Iterates from the initial state until the stopping value drops to
/// reduction x (value of the initial iterate), exceeds divergence_factor x that
/// value, or max_iter iterates exist. Manufactured forcing of the given kind.
IterationLog run(const DdProblem& problem);

/// Iteration driver on explicit states, used by run().
IterationLog run_stokes(StokesDd& dd, Algorithm algorithm, StokesState state, const StopCriteria& stop,
                        StokesState* final_state = nullptr);
IterationLog run_bilap(BilapDd& dd, BilapState state, const StopCriteria& stop, BilapState* final_state = nullptr);

/// Geometric mean of successive stopping-value ratios, leaving out the first
/// and the last ratio. Throws std::invalid_argument with fewer than four
/// iterates or a non-positive value.
double contraction_estimate(const IterationLog& log);
double contraction_estimate(const std::vector<double>& values);

}  // namespace smithdd
