#include "smithdd/ddm.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace smithdd {

std::string_view algorithm_name(Algorithm a)
{
    switch (a) {
    case Algorithm::kSmithDdm:
        return "smith-ddm";
    case Algorithm::kNeumannNeumann:
        return "neumann-neumann";
    case Algorithm::kBilapDdm:
        return "bilap-ddm";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name)
{
    for (Algorithm a : {Algorithm::kSmithDdm, Algorithm::kNeumannNeumann, Algorithm::kBilapDdm})
        if (algorithm_name(a) == name)
            return a;
    return std::nullopt;
}

std::string_view verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::kConverged:
        return "converged";
    case Verdict::kDiverged:
        return "diverged";
    case Verdict::kMaxIter:
        return "max_iter";
    }
    return "?";
}

namespace {

using Values = std::vector<double>;

// -(a + b) / 2
Values neg_half_sum(const Values& a, const Values& b)
{
    Values r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        r[k] = -(a[k] + b[k]) / 2;
    return r;
}

// -(a - b) / 2
Values neg_half_diff(const Values& a, const Values& b)
{
    Values r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        r[k] = -(a[k] - b[k]) / 2;
    return r;
}

// t + (a + s b) / 2
Values shifted(const Values& t, const Values& a, const Values& b, double s)
{
    Values r(t.size());
    for (std::size_t k = 0; k < t.size(); ++k)
        r[k] = t[k] + (a[k] + s * b[k]) / 2;
    return r;
}

InterfaceBcSpec spec(BcVariant v, std::map<Channel, Values> data, double pressure_mean = 0.0)
{
    InterfaceBcSpec bc;
    bc.variant = v;
    bc.data.kind = is_stokes_variant(v) ? TraceKind::kStokes : TraceKind::kBilaplacian;
    bc.data.values = std::move(data);
    bc.pressure_mean = pressure_mean;
    return bc;
}

JumpNorms all_jumps(const InterfaceTrace& t1, const InterfaceTrace& t2, double h)
{
    JumpNorms j;
    for (const auto& [ch, values] : t1.values)
        j[ch] = jump_norm(t1, t2, ch, h);
    return j;
}

}  // namespace

// ---------------------------------------------------------------------------

StokesDd::StokesDd(const MacGrid& grid, const PhysicsParams& params, StokesForcing forcing)
    : grid_(grid),
      params_(params),
      forcing_(std::move(forcing)),
      left_(grid, Side::kLeft, params),
      right_(grid, Side::kRight, params)
{
}

InterfaceTrace StokesDd::trace(const StokesField& field, Side side) const
{
    return extract_stokes_trace(field, grid_, side, params_, forcing_);
}

InterfaceTrace StokesDd::correction_trace(const StokesField& field, Side side) const
{
    return extract_stokes_trace(field, grid_, side, params_, StokesForcing::zero());
}

JumpNorms StokesDd::jumps(const StokesField& left, const StokesField& right) const
{
    return all_jumps(trace(left, Side::kLeft), trace(right, Side::kRight), grid_.h);
}

StokesState StokesDd::make_state(StokesField left, StokesField right) const
{
    StokesState s;
    s.history.push_back(jumps(left, right));
    s.left = std::move(left);
    s.right = std::move(right);
    return s;
}

StokesState StokesDd::advance(const StokesState& state, StokesField left, StokesField right) const
{
    StokesState next;
    next.iteration = state.iteration + 1;
    next.history = state.history;
    next.history.push_back(jumps(left, right));
    next.left = std::move(left);
    next.right = std::move(right);
    return next;
}

StokesState StokesDd::initial_state(Algorithm algorithm)
{
    const BcVariant v = algorithm == Algorithm::kSmithDdm ? BcVariant::kMixedUpdate : BcVariant::kDirichletVelocity;
    StokesField l = left_.solve(InterfaceBcSpec::zero(v, grid_.ny), forcing_);
    StokesField r = right_.solve(InterfaceBcSpec::zero(v, grid_.ny), forcing_);
    return make_state(std::move(l), std::move(r));
}

StokesState StokesDd::smith_step(const StokesState& state)
{
    const InterfaceTrace t1 = trace(state.left, Side::kLeft);
    const InterfaceTrace t2 = trace(state.right, Side::kRight);

    // Correction: homogeneous problems with the averaged normal-velocity and
    // tangential-stress defects, the same data on both sides.
    const InterfaceBcSpec corr = spec(BcVariant::kMixedCorrection,
                                      {{Channel::kUn, neg_half_sum(t1.at(Channel::kUn), t2.at(Channel::kUn))},
                                       {Channel::kSigmaTau,
                                        neg_half_sum(t1.at(Channel::kSigmaTau), t2.at(Channel::kSigmaTau))}});
    const StokesField w1 = left_.solve(corr, StokesForcing::zero());
    const StokesField w2 = right_.solve(corr, StokesForcing::zero());
    const InterfaceTrace c1 = correction_trace(w1, Side::kLeft);
    const InterfaceTrace c2 = correction_trace(w2, Side::kRight);

    // Update: tangential velocity and normal stress shifted by the averaged
    // correction traces.
    auto update = [&](const InterfaceTrace& t) {
        return spec(BcVariant::kMixedUpdate,
                    {{Channel::kUtau, shifted(t.at(Channel::kUtau), c1.at(Channel::kUtau), c2.at(Channel::kUtau), 1.0)},
                     {Channel::kSigmaN,
                      shifted(t.at(Channel::kSigmaN), c1.at(Channel::kSigmaN), c2.at(Channel::kSigmaN), 1.0)}});
    };
    StokesField u1 = left_.solve(update(t1), forcing_);
    StokesField u2 = right_.solve(update(t2), forcing_);
    return advance(state, std::move(u1), std::move(u2));
}

StokesState StokesDd::neumann_neumann_step(const StokesState& state)
{
    const InterfaceTrace t1 = trace(state.left, Side::kLeft);
    const InterfaceTrace t2 = trace(state.right, Side::kRight);

    // Correction: the full stress defect split evenly, expressed in each
    // side's own frame.
    auto correction = [&](const InterfaceTrace& own, const InterfaceTrace& other) {
        return spec(BcVariant::kStress,
                    {{Channel::kSigmaN, neg_half_diff(own.at(Channel::kSigmaN), other.at(Channel::kSigmaN))},
                     {Channel::kSigmaTau, neg_half_sum(own.at(Channel::kSigmaTau), other.at(Channel::kSigmaTau))}});
    };
    const StokesField w1 = left_.solve(correction(t1, t2), StokesForcing::zero());
    const StokesField w2 = right_.solve(correction(t2, t1), StokesForcing::zero());
    const InterfaceTrace c1 = correction_trace(w1, Side::kLeft);
    const InterfaceTrace c2 = correction_trace(w2, Side::kRight);

    // Update: velocity shifted by the average of the two corrections; the
    // pressure level follows the side's own correction.
    auto update = [&](const InterfaceTrace& t, const InterfaceTrace& own, const InterfaceTrace& other,
                      double pressure_mean) {
        return spec(BcVariant::kDirichletVelocity,
                    {{Channel::kUn, shifted(t.at(Channel::kUn), own.at(Channel::kUn), other.at(Channel::kUn), -1.0)},
                     {Channel::kUtau,
                      shifted(t.at(Channel::kUtau), own.at(Channel::kUtau), other.at(Channel::kUtau), 1.0)}},
                    pressure_mean);
    };
    StokesField u1 = left_.solve(update(t1, c1, c2, state.left.mean_pressure() + w1.mean_pressure()), forcing_);
    StokesField u2 = right_.solve(update(t2, c2, c1, state.right.mean_pressure() + w2.mean_pressure()), forcing_);
    return advance(state, std::move(u1), std::move(u2));
}

StokesState StokesDd::step(Algorithm algorithm, const StokesState& state)
{
    switch (algorithm) {
    case Algorithm::kSmithDdm:
        return smith_step(state);
    case Algorithm::kNeumannNeumann:
        return neumann_neumann_step(state);
    case Algorithm::kBilapDdm:
        break;
    }
    throw std::invalid_argument("bilap-ddm is not a Stokes algorithm");
}

// ---------------------------------------------------------------------------

BilapDd::BilapDd(const MacGrid& grid, double nu, BilapForcing forcing)
    : grid_(grid), nu_(nu), forcing_(std::move(forcing)), left_(grid, Side::kLeft, nu), right_(grid, Side::kRight, nu)
{
}

InterfaceTrace BilapDd::trace(const ScalarPair& field, Side side) const
{
    return extract_bilap_trace(field, grid_, side, nu_, forcing_);
}

JumpNorms BilapDd::jumps(const ScalarPair& left, const ScalarPair& right) const
{
    return all_jumps(trace(left, Side::kLeft), trace(right, Side::kRight), grid_.h);
}

BilapState BilapDd::make_state(ScalarPair left, ScalarPair right) const
{
    BilapState s;
    s.history.push_back(jumps(left, right));
    s.left = std::move(left);
    s.right = std::move(right);
    return s;
}

BilapState BilapDd::initial_state()
{
    const InterfaceBcSpec zero = InterfaceBcSpec::zero(BcVariant::kBilapDirichlet, grid_.ny);
    ScalarPair l = left_.solve(zero, forcing_);
    ScalarPair r = right_.solve(zero, forcing_);
    return make_state(std::move(l), std::move(r));
}

BilapState BilapDd::step(const BilapState& state)
{
    const InterfaceTrace t1 = trace(state.left, Side::kLeft);
    const InterfaceTrace t2 = trace(state.right, Side::kRight);

    const InterfaceBcSpec corr =
        spec(BcVariant::kBilapNeumann, {{Channel::kDnW, neg_half_sum(t1.at(Channel::kDnW), t2.at(Channel::kDnW))},
                                        {Channel::kDnLapW,
                                         neg_half_sum(t1.at(Channel::kDnLapW), t2.at(Channel::kDnLapW))}});
    const ScalarPair w1 = left_.solve(corr, BilapForcing::zero());
    const ScalarPair w2 = right_.solve(corr, BilapForcing::zero());
    const InterfaceTrace c1 = extract_bilap_trace(w1, grid_, Side::kLeft, nu_, BilapForcing::zero());
    const InterfaceTrace c2 = extract_bilap_trace(w2, grid_, Side::kRight, nu_, BilapForcing::zero());

    auto update = [&](const InterfaceTrace& t) {
        return spec(BcVariant::kBilapDirichlet,
                    {{Channel::kW, shifted(t.at(Channel::kW), c1.at(Channel::kW), c2.at(Channel::kW), 1.0)},
                     {Channel::kLapW, shifted(t.at(Channel::kLapW), c1.at(Channel::kLapW), c2.at(Channel::kLapW), 1.0)}});
    };
    BilapState next;
    next.iteration = state.iteration + 1;
    next.left = left_.solve(update(t1), forcing_);
    next.right = right_.solve(update(t2), forcing_);
    next.history = state.history;
    next.history.push_back(jumps(next.left, next.right));
    return next;
}

// ---------------------------------------------------------------------------

BilapState bilap_ddm_step(const BilapState& state, const MacGrid& grid, double nu, const BilapForcing& g)
{
    return BilapDd(grid, nu, g).step(state);
}

StokesState stokes_smith_ddm_step(const StokesState& state, const MacGrid& grid, const PhysicsParams& params,
                                  const StokesForcing& forcing)
{
    return StokesDd(grid, params, forcing).smith_step(state);
}

StokesState stokes_neumann_neumann_step(const StokesState& state, const MacGrid& grid,
                                        const PhysicsParams& params, const StokesForcing& forcing)
{
    return StokesDd(grid, params, forcing).neumann_neumann_step(state);
}

Channel stopping_channel(Algorithm algorithm)
{
    return algorithm == Algorithm::kBilapDdm ? Channel::kDnW : Channel::kSigmaTau;
}

double stopping_value(Algorithm algorithm, const JumpNorms& jumps, double nu)
{
    const double j = jumps.at(stopping_channel(algorithm));
    return algorithm == Algorithm::kBilapDdm ? j : j / nu;
}

// ---------------------------------------------------------------------------

std::vector<double> IterationLog::stopping_history() const
{
    std::vector<double> v;
    for (const auto& r : per_iter)
        v.push_back(r.jumps.at(stopping_channel));
    return v;
}

void IterationLog::write_csv(std::ostream& out) const
{
    out << "iter,channel,jump_norm,reduction_factor\n";
    if (per_iter.empty())
        return;
    const JumpNorms& first = per_iter.front().jumps;
    const auto old_precision = out.precision(17);
    for (const auto& r : per_iter)
        for (const auto& [ch, value] : r.jumps) {
            const double ref = first.at(ch);
            const double factor = ref > 0.0 ? value / ref : (value == 0.0 ? 0.0 : INFINITY);
            out << r.iter << ',' << channel_name(ch) << ',' << value << ',' << factor << '\n';
        }
    out.precision(old_precision);
}

namespace {

template <typename State, typename Step>
IterationLog drive(Algorithm algorithm, State state, const StopCriteria& stop, double nu, Step step,
                   State* final_state)
{
    if (stop.max_iter < 1)
        throw std::invalid_argument("max_iter must be at least 1");
    IterationLog log;
    log.algorithm = algorithm;
    log.stopping_channel = stopping_channel(algorithm);
    const double reference = stopping_value(algorithm, state.history.back(), nu);
    log.per_iter.push_back(IterationRecord{1, state.history.back()});
    log.iterations = 1;
    log.verdict = Verdict::kMaxIter;
    if (reference == 0.0)
        log.verdict = Verdict::kConverged;
    while (log.verdict == Verdict::kMaxIter && log.iterations < stop.max_iter) {
        state = step(state);
        ++log.iterations;
        log.per_iter.push_back(IterationRecord{log.iterations, state.history.back()});
        const double value = stopping_value(algorithm, state.history.back(), nu);
        if (!std::isfinite(value) || value > stop.divergence_factor * reference)
            log.verdict = Verdict::kDiverged;
        else if (value <= stop.reduction * reference)
            log.verdict = Verdict::kConverged;
    }
    if (final_state)
        *final_state = std::move(state);
    return log;
}

}  // namespace

IterationLog run_stokes(StokesDd& dd, Algorithm algorithm, StokesState state, const StopCriteria& stop,
                        StokesState* final_state)
{
    return drive(algorithm, std::move(state), stop, dd.params().nu,
                 [&](const StokesState& s) { return dd.step(algorithm, s); }, final_state);
}

IterationLog run_bilap(BilapDd& dd, BilapState state, const StopCriteria& stop, BilapState* final_state)
{
    return drive(Algorithm::kBilapDdm, std::move(state), stop, 1.0,
                 [&](const BilapState& s) { return dd.step(s); }, final_state);
}

IterationLog run(const DdProblem& problem)
{
    if (problem.algorithm == Algorithm::kBilapDdm) {
        BilapManufactured m = make_bilap_manufactured(problem.grid, problem.params.nu);
        BilapDd dd(problem.grid, problem.params.nu, m.forcing);
        return run_bilap(dd, dd.initial_state(), problem.stop);
    }
    StokesManufactured m = make_stokes_manufactured(problem.forcing, problem.grid, problem.params);
    StokesDd dd(problem.grid, problem.params, m.forcing);
    return run_stokes(dd, problem.algorithm, dd.initial_state(problem.algorithm), problem.stop);
}

double contraction_estimate(const std::vector<double>& values)
{
    const std::size_t n = values.size();
    if (n < 4)
        throw std::invalid_argument("contraction estimate needs at least four iterates");
    for (double v : values)
        if (!(v > 0.0))
            throw std::invalid_argument("contraction estimate needs positive jump norms");
    // Ratios values[k]/values[k-1] for k = 2 .. n-2 telescope.
    return std::pow(values[n - 2] / values[1], 1.0 / static_cast<double>(n - 3));
}

double contraction_estimate(const IterationLog& log) { return contraction_estimate(log.stopping_history()); }

}  // namespace smithdd
