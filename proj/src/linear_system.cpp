#include "smithdd/linear_system.hpp"

#include <sstream>

namespace smithdd {

int UnknownMap::add(UnknownKey key)
{
    auto [it, inserted] = lookup_.emplace(key, size());
    if (inserted)
        keys_.push_back(key);
    return it->second;
}

int UnknownMap::index(const UnknownKey& key) const
{
    auto it = lookup_.find(key);
    return it == lookup_.end() ? -1 : it->second;
}

DirectSolver::DirectSolver(const SparseRowMatrix& matrix) : matrix_(matrix)
{
    if (matrix_.rows() != matrix_.cols())
        throw SolveError("system matrix is not square");
    matrix_.makeCompressed();
    lu_.analyzePattern(matrix_);
    lu_.factorize(matrix_);
    if (lu_.info() != Eigen::Success) {
        std::ostringstream os;
        os << "sparse LU factorization failed (" << matrix_.rows() << " unknowns): " << lu_.lastErrorMessage();
        throw SolveError(os.str());
    }
}

Eigen::VectorXd DirectSolver::solve(const Eigen::VectorXd& rhs) const
{
    if (rhs.size() != matrix_.rows())
        throw SolveError("right-hand side has wrong length");
    const double bnorm = rhs.lpNorm<Eigen::Infinity>();
    if (bnorm == 0.0)
        return Eigen::VectorXd::Zero(rhs.size());
    Eigen::VectorXd x = lu_.solve(rhs);
    const double residual = (matrix_ * x - rhs).lpNorm<Eigen::Infinity>();
    if (!(residual <= kSolveResidualTolerance * bnorm)) {
        std::ostringstream os;
        os << "direct solve residual " << residual << " exceeds " << kSolveResidualTolerance << " * " << bnorm;
        throw SolveError(os.str());
    }
    return x;
}

Eigen::VectorXd solve(const LinearSystem& system)
{
    return DirectSolver(system.matrix).solve(system.rhs);
}

}  // namespace smithdd
