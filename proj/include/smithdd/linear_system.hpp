#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace smithdd {

class SolveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using SparseColMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

enum class Unknown { kU, kV, kVGamma, kP, kW, kPhi };

struct UnknownKey {
    Unknown field;
    int i;
    int j;
    friend auto operator<=>(const UnknownKey&, const UnknownKey&) = default;
};

/// Bijection between (field, i, j) and the position in the solution vector.
class UnknownMap {
public:
    int add(UnknownKey key);
    /// -1 when the key is not an unknown.
    int index(const UnknownKey& key) const;
    const UnknownKey& key(int idx) const { return keys_.at(static_cast<std::size_t>(idx)); }
    int size() const { return static_cast<int>(keys_.size()); }

private:
    std::vector<UnknownKey> keys_;
    std::map<UnknownKey, int> lookup_;
};

struct LinearSystem {
    SparseRowMatrix matrix;
    Eigen::VectorXd rhs;
    UnknownMap unknowns;
};

/// Sparse LU with partial pivoting. Keeps the factorization so repeated
/// right-hand sides reuse it.
class DirectSolver {
public:
    /// Throws SolveError when the factorization fails.
    explicit DirectSolver(const SparseRowMatrix& matrix);
    DirectSolver(const DirectSolver&) = delete;
    DirectSolver& operator=(const DirectSolver&) = delete;

    /// Throws SolveError when ||Ax-b||_inf > 1e-10 ||b||_inf.
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

private:
    SparseColMatrix matrix_;
    Eigen::SparseLU<SparseColMatrix, Eigen::COLAMDOrdering<int>> lu_;
};

inline constexpr double kSolveResidualTolerance = 1e-10;

/// One-shot factorize-and-solve.
Eigen::VectorXd solve(const LinearSystem& system);

}  // namespace smithdd
