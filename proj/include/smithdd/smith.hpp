#pragma once

// Smith normal form of square matrices over Q(i)[L], and the Fourier
// symbols of the 2D and 3D Stokes operators (d/dy -> ik, d/dx kept as L).

#include "smithdd/exactalg.hpp"

#include <string>
#include <vector>

namespace smithdd::smith {

using exact::GaussianRational;
using exact::Poly;

class PolyMatrix {
public:
    static PolyMatrix zero(int n);
    static PolyMatrix identity(int n);
    /// Throws std::invalid_argument unless rows form a non-empty square array.
    static PolyMatrix from_rows(std::vector<std::vector<Poly>> rows);

    int size() const { return n_; }
    Poly& operator()(int i, int j) { return entries_[index(i, j)]; }
    const Poly& operator()(int i, int j) const { return entries_[index(i, j)]; }

    bool is_diagonal() const;
    int max_degree() const;

    void swap_rows(int a, int b);
    void swap_cols(int a, int b);
    /// row[target] += factor * row[source]
    void add_row_multiple(int target, int source, const Poly& factor);
    /// col[target] += factor * col[source]
    void add_col_multiple(int target, int source, const Poly& factor);
    void scale_row(int row, const GaussianRational& factor);
    void scale_col(int col, const GaussianRational& factor);

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) { return a.n_ == b.n_ && a.entries_ == b.entries_; }
    friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

    std::string to_string() const;

private:
    explicit PolyMatrix(int n);
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * n_ + j); }

    int n_ = 0;
    std::vector<Poly> entries_;
};

/// Throws std::invalid_argument on dimension mismatch.
PolyMatrix poly_matrix_mul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
/// Exact determinant by cofactor expansion.
Poly poly_matrix_det(const PolyMatrix& a);

/// A = E * D * F with E, F unimodular and D diagonal.
struct SmithTriple {
    PolyMatrix e;
    PolyMatrix d;
    PolyMatrix f;
};

enum class PivotStrategy {
    // Among minimal-degree entries pick the smallest (row, col); the default.
    kFirstMinimalDegree,
    // Among minimal-degree entries pick the largest (row, col).
    kLastMinimalDegree,
};

/// Canonical output: every diagonal entry of D is monic and divides the next.
/// Throws std::domain_error("matrix not invertible over the rational function field")
/// when det(A) == 0.
SmithTriple smith_normal_form(const PolyMatrix& a, PivotStrategy strategy = PivotStrategy::kFirstMinimalDegree);

/// Rescales so det(E) = det(F) = 1, folding the unit into the last diagonal entry of D.
SmithTriple normalize_unit_determinants(SmithTriple t);

/// Moves the constant `unit` from D(from,from) to D(to,to): D(to,to) *= unit,
/// D(from,from) /= unit, with E compensating so E*D*F and det(E) are unchanged.
SmithTriple transfer_unit(SmithTriple t, int from, int to, const GaussianRational& unit);

/// Structural checks: diagonal D, divisibility chain, constant nonzero det(E), det(F).
bool satisfies_smith_invariants(const SmithTriple& t);

PolyMatrix stokes_symbol_2d(const mpq_class& nu, const mpq_class& k);
PolyMatrix stokes_symbol_3d(const mpq_class& nu, const mpq_class& k2, const mpq_class& k3);

}  // namespace smithdd::smith
