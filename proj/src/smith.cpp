#include "smithdd/smith.hpp"

#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace smithdd::smith {

PolyMatrix::PolyMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n * n)) {}

PolyMatrix PolyMatrix::zero(int n)
{
    if (n < 1)
        throw std::invalid_argument("PolyMatrix dimension must be >= 1");
    return PolyMatrix(n);
}

PolyMatrix PolyMatrix::identity(int n)
{
    PolyMatrix m = zero(n);
    for (int i = 0; i < n; ++i)
        m(i, i) = Poly(1);
    return m;
}

PolyMatrix PolyMatrix::from_rows(std::vector<std::vector<Poly>> rows)
{
    const int n = static_cast<int>(rows.size());
    PolyMatrix m = zero(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
            throw std::invalid_argument("PolyMatrix rows must form a square array");
        for (int j = 0; j < n; ++j)
            m(i, j) = std::move(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
    return m;
}

bool PolyMatrix::is_diagonal() const
{
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (i != j && !(*this)(i, j).is_zero())
                return false;
    return true;
}

int PolyMatrix::max_degree() const
{
    int d = Poly::kDegreeMinusInfinity;
    for (const auto& p : entries_)
        d = std::max(d, p.degree());
    return d;
}

void PolyMatrix::swap_rows(int a, int b)
{
    if (a == b)
        return;
    for (int j = 0; j < n_; ++j)
        std::swap((*this)(a, j), (*this)(b, j));
}

void PolyMatrix::swap_cols(int a, int b)
{
    if (a == b)
        return;
    for (int i = 0; i < n_; ++i)
        std::swap((*this)(i, a), (*this)(i, b));
}

void PolyMatrix::add_row_multiple(int target, int source, const Poly& factor)
{
    if (factor.is_zero())
        return;
    for (int j = 0; j < n_; ++j)
        (*this)(target, j) += factor * (*this)(source, j);
}

void PolyMatrix::add_col_multiple(int target, int source, const Poly& factor)
{
    if (factor.is_zero())
        return;
    for (int i = 0; i < n_; ++i)
        (*this)(i, target) += factor * (*this)(i, source);
}

void PolyMatrix::scale_row(int row, const GaussianRational& factor)
{
    for (int j = 0; j < n_; ++j)
        (*this)(row, j) = (*this)(row, j) * Poly(factor);
}

void PolyMatrix::scale_col(int col, const GaussianRational& factor)
{
    for (int i = 0; i < n_; ++i)
        (*this)(i, col) = (*this)(i, col) * Poly(factor);
}

std::string PolyMatrix::to_string() const
{
    std::ostringstream os;
    for (int i = 0; i < n_; ++i) {
        os << "[";
        for (int j = 0; j < n_; ++j)
            os << (j ? ", " : "") << (*this)(i, j).to_string();
        os << "]\n";
    }
    return os.str();
}

PolyMatrix poly_matrix_mul(const PolyMatrix& a, const PolyMatrix& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("PolyMatrix dimension mismatch in product");
    const int n = a.size();
    PolyMatrix c = PolyMatrix::zero(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (a(i, k).is_zero())
                continue;
            for (int j = 0; j < n; ++j)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) { return poly_matrix_mul(a, b); }

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("PolyMatrix dimension mismatch in difference");
    PolyMatrix c = a;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j)
            c(i, j) -= b(i, j);
    return c;
}

namespace {

Poly cofactor_det(const PolyMatrix& a, int row, std::vector<int>& cols)
{
    if (cols.size() == 1)
        return a(row, cols.front());
    Poly total;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const int col = cols[k];
        if (a(row, col).is_zero())
            continue;
        std::vector<int> minor_cols;
        minor_cols.reserve(cols.size() - 1);
        for (std::size_t m = 0; m < cols.size(); ++m)
            if (m != k)
                minor_cols.push_back(cols[m]);
        Poly term = a(row, col) * cofactor_det(a, row + 1, minor_cols);
        if (k % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

struct Pivot {
    int row;
    int col;
};

std::optional<Pivot> find_pivot(const PolyMatrix& w, int t, PivotStrategy strategy)
{
    std::optional<Pivot> best;
    int best_degree = 0;
    for (int i = t; i < w.size(); ++i)
        for (int j = t; j < w.size(); ++j) {
            const Poly& p = w(i, j);
            if (p.is_zero())
                continue;
            const bool better = !best || p.degree() < best_degree ||
                                (strategy == PivotStrategy::kLastMinimalDegree && p.degree() == best_degree);
            if (better) {
                best = Pivot{i, j};
                best_degree = p.degree();
            }
        }
    // Keep the current pivot when it is already of minimal degree, so the
    // divisibility fix-up cannot cycle between equal-degree candidates.
    if (best && !w(t, t).is_zero() && w(t, t).degree() == best_degree)
        return Pivot{t, t};
    return best;
}

// Keeps A == e * w * f while w is reduced towards diagonal form.
class Reducer {
public:
    explicit Reducer(const PolyMatrix& a)
        : e_(PolyMatrix::identity(a.size())), w_(a), f_(PolyMatrix::identity(a.size()))
    {
    }

    void swap_rows(int a, int b)
    {
        w_.swap_rows(a, b);
        e_.swap_cols(a, b);
    }
    void swap_cols(int a, int b)
    {
        w_.swap_cols(a, b);
        f_.swap_rows(a, b);
    }
    void add_row_multiple(int target, int source, const Poly& q)
    {
        w_.add_row_multiple(target, source, q);
        e_.add_col_multiple(source, target, -q);
    }
    void add_col_multiple(int target, int source, const Poly& q)
    {
        w_.add_col_multiple(target, source, q);
        f_.add_row_multiple(source, target, -q);
    }
    void scale_row(int row, const GaussianRational& c)
    {
        w_.scale_row(row, c);
        e_.scale_col(row, c.inverse());
    }

    const PolyMatrix& w() const { return w_; }
    SmithTriple release() { return {std::move(e_), std::move(w_), std::move(f_)}; }

private:
    PolyMatrix e_;
    PolyMatrix w_;
    PolyMatrix f_;
};

// One pass of elimination in row and column t; true when both are clean.
bool eliminate_pivot_cross(Reducer& r, int t)
{
    const int n = r.w().size();
    bool clean = true;
    for (int i = t + 1; i < n; ++i) {
        if (r.w()(i, t).is_zero())
            continue;
        Poly q = exact::poly_divmod(r.w()(i, t), r.w()(t, t)).quotient;
        r.add_row_multiple(i, t, -q);
        clean = clean && r.w()(i, t).is_zero();
    }
    for (int j = t + 1; j < n; ++j) {
        if (r.w()(t, j).is_zero())
            continue;
        Poly q = exact::poly_divmod(r.w()(t, j), r.w()(t, t)).quotient;
        r.add_col_multiple(j, t, -q);
        clean = clean && r.w()(t, j).is_zero();
    }
    return clean;
}

}  // namespace

Poly poly_matrix_det(const PolyMatrix& a)
{
    std::vector<int> cols(static_cast<std::size_t>(a.size()));
    std::iota(cols.begin(), cols.end(), 0);
    return cofactor_det(a, 0, cols);
}

SmithTriple smith_normal_form(const PolyMatrix& a, PivotStrategy strategy)
{
    if (poly_matrix_det(a).is_zero())
        throw std::domain_error("matrix not invertible over the rational function field");

    Reducer r(a);
    const int n = a.size();
    for (int t = 0; t < n; ++t) {
        for (;;) {
            auto pivot = find_pivot(r.w(), t, strategy);
            if (!pivot)
                throw std::domain_error("matrix not invertible over the rational function field");
            r.swap_rows(t, pivot->row);
            r.swap_cols(t, pivot->col);
            if (!eliminate_pivot_cross(r, t))
                continue;

            // Row and column t are clear; enforce the divisibility chain.
            std::optional<int> offending_row;
            for (int i = t + 1; i < n && !offending_row; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (!exact::divides(r.w()(t, t), r.w()(i, j))) {
                        offending_row = i;
                        break;
                    }
            if (offending_row) {
                r.add_row_multiple(t, *offending_row, Poly(1));
                continue;
            }
            r.scale_row(t, r.w()(t, t).leading().inverse());
            break;
        }
    }
    return r.release();
}

SmithTriple normalize_unit_determinants(SmithTriple t)
{
    const int last = t.d.size() - 1;
    Poly det_e = poly_matrix_det(t.e);
    Poly det_f = poly_matrix_det(t.f);
    GaussianRational ue = det_e.coeff(0);
    GaussianRational uf = det_f.coeff(0);
    t.e.scale_col(last, ue.inverse());
    t.f.scale_row(last, uf.inverse());
    t.d(last, last) = t.d(last, last) * Poly(ue * uf);
    return t;
}

SmithTriple transfer_unit(SmithTriple t, int from, int to, const GaussianRational& unit)
{
    if (from == to)
        return t;
    t.d(to, to) = t.d(to, to) * Poly(unit);
    t.d(from, from) = t.d(from, from) * Poly(unit.inverse());
    t.e.scale_col(to, unit.inverse());
    t.e.scale_col(from, unit);
    return t;
}

bool satisfies_smith_invariants(const SmithTriple& t)
{
    if (!t.d.is_diagonal())
        return false;
    for (int i = 0; i + 1 < t.d.size(); ++i)
        if (t.d(i, i).is_zero() || !exact::divides(t.d(i, i), t.d(i + 1, i + 1)))
            return false;
    Poly de = poly_matrix_det(t.e);
    Poly df = poly_matrix_det(t.f);
    return de.degree() == 0 && df.degree() == 0;
}

PolyMatrix stokes_symbol_2d(const mpq_class& nu, const mpq_class& k)
{
    if (sgn(nu) <= 0)
        throw std::invalid_argument("viscosity must be positive");
    const Poly lam = Poly::lambda();
    const Poly lap = lam * lam - Poly(GaussianRational(k * k));
    const Poly momentum = Poly(GaussianRational(-nu)) * lap;
    const Poly ik(GaussianRational(0, k));
    return PolyMatrix::from_rows({
        {momentum, Poly(), -lam},
        {Poly(), momentum, -ik},
        {lam, ik, Poly()},
    });
}

PolyMatrix stokes_symbol_3d(const mpq_class& nu, const mpq_class& k2, const mpq_class& k3)
{
    if (sgn(nu) <= 0)
        throw std::invalid_argument("viscosity must be positive");
    const Poly lam = Poly::lambda();
    const Poly lap = lam * lam - Poly(GaussianRational(k2 * k2 + k3 * k3));
    const Poly momentum = Poly(GaussianRational(-nu)) * lap;
    const Poly ik2(GaussianRational(0, k2));
    const Poly ik3(GaussianRational(0, k3));
    return PolyMatrix::from_rows({
        {momentum, Poly(), Poly(), -lam},
        {Poly(), momentum, Poly(), -ik2},
        {Poly(), Poly(), momentum, -ik3},
        {lam, ik2, ik3, Poly()},
    });
}

}  // namespace smithdd::smith
