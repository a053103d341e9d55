#include "doctest.h"

#include "smithdd/smith.hpp"

#include <random>

using namespace smithdd::smith;
using smithdd::exact::make_monic;

namespace {

const Poly L = Poly::lambda();

Poly C(const mpq_class& q) { return Poly(GaussianRational(q)); }

void check_reconstruction(const PolyMatrix& a, const SmithTriple& t)
{
    CHECK(t.e * t.d * t.f == a);
    CHECK(satisfies_smith_invariants(t));
    for (int i = 0; i < t.d.size(); ++i)
        CHECK(t.d(i, i).is_monic());
}

// Random nonsingular 3x3 matrix with entries of degree <= 2.
PolyMatrix random_matrix(std::mt19937& rng)
{
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> deg(-1, 2);
    for (;;) {
        PolyMatrix m = PolyMatrix::zero(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                std::vector<GaussianRational> c;
                int d = deg(rng);
                for (int n = 0; n <= d; ++n)
                    c.emplace_back(coef(rng), coef(rng) / 3);
                m(i, j) = Poly(std::move(c));
            }
        if (!poly_matrix_det(m).is_zero())
            return m;
    }
}

mpq_class random_rational(std::mt19937& rng, int lo, int hi)
{
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, 7);
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

}  // namespace

TEST_CASE("identity factors trivially")
{
    PolyMatrix id = PolyMatrix::identity(3);
    SmithTriple t = smith_normal_form(id);
    CHECK(t.e == id);
    CHECK(t.d == id);
    CHECK(t.f == id);
}

TEST_CASE("Jordan-type block")
{
    PolyMatrix a = PolyMatrix::from_rows({{L, Poly(1)}, {Poly(), L}});
    SmithTriple t = smith_normal_form(a);
    check_reconstruction(a, t);
    CHECK(t.d(0, 0) == Poly(1));
    CHECK(t.d(1, 1) == L * L);
}

TEST_CASE("singular input is rejected")
{
    PolyMatrix a = PolyMatrix::from_rows({{L, L}, {L, L}});
    CHECK_THROWS_WITH_AS(smith_normal_form(a), "matrix not invertible over the rational function field",
                         std::domain_error);
}

TEST_CASE("matrix product and determinant")
{
    PolyMatrix a = stokes_symbol_2d(1, 1);
    CHECK(a * PolyMatrix::identity(3) == a);
    Poly lap = L * L - Poly(1);
    PolyMatrix d = PolyMatrix::identity(3);
    d(2, 2) = -(lap * lap);
    CHECK(poly_matrix_det(d) == -(lap * lap));
    CHECK_THROWS_AS(poly_matrix_mul(a, PolyMatrix::identity(2)), std::invalid_argument);
}

TEST_CASE("2D Stokes symbol entries")
{
    PolyMatrix a0 = stokes_symbol_2d(1, 0);
    CHECK(a0(1, 2).is_zero());
    CHECK(a0(0, 0) == -(L * L));

    PolyMatrix a1 = stokes_symbol_2d(1, 1);
    CHECK(a1(1, 2) == Poly(GaussianRational(0, -1)));
    CHECK(a1(2, 1) == Poly(GaussianRational(0, 1)));
    Poly lap = L * L - Poly(1);
    // cofactor expansion by hand: det = -nu * lap^2
    CHECK(poly_matrix_det(a1) == -(lap * lap));
    CHECK_THROWS(stokes_symbol_2d(0, 1));
}

TEST_CASE("2D Stokes Smith form is diag(1, 1, lap^2)")
{
    PolyMatrix a = stokes_symbol_2d(1, 1);
    SmithTriple t = smith_normal_form(a);
    check_reconstruction(a, t);
    Poly lap = L * L - Poly(1);
    CHECK(t.d(0, 0) == Poly(1));
    CHECK(t.d(1, 1) == Poly(1));
    CHECK(t.d(2, 2) == lap * lap);

    SmithTriple n = normalize_unit_determinants(t);
    CHECK(n.e * n.d * n.f == a);
    CHECK(poly_matrix_det(n.e) == Poly(1));
    CHECK(poly_matrix_det(n.f) == Poly(1));
    CHECK(n.d(2, 2) == -(lap * lap));
}

TEST_CASE("unit normalization bookkeeping")
{
    SmithTriple t{PolyMatrix::identity(2), PolyMatrix::identity(2), PolyMatrix::identity(2)};
    t.e(0, 0) = Poly(2);
    t.d(1, 1) = L;
    SmithTriple n = normalize_unit_determinants(t);
    CHECK(poly_matrix_det(n.e) == Poly(1));
    CHECK(n.d(0, 0) == Poly(1));
    CHECK(n.d(1, 1) == Poly(2) * L);
    CHECK(n.e * n.d * n.f == t.e * t.d * t.f);

    SmithTriple again = normalize_unit_determinants(n);
    CHECK(again.e == n.e);
    CHECK(again.d == n.d);
    CHECK(again.f == n.f);
}

TEST_CASE("3D Stokes symbol")
{
    PolyMatrix a0 = stokes_symbol_3d(1, 0, 0);
    CHECK(a0(1, 1) == -(L * L));
    CHECK(a0(2, 2) == -(L * L));
    CHECK(a0(1, 3).is_zero());
    CHECK(a0(2, 3).is_zero());

    PolyMatrix a = stokes_symbol_3d(1, 1, 2);
    SmithTriple t = smith_normal_form(a);
    check_reconstruction(a, t);
    Poly lap = L * L - Poly(5);
    CHECK(t.d(0, 0) == Poly(1));
    CHECK(t.d(1, 1) == Poly(1));
    CHECK(t.d(2, 2) == lap);
    CHECK(t.d(3, 3) == lap * lap);

    // Put -nu on the third entry; the residual unit lands on the fourth.
    SmithTriple n = transfer_unit(normalize_unit_determinants(t), 3, 2, GaussianRational(-1));
    CHECK(n.e * n.d * n.f == a);
    CHECK(poly_matrix_det(n.e) == Poly(1));
    CHECK(poly_matrix_det(n.f) == Poly(1));
    CHECK(n.d(2, 2) == -lap);
    CHECK(n.d(3, 3) == -(lap * lap));
}

TEST_CASE("determinants multiply on random matrices")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        PolyMatrix a = random_matrix(rng);
        SmithTriple t = smith_normal_form(a);
        check_reconstruction(a, t);
        CHECK(poly_matrix_det(t.e) * poly_matrix_det(t.d) * poly_matrix_det(t.f) == poly_matrix_det(a));
    }
}

TEST_CASE("diagonal does not depend on the pivot strategy")
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        PolyMatrix a = random_matrix(rng);
        SmithTriple first = smith_normal_form(a, PivotStrategy::kFirstMinimalDegree);
        SmithTriple last = smith_normal_form(a, PivotStrategy::kLastMinimalDegree);
        check_reconstruction(a, last);
        for (int i = 0; i < 3; ++i)
            CHECK(first.d(i, i) == last.d(i, i));
    }
    PolyMatrix s = stokes_symbol_3d(mpq_class(3, 2), 1, -1);
    SmithTriple a = smith_normal_form(s, PivotStrategy::kFirstMinimalDegree);
    SmithTriple b = smith_normal_form(s, PivotStrategy::kLastMinimalDegree);
    CHECK(a.d == b.d);
}

TEST_CASE("2D diagonal for random viscosity and wavenumber")
{
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        mpq_class nu = random_rational(rng, 1, 9);
        mpq_class k = random_rational(rng, 1, 9) * (trial % 2 ? 1 : -1);
        PolyMatrix a = stokes_symbol_2d(nu, k);
        SmithTriple t = smith_normal_form(a);
        check_reconstruction(a, t);
        Poly lap = L * L - C(k * k);
        CHECK(t.d(2, 2) == lap * lap);
        SmithTriple n = normalize_unit_determinants(t);
        CHECK(n.d(2, 2) == C(-nu) * lap * lap);
    }
}

TEST_CASE("3D diagonal for random parameters")
{
    std::mt19937 rng(4048);
    for (int trial = 0; trial < 10; ++trial) {
        mpq_class nu = random_rational(rng, 1, 9);
        mpq_class k2 = random_rational(rng, -5, 5);
        mpq_class k3 = random_rational(rng, 1, 5);
        PolyMatrix a = stokes_symbol_3d(nu, k2, k3);
        SmithTriple t = smith_normal_form(a);
        check_reconstruction(a, t);
        Poly lap = L * L - C(k2 * k2 + k3 * k3);
        CHECK(t.d(0, 0) == Poly(1));
        CHECK(t.d(1, 1) == Poly(1));
        CHECK(t.d(2, 2) == lap);
        CHECK(t.d(3, 3) == lap * lap);
        SmithTriple n = transfer_unit(normalize_unit_determinants(t), 3, 2, GaussianRational(-nu));
        CHECK(n.d(2, 2) == C(-nu) * lap);
        CHECK(n.d(3, 3) == C(-nu) * lap * lap);
        CHECK(make_monic(n.d(3, 3)) == lap * lap);
    }
}
