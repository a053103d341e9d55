#include "doctest.h"

#include "smithdd/exactalg.hpp"

#include <random>
#include <stdexcept>

using namespace smithdd::exact;

namespace {

Poly P(std::initializer_list<long> coeffs_low_to_high)
{
    std::vector<GaussianRational> c;
    for (long v : coeffs_low_to_high)
        c.emplace_back(v);
    return Poly(std::move(c));
}

const Poly L = Poly::lambda();

// Random polynomial with small Gaussian-rational coefficients.
Poly random_poly(std::mt19937& rng, int max_degree)
{
    std::uniform_int_distribution<int> deg(-1, max_degree);
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    int d = deg(rng);
    std::vector<GaussianRational> c;
    for (int n = 0; n <= d; ++n)
        c.emplace_back(mpq_class(num(rng), den(rng)), mpq_class(num(rng) / 2, den(rng)));
    return Poly(std::move(c));
}

}  // namespace

TEST_CASE("gaussian rationals reduce and invert")
{
    GaussianRational a(mpq_class(2, 4), mpq_class(-3, 6));
    CHECK(a.re() == mpq_class(1, 2));
    CHECK(a.re().get_den() == 2);
    CHECK(a.im() == mpq_class(-1, 2));
    CHECK((a * a.inverse()).is_one());
    CHECK(GaussianRational::i() * GaussianRational::i() == GaussianRational(-1));
    CHECK_THROWS_AS(GaussianRational().inverse(), std::domain_error);
    CHECK(a.to_string() == "(1/2 - 1/2*i)");
    CHECK(GaussianRational(0, -1).to_string() == "-i");
    CHECK(GaussianRational(0, mpq_class(3, 2)).to_string() == "3/2*i");
}

TEST_CASE("rational literals")
{
    CHECK(parse_rational("3/6") == mpq_class(1, 2));
    CHECK(parse_rational("0.25") == mpq_class(1, 4));
    CHECK(parse_rational("-1.5") == mpq_class(-3, 2));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("poly_add")
{
    CHECK(poly_add(P({1, 0, 1}), P({0, 0, -1})) == P({1}));
    Poly p = P({3, -2, 5});
    CHECK(poly_add(p, Poly()) == p);
    CHECK(poly_add(P({-2, 1}), P({2, 1})) == P({0, 2}));
    CHECK(Poly().degree() == Poly::kDegreeMinusInfinity);
    CHECK(poly_add(P({0, 0, 1}), P({0, 0, -1})).is_zero());
}

TEST_CASE("poly_mul")
{
    CHECK(poly_mul(P({-1, 1}), P({1, 1})) == P({-1, 0, 1}));
    Poly p = P({3, -2, 5});
    CHECK(poly_mul(p, P({1})) == p);
    Poly lap = L * L - Poly(1);
    CHECK(poly_mul(lap, lap) == P({1, 0, -2, 0, 1}));
    CHECK(poly_mul(p, Poly()).is_zero());
}

TEST_CASE("poly_divmod")
{
    auto [q1, r1] = poly_divmod(P({-1, 0, 1}), P({-1, 1}));
    CHECK(q1 == P({1, 1}));
    CHECK(r1.is_zero());

    auto [q2, r2] = poly_divmod(L, L * L);
    CHECK(q2.is_zero());
    CHECK(r2 == L);

    const Poly a = P({1, 1, 0, 1});
    const Poly b = P({1, 0, 1});
    auto [q3, r3] = poly_divmod(a, b);
    CHECK(q3 == L);
    CHECK(r3 == P({1}));
    CHECK(q3 * b + r3 == a);

    CHECK_THROWS_AS(poly_divmod(a, Poly()), std::domain_error);
}

TEST_CASE("poly_gcd")
{
    CHECK(poly_gcd(P({-1, 0, 1}), P({-1, 1})) == P({-1, 1}));
    CHECK(poly_gcd(P({2, 0, 2}), P({2, 0, 2})) == P({1, 0, 1}));
    // (L^2-1)^2 and L(L^2-1) share exactly L^2-1.
    CHECK(poly_gcd(P({1, 0, -2, 0, 1}), P({0, -1, 0, 1})) == P({-1, 0, 1}));
    CHECK(poly_gcd(Poly(), P({0, 3})) == L);
    CHECK_THROWS_AS(poly_gcd(Poly(), Poly()), std::domain_error);
}

TEST_CASE("rendering")
{
    CHECK(Poly().to_string() == "0");
    CHECK(P({1, 0, -2, 0, 1}).to_string() == "L^4 - 2*L^2 + 1");
    CHECK(P({0, -1}).to_string() == "-L");
    Poly c = Poly::monomial(GaussianRational(mpq_class(1, 2), 1), 1) + Poly(GaussianRational(0, -3));
    CHECK(c.to_string() == "(1/2 + i)*L + -3*i");
}

TEST_CASE("division and gcd invariants on random inputs")
{
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 200; ++trial) {
        Poly a = random_poly(rng, 6);
        Poly b = random_poly(rng, 6);
        if (!b.is_zero()) {
            auto [q, r] = poly_divmod(a, b);
            CHECK(q * b + r == a);
            CHECK(r.degree() < b.degree());
        }
        if (!(a.is_zero() && b.is_zero())) {
            Poly g = poly_gcd(a, b);
            CHECK(g.is_monic());
            CHECK(poly_divmod(a, g).remainder.is_zero());
            CHECK(poly_divmod(b, g).remainder.is_zero());
        }
    }
}

TEST_CASE("ring axioms on random triples")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        Poly a = random_poly(rng, 4);
        Poly b = random_poly(rng, 4);
        Poly c = random_poly(rng, 4);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        if (!a.is_zero() && !b.is_zero())
            CHECK((a * b).degree() == a.degree() + b.degree());
    }
}
