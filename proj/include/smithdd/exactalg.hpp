#pragma once

// Exact arithmetic over the Gaussian rationals Q(i) and univariate
// polynomials in L (the symbol of d/dx) with Q(i) coefficients.

#include <gmpxx.h>

#include <limits>
#include <string>
#include <vector>

namespace smithdd::exact {

class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(mpq_class re, mpq_class im = 0);

    static GaussianRational i() { return {0, 1}; }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// Multiplicative inverse; throws std::domain_error on zero.
    GaussianRational inverse() const;

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    // "p/q", "r/s*i" or "(p/q + r/s*i)".
    std::string to_string() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

/// Parses "p", "p/q" or a decimal such as "0.25" into an exact rational.
mpq_class parse_rational(const std::string& text);

class Poly {
public:
    static constexpr int kDegreeMinusInfinity = std::numeric_limits<int>::min();

    Poly() = default;
    explicit Poly(std::vector<GaussianRational> coeffs);
    Poly(const GaussianRational& c);  // NOLINT(google-explicit-constructor)
    Poly(long c) : Poly(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)

    static Poly lambda() { return monomial(1, 1); }
    static Poly monomial(const GaussianRational& c, int degree);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return is_zero() ? kDegreeMinusInfinity : static_cast<int>(coeffs_.size()) - 1; }
    /// Coefficient of L^n; zero beyond the degree.
    GaussianRational coeff(int n) const;
    const GaussianRational& leading() const { return coeffs_.back(); }
    const std::vector<GaussianRational>& coeffs() const { return coeffs_; }

    bool is_constant() const { return degree() <= 0; }
    bool is_monic() const { return !is_zero() && leading().is_one(); }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Renders as "a_n*L^n + ... + a_0".
    std::string to_string() const;

private:
    void trim();

    std::vector<GaussianRational> coeffs_;
};

struct DivMod {
    Poly quotient;
    Poly remainder;
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
/// Euclidean division a = q*b + r, deg r < deg b. Throws std::domain_error if b == 0.
DivMod poly_divmod(const Poly& a, const Poly& b);
/// Monic gcd. Throws std::domain_error if both arguments are zero.
Poly poly_gcd(const Poly& a, const Poly& b);
Poly make_monic(const Poly& p);
/// True when b is an exact multiple of a (a nonzero).
bool divides(const Poly& a, const Poly& b);

}  // namespace smithdd::exact
