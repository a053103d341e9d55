#include "smithdd/exactalg.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace smithdd::exact {

namespace {

std::string rational_to_string(const mpq_class& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im))
{
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational GaussianRational::inverse() const
{
    if (is_zero())
        throw std::domain_error("inverse of zero Gaussian rational");
    mpq_class norm = re_ * re_ + im_ * im_;
    return {re_ / norm, -im_ / norm};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o)
{
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o)
{
    return *this *= o.inverse();
}

std::string GaussianRational::to_string() const
{
    if (sgn(im_) == 0)
        return rational_to_string(re_);
    std::string imag = (abs(im_) == 1 ? std::string() : rational_to_string(abs(im_)) + "*") + "i";
    if (sgn(re_) == 0)
        return (sgn(im_) < 0 ? "-" : "") + imag;
    return "(" + rational_to_string(re_) + (sgn(im_) < 0 ? " - " : " + ") + imag + ")";
}

mpq_class parse_rational(const std::string& text)
{
    std::string s;
    std::copy_if(text.begin(), text.end(), std::back_inserter(s), [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    try {
        if (auto dot = s.find('.'); dot != std::string::npos) {
            if (s.find('/') != std::string::npos)
                throw std::invalid_argument("mixed decimal/fraction");
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            if (digits == "-" || digits == "+" || digits.empty())
                throw std::invalid_argument("no digits");
            if (digits.front() == '+')
                digits.erase(0, 1);
            mpz_class num(digits, 10);
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
            mpq_class q(num, den);
            q.canonicalize();
            return q;
        }
        if (s.front() == '+')
            s.erase(0, 1);
        mpq_class q(s, 10);
        if (q.get_den() == 0)
            throw std::invalid_argument("zero denominator");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational literal '" + text + "'");
    }
}

Poly::Poly(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(const GaussianRational& c)
{
    if (!c.is_zero())
        coeffs_.push_back(c);
}

Poly Poly::monomial(const GaussianRational& c, int degree)
{
    if (c.is_zero())
        return {};
    std::vector<GaussianRational> coeffs(static_cast<std::size_t>(degree) + 1);
    coeffs.back() = c;
    return Poly(std::move(coeffs));
}

GaussianRational Poly::coeff(int n) const
{
    if (n < 0 || n >= static_cast<int>(coeffs_.size()))
        return {};
    return coeffs_[static_cast<std::size_t>(n)];
}

void Poly::trim()
{
    while (!coeffs_.empty() && coeffs_.back().is_zero())
        coeffs_.pop_back();
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o)
{
    if (o.coeffs_.size() > coeffs_.size())
        coeffs_.resize(o.coeffs_.size());
    for (std::size_t n = 0; n < o.coeffs_.size(); ++n)
        coeffs_[n] += o.coeffs_[n];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    if (o.coeffs_.size() > coeffs_.size())
        coeffs_.resize(o.coeffs_.size());
    for (std::size_t n = 0; n < o.coeffs_.size(); ++n)
        coeffs_[n] -= o.coeffs_[n];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<GaussianRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero())
            continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(out));
}

Poly& Poly::operator*=(const Poly& o)
{
    *this = *this * o;
    return *this;
}

std::string Poly::to_string() const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int n = degree(); n >= 0; --n) {
        const GaussianRational& c = coeffs_[static_cast<std::size_t>(n)];
        if (c.is_zero())
            continue;
        // Real coefficients carry their sign into the separator.
        bool negative_real = sgn(c.im()) == 0 && sgn(c.re()) < 0;
        GaussianRational shown = negative_real ? -c : c;
        if (first)
            os << (negative_real ? "-" : "");
        else
            os << (negative_real ? " - " : " + ");
        first = false;
        std::string body = shown.to_string();
        if (n == 0) {
            os << body;
            continue;
        }
        if (!shown.is_one())
            os << body << "*";
        os << "L";
        if (n > 1)
            os << "^" << n;
    }
    return os.str();
}

Poly poly_add(const Poly& a, const Poly& b) { return a + b; }

Poly poly_mul(const Poly& a, const Poly& b) { return a * b; }

DivMod poly_divmod(const Poly& a, const Poly& b)
{
    if (b.is_zero())
        throw std::domain_error("polynomial division by zero");
    Poly remainder = a;
    std::vector<GaussianRational> q;
    int db = b.degree();
    GaussianRational inv_lead = b.leading().inverse();
    if (remainder.degree() >= db)
        q.resize(static_cast<std::size_t>(remainder.degree() - db) + 1);
    while (!remainder.is_zero() && remainder.degree() >= db) {
        int shift = remainder.degree() - db;
        GaussianRational factor = remainder.leading() * inv_lead;
        q[static_cast<std::size_t>(shift)] = factor;
        remainder -= Poly::monomial(factor, shift) * b;
    }
    return {Poly(std::move(q)), std::move(remainder)};
}

Poly make_monic(const Poly& p)
{
    if (p.is_zero())
        return p;
    return p * Poly(p.leading().inverse());
}

Poly poly_gcd(const Poly& a, const Poly& b)
{
    if (a.is_zero() && b.is_zero())
        throw std::domain_error("gcd of two zero polynomials");
    Poly x = a;
    Poly y = b;
    while (!y.is_zero()) {
        Poly r = poly_divmod(x, y).remainder;
        x = std::move(y);
        y = std::move(r);
    }
    return make_monic(x);
}

bool divides(const Poly& a, const Poly& b)
{
    return poly_divmod(b, a).remainder.is_zero();
}

}  // namespace smithdd::exact
