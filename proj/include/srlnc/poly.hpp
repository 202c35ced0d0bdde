#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace srlnc {

using Rational = mpq_class;

/// Accepts "7/10", "-3", "0.7", "1.25e-2". Decimals are read as the exact
/// rational they denote.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
/// Correctly rounded (round-to-nearest) conversion to double.
double to_double(const Rational& r);

/// Univariate polynomial in p0 with exact rational coefficients, stored
/// densely in ascending degree with no trailing zeros.
class RationalPoly {
  public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> ascending);
    RationalPoly(std::initializer_list<Rational> ascending)
        : RationalPoly(std::vector<Rational>(ascending)) {}

    static RationalPoly constant(const Rational& c);
    static RationalPoly monomial(const Rational& c, std::size_t degree);
    /// The indeterminate p0.
    static RationalPoly variable() { return monomial(1, 1); }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
    Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
    const Rational& leading() const;

    RationalPoly monic() const;
    RationalPoly pow(unsigned e) const;

    Rational operator()(const Rational& x) const;
    double operator()(double x) const;

    RationalPoly& operator+=(const RationalPoly& o);
    RationalPoly& operator-=(const RationalPoly& o);
    RationalPoly& operator*=(const RationalPoly& o) { return *this = *this * o; }
    RationalPoly& operator*=(const Rational& c);

    friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
    friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
    friend RationalPoly operator-(RationalPoly a) { return a *= Rational(-1); }
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
    friend RationalPoly operator*(RationalPoly a, const Rational& c) { return a *= c; }
    friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.coeffs_ == b.coeffs_; }

  private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Quotient and remainder; throws DegenerateError on a zero divisor.
std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b);
/// Monic gcd; throws DegenerateError when both inputs are zero.
RationalPoly gcd(const RationalPoly& a, const RationalPoly& b);

/// Quotient of polynomials in canonical form: gcd(num, den) = 1 and den monic,
/// so equal functions have identical coefficients.
class RationalFn {
  public:
    RationalFn() : den_(RationalPoly::constant(1)) {}
    RationalFn(RationalPoly num);  // NOLINT: polynomials are rational functions
    RationalFn(RationalPoly num, RationalPoly den);

    const RationalPoly& num() const noexcept { return num_; }
    const RationalPoly& den() const noexcept { return den_; }
    bool is_polynomial() const noexcept { return den_.degree() == 0; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    /// Throws PoleError where the denominator vanishes.
    Rational operator()(const Rational& x) const;
    /// Exact evaluation at the double's value, rounded to nearest.
    double operator()(double x) const;

    RationalFn one_minus() const;

    friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
    friend bool operator==(const RationalFn& a, const RationalFn& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

  private:
    RationalPoly num_;
    RationalPoly den_;
};

/// Descending-degree rendering, e.g. "-24p0^9 +144p0^8 -360p0^7".
std::string to_string(const RationalPoly& p, std::string_view var = "p0");
/// "(num) / (den)", or just the numerator when the denominator is 1.
std::string to_string(const RationalFn& f, std::string_view var = "p0");

/// Ascending list of ["numerator", "denominator"] string pairs.
nlohmann::json to_json(const RationalPoly& p);
/// {"num": [...], "den": [...]}.
nlohmann::json to_json(const RationalFn& f);
RationalPoly poly_from_json(const nlohmann::json& j);
RationalFn fn_from_json(const nlohmann::json& j);

}  // namespace srlnc
