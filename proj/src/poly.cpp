#include "srlnc/poly.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "srlnc/errors.hpp"

namespace srlnc {

Rational parse_rational(std::string_view text) {
    auto fail = [&] { return ParseError("not a rational number: '" + std::string(text) + "'"); };
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t lead = 0;
    while (lead < s.size() && std::isspace(static_cast<unsigned char>(s[lead]))) ++lead;
    s.erase(0, lead);
    if (s.empty()) throw fail();

    if (const auto slash = s.find('/'); slash != std::string::npos) {
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        auto integral = [](const std::string& t, bool allow_sign) {
            std::size_t k = (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
            if (k == t.size()) return false;
            for (; k < t.size(); ++k) {
                if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
            }
            return true;
        };
        if (!integral(num, true) || !integral(den, false)) throw fail();
        mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
        mpz_class d(den, 10);
        if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        Rational r(n, d);
        r.canonicalize();
        return r;
    }

    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    std::string digits;
    long exponent = 0;
    bool seen_digit = false;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        digits += s[pos++];
        seen_digit = true;
    }
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            digits += s[pos++];
            --exponent;
            seen_digit = true;
        }
    }
    if (!seen_digit) throw fail();
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        ++pos;
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        if (pos == s.size()) throw fail();
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw fail();
        exponent += std::stol(s.substr(start));
    }
    if (pos != s.size()) throw fail();

    mpz_class n(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    Rational r = exponent >= 0 ? Rational(n * scale) : Rational(n, scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

double to_double(const Rational& r) {
    const double truncated = r.get_d();
    double best = truncated;
    Rational best_err = abs(r - Rational(truncated));
    for (double candidate : {std::nextafter(truncated, INFINITY), std::nextafter(truncated, -INFINITY)}) {
        if (!std::isfinite(candidate)) continue;
        Rational err = abs(r - Rational(candidate));
        if (err < best_err) {
            best = candidate;
            best_err = err;
        }
    }
    return best;
}

RationalPoly::RationalPoly(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) {
    for (auto& c : coeffs_) c.canonicalize();
    trim();
}

RationalPoly RationalPoly::constant(const Rational& c) { return RationalPoly(std::vector<Rational>{c}); }

RationalPoly RationalPoly::monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> coeffs(degree + 1);
    coeffs[degree] = c;
    return RationalPoly(std::move(coeffs));
}

void RationalPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Rational& RationalPoly::leading() const {
    if (coeffs_.empty()) throw DegenerateError("the zero polynomial has no leading coefficient");
    return coeffs_.back();
}

RationalPoly RationalPoly::monic() const {
    if (is_zero()) return *this;
    RationalPoly out = *this;
    out *= Rational(1) / leading();
    return out;
}

RationalPoly RationalPoly::pow(unsigned e) const {
    RationalPoly result = constant(1);
    RationalPoly base = *this;
    while (e != 0) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e != 0) base *= base;
    }
    return result;
}

Rational RationalPoly::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double RationalPoly::operator()(double x) const { return to_double((*this)(Rational(x))); }

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& c) {
    if (c == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& v : coeffs_) v *= c;
    return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return RationalPoly(std::move(out));
}

std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b) {
    if (b.is_zero()) throw DegenerateError("polynomial division by zero");
    if (a.degree() < b.degree()) return {RationalPoly{}, a};
    std::vector<Rational> rem = a.coeffs();
    std::vector<Rational> quot(rem.size() - b.coeffs().size() + 1);
    const Rational inv_lead = Rational(1) / b.leading();
    const std::size_t db = b.coeffs().size() - 1;
    for (std::size_t k = quot.size(); k-- > 0;) {
        const Rational factor = rem[k + db] * inv_lead;
        quot[k] = factor;
        if (factor == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= factor * b.coeffs()[j];
    }
    return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

RationalPoly gcd(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() && b.is_zero()) throw DegenerateError("gcd of two zero polynomials");
    RationalPoly x = a.monic();
    RationalPoly y = b.monic();
    while (!y.is_zero()) {
        RationalPoly r = divmod(x, y).second.monic();
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

RationalFn::RationalFn(RationalPoly num) : num_(std::move(num)), den_(RationalPoly::constant(1)) {}

RationalFn::RationalFn(RationalPoly num, RationalPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DegenerateError("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = RationalPoly::constant(1);
        return;
    }
    const RationalPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = divmod(num_, g).first;
        den_ = divmod(den_, g).first;
    }
    const Rational scale = Rational(1) / den_.leading();
    num_ *= scale;
    den_ *= scale;
}

Rational RationalFn::operator()(const Rational& x) const {
    const Rational d = den_(x);
    if (d == 0) throw PoleError("denominator vanishes at p0 = " + to_string(x));
    return num_(x) / d;
}

double RationalFn::operator()(double x) const { return to_double((*this)(Rational(x))); }

RationalFn RationalFn::one_minus() const { return RationalFn(den_ - num_, den_); }

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    if (a.den_ == b.den_) return RationalFn(a.num_ + b.num_, a.den_);
    return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) {
    if (a.den_ == b.den_) return RationalFn(a.num_ - b.num_, a.den_);
    return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) {
    if (b.is_zero()) throw DegenerateError("division by the zero function");
    return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
}

std::string to_string(const RationalPoly& p, std::string_view var) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    const auto& c = p.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k] == 0) continue;
        const bool negative = c[k] < 0;
        if (first) {
            if (negative) out << '-';
        } else {
            out << (negative ? " -" : " +");
        }
        first = false;
        const Rational magnitude = abs(c[k]);
        if (k == 0 || magnitude != 1) {
            if (magnitude.get_den() != 1 && k != 0) {
                out << '(' << magnitude.get_str() << ')';
            } else {
                out << magnitude.get_str();
            }
        }
        if (k >= 1) out << var;
        if (k >= 2) out << '^' << k;
    }
    return out.str();
}

std::string to_string(const RationalFn& f, std::string_view var) {
    if (f.is_polynomial() && f.den().leading() == 1) return to_string(f.num(), var);
    return "(" + to_string(f.num(), var) + ") / (" + to_string(f.den(), var) + ")";
}

nlohmann::json to_json(const RationalPoly& p) {
    auto out = nlohmann::json::array();
    for (const auto& c : p.coeffs()) out.push_back({c.get_num().get_str(), c.get_den().get_str()});
    return out;
}

nlohmann::json to_json(const RationalFn& f) { return {{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

RationalPoly poly_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("polynomial JSON must be an array of [num, den] pairs");
    std::vector<Rational> coeffs;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
            throw ParseError("polynomial coefficient must be a [\"num\", \"den\"] pair");
        }
        coeffs.push_back(parse_rational(pair[0].get<std::string>() + "/" + pair[1].get<std::string>()));
    }
    return RationalPoly(std::move(coeffs));
}

RationalFn fn_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den")) {
        throw ParseError("rational function JSON needs \"num\" and \"den\"");
    }
    return RationalFn(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

}  // namespace srlnc
