/*
   Copyright 2026 The valdiff Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef VALDIFF_RATIONAL_FUNCTION_HPP
#define VALDIFF_RATIONAL_FUNCTION_HPP

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace valdiff {

using Rational = boost::multiprecision::cpp_rational;

/// Dense univariate polynomial over Q, coefficients from x^0 upward, no trailing zeros.
class UPoly {
public:
    UPoly() = default;
    UPoly(const Rational& c)
    {
        if (c != 0) {
            c_.push_back(c);
        }
    }
    explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly x() { return UPoly(std::vector<Rational>{0, 1}); }

    static UPoly monomial(const Rational& c, std::size_t k)
    {
        std::vector<Rational> v(k + 1);
        v[k] = c;
        return UPoly(std::move(v));
    }

    bool is_zero() const noexcept { return c_.empty(); }
    /// -1 for the zero polynomial
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const noexcept { return c_; }
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    friend UPoly operator+(const UPoly& a, const UPoly& b)
    {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return UPoly(std::move(r));
    }

    friend UPoly operator-(const UPoly& a)
    {
        UPoly r = a;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

    friend UPoly operator*(const UPoly& a, const UPoly& b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                r[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return UPoly(std::move(r));
    }

    friend bool operator==(const UPoly&, const UPoly&) = default;

    /// Euclidean division; b must be nonzero.
    static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b)
    {
        if (b.is_zero()) {
            fail(Errc::DivisionByZero, "polynomial division by zero");
        }
        std::vector<Rational> rem = a.c_;
        std::vector<Rational> quo(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0);
        const Rational lb = b.leading();
        for (long i = static_cast<long>(rem.size()) - static_cast<long>(b.c_.size()); i >= 0; --i) {
            Rational q = rem[static_cast<std::size_t>(i) + b.c_.size() - 1] / lb;
            quo[static_cast<std::size_t>(i)] = q;
            if (q == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                rem[static_cast<std::size_t>(i) + j] -= q * b.c_[j];
            }
        }
        return {UPoly(std::move(quo)), UPoly(std::move(rem))};
    }

    UPoly monic() const
    {
        if (is_zero()) return {};
        UPoly r = *this;
        Rational l = leading();
        for (auto& c : r.c_) c /= l;
        return r;
    }

    /// Monic gcd; gcd(0,0) = 0.
    static UPoly gcd(UPoly a, UPoly b)
    {
        while (!b.is_zero()) {
            UPoly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    UPoly derivative() const
    {
        if (c_.size() <= 1) return {};
        std::vector<Rational> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
        return UPoly(std::move(r));
    }

    std::size_t term_count() const
    {
        std::size_t n = 0;
        for (const auto& c : c_) n += (c != 0);
        return n;
    }

    /// "x^2+1", "-1/2*x", "3"
    std::string to_string() const
    {
        if (is_zero()) return "0";
        std::string s;
        for (long k = degree(); k >= 0; --k) {
            const Rational& c = c_[static_cast<std::size_t>(k)];
            if (c == 0) continue;
            bool neg = c < 0;
            Rational mag = neg ? Rational(-c) : c;
            if (s.empty()) {
                if (neg) s += "-";
            } else {
                s += neg ? "-" : "+";
            }
            if (k == 0) {
                s += mag.str();
                continue;
            }
            if (mag != 1) s += mag.str() + "*";
            s += "x";
            if (k > 1) s += "^" + std::to_string(k);
        }
        return s;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Reduced quotient of polynomials over Q; denominator monic and coprime to the numerator.
class RationalFunction {
public:
    RationalFunction() : den_(Rational(1)) {}
    RationalFunction(const Rational& c) : num_(c), den_(Rational(1)) {}
    RationalFunction(long c) : RationalFunction(Rational(c)) {}
    RationalFunction(UPoly num) : num_(std::move(num)), den_(Rational(1)) {}
    RationalFunction(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RationalFunction x() { return RationalFunction(UPoly::x()); }

    const UPoly& num() const noexcept { return num_; }
    const UPoly& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_constant() const noexcept { return num_.degree() <= 0 && den_.degree() == 0; }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b)
    {
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a)
    {
        RationalFunction r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b)
    {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b)
    {
        if (b.is_zero()) {
            fail(Errc::DivisionByZero, "rational function division by zero");
        }
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

    friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

    /// d/dx
    RationalFunction derivative() const
    {
        return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    std::string to_string() const
    {
        if (den_ == UPoly(Rational(1))) return num_.to_string();
        std::string n = num_.to_string();
        std::string d = den_.to_string();
        if (num_.term_count() > 1) n = "(" + n + ")";
        if (den_.term_count() > 1 || den_.leading() != 1) d = "(" + d + ")";
        return n + "/" + d;
    }

    static RationalFunction parse(std::string_view text);

private:
    void normalize()
    {
        if (den_.is_zero()) {
            fail(Errc::DivisionByZero, "rational function with zero denominator");
        }
        if (num_.is_zero()) {
            den_ = UPoly(Rational(1));
            return;
        }
        UPoly g = UPoly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = UPoly::divmod(num_, g).first;
            den_ = UPoly::divmod(den_, g).first;
        }
        Rational l = den_.leading();
        if (l != 1) {
            num_ = num_ * UPoly(Rational(1) / l);
            den_ = den_.monic();
        }
    }

    UPoly num_;
    UPoly den_;
};

namespace detail {

// expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)* ;
// unary := ('-'|'+') unary | power ; power := atom ('^' ['-'] digits)? ;
// atom := digits | 'x' | '(' expr ')'
class RatFuncParser {
public:
    explicit RatFuncParser(std::string_view s) : s_(s) {}

    RationalFunction parse_all()
    {
        RationalFunction r = expr();
        skip();
        if (pos_ != s_.size()) error("unexpected character");
        return r;
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void error(const std::string& what) const
    {
        fail(Errc::ParseError, "cannot parse \"" + std::string(s_) + "\": " + what + " at offset " + std::to_string(pos_));
    }

    RationalFunction expr()
    {
        RationalFunction r = term();
        for (;;) {
            if (eat('+')) r += term();
            else if (eat('-')) r -= term();
            else return r;
        }
    }
    RationalFunction term()
    {
        RationalFunction r = unary();
        for (;;) {
            if (eat('*')) r *= unary();
            else if (eat('/')) {
                RationalFunction d = unary();
                if (d.is_zero()) error("division by zero");
                r = r / d;
            } else return r;
        }
    }
    RationalFunction unary()
    {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    RationalFunction power()
    {
        RationalFunction base = atom();
        if (!eat('^')) return base;
        bool neg = eat('-');
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) error("expected exponent");
        unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
        if (e > 4096) error("exponent too large");
        RationalFunction r(1);
        for (unsigned long i = 0; i < e; ++i) r *= base;
        if (neg) {
            if (r.is_zero()) error("division by zero");
            r = RationalFunction(1) / r;
        }
        return r;
    }
    RationalFunction atom()
    {
        skip();
        if (pos_ >= s_.size()) error("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RationalFunction r = expr();
            if (!eat(')')) error("expected ')'");
            return r;
        }
        if (c == 'x') {
            ++pos_;
            return RationalFunction::x();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RationalFunction(Rational(boost::multiprecision::cpp_int(std::string(s_.substr(start, pos_ - start)))));
        }
        error("unexpected character");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

/// Solves M z = rhs exactly; nullopt when inconsistent. Free variables are set to zero.
inline std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs)
{
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        std::swap(rhs[p], rhs[r]);
        Rational inv = Rational(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i) {
        if (rhs[i] != 0) return std::nullopt;
    }
    std::vector<Rational> z(cols);
    for (std::size_t i = 0; i < r; ++i) z[pivot_col[i]] = rhs[i];
    return z;
}

} // namespace detail

inline RationalFunction RationalFunction::parse(std::string_view text) { return detail::RatFuncParser(text).parse_all(); }

} // namespace valdiff

#endif
