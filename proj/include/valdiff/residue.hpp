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

#ifndef VALDIFF_RESIDUE_HPP
#define VALDIFF_RESIDUE_HPP

#include <concepts>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "monomial.hpp"
#include "rational_function.hpp"

namespace valdiff {

// A residue differential field. Fields are stateless; the derivation on elements is the
// field's own (zero for Q, d/dx for Q(x)) and callers switch it off with `differential = false`.
template <class F>
concept ResidueField = requires(const typename F::element_type& a, std::string_view s,
                                std::span<const typename F::element_type> coeffs) {
    typename F::element_type;
    { F::name } -> std::convertible_to<std::string_view>;
    { F::zero() } -> std::same_as<typename F::element_type>;
    { F::one() } -> std::same_as<typename F::element_type>;
    { F::from_integer(1L) } -> std::same_as<typename F::element_type>;
    { F::from_rational(Rational(1)) } -> std::same_as<typename F::element_type>;
    { F::is_zero(a) } -> std::same_as<bool>;
    { F::inverse(a) } -> std::same_as<typename F::element_type>;
    { F::derive(a) } -> std::same_as<typename F::element_type>;
    { F::is_field_constant(a) } -> std::same_as<bool>;
    { F::lin_solve(coeffs, true) } -> std::same_as<std::optional<typename F::element_type>>;
    { F::parse(s) } -> std::same_as<typename F::element_type>;
    { F::format(a) } -> std::same_as<std::string>;
    { a + a } -> std::convertible_to<typename F::element_type>;
    { a - a } -> std::convertible_to<typename F::element_type>;
    { a * a } -> std::convertible_to<typename F::element_type>;
    { -a } -> std::convertible_to<typename F::element_type>;
    { a == a } -> std::convertible_to<bool>;
};

/// Q with the zero derivation.
struct RationalField {
    using element_type = Rational;
    static constexpr std::string_view name = "Q";

    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_integer(long n) { return Rational(n); }
    static Rational from_rational(const Rational& q) { return q; }
    static bool is_zero(const Rational& a) { return a == 0; }
    static Rational inverse(const Rational& a)
    {
        if (a == 0) fail(Errc::DivisionByZero, "inverse of zero in Q");
        return Rational(1) / a;
    }
    static Rational derive(const Rational&) { return Rational(0); }
    static bool is_field_constant(const Rational&) { return true; }

    /// 1 + a0 y = 0; every element is a constant so higher terms drop out.
    static std::optional<Rational> lin_solve(std::span<const Rational> a, bool /*differential*/, int /*bound*/ = 16)
    {
        check_lin_args(a);
        if (a[0] == 0) return std::nullopt;
        return Rational(-1) / a[0];
    }

    static Rational parse(std::string_view s)
    {
        RationalFunction f = RationalFunction::parse(s);
        if (!f.is_constant()) fail(Errc::ParseError, "\"" + std::string(s) + "\" is not a rational number");
        return f.num().coeff(0);
    }
    static std::string format(const Rational& a) { return a.str(); }

    static void check_lin_args(std::span<const Rational> a)
    {
        if (a.empty() || a.back() == 0) fail(Errc::InvalidArgument, "linear equation needs a nonzero top coefficient");
    }
};

/// Q(x) with d/dx.
struct RationalFunctionField {
    using element_type = RationalFunction;
    static constexpr std::string_view name = "Q(x)";
    static constexpr int default_degree_bound = 16;

    static RationalFunction zero() { return RationalFunction(); }
    static RationalFunction one() { return RationalFunction(1); }
    static RationalFunction from_integer(long n) { return RationalFunction(n); }
    static RationalFunction from_rational(const Rational& q) { return RationalFunction(q); }
    static bool is_zero(const RationalFunction& a) { return a.is_zero(); }
    static RationalFunction inverse(const RationalFunction& a) { return RationalFunction(1) / a; }
    static RationalFunction derive(const RationalFunction& a) { return a.derivative(); }
    static bool is_field_constant(const RationalFunction& a) { return a.is_constant(); }

    static RationalFunction parse(std::string_view s) { return RationalFunction::parse(s); }
    static std::string format(const RationalFunction& a) { return a.to_string(); }

    /// Solves 1 + a0 y + a1 y' + ... + ar y^(r) = 0 over Q(x).
    ///
    /// With the derivation switched off this is 1 + a0 y = 0. Otherwise the equation is
    /// cleared to polynomial coefficients p_i; finite poles of a rational solution can only sit
    /// at roots of p_r, so candidates are N / s^m with s the squarefree part of p_r,
    /// deg N <= bound and m * deg s <= bound. Each candidate class is a linear system for the
    /// coefficients of N. nullopt means no solution exists in the searched class.
    static std::optional<RationalFunction> lin_solve(std::span<const RationalFunction> a, bool differential,
                                                     int bound = default_degree_bound)
    {
        if (a.empty() || a.back().is_zero()) {
            fail(Errc::InvalidArgument, "linear equation needs a nonzero top coefficient");
        }
        if (!differential || a.size() == 1) {
            if (a[0].is_zero()) return std::nullopt;
            return -inverse(a[0]);
        }
        UPoly common(Rational(1));
        for (const auto& c : a) {
            common = UPoly::divmod(common * c.den(), UPoly::gcd(common, c.den())).first;
        }
        std::vector<UPoly> p;
        for (const auto& c : a) {
            p.push_back(UPoly::divmod(c.num() * common, c.den()).first);
        }
        const UPoly& top = p.back();
        UPoly s = UPoly::divmod(top, UPoly::gcd(top, top.derivative())).first.monic();
        const long ds = s.degree();
        const UPoly rhs = -common;

        for (long m = 0; m == 0 || (ds > 0 && m * ds <= bound); ++m) {
            UPoly den(Rational(1));
            for (long i = 0; i < m; ++i) den = den * s;
            // images L(x^j / den) as rational functions
            std::vector<RationalFunction> images;
            for (int j = 0; j <= bound; ++j) {
                RationalFunction basis(UPoly::monomial(1, static_cast<std::size_t>(j)), den);
                images.push_back(apply_operator(p, basis));
            }
            UPoly cd(Rational(1));
            for (const auto& im : images) {
                cd = UPoly::divmod(cd * im.den(), UPoly::gcd(cd, im.den())).first;
            }
            std::vector<UPoly> cols;
            std::size_t rows = static_cast<std::size_t>(std::max<long>(0, (rhs * cd).degree() + 1));
            for (const auto& im : images) {
                cols.push_back(UPoly::divmod(im.num() * cd, im.den()).first);
                rows = std::max(rows, static_cast<std::size_t>(std::max<long>(0, cols.back().degree() + 1)));
            }
            UPoly target = rhs * cd;
            std::vector<std::vector<Rational>> mat(rows, std::vector<Rational>(cols.size()));
            std::vector<Rational> vec(rows);
            for (std::size_t r = 0; r < rows; ++r) {
                for (std::size_t j = 0; j < cols.size(); ++j) mat[r][j] = cols[j].coeff(r);
                vec[r] = target.coeff(r);
            }
            auto sol = detail::solve_linear(std::move(mat), std::move(vec));
            if (!sol) continue;
            RationalFunction y(UPoly(*sol), den);
            std::vector<RationalFunction> poly_coeffs;
            for (const auto& c : p) poly_coeffs.emplace_back(c);
            if (apply_operator(poly_coeffs, y) == RationalFunction(rhs)) {
                return y;
            }
        }
        return std::nullopt;
    }

private:
    template <class Coeff>
    static RationalFunction apply_operator(const std::vector<Coeff>& p, const RationalFunction& y)
    {
        RationalFunction acc;
        RationalFunction d = y;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) d = d.derivative();
            acc += RationalFunction(p[i]) * d;
        }
        return acc;
    }
};

static_assert(ResidueField<RationalField>);
static_assert(ResidueField<RationalFunctionField>);

/// Checks 1 + sum a_i y^(i) = 0 exactly by substitution.
template <ResidueField F>
bool satisfies_linear(std::span<const typename F::element_type> a, const typename F::element_type& y, bool differential)
{
    auto acc = F::one();
    auto d = y;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) d = differential ? F::derive(d) : F::zero();
        acc = acc + a[i] * d;
    }
    return F::is_zero(acc);
}

/// Element derivative under an optional switch-off.
template <ResidueField F>
typename F::element_type residue_derive(const typename F::element_type& a, bool differential)
{
    return differential ? F::derive(a) : F::zero();
}

/// Differential polynomial over the residue field.
template <ResidueField F>
class ResiduePoly {
public:
    using element = typename F::element_type;
    using term_map = std::map<DiffMonomial, element>;

    ResiduePoly() = default;

    static ResiduePoly constant(const element& c)
    {
        ResiduePoly p;
        p.add_term(DiffMonomial::one(), c);
        return p;
    }

    void add_term(const DiffMonomial& m, const element& c)
    {
        if (F::is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
            return;
        }
        it->second = it->second + c;
        if (F::is_zero(it->second)) terms_.erase(it);
    }

    const term_map& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    element coeff(const DiffMonomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? F::zero() : it->second;
    }

    /// total degree; 0 for the zero polynomial
    unsigned degree() const
    {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    ResiduePoly homogeneous_part(unsigned d) const
    {
        ResiduePoly r;
        for (const auto& [m, c] : terms_) {
            if (m.degree() == d) r.terms_.emplace(m, c);
        }
        return r;
    }

    friend ResiduePoly operator+(ResiduePoly a, const ResiduePoly& b)
    {
        for (const auto& [m, c] : b.terms_) a.add_term(m, c);
        return a;
    }

    friend ResiduePoly operator*(const ResiduePoly& a, const ResiduePoly& b)
    {
        ResiduePoly r;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        }
        return r;
    }

    friend ResiduePoly operator*(const element& s, const ResiduePoly& a)
    {
        ResiduePoly r;
        for (const auto& [m, c] : a.terms_) r.add_term(m, s * c);
        return r;
    }

    friend bool operator==(const ResiduePoly&, const ResiduePoly&) = default;

    /// Value at y, using the residue derivation (switched off when `differential` is false).
    element evaluate(const element& y, bool differential) const
    {
        std::size_t order = 0;
        for (const auto& [m, c] : terms_) order = std::max(order, m.exps().size());
        std::vector<element> ders;
        element d = y;
        for (std::size_t i = 0; i < order; ++i) {
            if (i) d = residue_derive<F>(d, differential);
            ders.push_back(d);
        }
        element acc = F::zero();
        for (const auto& [m, c] : terms_) {
            element t = c;
            for (std::size_t i = 0; i < m.exps().size(); ++i) {
                for (unsigned k = 0; k < m.exps()[i]; ++k) t = t * ders[i];
            }
            acc = acc + t;
        }
        return acc;
    }

    /// Highest monomials first: "Y^2+x*Y'-3/2".
    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            std::string c = F::format(it->second);
            bool neg = !c.empty() && c[0] == '-';
            std::string mag = neg ? c.substr(1) : c;
            bool compound = mag.find_first_of("+-") != std::string::npos ||
                            (mag.find('/') != std::string::npos && mag.find('(') != std::string::npos);
            if (compound) {
                // keep the sign inside the parentheses for compound coefficients
                neg = false;
                mag = "(" + c + ")";
            }
            if (s.empty()) {
                if (neg) s += "-";
            } else {
                s += neg ? "-" : "+";
            }
            if (it->first == DiffMonomial::one()) {
                s += mag;
            } else if (mag == "1") {
                s += it->first.to_string();
            } else {
                s += mag + "*" + it->first.to_string();
            }
        }
        return s;
    }

private:
    term_map terms_;
};

} // namespace valdiff

#endif
