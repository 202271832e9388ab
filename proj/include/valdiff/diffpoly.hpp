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

#ifndef VALDIFF_DIFFPOLY_HPP
#define VALDIFF_DIFFPOLY_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "monomial.hpp"
#include "ordgroup.hpp"
#include "residue.hpp"
#include "series.hpp"

namespace valdiff {

/// Differential polynomial in Y, Y', ..., Y^(r) with Series coefficients.
template <ResidueField F>
class DiffPoly {
public:
    using series_type = Series<F>;
    using term_map = std::map<DiffMonomial, series_type>;

    explicit DiffPoly(std::size_t rank = 1) : rank_(rank) {}

    static DiffPoly constant(const series_type& c)
    {
        DiffPoly p(c.rank());
        p.add_term(DiffMonomial::one(), c);
        return p;
    }

    /// c * m
    static DiffPoly term(const DiffMonomial& m, const series_type& c)
    {
        DiffPoly p(c.rank());
        p.add_term(m, c);
        return p;
    }

    /// Y^(i)
    static DiffPoly variable(std::size_t rank, std::size_t i = 0)
    {
        return term(DiffMonomial::derivative_var(i), series_type::constant(rank, F::one()));
    }

    void add_term(const DiffMonomial& m, const series_type& c)
    {
        if (c.rank() != rank_) fail(Errc::RankMismatch, "coefficient rank differs from polynomial rank");
        if (c.is_exact_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
            return;
        }
        it->second += c;
        if (it->second.is_exact_zero()) terms_.erase(it);
    }

    std::size_t rank() const noexcept { return rank_; }
    const term_map& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    series_type coeff(const DiffMonomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? series_type(rank_) : it->second;
    }

    /// Highest derivative occurring (0 for constants and the zero polynomial).
    std::size_t order() const
    {
        std::size_t r = 0;
        for (const auto& [m, c] : terms_) r = std::max(r, m.order().value_or(0));
        return r;
    }

    /// total degree (0 for the zero polynomial)
    unsigned degree() const
    {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    bool is_homogeneous() const
    {
        if (terms_.empty()) return true;
        unsigned d = terms_.begin()->first.degree();
        for (const auto& [m, c] : terms_) {
            if (m.degree() != d) return false;
        }
        return true;
    }

    /// P_d
    DiffPoly homogeneous_part(unsigned d) const
    {
        DiffPoly r(rank_);
        for (const auto& [m, c] : terms_) {
            if (m.degree() == d) r.terms_.emplace(m, c);
        }
        return r;
    }

    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b)
    {
        for (const auto& [m, c] : b.terms_) a.add_term(m, c);
        return a;
    }

    friend DiffPoly operator-(const DiffPoly& a)
    {
        DiffPoly r(a.rank_);
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend DiffPoly operator-(const DiffPoly& a, const DiffPoly& b) { return a + (-b); }

    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b)
    {
        DiffPoly r(a.rank_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        }
        return r;
    }

    friend DiffPoly operator*(const series_type& s, const DiffPoly& a)
    {
        DiffPoly r(a.rank_);
        for (const auto& [m, c] : a.terms_) r.add_term(m, s * c);
        return r;
    }

    DiffPoly& operator+=(const DiffPoly& o) { return *this = *this + o; }
    DiffPoly& operator*=(const DiffPoly& o) { return *this = *this * o; }

    friend bool operator==(const DiffPoly&, const DiffPoly&) = default;

private:
    std::size_t rank_;
    term_map terms_;
};

/// Successive derivatives a, a', ..., a^(r).
template <ResidueField F>
std::vector<Series<F>> derivative_chain(const Series<F>& a, const Derivation<F>& d, std::size_t r)
{
    std::vector<Series<F>> out;
    out.reserve(r + 1);
    out.push_back(a);
    for (std::size_t i = 1; i <= r; ++i) out.push_back(derive(out.back(), d));
    return out;
}

/// P(a)
template <ResidueField F>
Series<F> evaluate(const DiffPoly<F>& p, const Series<F>& a, const Derivation<F>& d)
{
    const auto ders = derivative_chain(a, d, p.order());
    Series<F> acc(p.rank());
    for (const auto& [m, c] : p.terms()) {
        Series<F> t = c;
        for (std::size_t i = 0; i < m.exps().size(); ++i) {
            for (unsigned k = 0; k < m.exps()[i]; ++k) t *= ders[i];
        }
        acc += t;
    }
    return acc;
}

namespace detail {

/// Replaces Y^(i) by images[i] and expands.
template <ResidueField F>
DiffPoly<F> substitute(const DiffPoly<F>& p, const std::vector<DiffPoly<F>>& images)
{
    std::map<std::pair<std::size_t, unsigned>, DiffPoly<F>> powers;
    auto power = [&](std::size_t i, unsigned e) -> const DiffPoly<F>& {
        auto it = powers.find({i, e});
        if (it != powers.end()) return it->second;
        unsigned k = e;
        while (k > 1 && !powers.count({i, k - 1})) --k;
        DiffPoly<F> v = k == 1 ? images[i] : powers.at({i, k - 1}) * images[i];
        it = powers.emplace(std::make_pair(i, k), std::move(v)).first;
        for (; k < e; ++k) it = powers.emplace(std::make_pair(i, k + 1), it->second * images[i]).first;
        return it->second;
    };
    DiffPoly<F> r(p.rank());
    for (const auto& [m, c] : p.terms()) {
        DiffPoly<F> t = DiffPoly<F>::constant(c);
        for (std::size_t i = 0; i < m.exps().size(); ++i) {
            if (m.exps()[i]) t *= power(i, m.exps()[i]);
        }
        r += t;
    }
    return r;
}

inline Integer binomial(std::size_t n, std::size_t k)
{
    Integer r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace detail

/// P_{+a} = P(a + Y)
template <ResidueField F>
DiffPoly<F> add_conjugate(const DiffPoly<F>& p, const Series<F>& a, const Derivation<F>& d)
{
    const std::size_t r = p.order();
    const auto ders = derivative_chain(a, d, r);
    std::vector<DiffPoly<F>> images;
    for (std::size_t i = 0; i <= r; ++i) {
        images.push_back(DiffPoly<F>::constant(ders[i]) + DiffPoly<F>::variable(p.rank(), i));
    }
    return detail::substitute(p, images);
}

/// P_{xa} = P(aY); (aY)^(i) expands by Leibniz as sum_k C(i,k) a^(i-k) Y^(k).
template <ResidueField F>
DiffPoly<F> mul_conjugate(const DiffPoly<F>& p, const Series<F>& a, const Derivation<F>& d)
{
    if (a.is_exact_zero()) fail(Errc::ZeroConjugate, "multiplicative conjugate by zero");
    const std::size_t r = p.order();
    const auto ders = derivative_chain(a, d, r);
    std::vector<DiffPoly<F>> images;
    for (std::size_t i = 0; i <= r; ++i) {
        DiffPoly<F> img(p.rank());
        for (std::size_t k = 0; k <= i; ++k) {
            auto coef = ders[i - k].scaled(F::from_rational(Rational(detail::binomial(i, k))));
            img.add_term(DiffMonomial::derivative_var(k), coef);
        }
        images.push_back(std::move(img));
    }
    return detail::substitute(p, images);
}

struct Complexity {
    std::size_t order = 0;   // r_P
    unsigned top_degree = 0; // s_P: degree in Y^(r_P)
    unsigned degree = 0;     // t_P

    friend bool operator==(const Complexity&, const Complexity&) = default;
    friend auto operator<=>(const Complexity&, const Complexity&) = default;
};

template <ResidueField F>
Complexity complexity(const DiffPoly<F>& p)
{
    if (p.is_zero()) fail(Errc::ZeroPolynomial, "complexity of the zero polynomial");
    Complexity c;
    c.order = p.order();
    c.degree = p.degree();
    bool has_var = false;
    for (const auto& [m, s] : p.terms()) {
        if (m.order()) has_var = true;
        c.top_degree = std::max(c.top_degree, m.exp(c.order));
    }
    if (!has_var) c.top_degree = 0;
    return c;
}

/// v(P): minimum valuation of the coefficients.
template <ResidueField F>
GroupVector valuation(const DiffPoly<F>& p)
{
    if (p.is_zero()) fail(Errc::ZeroPolynomial, "valuation of the zero polynomial");
    std::optional<GroupVector> best;
    for (const auto& [m, c] : p.terms()) {
        if (c.has_terms() && (!best || *c.leading_exponent() < *best)) best = *c.leading_exponent();
    }
    for (const auto& [m, c] : p.terms()) {
        if (!c.has_terms() && (!best || !(c.frontier().bound() > *best))) {
            fail(Errc::InsufficientPrecision, "coefficient of " + m.to_string() + " is only known as O(t^" +
                                                  c.frontier().bound().to_string() + ")");
        }
    }
    return *best;
}

template <ResidueField F>
struct DominantData {
    ResiduePoly<F> dpart;
    Series<F> dmonomial;
    unsigned ddeg = 0;

    friend bool operator==(const DominantData&, const DominantData&) = default;
};

/// D_P: residue of t^(-v(P)) P, with the distinguished monomial t^(v(P)).
template <ResidueField F>
DominantData<F> dominant(const DiffPoly<F>& p)
{
    const GroupVector v = valuation(p);
    DominantData<F> out;
    out.dmonomial = Series<F>::power(v);
    for (const auto& [m, c] : p.terms()) {
        if (c.has_terms() && *c.leading_exponent() == v) out.dpart.add_term(m, c.leading_coeff());
    }
    out.ddeg = out.dpart.degree();
    return out;
}

template <ResidueField F>
unsigned dominant_degree(const DiffPoly<F>& p)
{
    return dominant(p).ddeg;
}

/// ddeg_{>=g} P = ddeg P_{x t^g}
template <ResidueField F>
unsigned ddeg_geq(const DiffPoly<F>& p, const GroupVector& g, const Derivation<F>& d)
{
    if (p.is_zero()) fail(Errc::ZeroPolynomial, "dominant degree of the zero polynomial");
    return dominant_degree(mul_conjugate(p, Series<F>::power(g), d));
}

/// v_P(g) = v(P_{x t^g})
template <ResidueField F>
GroupVector v_p_gamma(const DiffPoly<F>& p, const GroupVector& g, const Derivation<F>& d)
{
    if (p.is_zero()) fail(Errc::ZeroPolynomial, "v_P of the zero polynomial");
    return valuation(mul_conjugate(p, Series<F>::power(g), d));
}

} // namespace valdiff

#endif
