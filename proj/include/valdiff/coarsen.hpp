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

#ifndef VALDIFF_COARSEN_HPP
#define VALDIFF_COARSEN_HPP

// Coarsening by Delta_k: the valuation v_Delta(a) = v(a) + Delta_k takes values in Z^k, its
// valuation ring is O_dot = { v_Delta >= 0 } with maximal ideal m_dot = { v_Delta > 0 }, and the
// residue field K_dot = O_dot / m_dot is again a series field, over Delta_k = Z^(n-k).

#include <cstddef>
#include <optional>
#include <string>

#include "diffpoly.hpp"
#include "error.hpp"
#include "ordgroup.hpp"
#include "series.hpp"

namespace valdiff {

class CoarseContext {
public:
    CoarseContext(std::size_t k, std::size_t n) : level_(k, n)
    {
        if (k == 0 || k >= n) {
            fail(Errc::InvalidArgument, "coarsening needs a proper nontrivial convex subgroup: 0 < k < n, got k=" +
                                            std::to_string(k) + ", n=" + std::to_string(n));
        }
    }

    const ConvexLevel& level() const noexcept { return level_; }
    std::size_t quotient_rank() const noexcept { return level_.k; }
    std::size_t residual_rank() const noexcept { return level_.n - level_.k; }
    std::size_t rank() const noexcept { return level_.n; }

private:
    ConvexLevel level_;
};

template <ResidueField F>
GroupVector coarse_valuation(const Series<F>& a, const CoarseContext& ctx)
{
    if (a.rank() != ctx.rank()) fail(Errc::RankMismatch, "series rank does not match the coarsening");
    return quotient_project(valuation(a), ctx.level());
}

/// a in O_dot (known from the available precision)
template <ResidueField F>
bool in_dot_o(const Series<F>& a, const CoarseContext& ctx)
{
    const GroupVector z = GroupVector::zero(ctx.quotient_rank());
    if (a.has_terms()) return quotient_project(*a.leading_exponent(), ctx.level()) >= z;
    return a.is_exact() || quotient_project(a.frontier().bound(), ctx.level()) >= z;
}

/// a -> a + m_dot, re-indexed over Z^(n-k).
template <ResidueField F>
Series<F> specialize(const Series<F>& a, const CoarseContext& ctx)
{
    if (a.rank() != ctx.rank()) fail(Errc::RankMismatch, "series rank does not match the coarsening");
    const GroupVector z = GroupVector::zero(ctx.quotient_rank());
    if (a.has_terms() && quotient_project(*a.leading_exponent(), ctx.level()) < z) {
        fail(Errc::NotInDotO, "coarse valuation " + quotient_project(*a.leading_exponent(), ctx.level()).to_string() +
                                  " is negative");
    }
    Frontier f;
    if (!a.is_exact()) {
        const GroupVector head = quotient_project(a.frontier().bound(), ctx.level());
        if (head < z) {
            fail(Errc::InsufficientPrecision, "frontier " + a.frontier().to_string() + " leaves membership in O_dot open");
        }
        // head > 0: every exponent in Delta_k is below the frontier, so the image is exact
        if (head == z) f = Frontier(subgroup_coords(a.frontier().bound(), ctx.level()));
    }
    typename Series<F>::term_map terms;
    for (const auto& [g, c] : a.terms()) {
        if (ctx.level().contains(g)) terms.emplace(subgroup_coords(g, ctx.level()), c);
    }
    return Series<F>(ctx.residual_rank(), std::move(terms), f);
}

/// Inverse of specialize on representatives: the series over Delta_k seen in K.
template <ResidueField F>
Series<F> lift_specialized(const Series<F>& a, const CoarseContext& ctx)
{
    typename Series<F>::term_map terms;
    for (const auto& [g, c] : a.terms()) terms.emplace(embed_subgroup(g, ctx.level()), c);
    Frontier f;
    if (!a.is_exact()) f = Frontier(embed_subgroup(a.frontier().bound(), ctx.level()));
    return Series<F>(ctx.rank(), std::move(terms), f);
}

/// P_dot; P must lie in O_dot{Y} \ m_dot{Y}.
template <ResidueField F>
DiffPoly<F> specialize(const DiffPoly<F>& p, const CoarseContext& ctx)
{
    if (p.rank() != ctx.rank()) fail(Errc::RankMismatch, "polynomial rank does not match the coarsening");
    DiffPoly<F> r(ctx.residual_rank());
    for (const auto& [m, c] : p.terms()) r.add_term(m, specialize(c, ctx));
    if (r.is_zero()) fail(Errc::AllCoefficientsVanish, "every coefficient lies in m_dot");
    return r;
}

/// Derivation induced on K_dot. For rho outside Delta_k with positive image the monomial part
/// leaves O_dot-units in m_dot and only the coefficient derivation survives.
template <ResidueField F>
Derivation<F> specialize(const Derivation<F>& d, const CoarseContext& ctx)
{
    if (d.rank() != ctx.rank()) fail(Errc::RankMismatch, "derivation rank does not match the coarsening");
    const std::size_t k = ctx.quotient_rank();
    const std::size_t m = ctx.residual_rank();
    const GroupVector head = quotient_project(d.rho, ctx.level());
    const GroupVector z = GroupVector::zero(k);
    std::vector<typename F::element_type> w(d.weights.begin() + static_cast<std::ptrdiff_t>(k), d.weights.end());
    if (head == z) return Derivation<F>(subgroup_coords(d.rho, ctx.level()), std::move(w), d.coefficient_derivation);
    if (head < z && !d.weights_vanish_from(k)) {
        fail(Errc::NotInDotO, "derivation maps O_dot outside itself (rho has negative image and Delta weights are nonzero)");
    }
    return Derivation<F>(GroupVector::zero(m), std::vector<typename F::element_type>(m, F::zero()),
                         d.coefficient_derivation);
}

/// ddeg^Delta of P_{x t^g} for a lift g of the coarse exponent.
template <ResidueField F>
unsigned ddeg_coarse(const DiffPoly<F>& p, const GroupVector& coarse_gamma, const CoarseContext& ctx,
                     const Derivation<F>& d)
{
    if (p.is_zero()) fail(Errc::ZeroPolynomial, "dominant degree of the zero polynomial");
    const DiffPoly<F> q = mul_conjugate(p, Series<F>::power(lift_quotient(coarse_gamma, ctx.level())), d);
    std::optional<GroupVector> best;
    for (const auto& [m, c] : q.terms()) {
        if (!c.has_terms()) continue;
        GroupVector cv = quotient_project(*c.leading_exponent(), ctx.level());
        if (!best || cv < *best) best = cv;
    }
    for (const auto& [m, c] : q.terms()) {
        if (!c.has_terms() && (!best || !(quotient_project(c.frontier().bound(), ctx.level()) > *best))) {
            fail(Errc::InsufficientPrecision, "coarse valuation of a coefficient is unknown");
        }
    }
    unsigned deg = 0;
    for (const auto& [m, c] : q.terms()) {
        if (c.has_terms() && quotient_project(*c.leading_exponent(), ctx.level()) == *best) deg = std::max(deg, m.degree());
    }
    return deg;
}

/// Coarse dominant part: the image of t^(-lift(v_Delta(P))) P in K_dot{Y}.
template <ResidueField F>
DiffPoly<F> coarse_dominant(const DiffPoly<F>& p, const CoarseContext& ctx)
{
    if (p.is_zero()) fail(Errc::ZeroPolynomial, "dominant part of the zero polynomial");
    std::optional<GroupVector> best;
    for (const auto& [m, c] : p.terms()) {
        if (!c.has_terms()) continue;
        GroupVector cv = quotient_project(*c.leading_exponent(), ctx.level());
        if (!best || cv < *best) best = cv;
    }
    if (!best) fail(Errc::InsufficientPrecision, "no coefficient has a known term");
    const Series<F> scale = Series<F>::power(-lift_quotient(*best, ctx.level()));
    return specialize(scale * p, ctx);
}

} // namespace valdiff

#endif
