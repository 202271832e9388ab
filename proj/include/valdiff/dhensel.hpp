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

#ifndef VALDIFF_DHENSEL_HPP
#define VALDIFF_DHENSEL_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diffpoly.hpp"
#include "error.hpp"
#include "ordgroup.hpp"
#include "residue.hpp"
#include "series.hpp"

namespace valdiff {

template <ResidueField F>
struct PremiseReport {
    bool holds = false;
    std::string reason;
    std::optional<GroupVector> v_p0; // nullopt: P_0 = 0
    std::optional<GroupVector> v_p1; // nullopt: P_1 = 0
};

/// P in O{Y}, v(P_0) > 0 and v(P_1) = 0.
template <ResidueField F>
PremiseReport<F> dh_premise(const DiffPoly<F>& p)
{
    if (p.is_zero()) fail(Errc::ZeroPolynomial, "premise check on the zero polynomial");
    PremiseReport<F> r;
    const GroupVector z = GroupVector::zero(p.rank());
    const DiffPoly<F> p0 = p.homogeneous_part(0);
    const DiffPoly<F> p1 = p.homogeneous_part(1);
    if (!p0.is_zero()) r.v_p0 = valuation(p0);
    if (!p1.is_zero()) r.v_p1 = valuation(p1);
    if (valuation(p) < z) {
        r.reason = "P is not in O{Y}: v(P) = " + valuation(p).to_string();
        return r;
    }
    if (r.v_p0 && !(*r.v_p0 > z)) {
        r.reason = "v(P_0) = " + r.v_p0->to_string() + " is not positive";
        return r;
    }
    if (!r.v_p1) {
        r.reason = "P_1 = 0";
        return r;
    }
    if (*r.v_p1 != z) {
        r.reason = "v(P_1) = " + r.v_p1->to_string() + " is not 0";
        return r;
    }
    r.holds = true;
    return r;
}

struct SolverOptions {
    GroupVector target;
    std::size_t max_steps = 64;
    long search_radius = 8;
    int residue_degree_bound = 16;
};

enum class SolverStatus { Solved, FrontierExhausted, Failed };

enum class FailureReason {
    None,
    ResidueSolverFailed,
    NoValuationMatch,
    DominantDegreeAbove1,
    NonContraction,
    StepBudgetExhausted,
};

inline std::string_view to_string(SolverStatus s)
{
    switch (s) {
    case SolverStatus::Solved: return "Solved";
    case SolverStatus::FrontierExhausted: return "FrontierExhausted";
    case SolverStatus::Failed: return "Failed";
    }
    return "Failed";
}

inline std::string_view to_string(FailureReason r)
{
    switch (r) {
    case FailureReason::None: return "None";
    case FailureReason::ResidueSolverFailed: return "ResidueSolverFailed";
    case FailureReason::NoValuationMatch: return "NoValuationMatch";
    case FailureReason::DominantDegreeAbove1: return "DominantDegreeAbove1";
    case FailureReason::NonContraction: return "NonContraction";
    case FailureReason::StepBudgetExhausted: return "StepBudgetExhausted";
    }
    return "None";
}

template <ResidueField F>
struct SolverStep {
    GroupVector gamma;
    ResiduePoly<F> equation; // degree <= 1 part of the dominant part, in z
    typename F::element_type z;
    std::optional<GroupVector> v_p0; // after the correction; nullopt when P_0 became 0
    bool v_p0_beyond_frontier = false;
};

template <ResidueField F>
struct SolverReport {
    Series<F> y;
    enum class Residual { Zero, Valuation, BeyondFrontier } residual_kind = Residual::Zero;
    std::optional<GroupVector> residual; // valuation, or the frontier bound when BeyondFrontier
    std::vector<SolverStep<F>> steps;
    SolverStatus status = SolverStatus::Failed;
    FailureReason reason = FailureReason::None;
    std::string detail;
};

namespace detail {

/// Box [-R, R]^n around `center`, nearest shells first, lexicographic within a shell.
inline std::vector<GroupVector> search_neighbourhood(const GroupVector& center, long radius)
{
    const std::size_t n = center.rank();
    std::vector<std::pair<long, GroupVector>> pts;
    std::vector<long> off(n, -radius);
    for (;;) {
        GroupVector g = center;
        long shell = 0;
        for (std::size_t i = 0; i < n; ++i) {
            g[i] += off[i];
            shell = std::max(shell, off[i] < 0 ? -off[i] : off[i]);
        }
        pts.emplace_back(shell, std::move(g));
        std::size_t i = n;
        while (i > 0 && off[i - 1] == radius) off[--i] = -radius;
        if (i == 0) break;
        ++off[i - 1];
    }
    std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    std::vector<GroupVector> out;
    out.reserve(pts.size());
    for (auto& p : pts) out.push_back(std::move(p.second));
    return out;
}

/// Coefficient of t^beta, or zero.
template <ResidueField F>
typename F::element_type coeff_at(const Series<F>& s, const GroupVector& beta)
{
    return s.coeff(beta);
}

} // namespace detail

/// Root refinement for P with v(P_0) > 0, v(P_1) = 0: at each step pick gamma with
/// v_{Q_1}(gamma) = v(Q_0), solve the residue-linear equation read off the dominant part of
/// Q_{x t^gamma}, and conjugate Q by the correction z t^gamma.
template <ResidueField F>
SolverReport<F> dh_solve(const DiffPoly<F>& p, const Derivation<F>& d, const SolverOptions& opt)
{
    using element = typename F::element_type;
    const std::size_t n = p.rank();
    const GroupVector zero = GroupVector::zero(n);
    if (opt.target.rank() != n) fail(Errc::RankMismatch, "target rank does not match the polynomial");

    auto premise = dh_premise(p);
    if (!premise.holds) fail(Errc::PreconditionViolated, premise.reason);
    for (const auto& [m, c] : p.terms()) {
        if (!c.is_exact() && !(c.frontier().bound() > opt.target)) {
            fail(Errc::PreconditionViolated, "coefficient of " + m.to_string() + " is only known below " +
                                                 c.frontier().to_string() + ", not beyond the target");
        }
    }

    SolverReport<F> rep;
    rep.y = Series<F>(n);
    DiffPoly<F> q = p;
    const DiffMonomial one = DiffMonomial::one();

    auto finish = [&](SolverStatus st, FailureReason why, std::string detail) {
        rep.status = st;
        rep.reason = why;
        rep.detail = std::move(detail);
        const Series<F> q0 = q.coeff(one);
        if (q0.is_exact_zero()) {
            rep.residual_kind = SolverReport<F>::Residual::Zero;
            rep.residual.reset();
        } else if (q0.has_terms()) {
            rep.residual_kind = SolverReport<F>::Residual::Valuation;
            rep.residual = valuation(q0);
        } else {
            rep.residual_kind = SolverReport<F>::Residual::BeyondFrontier;
            rep.residual = q0.frontier().bound();
        }
        return rep;
    };

    for (;;) {
        const Series<F> q0 = q.coeff(one);
        if (q0.is_exact_zero()) return finish(SolverStatus::Solved, FailureReason::None, "");
        if (!q0.has_terms()) {
            if (q0.frontier().bound() > opt.target) return finish(SolverStatus::Solved, FailureReason::None, "");
            return finish(SolverStatus::FrontierExhausted, FailureReason::None,
                          "P_0 is only known as O(t^" + q0.frontier().bound().to_string() + ")");
        }
        const GroupVector beta = valuation(q0);
        if (beta > opt.target) return finish(SolverStatus::Solved, FailureReason::None, "");
        if (rep.steps.size() >= opt.max_steps) {
            return finish(SolverStatus::Failed, FailureReason::StepBudgetExhausted,
                          "no convergence within " + std::to_string(opt.max_steps) + " steps");
        }

        const DiffPoly<F> q1 = q.homogeneous_part(1);
        if (q1.is_zero()) return finish(SolverStatus::Failed, FailureReason::NoValuationMatch, "linear part vanished");
        const GroupVector start = beta - valuation(q1);
        std::optional<GroupVector> gamma;
        for (const auto& g : detail::search_neighbourhood(start, opt.search_radius)) {
            if (!(g > zero)) continue;
            if (v_p_gamma(q1, g, d) == beta) {
                gamma = g;
                break;
            }
        }
        if (!gamma) {
            return finish(SolverStatus::Failed, FailureReason::NoValuationMatch,
                          "no gamma > 0 with v_{P_1}(gamma) = " + beta.to_string() + " within radius " +
                              std::to_string(opt.search_radius) + " of " + start.to_string());
        }

        const DiffPoly<F> r = mul_conjugate(q, Series<F>::power(*gamma), d);
        DiffPoly<F> higher(n);
        for (const auto& [m, c] : r.terms()) {
            if (m.degree() >= 2) higher.add_term(m, c);
        }
        if (!higher.is_zero() && !(valuation(higher) > beta)) {
            return finish(SolverStatus::Failed, FailureReason::DominantDegreeAbove1,
                          "terms of degree >= 2 reach valuation " + valuation(higher).to_string() +
                              " at gamma = " + gamma->to_string());
        }

        ResiduePoly<F> eq;
        const element c0 = q0.leading_coeff();
        eq.add_term(one, c0);
        std::vector<element> lin;
        for (const auto& [m, c] : r.terms()) {
            if (m.degree() != 1) continue;
            const std::size_t i = *m.order();
            element ci = detail::coeff_at(c, beta);
            eq.add_term(m, ci);
            if (lin.size() <= i) lin.resize(i + 1, F::zero());
            lin[i] = ci * F::inverse(c0);
        }
        while (!lin.empty() && F::is_zero(lin.back())) lin.pop_back();
        if (lin.empty()) {
            return finish(SolverStatus::Failed, FailureReason::NoValuationMatch, "residue equation has no linear part");
        }
        auto z = F::lin_solve(lin, d.coefficient_derivation, opt.residue_degree_bound);
        if (!z || !satisfies_linear<F>(lin, *z, d.coefficient_derivation)) {
            return finish(SolverStatus::Failed, FailureReason::ResidueSolverFailed,
                          "no residue solution found for " + eq.to_string());
        }

        const Series<F> u = Series<F>::monomial(*z, *gamma);
        q = add_conjugate(q, u, d);
        rep.y += u;

        SolverStep<F> step{*gamma, eq, *z, std::nullopt, false};
        const Series<F> nq0 = q.coeff(one);
        if (!nq0.is_exact_zero()) {
            if (nq0.has_terms()) {
                step.v_p0 = valuation(nq0);
                if (!(*step.v_p0 > beta)) {
                    rep.steps.push_back(step);
                    return finish(SolverStatus::Failed, FailureReason::NonContraction,
                                  "v(P_0) went from " + beta.to_string() + " to " + step.v_p0->to_string());
                }
            } else {
                step.v_p0 = nq0.frontier().bound();
                step.v_p0_beyond_frontier = true;
            }
        }
        rep.steps.push_back(std::move(step));
    }
}

template <ResidueField F>
struct AsymptoticReport {
    bool pass = true;
    std::string failed_check; // "asymptotic" or "few-constants"
    CheckReport<F> asymptotic;
    std::optional<CheckReport<F>> few_constants;
};

/// Sampled asymptoticity check; when it passes, also looks for sampled constants outside O.
template <ResidueField F>
AsymptoticReport<F> asymptotic_witness(const Derivation<F>& d, const SampleConfig& cfg)
{
    AsymptoticReport<F> rep;
    rep.asymptotic = field_check(d, CheckMode::AsymptoticSample, cfg);
    if (!rep.asymptotic.pass) {
        rep.pass = false;
        rep.failed_check = "asymptotic";
        return rep;
    }
    rep.few_constants = field_check(d, CheckMode::FewConstantsSample, cfg);
    if (!rep.few_constants->pass) {
        rep.pass = false;
        rep.failed_check = "few-constants";
    }
    return rep;
}

} // namespace valdiff

#endif
