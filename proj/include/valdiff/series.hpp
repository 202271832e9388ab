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

#ifndef VALDIFF_SERIES_HPP
#define VALDIFF_SERIES_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "ordgroup.hpp"
#include "random.hpp"
#include "residue.hpp"

namespace valdiff {

/// Truncated Hahn series sum c_g t^g over Z^n with coefficients in F. Every stored exponent
/// lies below the frontier; nothing is known at or above it. An infinite frontier means exact.
template <ResidueField F>
class Series {
public:
    using element = typename F::element_type;
    using term_map = std::map<GroupVector, element>;

    explicit Series(std::size_t rank = 1) : rank_(rank) {}

    Series(std::size_t rank, term_map terms, Frontier frontier = Frontier::infinity())
        : rank_(rank), terms_(std::move(terms)), frontier_(std::move(frontier))
    {
        if (!frontier_.is_infinite() && frontier_.bound().rank() != rank_) {
            fail(Errc::RankMismatch, "frontier rank differs from series rank");
        }
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first.rank() != rank_) fail(Errc::RankMismatch, "exponent rank differs from series rank");
            if (!frontier_.above(it->first)) {
                fail(Errc::InvalidArgument, "exponent " + it->first.to_string() + " is not below the frontier " +
                                                frontier_.to_string());
            }
            if (F::is_zero(it->second)) it = terms_.erase(it);
            else ++it;
        }
    }

    static Series zero(std::size_t rank) { return Series(rank); }

    static Series constant(std::size_t rank, const element& c) { return monomial(c, GroupVector::zero(rank)); }

    static Series monomial(const element& c, const GroupVector& exp)
    {
        Series s(exp.rank());
        if (!F::is_zero(c)) s.terms_.emplace(exp, c);
        return s;
    }

    /// t^g
    static Series power(const GroupVector& exp) { return monomial(F::one(), exp); }

    /// O(t^bound)
    static Series big_o(const GroupVector& bound) { return Series(bound.rank(), {}, Frontier(bound)); }

    std::size_t rank() const noexcept { return rank_; }
    const term_map& terms() const noexcept { return terms_; }
    const Frontier& frontier() const noexcept { return frontier_; }
    bool is_exact() const noexcept { return frontier_.is_infinite(); }
    bool is_exact_zero() const noexcept { return terms_.empty() && frontier_.is_infinite(); }
    bool has_terms() const noexcept { return !terms_.empty(); }

    std::optional<GroupVector> leading_exponent() const
    {
        if (terms_.empty()) return std::nullopt;
        return terms_.begin()->first;
    }

    const element& leading_coeff() const
    {
        if (terms_.empty()) fail(Errc::ZeroHasNoValuation, "series has no known terms");
        return terms_.begin()->second;
    }

    /// Coefficient at an exponent below the frontier.
    element coeff(const GroupVector& exp) const
    {
        if (!frontier_.above(exp)) {
            fail(Errc::InsufficientPrecision, "coefficient at " + exp.to_string() + " is beyond the frontier " +
                                                  frontier_.to_string());
        }
        auto it = terms_.find(exp);
        return it == terms_.end() ? F::zero() : it->second;
    }

    /// Lower bound for the valuation: the leading exponent, or the frontier when no term is known.
    /// Precondition: not the exact zero.
    GroupVector valuation_lower_bound() const { return terms_.empty() ? frontier_.bound() : terms_.begin()->first; }

    Series truncated(const Frontier& f) const
    {
        Frontier nf = meet(frontier_, f);
        Series r(rank_);
        r.frontier_ = nf;
        for (const auto& [g, c] : terms_) {
            if (!nf.above(g)) break;
            r.terms_.emplace(g, c);
        }
        return r;
    }

    void add_term(const GroupVector& exp, const element& c)
    {
        if (F::is_zero(c) || !frontier_.above(exp)) return;
        auto it = terms_.find(exp);
        if (it == terms_.end()) {
            terms_.emplace(exp, c);
            return;
        }
        it->second = it->second + c;
        if (F::is_zero(it->second)) terms_.erase(it);
    }

    friend bool operator==(const Series&, const Series&) = default;

    friend Series operator+(const Series& a, const Series& b)
    {
        check_rank(a, b);
        Series r(a.rank_);
        r.frontier_ = meet(a.frontier_, b.frontier_);
        for (const auto& [g, c] : a.terms_) r.add_term(g, c);
        for (const auto& [g, c] : b.terms_) r.add_term(g, c);
        return r;
    }

    friend Series operator-(const Series& a)
    {
        Series r = a;
        for (auto& [g, c] : r.terms_) c = -c;
        return r;
    }

    friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

    friend Series operator*(const Series& a, const Series& b)
    {
        check_rank(a, b);
        if (a.is_exact_zero() || b.is_exact_zero()) return Series(a.rank_);
        Series r(a.rank_);
        r.frontier_ = meet(a.frontier_.shifted(b.valuation_lower_bound()), b.frontier_.shifted(a.valuation_lower_bound()));
        for (const auto& [ga, ca] : a.terms_) {
            for (const auto& [gb, cb] : b.terms_) {
                GroupVector g = ga + gb;
                if (!r.frontier_.above(g)) break;
                r.add_term(g, ca * cb);
            }
        }
        return r;
    }

    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    /// c * this
    Series scaled(const element& c) const
    {
        if (F::is_zero(c)) {
            Series r(rank_);
            // zero times an unknown tail is still exactly zero
            return r;
        }
        Series r = *this;
        for (auto& [g, x] : r.terms_) x = c * x;
        return r;
    }

    /// t^g * this
    Series shifted(const GroupVector& by) const
    {
        Series r(rank_);
        r.frontier_ = frontier_.shifted(by);
        for (const auto& [g, c] : terms_) r.terms_.emplace(g + by, c);
        return r;
    }

private:
    static void check_rank(const Series& a, const Series& b)
    {
        if (a.rank_ != b.rank_) fail(Errc::RankMismatch, "series of different rank");
    }

    std::size_t rank_ = 1;
    term_map terms_;
    Frontier frontier_;
};

template <ResidueField F>
GroupVector valuation(const Series<F>& a)
{
    if (a.has_terms()) return *a.leading_exponent();
    if (a.is_exact()) fail(Errc::ZeroHasNoValuation, "the zero series has no valuation");
    fail(Errc::InsufficientPrecision, "no term known below the frontier " + a.frontier().to_string());
}

/// Valuation with the convention v(0) = +infinity (nullopt).
template <ResidueField F>
std::optional<GroupVector> valuation_or_infinity(const Series<F>& a)
{
    if (a.is_exact_zero()) return std::nullopt;
    return valuation(a);
}

/// Inverse by geometric expansion, exact below the returned frontier. The result frontier is
/// the requested one, capped by what the precision of `a` supports.
template <ResidueField F>
Series<F> inverse(const Series<F>& a, std::optional<GroupVector> requested = std::nullopt)
{
    if (a.is_exact_zero()) fail(Errc::DivisionByZero, "inverse of zero");
    if (!a.has_terms()) fail(Errc::InsufficientPrecision, "leading term of the divisor is unknown");
    const std::size_t n = a.rank();
    const GroupVector g = *a.leading_exponent();
    const auto c_inv = F::inverse(a.leading_coeff());

    // a = c t^g (1 + eps)
    Series<F> eps = a.shifted(-g).scaled(c_inv) - Series<F>::constant(n, F::one());
    Frontier result = a.frontier().shifted(-g - g);
    if (requested) result = meet(result, Frontier(*requested));
    if (eps.is_exact_zero()) {
        return Series<F>::monomial(c_inv, -g).truncated(requested ? Frontier(*requested) : Frontier());
    }
    if (result.is_infinite()) {
        fail(Errc::InsufficientPrecision, "inverse of a series with infinitely many terms needs a target frontier");
    }
    const Frontier rel = result.shifted(g);
    const GroupVector target = rel.bound();
    if (eps.has_terms() && target > GroupVector::zero(n)) {
        auto ce = arch_class(*eps.leading_exponent());
        auto ct = arch_class(target);
        if (*ce > *ct) {
            fail(Errc::InsufficientPrecision, "geometric expansion of step " + eps.leading_exponent()->to_string() +
                                                  " never reaches " + target.to_string());
        }
    }
    const Series<F> neg_eps = -eps;
    Series<F> sum = Series<F>::constant(n, F::one()).truncated(rel);
    Series<F> pw = sum;
    for (int k = 0;; ++k) {
        if (k > 100000) fail(Errc::InsufficientPrecision, "geometric expansion did not terminate");
        pw = (pw * neg_eps).truncated(rel);
        if (!pw.has_terms()) break;
        sum += pw;
    }
    sum = sum.truncated(rel);
    return sum.shifted(-g).scaled(c_inv);
}

/// Derivation d(c t^g) = c' t^g + c * w(g) t^(g + rho) with w additive, w(g) = sum g_i w_i.
template <ResidueField F>
struct Derivation {
    using element = typename F::element_type;

    GroupVector rho;
    std::vector<element> weights;
    bool coefficient_derivation = false;

    Derivation() = default;
    Derivation(GroupVector shift, std::vector<element> w, bool coef = false)
        : rho(std::move(shift)), weights(std::move(w)), coefficient_derivation(coef)
    {
        if (rho.rank() != weights.size()) fail(Errc::RankMismatch, "derivation shift and weight vector differ in rank");
    }

    /// t d/dt in rank 1; in higher rank rho = 0 and weight 1 on the leading coordinate.
    static Derivation logarithmic(std::size_t rank)
    {
        std::vector<element> w(rank, F::zero());
        w[0] = F::one();
        return Derivation(GroupVector::zero(rank), std::move(w), false);
    }

    std::size_t rank() const noexcept { return rho.rank(); }

    element weight(const GroupVector& g) const
    {
        element acc = F::zero();
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (g[i] != 0 && !F::is_zero(weights[i])) acc = acc + F::from_rational(Rational(g[i])) * weights[i];
        }
        return acc;
    }

    bool weights_vanish_from(std::size_t j) const
    {
        for (std::size_t i = j; i < weights.size(); ++i) {
            if (!F::is_zero(weights[i])) return false;
        }
        return true;
    }

    friend bool operator==(const Derivation&, const Derivation&) = default;
};

template <ResidueField F>
Series<F> derive(const Series<F>& a, const Derivation<F>& d)
{
    if (a.rank() != d.rank()) fail(Errc::RankMismatch, "series and derivation differ in rank");
    Series<F> r(a.rank(), {}, meet(a.frontier(), a.frontier().shifted(d.rho)));
    for (const auto& [g, c] : a.terms()) {
        if (d.coefficient_derivation) r.add_term(g, F::derive(c));
        auto w = d.weight(g);
        if (!F::is_zero(w)) r.add_term(g + d.rho, c * w);
    }
    return r;
}

/// i-th derivative
template <ResidueField F>
Series<F> derive(const Series<F>& a, const Derivation<F>& d, std::size_t times)
{
    Series<F> r = a;
    for (std::size_t i = 0; i < times; ++i) r = derive(r, d);
    return r;
}

/// Image in the residue field O / m.
template <ResidueField F>
typename F::element_type residue_map(const Series<F>& a)
{
    const GroupVector zero = GroupVector::zero(a.rank());
    if (a.has_terms() && *a.leading_exponent() < zero) {
        fail(Errc::NotInValuationRing, "valuation " + a.leading_exponent()->to_string() + " is negative");
    }
    return a.coeff(zero);
}

struct Dominance {
    bool preccurlyeq = false; // v(a) >= v(b)
    bool prec = false;        // v(a) >  v(b)
    bool asymp = false;       // v(a) == v(b)
    bool sim = false;         // v(a - b) > v(b)

    friend bool operator==(const Dominance&, const Dominance&) = default;

    std::vector<std::string> names() const
    {
        std::vector<std::string> r;
        if (preccurlyeq) r.emplace_back("preccurlyeq");
        if (prec) r.emplace_back("prec");
        if (asymp) r.emplace_back("asymp");
        if (sim) r.emplace_back("sim");
        return r;
    }
};

template <ResidueField F>
Dominance dominance(const Series<F>& a, const Series<F>& b)
{
    const GroupVector va = valuation(a);
    const GroupVector vb = valuation(b);
    Dominance r;
    r.preccurlyeq = va >= vb;
    r.prec = va > vb;
    r.asymp = va == vb;
    Series<F> diff = a - b;
    auto vd = valuation_or_infinity(diff);
    r.sim = !vd || *vd > vb;
    return r;
}

enum class CheckMode { Small, Monotone, AsymptoticSample, FewConstantsSample };

enum class SampleKind {
    General,              // random series in the maximal ideal; random constant candidates
    NonConstantMonomials, // monomials q t^g with g > 0 and w(g) != 0
};

struct SampleConfig {
    std::uint64_t seed = 1;
    std::size_t count = 200;
    long box = 4;
    SampleKind kind = SampleKind::General;
};

template <ResidueField F>
struct CheckReport {
    bool pass = true;
    std::optional<Series<F>> witness;
    std::optional<Series<F>> partner; // second element of a violating pair, when relevant
    std::string detail;
};

namespace detail {

template <ResidueField F>
Series<F> sample_in_maximal_ideal(RandomSource& rs, const Derivation<F>& d, const SampleConfig& cfg)
{
    const std::size_t n = d.rank();
    if (cfg.kind == SampleKind::NonConstantMonomials) {
        for (int tries = 0; tries < 10000; ++tries) {
            GroupVector g = rs.positive_exponent(n, cfg.box);
            if (!F::is_zero(d.weight(g))) return Series<F>::monomial(F::from_rational(rs.nonzero_rational(5)), g);
        }
        fail(Errc::InvalidArgument, "derivation weight vanishes on the whole sampling box");
    }
    Series<F> s(n);
    long terms = rs.uniform(1, 3);
    for (long i = 0; i < terms; ++i) s.add_term(rs.positive_exponent(n, cfg.box), random_unit_coeff<F>(rs));
    if (s.is_exact_zero()) s = Series<F>::power(GroupVector::unit(n, n - 1));
    return s;
}

} // namespace detail

/// Field-level predicates. Small and Monotone are decided exactly from (rho, w); the sampled
/// modes only report on the drawn sample.
template <ResidueField F>
CheckReport<F> field_check(const Derivation<F>& d, CheckMode mode, const SampleConfig& cfg = {})
{
    const std::size_t n = d.rank();
    const GroupVector zero = GroupVector::zero(n);
    CheckReport<F> rep;
    switch (mode) {
    case CheckMode::Small: {
        // t^g with g > 0 maps outside m iff w(g) != 0 and g + rho <= 0, i.e. 0 < g <= -rho.
        if (d.rho >= zero) return rep;
        const GroupVector sigma = -d.rho;
        const std::size_t j = *arch_class(sigma);
        std::optional<std::size_t> bad;
        for (std::size_t i = n; i-- > j;) {
            if (!F::is_zero(d.weights[i])) {
                bad = i;
                break;
            }
        }
        if (!bad) return rep;
        GroupVector g = *bad > j ? GroupVector::unit(n, *bad) : sigma;
        rep.pass = false;
        rep.witness = Series<F>::power(g);
        rep.detail = "t^" + g.to_string() + " lies in m but its derivative has valuation " + (g + d.rho).to_string();
        return rep;
    }
    case CheckMode::Monotone: {
        // v(a') >= v(a) on m iff rho >= 0 or w = 0
        if (d.rho >= zero || d.weights_vanish_from(0)) return rep;
        std::size_t i = 0;
        while (F::is_zero(d.weights[i])) ++i;
        GroupVector g = GroupVector::unit(n, i);
        rep.pass = false;
        rep.witness = Series<F>::power(g);
        rep.detail = "v(a')=" + (g + d.rho).to_string() + " < v(a)=" + g.to_string();
        return rep;
    }
    case CheckMode::AsymptoticSample: {
        RandomSource rs(cfg.seed);
        for (std::size_t s = 0; s < cfg.count; ++s) {
            Series<F> f = detail::sample_in_maximal_ideal(rs, d, cfg);
            Series<F> g = detail::sample_in_maximal_ideal(rs, d, cfg);
            auto vfd = valuation_or_infinity(derive(f, d));
            auto vgd = valuation_or_infinity(derive(g, d));
            // +infinity for a vanishing derivative
            bool lhs = valuation(f) > valuation(g);
            bool rhs = vfd ? (vgd && *vfd > *vgd) : static_cast<bool>(vgd);
            if (lhs != rhs) {
                rep.pass = false;
                rep.witness = f;
                rep.partner = g;
                rep.detail = "v(f)>v(g) is " + std::string(lhs ? "true" : "false") + " but v(f')>v(g') is " +
                             (rhs ? "true" : "false");
                return rep;
            }
        }
        return rep;
    }
    case CheckMode::FewConstantsSample: {
        RandomSource rs(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
        for (std::size_t s = 0; s < cfg.count; ++s) {
            Series<F> a(n);
            if (cfg.kind == SampleKind::NonConstantMonomials) {
                a = detail::sample_in_maximal_ideal(rs, d, cfg);
            } else {
                long terms = rs.uniform(1, 2);
                for (long i = 0; i < terms; ++i) {
                    a.add_term(rs.exponent(n, -cfg.box, cfg.box), F::from_rational(rs.nonzero_rational(5)));
                }
            }
            if (a.is_exact_zero() || !derive(a, d).is_exact_zero()) continue;
            if (valuation(a) < zero) {
                rep.pass = false;
                rep.witness = a;
                rep.detail = "constant with valuation " + valuation(a).to_string();
                return rep;
            }
        }
        return rep;
    }
    }
    return rep;
}

} // namespace valdiff

#endif
