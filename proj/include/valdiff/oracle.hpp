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

#ifndef VALDIFF_ORACLE_HPP
#define VALDIFF_ORACLE_HPP

// Reference implementations that recompute from the definitions, sharing nothing with the
// production paths except series arithmetic, plus the seeded instance generators.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cuts.hpp"
#include "dhensel.hpp"
#include "diffpoly.hpp"
#include "error.hpp"
#include "monomial.hpp"
#include "ordgroup.hpp"
#include "random.hpp"
#include "residue.hpp"
#include "series.hpp"

namespace valdiff::oracle {

/// D_P from first principles: find the least exponent over every stored term, divide every
/// coefficient by that monomial and read off the constant terms.
template <ResidueField F>
DominantData<F> brute_dominant(const DiffPoly<F>& p)
{
    if (p.is_zero()) fail(Errc::ZeroPolynomial, "dominant part of the zero polynomial");
    std::optional<GroupVector> v;
    for (const auto& [m, c] : p.terms()) {
        for (const auto& [g, x] : c.terms()) {
            if (!v || g < *v) v = g;
        }
    }
    for (const auto& [m, c] : p.terms()) {
        if (c.is_exact()) continue;
        if (!v || c.frontier().bound() <= *v) fail(Errc::InsufficientPrecision, "coefficient precision too low");
    }
    const Series<F> inv = Series<F>::power(-*v);
    DominantData<F> out;
    out.dmonomial = Series<F>::power(*v);
    unsigned deg = 0;
    for (const auto& [m, c] : p.terms()) {
        auto r = residue_map(c * inv);
        if (F::is_zero(r)) continue;
        out.dpart.add_term(m, r);
        deg = std::max(deg, m.degree());
    }
    out.ddeg = deg;
    return out;
}

namespace detail {

template <ResidueField F>
using NaivePoly = std::map<DiffMonomial, Series<F>>;

template <ResidueField F>
void naive_add(NaivePoly<F>& acc, const DiffMonomial& m, const Series<F>& c)
{
    auto it = acc.find(m);
    if (it == acc.end()) {
        if (!c.is_exact_zero()) acc.emplace(m, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_exact_zero()) acc.erase(it);
}

template <ResidueField F>
NaivePoly<F> naive_mul(const NaivePoly<F>& a, const NaivePoly<F>& b)
{
    NaivePoly<F> r;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) naive_add(r, ma * mb, ca * cb);
    }
    return r;
}

/// Total derivative in K{Y}: c M -> c' M + c dM/dY^(j) Y^(j+1).
template <ResidueField F>
NaivePoly<F> total_derivative(const NaivePoly<F>& a, const Derivation<F>& d)
{
    NaivePoly<F> r;
    for (const auto& [m, c] : a) {
        naive_add(r, m, derive(c, d));
        const auto& e = m.exps();
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] == 0) continue;
            std::vector<unsigned> f = e;
            f.resize(std::max(f.size(), j + 2));
            f[j] -= 1;
            f[j + 1] += 1;
            naive_add(r, DiffMonomial(std::move(f)), c.scaled(F::from_integer(static_cast<long>(e[j]))));
        }
    }
    return r;
}

} // namespace detail

/// P(fY), with (fY)^(i) built by repeated total differentiation.
template <ResidueField F>
DiffPoly<F> brute_mul_conjugate(const DiffPoly<F>& p, const Series<F>& f, const Derivation<F>& d)
{
    if (f.is_exact_zero()) fail(Errc::ZeroConjugate, "multiplicative conjugate by zero");
    std::vector<detail::NaivePoly<F>> images;
    images.push_back({{DiffMonomial::derivative_var(0), f}});
    for (std::size_t i = 1; i <= p.order(); ++i) images.push_back(detail::total_derivative(images.back(), d));
    detail::NaivePoly<F> acc;
    for (const auto& [m, c] : p.terms()) {
        detail::NaivePoly<F> t{{DiffMonomial::one(), c}};
        for (std::size_t i = 0; i < m.exps().size(); ++i) {
            for (unsigned k = 0; k < m.exps()[i]; ++k) t = detail::naive_mul(t, images[i]);
        }
        for (const auto& [mm, cc] : t) detail::naive_add(acc, mm, cc);
    }
    DiffPoly<F> r(p.rank());
    for (const auto& [m, c] : acc) r.add_term(m, c);
    return r;
}

/// max ddeg P_{xf} over a finite pool of f with v(f) >= gamma.
template <ResidueField F>
unsigned brute_ddeg_geq(const DiffPoly<F>& p, const GroupVector& gamma, const std::vector<Series<F>>& pool,
                        const Derivation<F>& d)
{
    if (pool.empty()) fail(Errc::EmptyPool, "witness pool is empty");
    unsigned best = 0;
    for (const auto& f : pool) {
        if (valuation(f) < gamma) {
            fail(Errc::InvalidArgument, "pool element of valuation " + valuation(f).to_string() + " is below " +
                                            gamma.to_string());
        }
        best = std::max(best, brute_dominant(brute_mul_conjugate(p, f, d)).ddeg);
    }
    return best;
}

struct GenConfig {
    std::uint64_t seed = 1;
    std::size_t rank = 1;
    std::size_t max_order = 2;
    unsigned max_degree = 3;
    long coef_mag = 5;
    long exp_lo = -2;
    long exp_hi = 4;
    std::size_t max_terms = 3;     // per series
    std::size_t max_monomials = 4; // per polynomial
    std::size_t count = 100;

    friend bool operator==(const GenConfig&, const GenConfig&) = default;
};

enum class InstanceKind { Series, Poly, Cut, DhInstance };

inline std::string_view to_string(InstanceKind k)
{
    switch (k) {
    case InstanceKind::Series: return "series";
    case InstanceKind::Poly: return "poly";
    case InstanceKind::Cut: return "cut";
    case InstanceKind::DhInstance: return "dhInstance";
    }
    return "series";
}

inline InstanceKind instance_kind_from_string(std::string_view s)
{
    if (s == "series") return InstanceKind::Series;
    if (s == "poly") return InstanceKind::Poly;
    if (s == "cut") return InstanceKind::Cut;
    if (s == "dhInstance") return InstanceKind::DhInstance;
    fail(Errc::InvalidArgument, "unknown instance kind: " + std::string(s));
}

/// Seeded generators; every draw goes through one RandomSource so a config fixes the stream.
template <ResidueField F>
class Generator {
public:
    explicit Generator(const GenConfig& cfg) : cfg_(cfg), rs_(cfg.seed) {}

    RandomSource& source() noexcept { return rs_; }
    const GenConfig& config() const noexcept { return cfg_; }

    typename F::element_type coefficient() { return random_unit_coeff<F>(rs_, cfg_.coef_mag); }

    GroupVector exponent() { return rs_.exponent(cfg_.rank, cfg_.exp_lo, cfg_.exp_hi); }

    GroupVector positive_exponent(long hi) { return rs_.positive_exponent(cfg_.rank, hi); }

    /// Nonzero exact series with exponents in the box.
    Series<F> series()
    {
        Series<F> s(cfg_.rank);
        while (s.is_exact_zero()) {
            long k = rs_.uniform(1, static_cast<long>(cfg_.max_terms));
            for (long i = 0; i < k; ++i) s.add_term(exponent(), coefficient());
        }
        return s;
    }

    /// Nonzero exact series with exponents >= lo (lo itself always present).
    Series<F> series_from(const GroupVector& lo)
    {
        Series<F> s = Series<F>::monomial(coefficient(), lo);
        long k = rs_.uniform(0, static_cast<long>(cfg_.max_terms) - 1);
        for (long i = 0; i < k; ++i) s.add_term(lo + positive_exponent(3), coefficient());
        return s;
    }

    /// Unit u with u ~ c for a nonzero constant c.
    Series<F> unit()
    {
        return series_from(GroupVector::zero(cfg_.rank));
    }

    DiffMonomial monomial()
    {
        const std::size_t r = static_cast<std::size_t>(rs_.uniform(0, static_cast<long>(cfg_.max_order)));
        const unsigned deg = static_cast<unsigned>(rs_.uniform(0, cfg_.max_degree));
        std::vector<unsigned> e(r + 1);
        for (unsigned i = 0; i < deg; ++i) ++e[static_cast<std::size_t>(rs_.uniform(0, static_cast<long>(r)))];
        return DiffMonomial(std::move(e));
    }

    DiffPoly<F> poly()
    {
        DiffPoly<F> p(cfg_.rank);
        while (p.is_zero()) {
            long k = rs_.uniform(1, static_cast<long>(cfg_.max_monomials));
            for (long i = 0; i < k; ++i) p.add_term(monomial(), series());
        }
        return p;
    }

    /// Strictly pseudocauchy prefix with m + 1 points, m in [2, 4].
    CutApprox<F> cut()
    {
        const long m = rs_.uniform(2, 4);
        std::vector<Series<F>> pts{series()};
        GroupVector g = exponent();
        for (long i = 0; i < m; ++i) {
            pts.push_back(pts.back() + series_from(g));
            g = g + positive_exponent(3);
        }
        return validate_cut(std::move(pts));
    }

    /// P = u + L + N with v(u) > 0, L linear with unit residues chosen so that the linear
    /// residue coefficient stays positive under t d/dt, and N of degree >= 2 with coefficients in m.
    DiffPoly<F> dh_instance()
    {
        const std::size_t n = cfg_.rank;
        DiffPoly<F> p(n);
        Series<F> u(n);
        while (u.is_exact_zero()) {
            long k = rs_.uniform(1, static_cast<long>(cfg_.max_terms));
            for (long i = 0; i < k; ++i) u.add_term(positive_exponent(3), coefficient_rational());
        }
        p.add_term(DiffMonomial::one(), u);
        const std::size_t r = static_cast<std::size_t>(rs_.uniform(0, static_cast<long>(cfg_.max_order)));
        for (std::size_t i = 0; i <= r; ++i) {
            Rational c = i == 0 ? Rational(rs_.uniform(1, cfg_.coef_mag), rs_.uniform(1, 3))
                                : Rational(rs_.uniform(0, cfg_.coef_mag), rs_.uniform(1, 3));
            Series<F> l = Series<F>::constant(n, F::from_rational(c));
            if (rs_.coin()) l.add_term(positive_exponent(3), coefficient_rational());
            p.add_term(DiffMonomial::derivative_var(i), l);
        }
        const long extra = rs_.uniform(0, 2);
        for (long i = 0; i < extra && cfg_.max_degree >= 2; ++i) {
            DiffMonomial m;
            while (m.degree() < 2) m = monomial();
            Series<F> c = Series<F>::monomial(coefficient_rational(), positive_exponent(3));
            p.add_term(m, c);
        }
        return p;
    }

private:
    typename F::element_type coefficient_rational() { return F::from_rational(rs_.nonzero_rational(cfg_.coef_mag)); }

    GenConfig cfg_;
    RandomSource rs_;
};

template <ResidueField F>
struct Corpus {
    InstanceKind kind = InstanceKind::Series;
    std::vector<Series<F>> series;
    std::vector<DiffPoly<F>> polys; // poly and dhInstance kinds
    std::vector<CutApprox<F>> cuts;

    std::size_t size() const { return series.size() + polys.size() + cuts.size(); }
    friend bool operator==(const Corpus&, const Corpus&) = default;
};

template <ResidueField F>
Corpus<F> gen_instances(InstanceKind kind, const GenConfig& cfg)
{
    Generator<F> gen(cfg);
    Corpus<F> c;
    c.kind = kind;
    for (std::size_t i = 0; i < cfg.count; ++i) {
        switch (kind) {
        case InstanceKind::Series: c.series.push_back(gen.series()); break;
        case InstanceKind::Poly: c.polys.push_back(gen.poly()); break;
        case InstanceKind::Cut: c.cuts.push_back(gen.cut()); break;
        case InstanceKind::DhInstance: c.polys.push_back(gen.dh_instance()); break;
        }
    }
    return c;
}

/// t^gamma together with `extra` random units times t^(gamma + delta), delta >= 0.
template <ResidueField F>
std::vector<Series<F>> witness_pool(Generator<F>& gen, const GroupVector& gamma, std::size_t extra)
{
    std::vector<Series<F>> pool{Series<F>::power(gamma)};
    for (std::size_t i = 0; i < extra; ++i) {
        GroupVector g = gamma;
        if (gen.source().coin()) g = g + gen.positive_exponent(2);
        pool.push_back(gen.unit() * Series<F>::power(g));
    }
    return pool;
}

} // namespace valdiff::oracle

#endif
