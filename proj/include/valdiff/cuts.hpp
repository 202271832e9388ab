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

#ifndef VALDIFF_CUTS_HPP
#define VALDIFF_CUTS_HPP

// A cut is approximated by a finite strictly pseudocauchy prefix a_0, ..., a_m with
// gamma_i = v(a_{i+1} - a_i) strictly increasing. Quantities defined "eventually" for the
// transfinite sequence are read off the tail of the prefix and flagged accordingly.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diffpoly.hpp"
#include "error.hpp"
#include "ordgroup.hpp"
#include "series.hpp"

namespace valdiff {

template <ResidueField F>
struct CutApprox {
    std::vector<Series<F>> points;
    std::vector<GroupVector> gammas;

    std::size_t rank() const { return points.front().rank(); }
    friend bool operator==(const CutApprox&, const CutApprox&) = default;
};

template <ResidueField F>
CutApprox<F> validate_cut(std::vector<Series<F>> points)
{
    if (points.size() < 3) {
        fail(Errc::NotPseudoCauchy, "a cut needs at least three points, got " + std::to_string(points.size()));
    }
    CutApprox<F> cut;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        Series<F> diff = points[i + 1] - points[i];
        if (diff.is_exact_zero()) {
            fail(Errc::NotPseudoCauchy, "points " + std::to_string(i) + " and " + std::to_string(i + 1) + " coincide");
        }
        GroupVector g = valuation(diff);
        if (!cut.gammas.empty() && !(g > cut.gammas.back())) {
            fail(Errc::NotPseudoCauchy, "gamma sequence not strictly increasing at index " + std::to_string(i) + ": " +
                                            cut.gammas.back().to_string() + " then " + g.to_string());
        }
        cut.gammas.push_back(std::move(g));
    }
    // v(a_j - a_i) = gamma_i follows from the ultrametric inequality; checked anyway
    for (std::size_t i = 0; i < cut.gammas.size(); ++i) {
        for (std::size_t j = i + 2; j < points.size(); ++j) {
            if (valuation(points[j] - points[i]) != cut.gammas[i]) {
                fail(Errc::NotPseudoCauchy, "pc law fails for indices " + std::to_string(i) + "," + std::to_string(j));
            }
        }
    }
    cut.points = std::move(points);
    return cut;
}

struct CutDdeg {
    std::vector<unsigned> values; // d_i = ddeg_{>=gamma_i} P_{+a_i}
    bool stabilized = false;      // the last two values agree
    unsigned value = 0;           // last value: the approximant of the ddeg in the cut

    friend bool operator==(const CutDdeg&, const CutDdeg&) = default;
};

template <ResidueField F>
CutDdeg ddeg_along_cut(const DiffPoly<F>& p, const CutApprox<F>& cut, const Derivation<F>& d)
{
    if (p.is_zero()) fail(Errc::ZeroPolynomial, "dominant degree of the zero polynomial");
    CutDdeg out;
    for (std::size_t i = 0; i < cut.gammas.size(); ++i) {
        out.values.push_back(ddeg_geq(add_conjugate(p, cut.points[i], d), cut.gammas[i], d));
    }
    out.value = out.values.back();
    out.stabilized = out.values.size() >= 2 && out.values[out.values.size() - 2] == out.value;
    return out;
}

enum class DeltaClass { Fluent, Jammed, Mixed };

inline std::string_view to_string(DeltaClass c)
{
    switch (c) {
    case DeltaClass::Fluent: return "Fluent";
    case DeltaClass::Jammed: return "Jammed";
    case DeltaClass::Mixed: return "Mixed";
    }
    return "Mixed";
}

/// Over all pairs j > i of the window: Fluent if gamma_j - gamma_i > Delta always, Jammed if it
/// always lies in Delta.
inline DeltaClass classify_delta(const std::vector<GroupVector>& gammas, const ConvexLevel& delta)
{
    if (delta.k == 0 || delta.k >= delta.n) {
        fail(Errc::InvalidArgument, "classification needs a proper nontrivial convex subgroup");
    }
    const GroupVector z = GroupVector::zero(delta.k);
    bool fluent = true;
    bool jammed = true;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        for (std::size_t j = i + 1; j < gammas.size(); ++j) {
            GroupVector head = quotient_project(gammas[j] - gammas[i], delta);
            if (!(head > z)) fluent = false;
            if (head != z) jammed = false;
        }
    }
    if (fluent) return DeltaClass::Fluent;
    if (jammed) return DeltaClass::Jammed;
    return DeltaClass::Mixed;
}

template <ResidueField F>
DeltaClass classify_delta(const CutApprox<F>& cut, const ConvexLevel& delta)
{
    return classify_delta(cut.gammas, delta);
}

/// a + y
template <ResidueField F>
CutApprox<F> shift_cut(const CutApprox<F>& cut, const Series<F>& y)
{
    CutApprox<F> r;
    for (const auto& a : cut.points) r.points.push_back(a + y);
    r.gammas = cut.gammas;
    return r;
}

/// a * g; gammas shift by v(g) for monomials and are recomputed otherwise.
template <ResidueField F>
CutApprox<F> scale_cut(const CutApprox<F>& cut, const Series<F>& g)
{
    if (g.is_exact_zero()) fail(Errc::ZeroConjugate, "scaling a cut by zero");
    std::vector<Series<F>> pts;
    for (const auto& a : cut.points) pts.push_back(a * g);
    if (g.is_exact() && g.terms().size() == 1) {
        CutApprox<F> r;
        r.points = std::move(pts);
        const GroupVector vg = valuation(g);
        for (const auto& gm : cut.gammas) r.gammas.push_back(gm + vg);
        return r;
    }
    return validate_cut(std::move(pts));
}

struct GrowthReport {
    bool pass = true;
    std::optional<std::pair<std::size_t, std::size_t>> violation;
    std::optional<GroupVector> residual; // residual at the violating pair
};

/// For i < j: v_P(gamma_j) - v_P(gamma_i) - e (gamma_j - gamma_i) must be o(gamma_j - gamma_i).
template <ResidueField F>
GrowthReport growth_diagnostic(const DiffPoly<F>& pe, const std::vector<GroupVector>& gammas, const Derivation<F>& d)
{
    if (pe.is_zero() || !pe.is_homogeneous() || pe.degree() == 0) {
        fail(Errc::InvalidArgument, "growth diagnostic needs a homogeneous polynomial of degree at least 1");
    }
    const Integer e = pe.degree();
    std::vector<GroupVector> vp;
    for (const auto& g : gammas) vp.push_back(v_p_gamma(pe, g, d));
    GrowthReport rep;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        for (std::size_t j = i + 1; j < gammas.size(); ++j) {
            GroupVector diff = gammas[j] - gammas[i];
            GroupVector residual = vp[j] - vp[i] - e * diff;
            if (!is_little_o(residual, diff)) {
                rep.pass = false;
                rep.violation = {i, j};
                rep.residual = residual;
                return rep;
            }
        }
    }
    return rep;
}

template <ResidueField F>
GrowthReport growth_diagnostic(const DiffPoly<F>& pe, const CutApprox<F>& cut, const Derivation<F>& d)
{
    return growth_diagnostic(pe, cut.gammas, d);
}

} // namespace valdiff

#endif
