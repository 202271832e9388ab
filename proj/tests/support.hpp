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

#ifndef VALDIFF_TESTS_SUPPORT_HPP
#define VALDIFF_TESTS_SUPPORT_HPP

#include <initializer_list>
#include <optional>
#include <utility>

#include "valdiff/valdiff.hpp"

namespace vt {

using namespace valdiff;

using QF = RationalField;
using RF = RationalFunctionField;
using QS = Series<QF>;
using QP = DiffPoly<QF>;
using QD = Derivation<QF>;

inline GroupVector gv(std::initializer_list<long> c) { return GroupVector(c); }

/// sum c_i t^(g_i), optionally O(t^frontier)
template <ResidueField F = QF>
Series<F> ser(std::initializer_list<std::pair<GroupVector, typename F::element_type>> terms,
              std::optional<GroupVector> frontier = std::nullopt, std::size_t rank = 0)
{
    typename Series<F>::term_map m;
    for (const auto& [g, c] : terms) {
        if (!rank) rank = g.rank();
        m.emplace(g, c);
    }
    if (!rank) rank = frontier ? frontier->rank() : 1;
    return Series<F>(rank, std::move(m), frontier ? Frontier(*frontier) : Frontier());
}

/// c t^g as a rank-1 series
inline QS t1(long e, Rational c = 1) { return QS::monomial(c, gv({e})); }

inline QS c1(Rational c) { return QS::constant(1, c); }

template <ResidueField F = QF>
DiffPoly<F> Y(std::size_t rank = 1, std::size_t i = 0)
{
    return DiffPoly<F>::variable(rank, i);
}

template <ResidueField F = QF>
DiffPoly<F> K(const Series<F>& c)
{
    return DiffPoly<F>::constant(c);
}

/// t d/dt on Q((t^Z))
inline QD log1() { return QD::logarithmic(1); }

inline Rational q(long a, long b = 1) { return Rational(a) / Rational(b); }

} // namespace vt

#endif
