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

#ifndef VALDIFF_PRETTY_HPP
#define VALDIFF_PRETTY_HPP

// Human-readable rendering: "-t - t^3 - 2 t^5 + O(t^7)", "3/2 t^(0,1)", "(x+1) t".

#include <string>

#include "diffpoly.hpp"
#include "ordgroup.hpp"
#include "series.hpp"

namespace valdiff {

namespace detail {

inline std::string monomial_symbol(const GroupVector& g)
{
    if (g.is_zero()) return "";
    if (g.rank() == 1) return g[0] == 1 ? "t" : "t^" + g[0].str();
    return "t^" + g.to_string();
}

/// Splits a formatted coefficient into (negative, magnitude), parenthesizing compound values.
inline std::pair<bool, std::string> split_sign(const std::string& c)
{
    bool neg = !c.empty() && c[0] == '-';
    std::string mag = neg ? c.substr(1) : c;
    if (mag.find_first_of("+-") != std::string::npos) return {false, "(" + c + ")"};
    return {neg, mag};
}

} // namespace detail

template <ResidueField F>
std::string pretty(const Series<F>& a)
{
    std::string s;
    for (const auto& [g, c] : a.terms()) {
        auto [neg, mag] = detail::split_sign(F::format(c));
        std::string mono = detail::monomial_symbol(g);
        if (s.empty()) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        if (mono.empty()) s += mag;
        else if (mag == "1") s += mono;
        else s += mag + " " + mono;
    }
    if (!a.is_exact()) {
        std::string o = "O(" + (a.frontier().bound().is_zero() ? std::string("1") : detail::monomial_symbol(a.frontier().bound())) + ")";
        s += s.empty() ? o : " + " + o;
    }
    return s.empty() ? "0" : s;
}

template <ResidueField F>
std::string pretty(const DiffPoly<F>& p)
{
    if (p.is_zero()) return "0";
    std::string s;
    const auto& terms = p.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string cs = pretty(c);
        bool single = c.is_exact() && c.terms().size() == 1;
        bool neg = false;
        if (single) {
            neg = cs[0] == '-';
            if (neg) cs = cs.substr(1);
        } else {
            cs = "(" + cs + ")";
        }
        if (s.empty()) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        if (m == DiffMonomial::one()) s += cs;
        else if (cs == "1") s += m.to_string();
        else s += cs + " " + m.to_string();
    }
    return s;
}

} // namespace valdiff

#endif
