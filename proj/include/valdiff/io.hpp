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

#ifndef VALDIFF_IO_HPP
#define VALDIFF_IO_HPP

// JSON schemas:
//   group      [1,-5]              (big coordinates as strings)
//   series     {"terms":[{"exp":[0,1],"coef":"3/2"}],"frontier":[2,0] | "inf"}
//   derivation {"rho":[0,-1],"weights":["1","0"],"coefDerivation":"trivial" | "field"}
//   diffpoly   {"order":1,"monomials":[{"exps":[1,1],"coef":<series>}]}
//   cut        {"points":[<series>,...]}
//   config     {"rank":2,"field":"Q" | "Q(x)","derivation":<derivation>}

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cuts.hpp"
#include "dhensel.hpp"
#include "diffpoly.hpp"
#include "error.hpp"
#include "ordgroup.hpp"
#include "pretty.hpp"
#include "series.hpp"

namespace valdiff::io {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void bad(const std::string& what) { fail(Errc::ParseError, what); }

inline Integer integer_from_json(const json& j)
{
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size() || s.find_first_not_of("0123456789", i) != std::string::npos) bad("not an integer: " + s);
        return Integer(s[0] == '+' ? s.substr(1) : s);
    }
    bad("expected an integer, got " + j.dump());
}

inline json integer_to_json(const Integer& v)
{
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        return json(static_cast<std::int64_t>(v));
    }
    return json(v.str());
}

inline const json& member(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline void check_rank(std::size_t got, std::optional<std::size_t> want, std::string_view what)
{
    if (want && got != *want) {
        fail(Errc::RankMismatch, std::string(what) + " has rank " + std::to_string(got) + ", expected " +
                                     std::to_string(*want));
    }
}

/// Rank of a serialized series if it can be read off an exponent or the frontier.
inline std::optional<std::size_t> series_rank_hint(const json& j)
{
    if (!j.is_object()) return std::nullopt;
    if (j.contains("frontier") && j.at("frontier").is_array()) return j.at("frontier").size();
    if (j.contains("terms") && j.at("terms").is_array()) {
        for (const auto& t : j.at("terms")) {
            if (t.is_object() && t.contains("exp")) return t.at("exp").is_array() ? t.at("exp").size() : 1;
        }
    }
    return std::nullopt;
}

} // namespace detail

inline json to_json(const GroupVector& g)
{
    json a = json::array();
    for (const auto& c : g.coords()) a.push_back(detail::integer_to_json(c));
    return a;
}

/// Accepts an integer array, or a bare integer for rank 1.
inline GroupVector group_from_json(const json& j, std::optional<std::size_t> rank = std::nullopt)
{
    std::vector<Integer> c;
    if (j.is_array()) {
        for (const auto& x : j) c.push_back(detail::integer_from_json(x));
    } else {
        c.push_back(detail::integer_from_json(j));
    }
    if (c.empty()) detail::bad("empty group element");
    detail::check_rank(c.size(), rank, "group element");
    return GroupVector(std::move(c));
}

/// Command-line exponent: "10", "1,0", "[1,0]", "(1,0)".
inline GroupVector parse_group(std::string_view text, std::optional<std::size_t> rank = std::nullopt)
{
    std::string s(text);
    if (s.size() >= 2 && ((s.front() == '[' && s.back() == ']') || (s.front() == '(' && s.back() == ')'))) {
        s = s.substr(1, s.size() - 2);
    }
    std::vector<Integer> c;
    std::size_t pos = 0;
    for (;;) {
        std::size_t comma = s.find(',', pos);
        std::string part = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        while (!part.empty() && part.front() == ' ') part.erase(part.begin());
        while (!part.empty() && part.back() == ' ') part.pop_back();
        c.push_back(detail::integer_from_json(json(part)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    detail::check_rank(c.size(), rank, "exponent argument");
    return GroupVector(std::move(c));
}

template <ResidueField F>
json element_to_json(const typename F::element_type& c)
{
    return F::format(c);
}

template <ResidueField F>
typename F::element_type element_from_json(const json& j)
{
    if (j.is_number_integer()) return F::from_rational(Rational(j.get<std::int64_t>()));
    if (!j.is_string()) detail::bad("coefficient must be a string or an integer, got " + j.dump());
    return F::parse(j.get<std::string>());
}

template <ResidueField F>
json to_json(const Series<F>& a)
{
    json terms = json::array();
    for (const auto& [g, c] : a.terms()) terms.push_back({{"exp", to_json(g)}, {"coef", element_to_json<F>(c)}});
    return {{"terms", terms}, {"frontier", a.is_exact() ? json("inf") : to_json(a.frontier().bound())}};
}

/// Rank is taken from the first exponent (or the frontier) unless given.
template <ResidueField F>
Series<F> series_from_json(const json& j, std::optional<std::size_t> rank = std::nullopt)
{
    const json& terms = detail::member(j, "terms");
    if (!terms.is_array()) detail::bad("\"terms\" must be an array");
    Frontier f;
    if (j.contains("frontier") && !(j.at("frontier").is_string() && j.at("frontier") == "inf")) {
        GroupVector b = group_from_json(j.at("frontier"), rank);
        if (!rank) rank = b.rank();
        f = Frontier(std::move(b));
    }
    typename Series<F>::term_map map;
    for (const auto& t : terms) {
        GroupVector g = group_from_json(detail::member(t, "exp"), rank);
        if (!rank) rank = g.rank();
        auto c = element_from_json<F>(detail::member(t, "coef"));
        if (map.count(g)) detail::bad("repeated exponent " + g.to_string());
        map.emplace(std::move(g), std::move(c));
    }
    if (!rank) fail(Errc::ParseError, "cannot infer the rank of an empty series; give a frontier or a config");
    return Series<F>(*rank, std::move(map), f);
}

template <ResidueField F>
json to_json(const Derivation<F>& d)
{
    json w = json::array();
    for (const auto& x : d.weights) w.push_back(element_to_json<F>(x));
    return {{"rho", to_json(d.rho)}, {"weights", w}, {"coefDerivation", d.coefficient_derivation ? "field" : "trivial"}};
}

template <ResidueField F>
Derivation<F> derivation_from_json(const json& j, std::optional<std::size_t> rank = std::nullopt)
{
    GroupVector rho = group_from_json(detail::member(j, "rho"), rank);
    const json& wj = detail::member(j, "weights");
    if (!wj.is_array()) detail::bad("\"weights\" must be an array");
    std::vector<typename F::element_type> w;
    for (const auto& x : wj) w.push_back(element_from_json<F>(x));
    bool coef = false;
    if (j.contains("coefDerivation")) {
        const json& cd = j.at("coefDerivation");
        if (cd == "field") coef = true;
        else if (cd != "trivial") detail::bad("coefDerivation must be \"trivial\" or \"field\"");
    }
    return Derivation<F>(std::move(rho), std::move(w), coef);
}

template <ResidueField F>
json to_json(const DiffPoly<F>& p)
{
    json mons = json::array();
    const std::size_t r = p.order();
    for (const auto& [m, c] : p.terms()) {
        json e = json::array();
        for (std::size_t i = 0; i <= r; ++i) e.push_back(m.exp(i));
        mons.push_back({{"exps", e}, {"coef", to_json(c)}});
    }
    return {{"order", r}, {"monomials", mons}};
}

template <ResidueField F>
DiffPoly<F> diffpoly_from_json(const json& j, std::optional<std::size_t> rank = std::nullopt)
{
    const json& mons = detail::member(j, "monomials");
    if (!mons.is_array()) detail::bad("\"monomials\" must be an array");
    std::optional<std::size_t> order;
    if (j.contains("order")) {
        if (!j.at("order").is_number_unsigned()) detail::bad("\"order\" must be a nonnegative integer");
        order = j.at("order").get<std::size_t>();
    }
    std::vector<std::pair<DiffMonomial, Series<F>>> terms;
    for (const auto& t : mons) {
        if (!rank && t.is_object() && t.contains("coef")) rank = detail::series_rank_hint(t.at("coef"));
    }
    for (const auto& t : mons) {
        const json& ej = detail::member(t, "exps");
        if (!ej.is_array()) detail::bad("\"exps\" must be an array");
        std::vector<unsigned> e;
        for (const auto& x : ej) {
            if (!x.is_number_unsigned()) detail::bad("monomial exponents must be nonnegative integers");
            e.push_back(x.get<unsigned>());
        }
        if (order && e.size() > *order + 1) detail::bad("monomial exponents exceed the declared order");
        Series<F> c = series_from_json<F>(detail::member(t, "coef"), rank);
        if (!rank) rank = c.rank();
        terms.emplace_back(DiffMonomial(std::move(e)), std::move(c));
    }
    DiffPoly<F> p(rank.value_or(1));
    for (const auto& [m, c] : terms) p.add_term(m, c);
    return p;
}

template <ResidueField F>
json to_json(const CutApprox<F>& cut)
{
    json pts = json::array();
    for (const auto& a : cut.points) pts.push_back(to_json(a));
    return {{"points", pts}};
}

/// gamma is always recomputed from the points
template <ResidueField F>
CutApprox<F> cut_from_json(const json& j, std::optional<std::size_t> rank = std::nullopt)
{
    const json& pts = detail::member(j, "points");
    if (!pts.is_array()) detail::bad("\"points\" must be an array");
    std::vector<Series<F>> points;
    for (const auto& x : pts) {
        if (!rank) rank = detail::series_rank_hint(x);
    }
    for (const auto& x : pts) {
        points.push_back(series_from_json<F>(x, rank));
        if (!rank) rank = points.back().rank();
    }
    return validate_cut(std::move(points));
}

struct Config {
    std::size_t rank = 1;
    std::string field = "Q";
    json derivation; // null: t d/dt style default for the rank
    bool explicit_rank = false;
};

inline Config config_from_json(const json& j)
{
    Config c;
    if (!j.is_object()) detail::bad("config must be an object");
    if (j.contains("rank")) {
        if (!j.at("rank").is_number_unsigned() || j.at("rank").get<std::size_t>() == 0) {
            detail::bad("\"rank\" must be a positive integer");
        }
        c.rank = j.at("rank").get<std::size_t>();
        c.explicit_rank = true;
    }
    if (j.contains("field")) {
        c.field = j.at("field").get<std::string>();
        if (c.field != "Q" && c.field != "Q(x)") detail::bad("field must be \"Q\" or \"Q(x)\"");
    }
    if (j.contains("derivation")) c.derivation = j.at("derivation");
    return c;
}

template <ResidueField F>
json to_json(const DominantData<F>& d)
{
    return {{"ddeg", d.ddeg}, {"dominant", d.dpart.to_string()}, {"dmonomial", to_json(valuation(d.dmonomial))}};
}

template <ResidueField F>
json to_json(const CheckReport<F>& r)
{
    json j = {{"pass", r.pass}};
    if (r.witness) j["witness"] = pretty(*r.witness);
    if (r.partner) j["partner"] = pretty(*r.partner);
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

template <ResidueField F>
json to_json(const SolverReport<F>& r)
{
    json steps = json::array();
    for (const auto& s : r.steps) {
        json st = {{"gamma", to_json(s.gamma)}, {"equation", s.equation.to_string() + " = 0"}, {"z", F::format(s.z)}};
        if (!s.v_p0) st["vP0"] = "inf";
        else st["vP0"] = to_json(*s.v_p0);
        if (s.v_p0_beyond_frontier) st["vP0BeyondFrontier"] = true;
        steps.push_back(std::move(st));
    }
    json j = {{"status", std::string(to_string(r.status))},
              {"y", pretty(r.y)},
              {"y_series", to_json(r.y)},
              {"steps", steps}};
    using R = typename SolverReport<F>::Residual;
    switch (r.residual_kind) {
    case R::Zero: j["residual"] = "zero"; break;
    case R::Valuation: j["residual"] = to_json(*r.residual); break;
    case R::BeyondFrontier: j["residual"] = {{"beyondFrontier", to_json(*r.residual)}}; break;
    }
    if (r.reason != FailureReason::None) j["reason"] = std::string(to_string(r.reason));
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

} // namespace valdiff::io

#endif
