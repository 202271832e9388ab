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

#ifndef VALDIFF_ORDGROUP_HPP
#define VALDIFF_ORDGROUP_HPP

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace valdiff {

using Integer = boost::multiprecision::cpp_int;

/// Element of Z^n under the lexicographic order, most significant coordinate first.
class GroupVector {
public:
    GroupVector() = default;
    explicit GroupVector(std::size_t rank) : coords_(rank) {}
    explicit GroupVector(std::vector<Integer> coords) : coords_(std::move(coords)) {}
    GroupVector(std::initializer_list<long> coords)
    {
        coords_.reserve(coords.size());
        for (long c : coords) {
            coords_.emplace_back(c);
        }
    }

    static GroupVector zero(std::size_t rank) { return GroupVector(rank); }

    static GroupVector unit(std::size_t rank, std::size_t index)
    {
        GroupVector g(rank);
        g.coords_.at(index) = 1;
        return g;
    }

    std::size_t rank() const noexcept { return coords_.size(); }
    const std::vector<Integer>& coords() const noexcept { return coords_; }
    const Integer& operator[](std::size_t i) const { return coords_[i]; }
    Integer& operator[](std::size_t i) { return coords_[i]; }

    bool is_zero() const noexcept
    {
        for (const auto& c : coords_) {
            if (c != 0) {
                return false;
            }
        }
        return true;
    }

    GroupVector& operator+=(const GroupVector& o)
    {
        check_rank(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            coords_[i] += o.coords_[i];
        }
        return *this;
    }

    GroupVector& operator-=(const GroupVector& o)
    {
        check_rank(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            coords_[i] -= o.coords_[i];
        }
        return *this;
    }

    GroupVector& operator*=(const Integer& s)
    {
        for (auto& c : coords_) {
            c *= s;
        }
        return *this;
    }

    friend GroupVector operator+(GroupVector a, const GroupVector& b) { return a += b; }
    friend GroupVector operator-(GroupVector a, const GroupVector& b) { return a -= b; }
    friend GroupVector operator*(const Integer& s, GroupVector a) { return a *= s; }
    friend GroupVector operator-(GroupVector a)
    {
        for (auto& c : a.coords_) {
            c = -c;
        }
        return a;
    }

    friend bool operator==(const GroupVector& a, const GroupVector& b)
    {
        a.check_rank(b);
        return a.coords_ == b.coords_;
    }

    friend std::strong_ordering operator<=>(const GroupVector& a, const GroupVector& b)
    {
        a.check_rank(b);
        for (std::size_t i = 0; i < a.coords_.size(); ++i) {
            if (a.coords_[i] < b.coords_[i]) {
                return std::strong_ordering::less;
            }
            if (a.coords_[i] > b.coords_[i]) {
                return std::strong_ordering::greater;
            }
        }
        return std::strong_ordering::equal;
    }

    std::string to_string() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) {
                s += ",";
            }
            s += coords_[i].str();
        }
        return s + ")";
    }

private:
    void check_rank(const GroupVector& o) const
    {
        if (o.coords_.size() != coords_.size()) {
            fail(Errc::RankMismatch, "group elements of rank " + std::to_string(coords_.size()) + " and " +
                                         std::to_string(o.coords_.size()));
        }
    }

    std::vector<Integer> coords_;
};

inline std::strong_ordering lex_compare(const GroupVector& a, const GroupVector& b) { return a <=> b; }

/// Index of the first nonzero coordinate: the j with a in Delta_j \ Delta_{j+1}.
inline std::optional<std::size_t> arch_class(const GroupVector& a) noexcept
{
    for (std::size_t i = 0; i < a.rank(); ++i) {
        if (a[i] != 0) {
            return i;
        }
    }
    return std::nullopt;
}

/// x is o(y): x = 0, or y != 0 and x lies in a strictly smaller convex subgroup.
inline bool is_little_o(const GroupVector& x, const GroupVector& y)
{
    auto cx = arch_class(x);
    if (!cx) {
        return true;
    }
    auto cy = arch_class(y);
    return cy && *cx > *cy;
}

/// Delta_k = { g in Z^n : first k coordinates zero }.
struct ConvexLevel {
    std::size_t k = 0;
    std::size_t n = 0;

    ConvexLevel() = default;
    ConvexLevel(std::size_t level, std::size_t rank) : k(level), n(rank)
    {
        if (level > rank) {
            fail(Errc::InvalidArgument, "convex level " + std::to_string(level) + " exceeds rank " + std::to_string(rank));
        }
    }

    bool is_whole_group() const noexcept { return k == 0; }
    bool is_trivial() const noexcept { return k == n; }

    bool contains(const GroupVector& g) const
    {
        if (g.rank() != n) {
            fail(Errc::RankMismatch, "element rank does not match convex level");
        }
        for (std::size_t i = 0; i < k; ++i) {
            if (g[i] != 0) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const ConvexLevel&, const ConvexLevel&) = default;
};

inline std::vector<ConvexLevel> convex_subgroups(std::size_t n)
{
    if (n == 0) {
        fail(Errc::InvalidArgument, "rank must be at least 1");
    }
    std::vector<ConvexLevel> chain;
    chain.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        chain.emplace_back(k, n);
    }
    return chain;
}

/// Image in Gamma/Delta_k, identified with Z^k under lex order.
inline GroupVector quotient_project(const GroupVector& a, const ConvexLevel& level)
{
    if (a.rank() != level.n) {
        fail(Errc::RankMismatch, "element rank does not match convex level");
    }
    std::vector<Integer> head(a.coords().begin(), a.coords().begin() + static_cast<std::ptrdiff_t>(level.k));
    return GroupVector(std::move(head));
}

/// Coordinates of an element of Delta_k, re-indexed as Z^(n-k).
inline GroupVector subgroup_coords(const GroupVector& a, const ConvexLevel& level)
{
    if (a.rank() != level.n) {
        fail(Errc::RankMismatch, "element rank does not match convex level");
    }
    std::vector<Integer> tail(a.coords().begin() + static_cast<std::ptrdiff_t>(level.k), a.coords().end());
    return GroupVector(std::move(tail));
}

/// Inverse of subgroup_coords: pads with k leading zeros.
inline GroupVector embed_subgroup(const GroupVector& tail, const ConvexLevel& level)
{
    if (tail.rank() + level.k != level.n) {
        fail(Errc::RankMismatch, "subgroup element has wrong rank");
    }
    std::vector<Integer> c(level.k);
    c.insert(c.end(), tail.coords().begin(), tail.coords().end());
    return GroupVector(std::move(c));
}

/// Lift of an element of Gamma/Delta_k: pads with n-k trailing zeros.
inline GroupVector lift_quotient(const GroupVector& head, const ConvexLevel& level)
{
    if (head.rank() != level.k) {
        fail(Errc::RankMismatch, "quotient element has wrong rank");
    }
    std::vector<Integer> c(head.coords());
    c.resize(level.n);
    return GroupVector(std::move(c));
}

/// Exponent bound for a truncated series: exact strictly below the bound, or +infinity.
class Frontier {
public:
    Frontier() = default; // +infinity
    Frontier(GroupVector bound) : bound_(std::move(bound)) {}

    static Frontier infinity() { return Frontier(); }

    bool is_infinite() const noexcept { return !bound_.has_value(); }
    const GroupVector& bound() const { return *bound_; }

    /// true iff exponent g lies strictly below the frontier
    bool above(const GroupVector& g) const { return !bound_ || g < *bound_; }

    Frontier shifted(const GroupVector& by) const { return bound_ ? Frontier(*bound_ + by) : Frontier(); }

    friend bool operator==(const Frontier&, const Frontier&) = default;

    friend bool operator<(const Frontier& a, const Frontier& b)
    {
        if (!a.bound_) {
            return false;
        }
        if (!b.bound_) {
            return true;
        }
        return *a.bound_ < *b.bound_;
    }

    friend Frontier meet(const Frontier& a, const Frontier& b) { return b < a ? b : a; }

    std::string to_string() const { return bound_ ? bound_->to_string() : "inf"; }

private:
    std::optional<GroupVector> bound_;
};

} // namespace valdiff

#endif
