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

#ifndef VALDIFF_MONOMIAL_HPP
#define VALDIFF_MONOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace valdiff {

/// Differential monomial Y^e0 (Y')^e1 ... (Y^(r))^er. Stored without trailing zero exponents so
/// that equal monomials compare equal regardless of the order bound they were written with.
class DiffMonomial {
public:
    DiffMonomial() = default;
    DiffMonomial(std::initializer_list<unsigned> exps) : e_(exps) { trim(); }
    explicit DiffMonomial(std::vector<unsigned> exps) : e_(std::move(exps)) { trim(); }

    static DiffMonomial one() { return {}; }

    /// Y^(i)
    static DiffMonomial derivative_var(std::size_t i)
    {
        std::vector<unsigned> e(i + 1);
        e[i] = 1;
        return DiffMonomial(std::move(e));
    }

    const std::vector<unsigned>& exps() const noexcept { return e_; }
    unsigned exp(std::size_t i) const noexcept { return i < e_.size() ? e_[i] : 0U; }

    unsigned degree() const noexcept
    {
        unsigned d = 0;
        for (unsigned x : e_) d += x;
        return d;
    }

    /// Highest derivative occurring; nullopt for the constant monomial.
    std::optional<std::size_t> order() const noexcept
    {
        if (e_.empty()) return std::nullopt;
        return e_.size() - 1;
    }

    friend DiffMonomial operator*(const DiffMonomial& a, const DiffMonomial& b)
    {
        std::vector<unsigned> r(std::max(a.e_.size(), b.e_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.exp(i) + b.exp(i);
        return DiffMonomial(std::move(r));
    }

    friend bool operator==(const DiffMonomial&, const DiffMonomial&) = default;
    friend auto operator<=>(const DiffMonomial& a, const DiffMonomial& b)
    {
        // graded: total degree first, then exponents from the highest derivative down
        if (auto c = a.degree() <=> b.degree(); c != 0) return c;
        std::size_t n = std::max(a.e_.size(), b.e_.size());
        for (std::size_t i = n; i-- > 0;) {
            if (auto c = a.exp(i) <=> b.exp(i); c != 0) return c;
        }
        return std::strong_ordering::equal;
    }

    /// "1", "Y^2", "Y*Y'", "Y''^3"
    std::string to_string() const
    {
        if (e_.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (e_[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += "Y" + std::string(i, '\'');
            if (e_[i] > 1) s += "^" + std::to_string(e_[i]);
        }
        return s;
    }

private:
    void trim()
    {
        while (!e_.empty() && e_.back() == 0) e_.pop_back();
    }

    std::vector<unsigned> e_;
};

} // namespace valdiff

#endif
