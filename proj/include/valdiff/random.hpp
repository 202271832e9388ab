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

#ifndef VALDIFF_RANDOM_HPP
#define VALDIFF_RANDOM_HPP

#include <concepts>
#include <cstdint>
#include <random>
#include <type_traits>

#include "ordgroup.hpp"
#include "residue.hpp"

namespace valdiff {

/// Seeded source of the small random objects used by sampled checks and generators.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    Rational rational(long mag)
    {
        return Rational(uniform(-mag, mag)) / Rational(uniform(1, std::max(1L, mag / 2 + 1)));
    }

    Rational nonzero_rational(long mag)
    {
        Rational q;
        do {
            q = rational(mag);
        } while (q == 0);
        return q;
    }

    GroupVector exponent(std::size_t rank, long lo, long hi)
    {
        GroupVector g(rank);
        for (std::size_t i = 0; i < rank; ++i) g[i] = uniform(lo, hi);
        return g;
    }

    /// Uniform-ish element of the box that is strictly positive in lex order.
    GroupVector positive_exponent(std::size_t rank, long hi)
    {
        GroupVector g;
        do {
            g = exponent(rank, -hi, hi);
        } while (g <= GroupVector::zero(rank));
        return g;
    }

    std::mt19937_64& engine() noexcept { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Random nonzero residue element with small numbers.
template <ResidueField F>
typename F::element_type random_unit_coeff(RandomSource& rs, long mag = 5)
{
    if constexpr (std::same_as<F, RationalFunctionField>) {
        switch (rs.uniform(0, 3)) {
        case 0:
        case 1: return RationalFunction(rs.nonzero_rational(mag));
        case 2: return RationalFunction(UPoly(std::vector<Rational>{rs.rational(mag), rs.nonzero_rational(mag)}));
        default: {
            UPoly num(std::vector<Rational>{rs.nonzero_rational(mag), rs.rational(mag)});
            UPoly den(std::vector<Rational>{rs.rational(mag), Rational(1)});
            return RationalFunction(num, den);
        }
        }
    } else {
        return F::from_rational(rs.nonzero_rational(mag));
    }
}

} // namespace valdiff

#endif
