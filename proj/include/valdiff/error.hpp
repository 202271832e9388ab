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

#ifndef VALDIFF_ERROR_HPP
#define VALDIFF_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace valdiff {

enum class Errc {
    RankMismatch,
    DivisionByZero,
    Unsolvable,
    InsufficientPrecision,
    ZeroHasNoValuation,
    NotInValuationRing,
    ZeroConjugate,
    ZeroPolynomial,
    NotInDotO,
    AllCoefficientsVanish,
    NotPseudoCauchy,
    PreconditionViolated,
    EmptyPool,
    InvalidArgument,
    ParseError,
};

/// Module that owns an error code; used for the qualified code shown by the CLI.
inline constexpr std::string_view errc_module(Errc e) noexcept
{
    switch (e) {
    case Errc::RankMismatch: return "ordgroup";
    case Errc::DivisionByZero:
    case Errc::Unsolvable: return "residue";
    case Errc::InsufficientPrecision:
    case Errc::ZeroHasNoValuation:
    case Errc::NotInValuationRing: return "series";
    case Errc::ZeroConjugate:
    case Errc::ZeroPolynomial: return "diffpoly";
    case Errc::NotInDotO:
    case Errc::AllCoefficientsVanish: return "coarsen";
    case Errc::NotPseudoCauchy: return "cuts";
    case Errc::PreconditionViolated: return "dhensel";
    case Errc::EmptyPool: return "oracle";
    case Errc::InvalidArgument:
    case Errc::ParseError: return "cli";
    }
    return "valdiff";
}

inline constexpr std::string_view errc_name(Errc e) noexcept
{
    switch (e) {
    case Errc::RankMismatch: return "RankMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::Unsolvable: return "Unsolvable";
    case Errc::InsufficientPrecision: return "InsufficientPrecision";
    case Errc::ZeroHasNoValuation: return "ZeroHasNoValuation";
    case Errc::NotInValuationRing: return "NotInValuationRing";
    case Errc::ZeroConjugate: return "ZeroConjugate";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::NotInDotO: return "NotInDotO";
    case Errc::AllCoefficientsVanish: return "AllCoefficientsVanish";
    case Errc::NotPseudoCauchy: return "NotPseudoCauchy";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::EmptyPool: return "EmptyPool";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

    /// e.g. "series.InsufficientPrecision"
    std::string qualified() const
    {
        return std::string(errc_module(code_)) + "." + std::string(errc_name(code_));
    }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace valdiff

#endif
