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

#include <gtest/gtest.h>

#include <vector>

#include "support.hpp"

using namespace vt;

namespace {

Errc code_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return Errc::ParseError;
}

QS random_series(RandomSource& rs, std::size_t n, long lo = -2, long hi = 4)
{
    QS s(n);
    long k = rs.uniform(1, 3);
    for (long i = 0; i < k; ++i) s.add_term(rs.exponent(n, lo, hi), rs.nonzero_rational(5));
    if (s.is_exact_zero()) s = QS::constant(n, 1);
    return s;
}

QD random_derivation(RandomSource& rs, std::size_t n)
{
    std::vector<Rational> w(n);
    for (auto& x : w) x = rs.coin() ? Rational(0) : Rational(rs.uniform(-2, 2));
    return QD(rs.exponent(n, -2, 2), w);
}

} // namespace

TEST(SeriesArith, GeometricInverse)
{
    QS a = c1(1) - t1(1);
    QS inv = inverse(a, gv({3}));
    EXPECT_EQ(inv, ser({{gv({0}), 1}, {gv({1}), 1}, {gv({2}), 1}}, gv({3})));
}

TEST(SeriesArith, ProductAndFrontierMin)
{
    EXPECT_EQ((c1(2) + t1(1, 3)) * t1(1), ser({{gv({1}), 2}, {gv({2}), 3}}));
    QS a = ser({{gv({0}), 1}}, gv({5}));
    QS b = ser({{gv({1}), 1}}, gv({3}));
    EXPECT_EQ((a + b).frontier(), Frontier(gv({3})));
    // min(phi_a + v(b), phi_b + v(a))
    EXPECT_EQ((a * b).frontier(), Frontier(gv({3})));
}

TEST(SeriesArith, InverseErrors)
{
    EXPECT_EQ(code_of([] { (void)inverse(QS(1)); }), Errc::DivisionByZero);
    EXPECT_EQ(code_of([] { (void)inverse(QS::big_o(gv({2}))); }), Errc::InsufficientPrecision);
    // infinite expansion with no requested frontier
    EXPECT_EQ(code_of([] { (void)inverse(c1(1) + t1(1)); }), Errc::InsufficientPrecision);
    // exact monomials invert exactly
    EXPECT_EQ(inverse(t1(2, 4)), t1(-2, q(1, 4)));
}

TEST(SeriesArith, InverseTimesSelfIsOne)
{
    RandomSource rs(17);
    for (int i = 0; i < 100; ++i) {
        QS a = random_series(rs, 1);
        QS inv = inverse(a, gv({6}));
        QS prod = a * inv;
        ASSERT_FALSE(prod.is_exact());
        EXPECT_EQ(prod.truncated(prod.frontier()), QS::constant(1, 1).truncated(prod.frontier()));
    }
}

TEST(SeriesArith, ConstructorRejectsTermsBeyondFrontier)
{
    EXPECT_EQ(code_of([] { (void)ser({{gv({3}), 1}}, gv({3})); }), Errc::InvalidArgument);
    QS s = ser({{gv({1}), 0}, {gv({2}), 5}});
    EXPECT_EQ(s.terms().size(), 1u);
}

TEST(Valuation, Examples)
{
    EXPECT_EQ(valuation(ser({{gv({0, 1}), 1}, {gv({1, 0}), 1}})), gv({0, 1}));
    EXPECT_EQ(valuation(QS::constant(3, 5)), gv({0, 0, 0}));
    EXPECT_EQ(code_of([] { (void)valuation(t1(3) - t1(3)); }), Errc::ZeroHasNoValuation);
    EXPECT_EQ(code_of([] { (void)valuation(QS::big_o(gv({2}))); }), Errc::InsufficientPrecision);
}

TEST(Derive, MonomialRule)
{
    QS a = ser({{gv({2}), 3}, {gv({5}), 1}});
    EXPECT_EQ(derive(a, log1()), ser({{gv({2}), 6}, {gv({5}), 5}}));

    QD d(gv({0, -1}), {1, 0});
    QS s = QS::power(gv({1, 0}));
    QS ds = derive(s, d);
    EXPECT_EQ(ds, QS::power(gv({1, -1})));
    EXPECT_EQ(valuation(ds), gv({1, -1}));

    EXPECT_TRUE(derive(c1(7), log1()).is_exact_zero());
}

TEST(Derive, FrontierShiftsByRho)
{
    QD d(gv({-1}), {1});
    QS a = ser({{gv({1}), 1}}, gv({4}));
    EXPECT_EQ(derive(a, d).frontier(), Frontier(gv({3})));
    EXPECT_EQ(derive(a, log1()).frontier(), Frontier(gv({4})));
}

TEST(Derive, CoefficientDerivationOverRationalFunctions)
{
    auto d = Derivation<RF>::logarithmic(1);
    d.coefficient_derivation = true;
    const RationalFunction x = RationalFunction::x();
    auto a = Series<RF>::monomial(x * x, gv({2}));
    // (x^2 t^2)' = 2x t^2 + 2x^2 t^2
    EXPECT_EQ(derive(a, d), Series<RF>::monomial(RationalFunction(2) * x + RationalFunction(2) * x * x, gv({2})));
}

TEST(ResidueMap, Examples)
{
    EXPECT_EQ(residue_map(c1(2) + t1(1, 3)), q(2));
    EXPECT_EQ(residue_map(t1(1)), q(0));
    EXPECT_EQ(code_of([] { (void)residue_map(t1(-1)); }), Errc::NotInValuationRing);
}

TEST(Dominance, Examples)
{
    auto names = [](const Dominance& d) { return d.names(); };
    using V = std::vector<std::string>;
    EXPECT_EQ(names(dominance(t1(1), c1(1))), (V{"preccurlyeq", "prec"}));
    EXPECT_EQ(names(dominance(c1(2) + t1(1), c1(2))), (V{"preccurlyeq", "asymp", "sim"}));
    EXPECT_EQ(names(dominance(t1(1), t1(1))), (V{"preccurlyeq", "asymp", "sim"}));
    EXPECT_EQ(code_of([] { (void)dominance(QS(1), t1(1)); }), Errc::ZeroHasNoValuation);
}

TEST(FieldChecks, Examples)
{
    QD d2(gv({0, -1}), {1, 0});
    EXPECT_TRUE(field_check(d2, CheckMode::Small).pass);
    auto mono = field_check(d2, CheckMode::Monotone);
    EXPECT_FALSE(mono.pass);
    ASSERT_TRUE(mono.witness);
    EXPECT_EQ(*mono.witness, QS::power(gv({1, 0})));
    EXPECT_LT(valuation(derive(*mono.witness, d2)), valuation(*mono.witness));

    QD dneg(gv({-1}), {1});
    auto small = field_check(dneg, CheckMode::Small);
    EXPECT_FALSE(small.pass);
    ASSERT_TRUE(small.witness);
    EXPECT_EQ(*small.witness, t1(1));
    EXPECT_EQ(valuation(derive(*small.witness, dneg)), gv({0}));

    EXPECT_TRUE(field_check(log1(), CheckMode::Small).pass);
    EXPECT_TRUE(field_check(log1(), CheckMode::Monotone).pass);
}

// Small and monotone are decided exactly; compare against a brute-force scan of monomials.
TEST(FieldChecks, ExactDecisionsMatchMonomialScan)
{
    RandomSource rs(29);
    for (int it = 0; it < 300; ++it) {
        const std::size_t n = static_cast<std::size_t>(rs.uniform(1, 3));
        QD d = random_derivation(rs, n);
        const GroupVector zero = GroupVector::zero(n);
        bool small_bad = false, mono_bad = false;
        std::vector<long> off(n, -4);
        for (;;) {
            GroupVector g(n);
            for (std::size_t i = 0; i < n; ++i) g[i] = off[i];
            if (g > zero && d.weight(g) != 0) {
                small_bad = small_bad || g + d.rho <= zero;
                mono_bad = mono_bad || g + d.rho < g;
            }
            std::size_t i = n;
            while (i > 0 && off[i - 1] == 4) off[--i] = -4;
            if (i == 0) break;
            ++off[i - 1];
        }
        auto s = field_check(d, CheckMode::Small);
        auto m = field_check(d, CheckMode::Monotone);
        // rho within [-2,2]^n keeps every violation inside the [-4,4]^n scan
        EXPECT_EQ(s.pass, !small_bad) << d.rho.to_string();
        EXPECT_EQ(m.pass, !mono_bad) << d.rho.to_string();
        if (!s.pass) {
            EXPECT_GT(valuation(*s.witness), zero);
            EXPECT_LE(valuation(derive(*s.witness, d)), zero);
        }
        if (!m.pass) {
            EXPECT_LT(valuation(derive(*m.witness, d)), valuation(*m.witness));
        }
    }
}

TEST(FieldChecks, SmallImpliesDerivativeStaysInMaximalIdeal)
{
    RandomSource rs(31);
    int checked = 0;
    for (int it = 0; it < 40; ++it) {
        const std::size_t n = static_cast<std::size_t>(rs.uniform(1, 3));
        QD d = random_derivation(rs, n);
        if (!field_check(d, CheckMode::Small).pass) continue;
        const GroupVector zero = GroupVector::zero(n);
        for (int i = 0; i < 500 / 20; ++i) {
            QS a(n);
            long k = rs.uniform(1, 3);
            for (long j = 0; j < k; ++j) a.add_term(rs.positive_exponent(n, 4), rs.nonzero_rational(5));
            auto v = valuation_or_infinity(derive(a, d));
            EXPECT_TRUE(!v || *v > zero);
            ++checked;
        }
    }
    EXPECT_GT(checked, 100);
}

TEST(FieldChecks, RankOneSmallImpliesMonotone)
{
    for (long rho = -3; rho <= 3; ++rho) {
        for (long w = -2; w <= 2; ++w) {
            QD d(gv({rho}), {Rational(w)});
            if (field_check(d, CheckMode::Small).pass) {
                EXPECT_TRUE(field_check(d, CheckMode::Monotone).pass);
            }
        }
    }
}

TEST(FieldChecks, SampledModesAreDeterministic)
{
    QD d(gv({0, -1}), {1, 0});
    SampleConfig cfg;
    cfg.seed = 4;
    cfg.kind = SampleKind::NonConstantMonomials;
    auto a = field_check(d, CheckMode::AsymptoticSample, cfg);
    auto b = field_check(d, CheckMode::AsymptoticSample, cfg);
    EXPECT_TRUE(a.pass);
    EXPECT_EQ(a.pass, b.pass);
    EXPECT_EQ(a.detail, b.detail);
}

class SeriesLaws : public ::testing::TestWithParam<std::size_t> {};

TEST_P(SeriesLaws, ValuationIsMultiplicativeAndUltrametric)
{
    const std::size_t n = GetParam();
    RandomSource rs(100 + n);
    for (int i = 0; i < 200; ++i) {
        QS a = random_series(rs, n), b = random_series(rs, n);
        EXPECT_EQ(valuation(a * b), valuation(a) + valuation(b));
        auto s = valuation_or_infinity(a + b);
        GroupVector m = std::min(valuation(a), valuation(b));
        if (s) {
            EXPECT_GE(*s, m);
        }
        if (valuation(a) != valuation(b)) {
            ASSERT_TRUE(s);
            EXPECT_EQ(*s, m);
        }
    }
}

TEST_P(SeriesLaws, RingAxiomsOnSamples)
{
    const std::size_t n = GetParam();
    RandomSource rs(200 + n);
    for (int i = 0; i < 100; ++i) {
        QS a = random_series(rs, n), b = random_series(rs, n), c = random_series(rs, n);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE((a - a).is_exact_zero());
    }
}

TEST_P(SeriesLaws, LeibnizRule)
{
    const std::size_t n = GetParam();
    RandomSource rs(300 + n);
    for (int i = 0; i < 200; ++i) {
        QD d = random_derivation(rs, n);
        QS a = random_series(rs, n), b = random_series(rs, n);
        EXPECT_EQ(derive(a * b, d), derive(a, d) * b + a * derive(b, d));
        EXPECT_EQ(derive(a + b, d), derive(a, d) + derive(b, d));
    }
}

TEST_P(SeriesLaws, FrontierSoundness)
{
    // results computed from truncated inputs agree with exact results below their frontier
    const std::size_t n = GetParam();
    RandomSource rs(400 + n);
    for (int i = 0; i < 200; ++i) {
        QD d = random_derivation(rs, n);
        QS a = random_series(rs, n), b = random_series(rs, n);
        Frontier fa(rs.exponent(n, -1, 5)), fb(rs.exponent(n, -1, 5));
        QS ta = a.truncated(fa), tb = b.truncated(fb);
        auto agrees = [](const QS& exact, const QS& approx) {
            return exact.truncated(approx.frontier()) == approx;
        };
        EXPECT_TRUE(agrees(a + b, ta + tb));
        if (ta.has_terms() && tb.has_terms()) {
            EXPECT_TRUE(agrees(a * b, ta * tb));
        }
        EXPECT_TRUE(agrees(derive(a, d), derive(ta, d)));
    }
}

INSTANTIATE_TEST_SUITE_P(Ranks, SeriesLaws, ::testing::Values(1, 2, 3));

TEST(SeriesLaws, InverseFrontierSoundnessRankOne)
{
    RandomSource rs(500);
    for (int i = 0; i < 100; ++i) {
        QS a = random_series(rs, 1, 0, 4);
        QS exact_inv = inverse(a, gv({8}));
        QS ta = a.truncated(Frontier(gv({valuation(a)[0].convert_to<long>() + 3})));
        QS approx = inverse(ta, gv({8}));
        EXPECT_EQ(exact_inv.truncated(approx.frontier()), approx);
    }
}
