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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: valdiff_acceptance --cli <path to valdiff> --golden <tests/cli directory>

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "valdiff/valdiff.hpp"

namespace fs = std::filesystem;
using namespace valdiff;

namespace {

using QF = RationalField;
using RF = RationalFunctionField;
using QS = Series<QF>;
using QP = DiffPoly<QF>;
using QD = Derivation<QF>;
using Clock = std::chrono::steady_clock;

// limits pinned by the acceptance contract
constexpr double kMultiplicativitySeconds = 30.0;
constexpr double kSolverSeconds = 60.0;
constexpr long kSolverTarget = 12;
constexpr std::size_t kGoldenPerCommand = 3;

struct Outcome {
    bool pass = true;
    std::string note;
    std::size_t failures = 0;
    std::size_t cases = 0;

    void check(bool ok, const std::string& what)
    {
        ++cases;
        if (ok) return;
        if (!failures) note = what;
        ++failures;
        pass = false;
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

oracle::Generator<QF> generator(std::uint64_t seed, std::size_t rank)
{
    oracle::GenConfig c;
    c.seed = seed;
    c.rank = rank;
    return oracle::Generator<QF>(c);
}

GroupVector g2(long a, long b) { return GroupVector({a, b}); }

/// a and b differ by a nonzero residue scalar
bool scalar_multiple(const ResiduePoly<QF>& a, const ResiduePoly<QF>& b)
{
    if (a.is_zero() || b.is_zero() || a.terms().size() != b.terms().size()) return false;
    const Rational s = a.terms().begin()->second / b.terms().begin()->second;
    for (const auto& [m, c] : a.terms()) {
        if (b.coeff(m) * s != c) return false;
    }
    return true;
}

/// P(y) recomputed from the derivative chain, monomial by monomial.
QS reevaluate(const QP& p, const QS& y, const QD& d)
{
    std::vector<QS> chain{y};
    for (std::size_t i = 0; i < p.order(); ++i) chain.push_back(derive(chain.back(), d));
    QS acc(p.rank());
    for (const auto& [m, c] : p.terms()) {
        QS term = c;
        for (std::size_t i = 0; i <= p.order(); ++i) {
            for (unsigned k = 0; k < m.exp(i); ++k) term = term * chain[i];
        }
        acc = acc + term;
    }
    return acc;
}

/// Random element of O_dot for Delta_1 in Z^2; `unit` adds a term of exponent in Delta.
QS dot_o(RandomSource& rs, bool unit)
{
    QS s(2);
    const long k = rs.uniform(1, 3);
    for (long i = 0; i < k; ++i) s.add_term(g2(rs.uniform(1, 2), rs.uniform(-3, 3)), rs.nonzero_rational(4));
    if (unit) s.add_term(g2(0, rs.uniform(-3, 3)), rs.nonzero_rational(4));
    return s.is_exact_zero() ? QS::power(g2(0, 1)) : s;
}

QP dot_poly(RandomSource& rs)
{
    QP p(2);
    const long k = rs.uniform(1, 4);
    for (long i = 0; i < k; ++i) {
        std::vector<unsigned> e(static_cast<std::size_t>(rs.uniform(1, 2)));
        for (auto& x : e) x = static_cast<unsigned>(rs.uniform(0, 2));
        p.add_term(DiffMonomial(e), dot_o(rs, i == 0));
    }
    return p.is_zero() ? QP::variable(2) : p;
}

// small derivations on Z^2 that keep O_dot stable
std::vector<QD> dot_derivations() { return {QD(g2(0, 0), {1, 1}), QD(g2(0, -1), {1, 0}), QD(g2(1, -3), {1, 2})}; }

std::vector<std::pair<std::size_t, QD>> small_settings()
{
    return {{1, QD::logarithmic(1)}, {1, QD(GroupVector({1}), {Rational(1)})}, {2, QD::logarithmic(2)},
            {2, QD(g2(0, -1), {1, 0})}, {2, QD(g2(0, 0), {1, 1})}};
}

// ---------------------------------------------------------------------------

Outcome dominant_multiplicativity()
{
    Outcome o;
    const auto t0 = Clock::now();
    for (std::size_t rank : {1u, 2u}) {
        auto gen = generator(1001 + rank, rank);
        for (int i = 0; i < 250; ++i) {
            QP p = gen.poly(), q = gen.poly();
            auto dp = dominant(p), dq = dominant(q), dpq = dominant(p * q);
            o.check(dpq.ddeg == dp.ddeg + dq.ddeg, "ddeg not additive for " + pretty(p) + " and " + pretty(q));
            o.check(scalar_multiple(dpq.dpart, dp.dpart * dq.dpart), "D_PQ not a multiple of D_P D_Q");
        }
    }
    const double s = seconds_since(t0);
    o.check(s < kMultiplicativitySeconds, "took " + std::to_string(s) + " s");
    o.note = o.pass ? "500 pairs in " + std::to_string(s) + " s (limit 30 s)" : o.note;
    return o;
}

Outcome ddeg_geq_well_defined()
{
    Outcome o;
    int n = 0;
    for (const auto& [rank, d] : small_settings()) {
        auto gen = generator(2001 + n, rank);
        for (int i = 0; i < 60; ++i, ++n) {
            QP p = gen.poly();
            GroupVector g = gen.exponent();
            QS u = gen.unit();
            const unsigned plain = dominant(mul_conjugate(p, QS::power(g), d)).ddeg;
            o.check(dominant(mul_conjugate(p, u * QS::power(g), d)).ddeg == plain, "unit changes ddeg: " + pretty(p));
            GroupVector g2v = g + gen.positive_exponent(3);
            if (i % 3 == 0) g2v = g;
            o.check(ddeg_geq(p, g2v, d) <= ddeg_geq(p, g, d), "ddeg_geq not antitone: " + pretty(p));
        }
    }
    o.note = o.pass ? std::to_string(n) + " instances" : o.note;
    return o;
}

Outcome root_forces_degree()
{
    Outcome o;
    int n = 0;
    for (std::size_t rank : {1u, 2u}) {
        auto gen = generator(3001 + rank, rank);
        const QD d = QD::logarithmic(rank);
        for (int i = 0; i < 100; ++i, ++n) {
            QS f = gen.series();
            while (f.is_exact_zero()) f = gen.series();
            QP q = gen.poly();
            QP p = (QP::variable(rank) - QP::constant(f)) * q;
            GroupVector g = valuation(f) - (i % 4 ? gen.positive_exponent(2) : GroupVector::zero(rank));
            QS gs = gen.unit() * QS::power(g);
            o.check(ddeg_geq(p, valuation(gs), d) >= 1, "ddeg_geq < 1 for " + pretty(p));
        }
    }
    o.note = o.pass ? std::to_string(n) + " products (Y - f) Q" : o.note;
    return o;
}

Outcome coarsening_transfer()
{
    Outcome o;
    const CoarseContext ctx(1, 2);
    RandomSource rs(4001);
    const auto ds = dot_derivations();
    for (int i = 0; i < 200; ++i) {
        const QD& d = ds[static_cast<std::size_t>(i) % ds.size()];
        const QD dd = specialize(d, ctx);
        QP p = dot_poly(rs);
        QS b = dot_o(rs, rs.coin()), h = dot_o(rs, true);
        QP pb = add_conjugate(p, b, d), ph = mul_conjugate(p, h, d);
        QP up_b = add_conjugate(specialize(p, ctx), specialize(b, ctx), dd);
        QP up_h = mul_conjugate(specialize(p, ctx), specialize(h, ctx), dd);
        o.check(dominant(up_b).ddeg == dominant(pb).ddeg, "additive transfer fails: " + pretty(p));
        o.check(dominant(up_h).ddeg == dominant(ph).ddeg, "multiplicative transfer fails: " + pretty(p));
    }
    std::size_t cuts = 0;
    for (int i = 0; i < 50; ++i) {
        const QD& d = ds[static_cast<std::size_t>(i) % ds.size()];
        const QD dd = specialize(d, ctx);
        QP p = dot_poly(rs);
        // gammas inside Delta: (0, b) with b increasing
        std::vector<QS> pts{dot_o(rs, rs.coin())};
        long b = rs.uniform(-2, 1);
        const long m = rs.uniform(3, 5);
        for (long j = 0; j < m; ++j) {
            pts.push_back(pts.back() + QS::monomial(rs.nonzero_rational(4), g2(0, b)));
            b += rs.uniform(1, 2);
        }
        auto cut = validate_cut(pts);
        if (classify_delta(cut, ctx.level()) != DeltaClass::Jammed) {
            o.check(false, "constructed cut is not jammed");
            continue;
        }
        std::vector<QS> down;
        for (const auto& a : pts) down.push_back(specialize(a, ctx));
        auto dcut = validate_cut(std::move(down));
        auto upper = ddeg_along_cut(p, cut, d);
        auto lower = ddeg_along_cut(specialize(p, ctx), dcut, dd);
        o.check(upper.values == lower.values && upper.value == lower.value, "jammed cut disagrees: " + pretty(p));
        ++cuts;
    }
    o.note = o.pass ? "200 (P,b,h) and " + std::to_string(cuts) + " jammed cuts" : o.note;
    return o;
}

Outcome fluent_cut_bound()
{
    Outcome o;
    const CoarseContext ctx(1, 2);
    auto gen = generator(5001, 2);
    const auto ds = dot_derivations();
    for (int i = 0; i < 100; ++i) {
        const QD& d = ds[static_cast<std::size_t>(i) % ds.size()];
        QP p = gen.poly();
        std::vector<QS> pts{gen.series()};
        GroupVector g = gen.exponent();
        const long m = gen.source().uniform(2, 4);
        for (long j = 0; j < m; ++j) {
            pts.push_back(pts.back() + gen.series_from(g));
            g = g + g2(gen.source().uniform(1, 2), gen.source().uniform(-3, 3));
        }
        auto cut = validate_cut(std::move(pts));
        if (classify_delta(cut, ctx.level()) != DeltaClass::Fluent) {
            o.check(false, "constructed cut is not fluent");
            continue;
        }
        auto fine = ddeg_along_cut(p, cut, d);
        unsigned coarse = 0;
        for (std::size_t j = 0; j < cut.gammas.size(); ++j) {
            coarse = ddeg_coarse(add_conjugate(p, cut.points[j], d), quotient_project(cut.gammas[j], ctx.level()), ctx, d);
        }
        o.check(fine.value <= coarse, "fine " + std::to_string(fine.value) + " > coarse " + std::to_string(coarse));
    }
    o.note = o.pass ? "100 fluent cuts" : o.note;
    return o;
}

Outcome cut_monotonicity()
{
    Outcome o;
    int n = 0;
    for (const auto& [rank, d] : small_settings()) {
        auto gen = generator(6001 + n, rank);
        for (int i = 0; i < 60; ++i, ++n) {
            QP p = gen.poly();
            auto cut = gen.cut();
            auto r = ddeg_along_cut(p, cut, d);
            bool mono = true;
            for (std::size_t j = 0; j + 1 < r.values.size(); ++j) mono = mono && r.values[j] >= r.values[j + 1];
            o.check(mono, "d_i increases for " + pretty(p));
        }
    }
    o.note = o.pass ? std::to_string(n) + " (P, cut) pairs" : o.note;
    return o;
}

Outcome growth_star()
{
    Outcome o;
    auto gen = generator(7001, 2);
    const std::array<QD, 3> ds{QD::logarithmic(2), QD(g2(0, -1), {1, 0}), QD(g2(0, 0), {1, 1})};
    for (int i = 0; i < 100; ++i) {
        const QD& d = ds[static_cast<std::size_t>(i) % ds.size()];
        const unsigned e = static_cast<unsigned>(1 + i % 4);
        QP pe(2);
        while (pe.is_zero()) {
            QP p = gen.poly();
            for (unsigned k = 1; k < e; ++k) p = p * gen.poly();
            pe = p.homogeneous_part(e);
            if (pe.is_zero()) pe = QP::constant(gen.unit()) * p.homogeneous_part(p.degree());
            if (pe.degree() != e) pe = QP(2);
        }
        // differences (0, b) > 0: a single archimedean class
        std::vector<GroupVector> gs{gen.exponent()};
        for (int j = 0; j < 3; ++j) gs.push_back(gs.back() + g2(0, gen.source().uniform(1, 3)));
        auto r = growth_diagnostic(pe, gs, d);
        o.check(r.pass, "violation for " + pretty(pe));
    }
    o.note = o.pass ? "100 homogeneous P_e, e in 1..4" : o.note;
    return o;
}

Outcome rank_one_coupling()
{
    Outcome o;
    const std::vector<Rational> weights{Rational(0), Rational(1), Rational(-1), Rational(2), Rational(1) / 3};
    for (long rho = -3; rho <= 3; ++rho) {
        for (const auto& w : weights) {
            QD d(GroupVector({rho}), {w});
            bool small = field_check(d, CheckMode::Small).pass;
            bool mono = field_check(d, CheckMode::Monotone).pass;
            o.check(!small || mono, "small but not monotone at rho=" + std::to_string(rho));
            Derivation<RF> dx(GroupVector({rho}), {RF::from_rational(w)}, true);
            small = field_check(dx, CheckMode::Small).pass;
            mono = field_check(dx, CheckMode::Monotone).pass;
            o.check(!small || mono, "Q(x): small but not monotone at rho=" + std::to_string(rho));
        }
    }
    o.note = o.pass ? std::to_string(o.cases) + " derivations, 0 violations" : o.note;
    return o;
}

Outcome solver()
{
    Outcome o;
    const auto t0 = Clock::now();
    const QD d = QD::logarithmic(1);
    SolverOptions opt;
    opt.target = GroupVector({kSolverTarget});
    oracle::GenConfig c;
    c.seed = 9001;
    c.count = 100;
    auto corpus = oracle::gen_instances<QF>(oracle::InstanceKind::DhInstance, c);
    for (const auto& p : corpus.polys) {
        auto r = dh_solve(p, d, opt);
        o.check(r.status == SolverStatus::Solved, "not solved: " + pretty(p) + " " + r.detail);
        QS res = reevaluate(p, r.y, d);
        o.check(res.is_exact_zero() || valuation(res) > opt.target, "re-evaluation too low for " + pretty(p));
    }
    auto t = [](long e, Rational c) { return QS::monomial(c, GroupVector({e})); };
    const QP Y = QP::variable(1), Y1 = QP::variable(1, 1);
    const QS tt = t(1, 1);
    SolverOptions ten;
    ten.target = GroupVector({10});
    auto a = dh_solve(QP::constant(tt) + Y + Y1, d, ten);
    o.check(a.y == t(1, Rational(-1) / 2) && reevaluate(QP::constant(tt) + Y + Y1, a.y, d).is_exact_zero(),
            "t + Y + Y' gave " + pretty(a.y));
    auto b = dh_solve(QP::constant(tt) + Y, d, ten);
    o.check(b.y == t(1, -1), "t + Y gave " + pretty(b.y));
    SolverOptions five;
    five.target = GroupVector({5});
    QP pc = QP::constant(tt) + Y + QP::constant(tt) * Y * Y;
    auto cc = dh_solve(pc, d, five);
    const Frontier f5(GroupVector({5}));
    o.check(cc.y.truncated(f5) == (t(1, -1) + t(3, -1)).truncated(f5), "t + Y + tY^2 gave " + pretty(cc.y));
    o.check(valuation(reevaluate(pc, cc.y, d)) >= five.target, "t + Y + tY^2 residual too low");
    const double s = seconds_since(t0);
    o.check(s < kSolverSeconds, "took " + std::to_string(s) + " s");
    o.note = o.pass ? "100 instances + 3 examples in " + std::to_string(s) + " s (limit 60 s)" : o.note;
    return o;
}

Outcome oracle_equivalence()
{
    Outcome o;
    for (std::size_t rank : {1u, 2u}) {
        auto gen = generator(10001 + rank, rank);
        for (int i = 0; i < 500; ++i) {
            QP p = gen.poly();
            auto a = dominant(p);
            auto b = oracle::brute_dominant(p);
            o.check(a.ddeg == b.ddeg && a.dpart == b.dpart && a.dmonomial == b.dmonomial,
                    "dominant mismatch: " + pretty(p));
        }
    }
    for (std::size_t rank : {1u, 2u}) {
        auto gen = generator(10101 + rank, rank);
        const QD d = QD::logarithmic(rank);
        for (int i = 0; i < 250; ++i) {
            QP p = gen.poly();
            QS a = gen.series(), y = gen.series();
            o.check(evaluate(add_conjugate(p, a, d), y, d) == evaluate(p, a + y, d), "P_{+a}(y) != P(a+y)");
            if (!a.is_exact_zero()) {
                o.check(evaluate(mul_conjugate(p, a, d), y, d) == evaluate(p, a * y, d), "P_{xa}(y) != P(ay)");
                o.check(mul_conjugate(p, a, d) == oracle::brute_mul_conjugate(p, a, d), "naive conjugation differs");
            }
        }
    }
    o.note = o.pass ? "1000 dominant parts, 500 conjugation identities" : o.note;
    return o;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::pair<std::string, int> run_case(const std::string& cli, const fs::path& dir)
{
    std::string args = slurp(dir / "args");
    while (!args.empty() && (args.back() == '\n' || args.back() == '\r')) args.pop_back();
    const std::string cmd = "cd '" + dir.string() + "' && '" + cli + "' " + args + " 2>/dev/null";
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {"", -1};
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

Outcome cli_contract(const std::string& cli, const fs::path& golden)
{
    Outcome o;
    const std::vector<std::string> commands{"eval", "conj",    "ddeg",     "ddeg-geq", "vp",    "coarsen",
                                            "specialize", "cut-ddeg", "classify", "dhsolve", "check", "selftest"};
    if (cli.empty() || !fs::exists(golden)) {
        o.check(false, "missing --cli or --golden");
        return o;
    }
    std::map<std::string, std::size_t> per;
    std::map<int, std::size_t> exits;
    std::vector<fs::path> dirs;
    for (const auto& e : fs::directory_iterator(golden)) {
        if (e.is_directory()) dirs.push_back(e.path());
    }
    std::sort(dirs.begin(), dirs.end());
    for (const auto& dir : dirs) {
        std::istringstream args(slurp(dir / "args"));
        std::string cmd;
        args >> cmd;
        const int want = std::stoi(slurp(dir / "expected_exit"));
        auto [out, got] = run_case(cli, dir);
        o.check(got == want, dir.filename().string() + ": exit " + std::to_string(got) + ", expected " + std::to_string(want));
        o.check(out == slurp(dir / "expected_stdout"), dir.filename().string() + ": stdout differs");
        // byte stability: a second run prints the same bytes
        o.check(run_case(cli, dir).first == out, dir.filename().string() + ": output not stable");
        ++per[cmd];
        ++exits[want];
    }
    for (const auto& c : commands) {
        o.check(per[c] >= kGoldenPerCommand, c + " has " + std::to_string(per[c]) + " golden cases");
    }
    for (int code : {0, 2, 3, 4}) o.check(exits[code] > 0, "no golden case exits with " + std::to_string(code));
    o.note = o.pass ? std::to_string(dirs.size()) + " golden cases over " + std::to_string(commands.size()) + " commands"
                    : o.note;
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    std::string cli;
    fs::path golden;
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string k = argv[i];
        if (k == "--cli") cli = fs::absolute(argv[i + 1]).string();
        else if (k == "--golden") golden = argv[i + 1];
    }
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"dominant multiplicativity", dominant_multiplicativity},
        {"ddeg_geq well-defined and antitone", ddeg_geq_well_defined},
        {"root forces ddeg_geq >= 1", root_forces_degree},
        {"coarsening transfer", coarsening_transfer},
        {"fluent cut bounded by coarse ddeg", fluent_cut_bound},
        {"cut ddeg sequence nonincreasing", cut_monotonicity},
        {"growth diagnostic within one class", growth_star},
        {"rank-1 small implies monotone", rank_one_coupling},
        {"differential Hensel solver", solver},
        {"oracle equivalence", oracle_equivalence},
        {"CLI golden contract", [&] { return cli_contract(cli, golden); }},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note = std::string("exception: ") + e.what();
        }
        all = all && o.pass;
        std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ["
                  << o.note;
        if (!o.pass) std::cout << "; " << o.failures << " of " << o.cases << " checks failed";
        std::cout << "]" << std::endl;
    }
    return all ? 0 : 1;
}
