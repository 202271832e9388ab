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

// valdiff command-line tool. JSON on stdout, a one-line human summary on stderr.
// Exit codes: 0 ok, 2 precondition/module error, 3 solver or selftest failure, 4 parse/usage error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "valdiff/io.hpp"
#include "valdiff/valdiff.hpp"

namespace {

using namespace valdiff;
using io::json;

constexpr int exit_ok = 0;
constexpr int exit_module = 2;
constexpr int exit_solver = 3;
constexpr int exit_parse = 4;

struct Options {
    std::string command;
    std::string poly_file;
    std::string series_file;
    std::string cut_file;
    std::string config_file;
    std::string out_file;
    std::string gamma;
    std::string target;
    std::string mode;
    std::string sample = "general";
    std::optional<std::size_t> delta;
    std::uint64_t seed = 1;
    std::size_t count = 0;
    std::size_t max_steps = 64;
    long search_radius = 8;
};

struct Output {
    json body;
    std::string summary;
    int code = exit_ok;
};

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) fail(Errc::ParseError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        fail(Errc::ParseError, path + ": " + e.what());
    }
}

void require(const std::string& value, const char* flag, const std::string& command)
{
    if (value.empty()) fail(Errc::InvalidArgument, command + " needs " + flag);
}

std::size_t require_delta(const Options& o)
{
    if (!o.delta) fail(Errc::InvalidArgument, o.command + " needs --delta");
    return *o.delta;
}

/// Loaded inputs; the rank is fixed by the config, else by the derivation, else by the first object.
template <ResidueField F>
class Workspace {
public:
    Workspace(const Options& o, const io::Config& cfg) : opt_(o), cfg_(cfg)
    {
        if (cfg.explicit_rank) rank_ = cfg.rank;
        else if (cfg.derivation.is_object() && cfg.derivation.contains("rho")) {
            rank_ = io::group_from_json(cfg.derivation.at("rho")).rank();
        }
        if (!o.poly_file.empty()) poly_ = io::diffpoly_from_json<F>(read_json_file(o.poly_file), rank_);
        if (poly_ && !rank_) rank_ = poly_->rank();
        if (!o.series_file.empty()) series_ = io::series_from_json<F>(read_json_file(o.series_file), rank_);
        if (series_ && !rank_) rank_ = series_->rank();
        if (!o.cut_file.empty()) cut_ = io::cut_from_json<F>(read_json_file(o.cut_file), rank_);
        if (cut_ && !rank_) rank_ = cut_->rank();
        if (!rank_) rank_ = 1;
        if (cfg.derivation.is_null()) {
            der_ = Derivation<F>::logarithmic(*rank_);
            der_.coefficient_derivation = cfg.field == "Q(x)";
        } else {
            der_ = io::derivation_from_json<F>(cfg.derivation, rank_);
        }
    }

    std::size_t rank() const { return *rank_; }
    const Derivation<F>& derivation() const { return der_; }

    const DiffPoly<F>& poly() const
    {
        if (!poly_) fail(Errc::InvalidArgument, opt_.command + " needs -P <poly.json>");
        return *poly_;
    }
    const Series<F>& series() const
    {
        if (!series_) fail(Errc::InvalidArgument, opt_.command + " needs -A <series.json>");
        return *series_;
    }
    const CutApprox<F>& cut() const
    {
        if (!cut_) fail(Errc::InvalidArgument, opt_.command + " needs -C <cut.json>");
        return *cut_;
    }
    bool has_poly() const { return poly_.has_value(); }
    bool has_series() const { return series_.has_value(); }

    GroupVector group_arg(const std::string& text, const char* flag, std::size_t rank) const
    {
        require(text, flag, opt_.command);
        return io::parse_group(text, rank);
    }

private:
    const Options& opt_;
    const io::Config& cfg_;
    std::optional<std::size_t> rank_;
    std::optional<DiffPoly<F>> poly_;
    std::optional<Series<F>> series_;
    std::optional<CutApprox<F>> cut_;
    Derivation<F> der_;
};

template <ResidueField F>
Output cmd_selftest(const Options& o, std::size_t rank)
{
    oracle::GenConfig cfg;
    cfg.seed = o.seed;
    cfg.rank = rank;
    cfg.count = o.count ? o.count : 50;
    const auto d = Derivation<F>::logarithmic(rank);

    json checks = json::object();
    bool all = true;
    auto record = [&](const char* name, std::size_t run, std::size_t failures) {
        checks[name] = {{"run", run}, {"failures", failures}};
        all = all && failures == 0;
    };

    // dominant part against the brute-force reduction
    auto polys = oracle::gen_instances<F>(oracle::InstanceKind::Poly, cfg);
    std::size_t bad = 0;
    for (const auto& p : polys.polys) bad += !(oracle::brute_dominant(p) == dominant(p));
    record("dominant", polys.polys.size(), bad);

    // conjugation through the two independent expansions, and the evaluation identities
    oracle::Generator<F> gen(cfg);
    bad = 0;
    for (std::size_t i = 0; i < cfg.count; ++i) {
        auto p = gen.poly();
        auto a = gen.series();
        auto y = gen.series();
        bool ok = oracle::brute_mul_conjugate(p, a, d) == mul_conjugate(p, a, d);
        ok = ok && evaluate(add_conjugate(p, a, d), y, d) == evaluate(p, a + y, d);
        ok = ok && evaluate(mul_conjugate(p, a, d), y, d) == evaluate(p, a * y, d);
        bad += !ok;
    }
    record("conjugation", cfg.count, bad);

    // ddeg_{>=gamma} never exceeded by a witness pool and attained at t^gamma
    bad = 0;
    for (std::size_t i = 0; i < cfg.count; ++i) {
        auto p = gen.poly();
        auto g = gen.exponent();
        auto pool = oracle::witness_pool(gen, g, 4);
        unsigned exact = ddeg_geq(p, g, d);
        bool ok = oracle::brute_ddeg_geq(p, g, pool, d) == exact;
        ok = ok && oracle::brute_ddeg_geq(p, g, {Series<F>::power(g)}, d) == exact;
        bad += !ok;
    }
    record("ddegGeq", cfg.count, bad);

    // cut corpus: validity and monotone d-sequence
    auto cuts = oracle::gen_instances<F>(oracle::InstanceKind::Cut, cfg);
    bad = 0;
    for (const auto& c : cuts.cuts) {
        auto dd = ddeg_along_cut(gen.poly(), c, d);
        for (std::size_t i = 1; i < dd.values.size(); ++i) bad += dd.values[i] > dd.values[i - 1];
    }
    record("cutMonotone", cuts.cuts.size(), bad);

    // dh instances: premise by construction, solved and re-verified, only over Q((t^Z))
    if (rank == 1 && std::same_as<F, RationalField>) {
        auto dh = oracle::gen_instances<F>(oracle::InstanceKind::DhInstance, cfg);
        bad = 0;
        const GroupVector target{12};
        for (const auto& p : dh.polys) {
            bool ok = dh_premise(p).holds;
            if (ok) {
                auto rep = dh_solve(p, d, SolverOptions{target});
                auto res = evaluate(p, rep.y, d);
                ok = rep.status == SolverStatus::Solved && (res.is_exact_zero() || valuation(res) > target);
            }
            bad += !ok;
        }
        record("dhSolve", dh.polys.size(), bad);
    }

    Output out;
    out.body = {{"seed", o.seed}, {"count", cfg.count}, {"rank", rank}, {"field", std::string(F::name)},
                {"checks", checks}, {"pass", all}};
    out.summary = std::string("selftest ") + (all ? "passed" : "FAILED");
    if (!all) out.code = exit_solver;
    return out;
}

template <ResidueField F>
Output run(const Options& o, const io::Config& cfg)
{
    Workspace<F> ws(o, cfg);
    const auto& d = ws.derivation();
    const std::size_t n = ws.rank();
    Output out;
    const std::string& c = o.command;

    if (c == "eval") {
        auto v = evaluate(ws.poly(), ws.series(), d);
        out.body = {{"value", io::to_json(v)}, {"pretty", pretty(v)}};
        out.summary = "P(a) = " + pretty(v);
    } else if (c == "conj") {
        DiffPoly<F> q(n);
        if (o.mode == "add") q = add_conjugate(ws.poly(), ws.series(), d);
        else if (o.mode == "mul") q = mul_conjugate(ws.poly(), ws.series(), d);
        else fail(Errc::InvalidArgument, "conj needs --mode add|mul");
        out.body = {{"poly", io::to_json(q)}, {"pretty", pretty(q)}};
        out.summary = (o.mode == "add" ? "P_{+a} = " : "P_{xa} = ") + pretty(q);
    } else if (c == "ddeg") {
        auto dd = dominant(ws.poly());
        out.body = {{"ddeg", dd.ddeg}, {"dominant", dd.dpart.to_string()}};
        out.summary = "ddeg = " + std::to_string(dd.ddeg) + ", D_P = " + dd.dpart.to_string();
    } else if (c == "ddeg-geq") {
        GroupVector g = ws.group_arg(o.gamma, "--gamma", n);
        unsigned v = ddeg_geq(ws.poly(), g, d);
        out.body = {{"gamma", io::to_json(g)}, {"ddegGeq", v}};
        out.summary = "ddeg_{>=" + g.to_string() + "} P = " + std::to_string(v);
    } else if (c == "vp") {
        if (o.gamma.empty()) {
            GroupVector v = valuation(ws.poly());
            out.body = {{"vPoly", io::to_json(v)}};
            out.summary = "v(P) = " + v.to_string();
        } else {
            GroupVector g = io::parse_group(o.gamma, n);
            GroupVector v = v_p_gamma(ws.poly(), g, d);
            out.body = {{"gamma", io::to_json(g)}, {"vP", io::to_json(v)}};
            out.summary = "v_P(" + g.to_string() + ") = " + v.to_string();
        }
    } else if (c == "coarsen") {
        CoarseContext ctx(require_delta(o), n);
        if (ws.has_poly()) {
            GroupVector g = ws.group_arg(o.gamma, "--gamma", ctx.quotient_rank());
            unsigned v = ddeg_coarse(ws.poly(), g, ctx, d);
            out.body = {{"delta", ctx.quotient_rank()}, {"gamma", io::to_json(g)}, {"ddegCoarse", v}};
            out.summary = "coarse ddeg at " + g.to_string() + " = " + std::to_string(v);
        } else {
            GroupVector v = coarse_valuation(ws.series(), ctx);
            bool in = in_dot_o(ws.series(), ctx);
            out.body = {{"delta", ctx.quotient_rank()}, {"coarseValuation", io::to_json(v)}, {"inDotO", in}};
            out.summary = "v_Delta(a) = " + v.to_string() + (in ? " (in O_dot)" : " (not in O_dot)");
        }
    } else if (c == "specialize") {
        CoarseContext ctx(require_delta(o), n);
        out.body = {{"delta", ctx.quotient_rank()}};
        if (ws.has_poly()) {
            auto p = specialize(ws.poly(), ctx);
            out.body["poly"] = io::to_json(p);
            out.body["pretty"] = pretty(p);
            out.summary = "P_dot = " + pretty(p);
        } else {
            auto a = specialize(ws.series(), ctx);
            out.body["series"] = io::to_json(a);
            out.body["pretty"] = pretty(a);
            out.summary = "a_dot = " + pretty(a);
        }
        out.body["derivation"] = io::to_json(specialize(d, ctx));
    } else if (c == "cut-ddeg") {
        auto r = ddeg_along_cut(ws.poly(), ws.cut(), d);
        json gammas = json::array();
        for (const auto& g : ws.cut().gammas) gammas.push_back(io::to_json(g));
        out.body = {{"values", r.values}, {"stabilized", r.stabilized}, {"value", r.value}, {"gammas", gammas}};
        out.summary = "ddeg along cut ~ " + std::to_string(r.value) + (r.stabilized ? " (stabilized)" : " (unstable)");
    } else if (c == "classify") {
        auto cls = classify_delta(ws.cut(), ConvexLevel{require_delta(o), n});
        out.body = {{"class", std::string(to_string(cls))}};
        out.summary = "class: " + std::string(to_string(cls));
    } else if (c == "dhsolve") {
        SolverOptions so{ws.group_arg(o.target, "--target", n)};
        so.max_steps = o.max_steps;
        so.search_radius = o.search_radius;
        auto rep = dh_solve(ws.poly(), d, so);
        out.body = io::to_json(rep);
        out.summary = std::string(to_string(rep.status)) + ": y = " + pretty(rep.y);
        if (rep.status != SolverStatus::Solved) out.code = exit_solver;
    } else if (c == "check") {
        SampleConfig sc;
        sc.seed = o.seed;
        if (o.count) sc.count = o.count;
        if (o.sample == "monomial") sc.kind = SampleKind::NonConstantMonomials;
        else if (o.sample != "general") fail(Errc::InvalidArgument, "--sample must be general or monomial");
        if (o.mode == "small" || o.mode == "monotone") {
            auto r = field_check(d, o.mode == "small" ? CheckMode::Small : CheckMode::Monotone, sc);
            out.body = io::to_json(r);
            out.body["mode"] = o.mode;
        } else if (o.mode == "asymptotic") {
            auto r = asymptotic_witness(d, sc);
            out.body = {{"mode", o.mode}, {"pass", r.pass}, {"asymptotic", io::to_json(r.asymptotic)}};
            if (r.few_constants) out.body["fewConstants"] = io::to_json(*r.few_constants);
            if (!r.pass) out.body["failed"] = r.failed_check;
        } else if (o.mode == "few-constants") {
            out.body = io::to_json(field_check(d, CheckMode::FewConstantsSample, sc));
            out.body["mode"] = o.mode;
        } else {
            fail(Errc::InvalidArgument, "check needs --mode small|monotone|asymptotic|few-constants");
        }
        out.summary = o.mode + " check: " + (out.body["pass"].get<bool>() ? "pass" : "fail");
    } else if (c == "selftest") {
        return cmd_selftest<F>(o, n);
    } else {
        fail(Errc::InvalidArgument, "unknown command " + c);
    }
    return out;
}

void emit(const Options& o, const json& body)
{
    const std::string text = body.dump() + "\n";
    if (!o.out_file.empty()) {
        std::ofstream f(o.out_file);
        if (!f) fail(Errc::InvalidArgument, "cannot write " + o.out_file);
        f << text;
    }
    std::cout << text;
}

int report_error(const std::string& code, const std::string& message, int exit_code)
{
    std::cout << json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
    std::cerr << "error: " << code << ": " << message << "\n";
    return exit_code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"valdiff: valued differential fields at finite precision"};
    app.require_subcommand(1);
    Options o;
    if (const char* s = std::getenv("VALDIFF_SEED")) {
        try {
            o.seed = std::stoull(s);
        } catch (const std::exception&) {
            return report_error("cli.ParseError", "VALDIFF_SEED is not an integer", exit_parse);
        }
    }

    struct Command {
        const char* name;
        const char* help;
    };
    const std::vector<Command> commands = {
        {"eval", "evaluate P at a series (-P, -A)"},
        {"conj", "additive or multiplicative conjugate (-P, -A, --mode add|mul)"},
        {"ddeg", "dominant part and dominant degree (-P)"},
        {"ddeg-geq", "ddeg_{>=gamma} (-P, --gamma)"},
        {"vp", "v(P), or v_P(gamma) with --gamma (-P)"},
        {"coarsen", "coarse valuation of -A, or coarse ddeg of -P at --gamma (--delta)"},
        {"specialize", "specialize -A or -P and the derivation (--delta)"},
        {"cut-ddeg", "dominant degree along a cut (-P, -C)"},
        {"classify", "Delta-fluent / Delta-jammed classification (-C, --delta)"},
        {"dhsolve", "differential Hensel refinement (-P, --target)"},
        {"check", "field checks (--mode small|monotone|asymptotic|few-constants)"},
        {"selftest", "oracle equivalence suites on a seeded corpus (--seed, --count)"},
    };
    for (const auto& cmd : commands) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
        sub->add_option("-P,--poly", o.poly_file, "differential polynomial JSON");
        sub->add_option("-A,--series", o.series_file, "series JSON");
        sub->add_option("-C,--cut", o.cut_file, "cut JSON");
        sub->add_option("--config", o.config_file, "config JSON (rank, field, derivation)");
        sub->add_option("--out", o.out_file, "also write the JSON result to this file");
        sub->add_option("--delta", o.delta, "convex level k, 0 < k < rank");
        sub->add_option("--gamma", o.gamma, "exponent, e.g. 2 or 1,0");
        sub->add_option("--target", o.target, "target frontier exponent");
        sub->add_option("--mode", o.mode, "command mode");
        sub->add_option("--sample", o.sample, "sampling: general or monomial");
        sub->add_option("--seed", o.seed, "seed (default $VALDIFF_SEED or 1)");
        sub->add_option("--count", o.count, "sample or corpus size");
        sub->add_option("--max-steps", o.max_steps, "solver step budget");
        sub->add_option("--search-radius", o.search_radius, "gamma search radius");
        sub->callback([&o, sub] { o.command = sub->get_name(); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error("cli.ParseError", e.what(), exit_parse);
    }

    try {
        io::Config cfg;
        if (!o.config_file.empty()) cfg = io::config_from_json(read_json_file(o.config_file));
        Output out = cfg.field == "Q(x)" ? run<RationalFunctionField>(o, cfg) : run<RationalField>(o, cfg);
        emit(o, out.body);
        std::cerr << out.summary << "\n";
        return out.code;
    } catch (const Error& e) {
        const bool usage = e.code() == Errc::ParseError || e.code() == Errc::InvalidArgument;
        return report_error(e.qualified(), e.what(), usage ? exit_parse : exit_module);
    } catch (const json::exception& e) {
        return report_error("cli.ParseError", e.what(), exit_parse);
    }
}
