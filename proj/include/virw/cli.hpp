#pragma once

// Batch front-end. run() parses arguments, dispatches and returns the exit
// code: 0 all checks pass, 1 a check failed or nothing was found, 2 usage error.

#include "classify.hpp"
#include "lie.hpp"
#include "omega.hpp"
#include "report.hpp"
#include "verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace virw::cli {

namespace detail {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::string epsilon;
    long i = 0;
    long m = 0;
    std::string poly = "1";
    bool symbolic = false;
    std::string lambda, alpha, beta;
    int i_max = 3, m_max = 3, k_max = 5;
    int degree = -1;
    std::string mode = "symbolic";
    long probe_i_max = 2, probe_m_max = 2;
    long word_len = 2;
    std::string start = "t";
    std::string values;
    std::string output;
    std::string format = "text";
    std::string target;
    bool trace = false;
    bool export_table = false;
    std::size_t samples = 20;
    std::uint64_t seed = 20240607;
};

inline std::vector<Epsilon> epsilons(const Options& o, bool allow_both) {
    if (o.epsilon.empty()) {
        if (!allow_both) throw UsageError("--epsilon is required");
        return {Epsilon::plus, Epsilon::minus};
    }
    if (o.epsilon == "1" || o.epsilon == "+1") return {Epsilon::plus};
    if (o.epsilon == "-1") return {Epsilon::minus};
    throw UsageError("--epsilon must be 1 or -1, got " + o.epsilon);
}

inline std::optional<Rat> rational_flag(const std::string& text, const char* name) {
    if (text.empty()) return std::nullopt;
    try {
        return Rat::parse(text);
    } catch (const std::invalid_argument&) {
        throw UsageError(std::string("malformed rational for --") + name + ": " + text);
    }
}

inline ModuleParams params(const Options& o, Epsilon eps) {
    ModuleParams p = ModuleParams::symbolic(eps);
    if (auto l = rational_flag(o.lambda, "lambda")) {
        if (l->is_zero()) throw UsageError("--lambda must be nonzero");
        p = p.with_lambda(*l);
    }
    if (auto a = rational_flag(o.alpha, "alpha")) p = p.with_alpha(*a);
    if (auto b = rational_flag(o.beta, "beta")) p = p.with_beta(*b);
    return p;
}

inline Window window(const Options& o) {
    if (o.i_max < 0 || o.m_max < 0 || o.k_max < 0) throw UsageError("window bounds must be nonnegative");
    return {o.i_max, o.m_max, o.k_max};
}

inline TPoly poly_flag(const std::string& text, const char* name) {
    try {
        return TPoly::parse(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("malformed polynomial for --") + name + ": " + e.what());
    }
}

inline std::string yes(bool b) { return b ? "yes" : "no"; }

inline std::string quoted(const std::string& s) { return "\"" + s + "\""; }

// ---------------------------------------------------------------------------

inline int run_act(const Options& o, std::ostream& out) {
    const Epsilon eps = epsilons(o, false).front();
    const ModuleParams p = params(o, eps);
    if (o.export_table) {
        const auto table = export_action_table(p, window(o));
        if (o.format == "json") {
            out << table_to_json(table).dump(2) << '\n';
        } else {
            for (const auto& r : table)
                out << "epsilon=" << value(r.epsilon) << " i=" << r.i << " m=" << r.m << " k=" << r.k
                    << " result=" << quoted(r.result.str()) << '\n';
        }
        return 0;
    }
    if (o.m < 0) throw UsageError("--m must be nonnegative");
    const TPoly f = poly_flag(o.poly, "poly");
    const TPoly r = act(o.i, o.m, f, p);
    if (o.format == "json")
        out << nlohmann::json{{"epsilon", value(eps)}, {"i", o.i}, {"m", o.m}, {"poly", f.str()}, {"result", r.str()}}
                   .dump(2)
            << '\n';
    else
        out << r.str() << '\n';
    return 0;
}

inline VerificationReport run_suite(const std::string& suite, const Options& o) {
    const Window w = window(o);
    VerificationReport report;
    auto per_eps = [&](auto&& fn) {
        for (Epsilon eps : epsilons(o, true)) report.append(fn(eps));
    };
    if (suite == "axioms") {
        per_eps([&](Epsilon e) { return check_module_axiom(e, params(o, e), w); });
    } else if (suite == "oracle") {
        report = check_oracle_equivalence(w);
    } else if (suite == "m0") {
        per_eps([&](Epsilon e) { return check_m0_reduction(e, w); });
    } else if (suite == "expansion") {
        per_eps([&](Epsilon e) { return check_expansion(e, w); });
    } else if (suite == "closed-forms") {
        per_eps([&](Epsilon e) { return verify_closed_forms(e, w); });
    } else if (suite == "submodule") {
        per_eps([&](Epsilon e) { return check_submodule_and_quotient(e, w); });
    } else if (suite == "shift-iso") {
        per_eps([&](Epsilon e) { return check_shift_iso(e, w); });
    } else if (suite == "freeness") {
        per_eps([&](Epsilon e) { return check_freeness(e, params(o, e), w.k_max); });
    } else if (suite == "extract") {
        per_eps([&](Epsilon e) { return check_extraction_roundtrip(e, o.samples, o.seed); });
    } else if (suite == "identities") {
        report = check_identities(w.k_max);
    } else if (suite == "lie") {
        per_eps([&](Epsilon e) {
            VerificationReport r = check_antisymmetry(e, w.i_max, w.m_max);
            r.append(check_jacobi(e, w.i_max, w.m_max));
            r.append(check_virasoro_slice(e, w.i_max));
            r.append(check_generator_roundtrip(e, w.i_max, w.m_max));
            return r;
        });
    } else {
        throw UsageError("unknown suite " + suite);
    }
    return report;
}

inline int run_verify(const Options& o, std::ostream& out) {
    const VerificationReport report = run_suite(o.target, o);
    if (o.format == "json")
        out << report.to_json().dump(2) << '\n';
    else
        out << report.serialize();
    return report.passed() ? 0 : 1;
}

inline AlphaMode alpha_mode(const std::string& s) {
    if (s == "symbolic") return AlphaMode::symbolic;
    if (s == "alpha-zero" || s == "zero") return AlphaMode::zero;
    if (s == "sampled") return AlphaMode::sampled;
    throw UsageError("--mode must be symbolic, alpha-zero or sampled");
}

inline int print_system(const std::string& target, int degree, AlphaMode mode, const LinearSystem& sys,
                        const Options& o, std::ostream& out) {
    const SolutionSpace sol = solve_system(sys, mode);
    bool ok = sol.consistent && sys.findings.empty() && sol.samples_agree;
    nlohmann::json j;
    std::ostringstream text;
    text << "system target=" << target << " degree=" << degree << " mode=" << to_string(mode) << '\n';
    if (o.trace)
        for (const auto& line : sys.trace) text << "trace " << quoted(line) << '\n';
    text << "unknowns=";
    for (std::size_t q = 0; q < sys.unknowns.size(); ++q) text << (q ? "," : "") << sys.unknowns[q];
    text << '\n';
    for (std::size_t q = 0; q < sys.rows.size(); ++q) {
        text << "row index=" << q << " equation=" << quoted(sys.rows[q].str(sys.unknowns));
        if (o.trace) text << " provenance=" << quoted(sys.rows[q].provenance);
        text << '\n';
        j["rows"].push_back({{"equation", sys.rows[q].str(sys.unknowns)}, {"provenance", sys.rows[q].provenance}});
    }
    for (const auto& f : sys.findings) text << "finding " << quoted(f) << '\n';
    for (const auto& a : sys.assumptions) text << "assumption poly=" << quoted(a.str()) << " nonzero\n";
    text << "solution consistent=" << yes(sol.consistent) << '\n';
    for (const auto& [x, v] : sol.forced) text << "forced symbol=" << x << " value=" << quoted(v.str()) << '\n';
    for (const auto& x : sol.free) text << "free symbol=" << x << '\n';
    for (const auto& r : sol.relations) text << "relation equation=" << quoted(r) << '\n';
    for (const auto& g : sol.genericity) text << "genericity poly=" << quoted(g.str()) << " nonzero\n";
    for (const auto& s : sol.samples) text << "sample alpha=" << s.str() << '\n';
    if (!sol.samples.empty()) text << "samples_agree=" << yes(sol.samples_agree) << '\n';

    if (target == "wm1" && degree == 3) {
        const auto shown = displayed_n3_rows(mode);
        const bool equal = row_space_equal(sys.rows, shown, sys.unknowns);
        ok = ok && equal;
        text << "comparison displayed_rows=" << shown.size() << " row_space_equal=" << yes(equal) << '\n';
        for (std::size_t q = 0; q < sys.rows.size(); ++q)
            for (std::size_t d = 0; d < shown.size(); ++d)
                if (auto c = scaling_witness(sys.rows[q], shown[d]))
                    text << "witness row=" << q << " displayed=" << d << " factor=" << c->str() << '\n';
        j["row_space_equal"] = equal;
    }
    text << "status=" << (ok ? "pass" : "fail") << '\n';

    if (o.format == "json") {
        j["target"] = target;
        j["degree"] = degree;
        j["mode"] = to_string(mode);
        j["unknowns"] = sys.unknowns;
        j["findings"] = sys.findings;
        if (o.trace) j["trace"] = sys.trace;
        j["consistent"] = sol.consistent;
        for (const auto& [x, v] : sol.forced) j["forced"][x] = v.str();
        j["free"] = sol.free;
        j["relations"] = sol.relations;
        for (const auto& g : sol.genericity) j["genericity"].push_back(g.str());
        for (const auto& s : sol.samples) j["samples"].push_back(s.str());
        j["status"] = ok ? "pass" : "fail";
        out << j.dump(2) << '\n';
    } else {
        out << text.str();
    }
    return ok ? 0 : 1;
}

inline int run_sequence_steps(const Options& o, std::ostream& out) {
    const long n = o.degree < 0 ? kSeqMaxIndex : o.degree;
    if (n < 2 || n > kSeqMaxIndex) throw UsageError("--degree must be in [2, 12] for sequence-steps");
    const auto steps = derive_sequence_steps(n);
    bool ok = true;
    for (const auto& s : steps) {
        ok = ok && s.factor.has_value();
        out << "step label=" << quoted(s.label) << " determines=b" << s.determines
            << " combined=" << quoted(s.combined.str() + " = 0");
        if (s.factor) out << " factor=" << s.factor->str();
        out << '\n';
        if (o.trace)
            for (const auto& line : s.instantiated) out << "trace " << quoted(line) << '\n';
    }
    const auto cert = certify_sequence_steps(n);
    ok = ok && cert.geometric_satisfies && cert.forces_geometric;
    out << "certificate last_index=" << n << " geometric_satisfies=" << yes(cert.geometric_satisfies)
        << " forces_geometric=" << yes(cert.forces_geometric);
    if (cert.undetermined) out << " undetermined=b" << *cert.undetermined;
    out << "\nstatus=" << (ok ? "pass" : "fail") << '\n';
    return ok ? 0 : 1;
}

inline int run_classify(const Options& o, std::ostream& out) {
    if (o.target == "w1") {
        const int k = o.degree < 0 ? 2 : o.degree;
        return print_system("w1", k, AlphaMode::symbolic, build_w1_base_system(k), o, out);
    }
    if (o.target == "wm1") {
        const int n = o.degree < 0 ? 3 : o.degree;
        if (n < 2) throw UsageError("--degree must be at least 2 for wm1");
        const AlphaMode mode = alpha_mode(o.mode);
        return print_system("wm1", n, mode, build_wm1_system(n, mode), o, out);
    }
    if (o.target == "sequence-steps") return run_sequence_steps(o, out);
    throw UsageError("unknown classify target " + o.target);
}

inline int run_sequence(const Options& o, std::ostream& out) {
    if (o.values.empty()) throw UsageError("--values is required");
    std::vector<Rat> v;
    std::stringstream ss(o.values);
    for (std::string item; std::getline(ss, item, ',');) {
        auto r = rational_flag(item, "values");
        if (!r) throw UsageError("empty entry in --values");
        v.push_back(*r);
    }
    const SequenceResult r = check_sequence(SequenceVec(v));
    out << "sequence length=" << v.size() << " status=" << (r.pass ? "pass" : "fail");
    if (r.violation) out << " violation=" << r.violation->first << "," << r.violation->second;
    if (r.non_geometric) out << " non_geometric=" << *r.non_geometric;
    out << '\n';
    return r.pass ? 0 : 1;
}

inline int run_probe(const Options& o, std::ostream& out) {
    const Epsilon eps = epsilons(o, false).front();
    auto need = [&](const std::string& s, const char* name) {
        auto r = rational_flag(s, name);
        if (!r) throw UsageError(std::string("--") + name + " is required for probe");
        return *r;
    };
    const Rat l = need(o.lambda, "lambda"), a = need(o.alpha, "alpha"), b = need(o.beta, "beta");
    if (l.is_zero()) throw UsageError("--lambda must be nonzero");
    const TPoly start = poly_flag(o.start, "start");
    if (start.is_zero()) throw UsageError("--start must be nonzero");
    for (const auto& [k, c] : start.terms())
        if (!c.is_constant()) throw UsageError("--start must have rational coefficients");
    const ProbeBudget budget{o.probe_i_max, o.probe_m_max, o.word_len};
    if (budget.i_max < 0 || budget.m_max < 0 || budget.word_len < 0) throw UsageError("budget must be nonnegative");
    const ProbeResult r = simplicity_probe(eps, l, a, b, start, budget);
    if (o.format == "json")
        out << nlohmann::json{{"outcome", to_string(r.outcome)}, {"span_dimension", r.span_dimension},
                              {"depth", r.depth_reached}}
                   .dump(2)
            << '\n';
    else
        out << "probe epsilon=" << value(eps) << " outcome=" << to_string(r.outcome)
            << " span_dimension=" << r.span_dimension << " depth=" << r.depth_reached << '\n';
    return r.outcome == ProbeOutcome::not_found_within_budget ? 1 : 0;
}

}  // namespace detail

/// args excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using detail::Options;
    Options o;
    CLI::App app{"Exact computations in W(1), W(-1) and their rank-one modules", "virw"};
    app.require_subcommand(1);

    auto add_epsilon = [&](CLI::App* s) { s->add_option("--epsilon", o.epsilon, "1 or -1"); };
    auto add_params = [&](CLI::App* s) {
        auto* sym = s->add_flag("--symbolic", o.symbolic, "keep lambda, alpha, beta symbolic");
        auto* l = s->add_option("--lambda", o.lambda, "nonzero rational");
        auto* a = s->add_option("--alpha", o.alpha, "rational");
        auto* b = s->add_option("--beta", o.beta, "rational");
        for (auto* x : {l, a, b}) sym->excludes(x);
    };
    auto add_window = [&](CLI::App* s) {
        s->add_option("--i-max", o.i_max);
        s->add_option("--m-max", o.m_max);
        s->add_option("--k-max", o.k_max);
    };
    auto add_io = [&](CLI::App* s) {
        s->add_option("--output", o.output, "write the report to this file");
        s->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
    };

    auto* act_cmd = app.add_subcommand("act", "apply L[i,m] to a polynomial");
    add_epsilon(act_cmd);
    add_params(act_cmd);
    add_window(act_cmd);
    add_io(act_cmd);
    act_cmd->add_option("--i", o.i);
    act_cmd->add_option("--m", o.m);
    act_cmd->add_option("--poly", o.poly);
    act_cmd->add_flag("--export-table", o.export_table, "dump L[i,m].t^k over the window");

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("suite", o.target,
                           "axioms|oracle|m0|expansion|closed-forms|submodule|shift-iso|freeness|extract|identities|lie")
        ->required();
    add_epsilon(verify_cmd);
    add_params(verify_cmd);
    add_window(verify_cmd);
    add_io(verify_cmd);
    verify_cmd->add_option("--samples", o.samples);
    verify_cmd->add_option("--seed", o.seed);

    auto* classify_cmd = app.add_subcommand("classify", "build and solve a constraint system");
    classify_cmd->add_option("target", o.target, "w1|wm1|sequence-steps")->required();
    classify_cmd->add_option("--degree", o.degree);
    classify_cmd->add_option("--mode", o.mode, "symbolic|alpha-zero|sampled");
    classify_cmd->add_flag("--trace", o.trace);
    add_io(classify_cmd);

    auto* sequence_cmd = app.add_subcommand("sequence", "check a sequence b_0..b_N against the recurrence");
    sequence_cmd->add_option("--values", o.values, "comma separated rationals, b_0 first");
    add_io(sequence_cmd);

    auto* probe_cmd = app.add_subcommand("probe", "search for 1 in the span generated from a start vector");
    add_epsilon(probe_cmd);
    add_params(probe_cmd);
    add_io(probe_cmd);
    probe_cmd->add_option("--start", o.start);
    probe_cmd->add_option("--i-max", o.probe_i_max);
    probe_cmd->add_option("--m-max", o.probe_m_max);
    probe_cmd->add_option("--word-len", o.word_len);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    std::ostringstream buffer;
    int code = 0;
    try {
        if (act_cmd->parsed())
            code = detail::run_act(o, buffer);
        else if (verify_cmd->parsed())
            code = detail::run_verify(o, buffer);
        else if (classify_cmd->parsed())
            code = detail::run_classify(o, buffer);
        else if (sequence_cmd->parsed())
            code = detail::run_sequence(o, buffer);
        else
            code = detail::run_probe(o, buffer);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    if (o.output.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(o.output);
        if (!file) {
            err << "error: cannot write " << o.output << '\n';
            return 2;
        }
        file << buffer.str();
    }
    return code;
}

}  // namespace virw::cli
