#pragma once

/**
 * @file verify.hpp
 * @brief Machine checks for the module families.
 *
 * Module axioms over the whole grid, the t-submodule at alpha = 0,
 * cross-checks between the different forms of the actions, the number
 * sequence relation, the alternating-sum identities used for W(-1), and a
 * semi-decision probe for simplicity.
 */

#include "coef_poly.hpp"
#include "lie.hpp"
#include "omega.hpp"
#include "report.hpp"
#include "tpoly.hpp"

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace virw {

/// Memoized L[i,m].t^k for one parameter set. Safe for concurrent use.
class ActionCache {
public:
    explicit ActionCache(ModuleParams p) : params_(std::move(p)) {}

    const TPoly& on_monomial(long i, long m, unsigned k) const {
        const Key key{i, m, k};
        {
            std::lock_guard lock(mutex_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        TPoly v = act(i, m, TPoly::monomial(k), params_);
        std::lock_guard lock(mutex_);
        return cache_.try_emplace(key, std::move(v)).first->second;
    }

    TPoly apply(long i, long m, const TPoly& f) const {
        TPoly r;
        for (const auto& [k, c] : f.terms()) r += on_monomial(i, m, k) * c;
        return r;
    }

    TPoly apply(const LieElt& x, const TPoly& f) const {
        TPoly r;
        for (const auto& [idx, c] : x.terms()) r += apply(idx.i, idx.m, f) * CoefPoly(c);
        return r;
    }

    const ModuleParams& params() const { return params_; }

private:
    using Key = std::tuple<long, long, unsigned>;
    ModuleParams params_;
    mutable std::mutex mutex_;
    mutable std::map<Key, TPoly> cache_;
};

/**
 * For every (L[i,m], L[j,n]) in the window and k <= k_max:
 *   [L[i,m], L[j,n]].t^k == L[i,m].(L[j,n].t^k) - L[j,n].(L[i,m].t^k).
 * All pairs are checked, not only generators.
 */
inline VerificationReport check_module_axiom(Epsilon eps, const ModuleParams& params, const Window& w) {
    if (params.epsilon() != eps) throw std::invalid_argument("params epsilon does not match");
    struct Cell {
        long i, m, j, n, k;
    };
    std::vector<Cell> cells;
    for (long i = -w.i_max; i <= w.i_max; ++i)
        for (long m = 0; m <= w.m_max; ++m)
            for (long j = -w.i_max; j <= w.i_max; ++j)
                for (long n = 0; n <= w.m_max; ++n)
                    for (long k = 0; k <= w.k_max; ++k) cells.push_back({i, m, j, n, k});

    ActionCache cache(params);
    auto records = parallel_map<ReportRecord>(cells.size(), [&](std::size_t q) {
        const Cell& c = cells[q];
        const TPoly tk = TPoly::monomial(static_cast<unsigned>(c.k));
        const LieElt br = bracket_basis(eps, {c.i, c.m}, {c.j, c.n});
        TPoly lhs = cache.apply(br, tk);
        TPoly rhs = cache.apply(c.i, c.m, cache.apply(c.j, c.n, tk)) -
                    cache.apply(c.j, c.n, cache.apply(c.i, c.m, tk));
        TPoly d = lhs - rhs;
        return ReportRecord{"module_axiom",
                            value(eps),
                            {{"i", c.i}, {"m", c.m}, {"j", c.j}, {"n", c.n}, {"k", c.k}},
                            d.is_zero(),
                            d.is_zero() ? "" : d.str()};
    });
    VerificationReport report;
    for (auto& r : records) report.add(std::move(r));
    return report;
}

/**
 * At alpha = 0 (lambda, beta symbolic): t Omega is invariant, i.e.
 * L[i,m].t^{k+1} has zero constant term, and the quotient by it is the
 * trivial module, i.e. L[i,m].1 has zero constant term.
 */
inline VerificationReport check_submodule_and_quotient(Epsilon eps, const Window& w) {
    const ModuleParams p = ModuleParams::symbolic(eps).with_alpha(Rat(0));
    ActionCache cache(p);
    VerificationReport report;
    for (long i = -w.i_max; i <= w.i_max; ++i) {
        for (long m = 0; m <= w.m_max; ++m) {
            for (long k = 0; k <= w.k_max; ++k) {
                CoefPoly c = cache.on_monomial(i, m, static_cast<unsigned>(k + 1)).constant_term();
                report.add({"submodule_invariance", value(eps), {{"i", i}, {"m", m}, {"k", k}},
                            c.is_zero(), c.is_zero() ? "" : c.str()});
            }
            CoefPoly c = cache.on_monomial(i, m, 0).constant_term();
            report.add({"quotient_trivial", value(eps), {{"i", i}, {"m", m}}, c.is_zero(),
                        c.is_zero() ? "" : c.str()});
        }
    }
    return report;
}

/// act_wm1 against its derivative form, symbolically.
inline VerificationReport check_oracle_equivalence(const Window& w) {
    const ModuleParams p = ModuleParams::symbolic(Epsilon::minus);
    VerificationReport report;
    for (long i = -w.i_max; i <= w.i_max; ++i)
        for (long m = 0; m <= w.m_max; ++m)
            for (long k = 0; k <= w.k_max; ++k) {
                const TPoly tk = TPoly::monomial(static_cast<unsigned>(k));
                TPoly d = act_wm1(i, m, tk, p) - act_wm1_deriv(i, m, tk, p);
                report.add({"oracle_equivalence", -1, {{"i", i}, {"m", m}, {"k", k}}, d.is_zero(),
                            d.is_zero() ? "" : d.str()});
            }
    return report;
}

/// L[i,0] acts exactly as the Vir module on t^k.
inline VerificationReport check_m0_reduction(Epsilon eps, const Window& w) {
    const ModuleParams p = ModuleParams::symbolic(eps);
    VerificationReport report;
    for (long i = -w.i_max; i <= w.i_max; ++i)
        for (long k = 0; k <= w.k_max; ++k) {
            const TPoly tk = TPoly::monomial(static_cast<unsigned>(k));
            TPoly d = act(i, 0, tk, p) - act_vir(i, tk, p);
            report.add({"m0_reduction", value(eps), {{"i", i}, {"k", k}}, d.is_zero(),
                        d.is_zero() ? "" : d.str()});
        }
    return report;
}

/// L[0,0].t^k = t^{k+1}: the module is free of rank one over Q[L[0,0]].
inline VerificationReport check_freeness(Epsilon eps, const ModuleParams& p, int k_max) {
    VerificationReport report;
    for (long k = 0; k <= k_max; ++k) {
        const TPoly tk = TPoly::monomial(static_cast<unsigned>(k));
        TPoly d = act(0, 0, tk, p.with_epsilon(eps)) - TPoly::t() * tk;
        report.add({"freeness", value(eps), {{"k", k}}, d.is_zero(), d.is_zero() ? "" : d.str()});
    }
    return report;
}

/// The action on t^k equals the expansion through the values on 1.
inline VerificationReport check_expansion(Epsilon eps, const Window& w) {
    const ModuleParams p = ModuleParams::symbolic(eps);
    ActionCache cache(p);
    ActionOracle on_one([&cache](long i, long m, const TPoly& f) { return cache.apply(i, m, f); });
    VerificationReport report;
    for (long i = -w.i_max; i <= w.i_max; ++i)
        for (long m = 0; m <= w.m_max; ++m)
            for (long k = 0; k <= w.k_max; ++k) {
                TPoly d = cache.on_monomial(i, m, static_cast<unsigned>(k)) -
                          expansion_rhs(eps, i, m, static_cast<unsigned>(k), on_one);
                report.add({"expansion", value(eps), {{"i", i}, {"m", m}, {"k", k}}, d.is_zero(),
                            d.is_zero() ? "" : d.str()});
            }
    return report;
}

/// A sequence beta_0, ..., beta_N with beta_0 = 1.
class SequenceVec {
public:
    explicit SequenceVec(std::vector<Rat> values) : values_(std::move(values)) {
        if (values_.empty() || !values_.front().is_one())
            throw std::invalid_argument("sequence must start with beta_0 = 1");
    }
    const std::vector<Rat>& values() const { return values_; }
    std::size_t last_index() const { return values_.size() - 1; }

private:
    std::vector<Rat> values_;
};

struct SequenceResult {
    bool pass = true;
    std::optional<std::pair<long, long>> violation;  // first (m, n) breaking the relation
    std::optional<long> non_geometric;                // first m with beta_m != beta_1^m
};

/// Residual of b_{m+n} + (n-m) b_{m+n+1} = b_n b_m + n b_m b_{n+1} - m b_n b_{m+1}.
inline Rat sequence_residual(const std::vector<Rat>& b, long m, long n) {
    auto at = [&](long q) { return b.at(static_cast<std::size_t>(q)); };
    return at(m + n) + Rat(n - m) * at(m + n + 1) -
           (at(n) * at(m) + Rat(n) * at(m) * at(n + 1) - Rat(m) * at(n) * at(m + 1));
}

/// Checks the relation at every (m, n) with m+n+1 <= N, in order of
/// increasing m+n then m, and asserts the geometric conclusion.
inline SequenceResult check_sequence(const SequenceVec& seq) {
    const auto& b = seq.values();
    const long last = static_cast<long>(seq.last_index());
    SequenceResult result;
    for (long total = 0; total + 1 <= last && !result.violation; ++total)
        for (long m = 0; m <= total; ++m)
            if (!sequence_residual(b, m, total - m).is_zero()) {
                result.violation = std::make_pair(m, total - m);
                break;
            }
    if (last >= 1)
        for (long m = 0; m <= last; ++m)
            if (b[static_cast<std::size_t>(m)] != b[1].pow(m)) {
                result.non_geometric = m;
                break;
            }
    result.pass = !result.violation && !result.non_geometric;
    return result;
}

/**
 * For 0 <= k <= k_max:
 *   sum_{s+r=k} (-1)^{s+r}     = (-1)^k (k+1)
 *   sum_{s+r=k} (-1)^{s+r+1}   = (-1)^{k+1} (k+1)
 *   sum_{s+r=k} (-1)^{s+r+1}(r+1) + sum_{s+r=k+1} (-1)^{s+r} r = (-1)^{k+1}(k+1)(k+2)
 * and Pascal's rule C(n-1,m) + C(n-1,m-1) = C(n,m) for 1 <= m < n <= k_max.
 */
inline VerificationReport check_identities(int k_max) {
    auto sign = [](long e) { return e % 2 == 0 ? 1L : -1L; };
    VerificationReport report;
    auto record = [&](const char* id, std::vector<std::pair<std::string, long>> point, long lhs, long rhs) {
        report.add({id, 0, std::move(point), lhs == rhs,
                    lhs == rhs ? "" : std::to_string(lhs) + " != " + std::to_string(rhs)});
    };
    for (long k = 0; k <= k_max; ++k) {
        long first = 0, second = 0, third = 0;
        for (long s = 0; s <= k; ++s) {
            const long r = k - s;
            first += sign(s + r);
            second += sign(s + r + 1);
            third += sign(s + r + 1) * (r + 1);
        }
        for (long s = 0; s <= k + 1; ++s) {
            const long r = k + 1 - s;
            third += sign(s + r) * r;
        }
        record("alternating_sum", {{"k", k}}, first, sign(k) * (k + 1));
        record("alternating_sum_negated", {{"k", k}}, second, sign(k + 1) * (k + 1));
        record("weighted_alternating_sum", {{"k", k}}, third, sign(k + 1) * (k + 1) * (k + 2));
    }
    for (long n = 2; n <= k_max; ++n)
        for (long m = 1; m < n; ++m) {
            Rat d = binom(n - 1, m) + binom(n - 1, m - 1) - binom(n, m);
            report.add({"pascal", 0, {{"n", n}, {"m", m}}, d.is_zero(), d.is_zero() ? "" : d.str()});
        }
    return report;
}

/// Random admissible (lambda, alpha, beta) with small numerators and denominators.
inline std::vector<std::array<Rat, 3>> random_triples(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
    std::vector<std::array<Rat, 3>> out;
    while (out.size() < count) {
        Rat l(num(rng), den(rng)), a(num(rng), den(rng)), b(num(rng), den(rng));
        if (l.is_zero()) continue;
        out.push_back({l, a, b});
    }
    return out;
}

/// Exports a table from each random module, extracts its parameters from the table alone
/// and requires the original triple back.
inline VerificationReport check_extraction_roundtrip(Epsilon eps, std::size_t count, std::uint64_t seed,
                                                     const Window& table_window = Window(2, 2, 2)) {
    VerificationReport report;
    const auto triples = random_triples(count, seed);
    for (std::size_t q = 0; q < triples.size(); ++q) {
        const auto& [l, a, b] = triples[q];
        const auto table = export_action_table(ModuleParams::numeric(eps, l, a, b), table_window);
        ReportRecord r{"extract_roundtrip", value(eps), {{"sample", static_cast<long>(q)}}, true, ""};
        try {
            ExtractedParams got = extract_params(table_oracle(table), eps, table_window);
            r.pass = got == ExtractedParams{l, a, b};
            if (!r.pass) r.diff = "got (" + got.lambda.str() + "," + got.alpha.str() + "," + got.beta.str() + ")";
        } catch (const ExtractionError& e) {
            r.pass = false;
            r.diff = e.what();
        }
        report.add(std::move(r));
    }
    return report;
}

struct ProbeBudget {
    long i_max = 2;
    long m_max = 2;
    long word_len = 2;
};

enum class ProbeOutcome { found, not_found_within_budget, certified_contained_in_t_submodule };

inline std::string to_string(ProbeOutcome o) {
    switch (o) {
        case ProbeOutcome::found: return "found";
        case ProbeOutcome::not_found_within_budget: return "not-found-within-budget";
        case ProbeOutcome::certified_contained_in_t_submodule: return "certified-contained-in-tSubmodule";
    }
    return "unknown";
}

struct ProbeResult {
    ProbeOutcome outcome = ProbeOutcome::not_found_within_budget;
    std::size_t span_dimension = 0;
    long depth_reached = 0;
};

namespace detail {

/// Echelon basis of a Q-subspace of Q[t]; each row is normalized so its
/// highest nonzero degree carries coefficient 1.
class SpanBasis {
public:
    /// Adds v; returns the reduced new row, or nullopt if v was already in the span.
    std::optional<std::vector<Rat>> insert(std::vector<Rat> v) {
        reduce(v);
        int top = highest(v);
        if (top < 0) return std::nullopt;
        Rat lead = v[static_cast<std::size_t>(top)];
        for (auto& x : v) x /= lead;
        rows_.emplace(top, v);
        return v;
    }

    bool contains(std::vector<Rat> v) const {
        reduce(v);
        return highest(v) < 0;
    }

    std::size_t dimension() const { return rows_.size(); }
    const std::map<int, std::vector<Rat>>& rows() const { return rows_; }

private:
    static int highest(const std::vector<Rat>& v) {
        for (int d = static_cast<int>(v.size()) - 1; d >= 0; --d)
            if (!v[static_cast<std::size_t>(d)].is_zero()) return d;
        return -1;
    }

    void reduce(std::vector<Rat>& v) const {
        for (int d = highest(v); d >= 0; d = highest(v)) {
            auto it = rows_.find(d);
            if (it == rows_.end()) return;
            const Rat f = v[static_cast<std::size_t>(d)];
            const auto& row = it->second;
            if (v.size() < row.size()) v.resize(row.size());
            for (std::size_t q = 0; q < row.size(); ++q) v[q] -= f * row[q];
        }
    }

    std::map<int, std::vector<Rat>> rows_;
};

inline std::vector<Rat> dense(const TPoly& f) {
    std::vector<Rat> v(static_cast<std::size_t>(std::max(f.degree(), 0) + 1));
    for (const auto& [k, c] : f.terms()) {
        if (!c.is_constant()) throw std::invalid_argument("probe vectors must be numeric: " + f.str());
        v[k] = c.constant_term();
    }
    return v;
}

inline TPoly sparse(const std::vector<Rat>& v) {
    TPoly f;
    for (std::size_t k = 0; k < v.size(); ++k) f.add_term(static_cast<unsigned>(k), CoefPoly(v[k]));
    return f;
}

}  // namespace detail

/**
 * Semi-decision for reaching the constant 1 from `start`. Builds the
 * Q-span of all words of length <= word_len in {L[i,m] : |i| <= i_max,
 * m <= m_max} applied to start, breadth first in grid order, and reports
 * whether 1 lies in it. With alpha = 0 and start in tQ[t] it instead
 * certifies that the orbit stays inside tQ[t]. A not-found result is
 * inconclusive.
 */
inline ProbeResult simplicity_probe(Epsilon eps, const Rat& lambda, const Rat& alpha, const Rat& beta,
                                    const TPoly& start, const ProbeBudget& budget = {}) {
    if (start.is_zero()) throw std::invalid_argument("probe start vector must be nonzero");
    if (budget.i_max < 0 || budget.m_max < 0 || budget.word_len < 0)
        throw std::invalid_argument("probe budget must be nonnegative");
    const ModuleParams p = ModuleParams::numeric(eps, lambda, alpha, beta);
    ActionCache cache(p);

    detail::SpanBasis span;
    std::vector<TPoly> frontier;
    if (auto row = span.insert(detail::dense(start))) frontier.push_back(detail::sparse(*row));

    const bool in_t_submodule = alpha.is_zero() && start.constant_term().is_zero();
    ProbeResult result;
    const std::vector<Rat> one{Rat(1)};
    for (long depth = 1; depth <= budget.word_len; ++depth) {
        if (!in_t_submodule && span.contains(one)) break;
        std::vector<TPoly> next;
        for (const auto& v : frontier)
            for (long i = -budget.i_max; i <= budget.i_max; ++i)
                for (long m = 0; m <= budget.m_max; ++m)
                    if (auto row = span.insert(detail::dense(cache.apply(i, m, v))))
                        next.push_back(detail::sparse(*row));
        frontier = std::move(next);
        result.depth_reached = depth;
        if (frontier.empty()) break;
    }
    result.span_dimension = span.dimension();

    if (in_t_submodule) {
        bool stays = true;
        for (const auto& [d, row] : span.rows()) stays = stays && row.front().is_zero();
        int top = 0;
        for (const auto& [d, row] : span.rows()) top = std::max(top, d);
        const bool invariant =
            check_submodule_and_quotient(eps, Window(static_cast<int>(budget.i_max),
                                                     static_cast<int>(budget.m_max), top))
                .passed();
        if (stays && invariant && !span.contains(one)) {
            result.outcome = ProbeOutcome::certified_contained_in_t_submodule;
            return result;
        }
        throw std::logic_error("alpha = 0 orbit left tQ[t]; the submodule check is broken");
    }
    result.outcome = span.contains(one) ? ProbeOutcome::found : ProbeOutcome::not_found_within_budget;
    return result;
}

}  // namespace virw
