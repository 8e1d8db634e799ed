// Copyright 2026 The hrsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

// Printed correction tables, a brute-force search that derives corrections
// independently, and row-by-row verification of the tables against it.

#include "hrsp/gates.hpp"
#include "hrsp/linalg.hpp"
#include "hrsp/pipeline.hpp"
#include "hrsp/states.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <optional>
#include <string>
#include <vector>

namespace hrsp {

enum class TableId { I, II, III };

inline std::string to_string(TableId t) {
    switch (t) {
        case TableId::I: return "I";
        case TableId::II: return "II";
        case TableId::III: return "III";
    }
    return "?";
}

inline TableId table_from_string(const std::string& s) {
    if (s == "I") return TableId::I;
    if (s == "II") return TableId::II;
    if (s == "III") return TableId::III;
    throw std::invalid_argument("unknown table '" + s + "'");
}

struct PrintedRow {
    int row;  // 1-based
    SenderOutcome sender;
    std::vector<std::string> collaborator_outcomes;  // collaborators_of(receiver) order
    std::string rule_text;
};

struct PrintedTable {
    TableId id;
    Party receiver;
    std::vector<PrintedRow> rows;
};

namespace detail {

inline const std::array<const char*, 16>& hadamard_pairs_first() {
    static const std::array<const char*, 16> b{"++", "+-", "-+", "--", "++", "++", "++", "+-",
                                               "+-", "+-", "-+", "-+", "-+", "--", "--", "--"};
    return b;
}
inline const std::array<const char*, 16>& hadamard_pairs_second() {
    static const std::array<const char*, 16> c{"++", "++", "++", "++", "+-", "-+", "--", "+-",
                                               "-+", "--", "+-", "-+", "--", "+-", "-+", "--"};
    return c;
}

inline PrintedTable hadamard_table(TableId id, SenderOutcome sender,
                                   const std::array<const char*, 16>& rules) {
    PrintedTable t{id, Party::David, {}};
    for (int k = 0; k < 16; ++k)
        t.rows.push_back({k + 1, sender,
                          {hadamard_pairs_first()[static_cast<std::size_t>(k)],
                           hadamard_pairs_second()[static_cast<std::size_t>(k)]},
                          rules[static_cast<std::size_t>(k)]});
    return t;
}

}  // namespace detail

/// Table I: Bob receives; Charlie and David (same label) measure computationally.
/// Tables II/III: David receives; Bob and Charlie measure in the Hadamard basis.
inline const PrintedTable& printed_table(TableId id) {
    using enum SenderOutcome;
    static const PrintedTable t1{TableId::I,
                                 Party::Bob,
                                 {
                                     {1, Zeta1, {"01", "01"}, "X_{2}CX_{2-1}"},
                                     {2, Zeta1, {"10", "10"}, "iY_{2}CX_{2-1}"},
                                     {3, Zeta1, {"00", "00"}, "X_{1}CX_{2-1}"},
                                     {4, Zeta1, {"11", "11"}, "-iY_{2}X_{1,2}CX_{2-1}"},
                                     {5, Zeta2, {"01", "01"}, "iY_{2}X_{2}CX_{2-1}"},
                                     {6, Zeta2, {"10", "10"}, "-iY_{1}RCX_{2-1}"},
                                     {7, Zeta2, {"00", "00"}, "Z_{2}X_{1,2}CX_{2-1}"},
                                     {8, Zeta2, {"11", "11"}, "iY_{1}X_{2}CX_{2-1}"},
                                 }};
    static const PrintedTable t2 = detail::hadamard_table(
        TableId::II, Zeta1,
        {"H_{1,2}X_{1}CX_{1-2}", "H_{1,2}Z_{1}RCX_{1-2}", "H_{1,2}Z_{2}RCX_{1-2}",
         "H_{1,2}iY_{1}CX_{1-2}", "H_{1,2}X_{1,2}CX_{1-2}", "H_{1,2}CX_{1-2}",
         "H_{1,2}RCX_{1-2}", "H_{1,2}Z_{1}CX_{1-2}", "H_{1,2}X_{1,2}Z_{1}CX_{1-2}",
         "H_{1,2}X_{1}Z_{1}CX_{1-2}", "H_{1,2}X_{2}Z_{2}RCX_{1-2}", "H_{1,2}iY_{2}X_{1}CX_{1-2}",
         "H_{1,2}X_{2}Z_{2}X_{1}X_{2}CX_{1-2}", "H_{1,2}iY_{1}X_{2}CX_{1-2}",
         "H_{1,2}X_{2}Z_{2}RCX_{1-2}", "H_{1,2}Z_{2}Z_{1}RCX_{1-2}"});
    static const PrintedTable t3 = detail::hadamard_table(
        TableId::III, Zeta2,
        {"H_{1,2}X_{1}Z_{1}X_{1}CX_{1-2}", "H_{1,2}X_{1,2}CX_{1-2}", "H_{1,2}X_{1,2}Z_{1}CX_{1-2}",
         "H_{1,2}X_{2}Z_{2}RCX_{1-2}", "H_{1,2}iY_{1}X_{1,2}CX_{1-2}", "H_{1,2}Z_{1}X_{2}CX_{1-2}",
         "H_{1,2}Z_{1}X_{1,2}CX_{1-2}", "H_{1,2}X_{1}CX_{1-2}", "H_{1,2}X_{2}CX_{1-2}",
         "H_{1,2}CX_{1-2}", "H_{1,2}iY_{1}CX_{1-2}", "H_{1,2}X_{2}Z_{1}CX_{1-2}",
         "H_{1,2}Z_{1}CX_{1-2}", "H_{1,2}Z_{1}X_{1}CX_{2-1}", "H_{1,2}X_{1}CX_{1-2}",
         "H_{1,2}Z_{2}CX_{1-2}"});
    switch (id) {
        case TableId::I: return t1;
        case TableId::II: return t2;
        case TableId::III: return t3;
    }
    return t1;
}

inline CorrectionRule printed_rule(TableId id, int row, GateOrder order = GateOrder::LeftToRight) {
    const auto& t = printed_table(id);
    if (row < 1 || row > static_cast<int>(t.rows.size()))
        throw std::out_of_range("printed_rule: table " + to_string(id) + " has no row " +
                                std::to_string(row));
    const auto& r = t.rows[static_cast<std::size_t>(row - 1)];
    return CorrectionRule{t.receiver, r.sender, r.collaborator_outcomes,
                          parse_gate_string(r.rule_text, t.receiver, order), RuleSource::Published,
                          r.rule_text};
}

/// Parameter points at which a correction must work.
inline const std::array<TargetSpec, 2>& test_points() {
    static const std::array<TargetSpec, 2> p{TargetSpec::equal_weights(), TargetSpec{0.6, 0.8}};
    return p;
}

inline constexpr double kCorrectTol = 1e-10;

// ---------------------------------------------------------------------------
// Oracle

inline const std::vector<GateToken>& oracle_vocabulary() {
    static const std::vector<GateToken> v{
        {Gate::H, {1}}, {Gate::H, {2}}, {Gate::X, {1}}, {Gate::X, {2}},  {Gate::Y, {1}},
        {Gate::Y, {2}}, {Gate::Z, {1}}, {Gate::Z, {2}}, {Gate::CX, {1, 2}}, {Gate::CX, {2, 1}}};
    return v;
}

struct OracleOutcome {
    std::optional<CorrectionRule> rule;
    int max_depth_searched = 0;
    std::size_t sequences_tried = 0;
    bool branch_empty = false;  // the branch has zero probability at some parameter point
};

namespace detail {

using M4 = Eigen::Matrix4cd;

struct OracleSearch {
    std::vector<M4> gates;
    std::vector<M4> rho;          // receiver state per point
    std::vector<Eigen::Vector4cd> xi;
    std::size_t tried = 0;
    std::vector<int> path;

    bool accept(const std::vector<M4>& states) const {
        for (std::size_t p = 0; p < states.size(); ++p) {
            const double f = std::sqrt(std::max(0.0, xi[p].dot(states[p] * xi[p]).real()));
            if (f < 1.0 - kCorrectTol) return false;
        }
        return true;
    }

    // Lexicographic DFS over sequences of exactly `depth` tokens.
    bool dfs(const std::vector<M4>& states, int depth) {
        if (static_cast<int>(path.size()) == depth) {
            ++tried;
            return accept(states);
        }
        std::vector<M4> next(states.size());
        for (int g = 0; g < static_cast<int>(gates.size()); ++g) {
            for (std::size_t p = 0; p < states.size(); ++p)
                next[p] = gates[static_cast<std::size_t>(g)] * states[p] *
                          gates[static_cast<std::size_t>(g)].adjoint();
            path.push_back(g);
            if (dfs(next, depth)) return true;
            path.pop_back();
        }
        return false;
    }
};

}  // namespace detail

/// Shortest (then lexicographically first) sequence over oracle_vocabulary() that
/// maps the noiseless receiver state to the target with fidelity >= 1 - 1e-10 at
/// every point. Depths 0..5 are searched first, then depth 6.
inline OracleOutcome oracle_find_correction(Party receiver, SenderOutcome sender,
                                            const std::vector<std::string>& outcomes,
                                            const std::vector<TargetSpec>& points,
                                            int max_depth = 6) {
    OracleOutcome out;
    detail::OracleSearch search;
    for (const auto& g : oracle_vocabulary()) search.gates.push_back(gate_matrix(g));
    for (const auto& pt : points) {
        const auto recv = noiseless_receiver_state(receiver, sender, outcomes, pt);
        if (!recv) {
            out.branch_empty = true;
            return out;
        }
        search.rho.push_back(*recv);
        search.xi.push_back(target_state(pt).amplitudes());
    }
    for (int depth = 0; depth <= max_depth; ++depth) {
        search.path.clear();
        out.max_depth_searched = depth;
        if (search.dfs(search.rho, depth)) {
            std::vector<GateToken> seq;
            for (int g : search.path) seq.push_back(oracle_vocabulary()[static_cast<std::size_t>(g)]);
            out.rule = CorrectionRule{receiver, sender, outcomes, seq, RuleSource::OracleDerived,
                                      to_string(seq)};
            break;
        }
    }
    out.sequences_tried = search.tried;
    return out;
}

inline OracleOutcome oracle_find_correction(Party receiver, SenderOutcome sender,
                                            const std::vector<std::string>& outcomes) {
    return oracle_find_correction(receiver, sender, outcomes,
                                  std::vector<TargetSpec>(test_points().begin(), test_points().end()));
}

// ---------------------------------------------------------------------------
// Table verification

enum class Verdict { Confirmed, PhaseEquivalent, Mismatch };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Confirmed: return "confirmed";
        case Verdict::PhaseEquivalent: return "phase-equivalent";
        case Verdict::Mismatch: return "mismatch";
    }
    return "?";
}

/// How the printed unitary relates to the oracle's.
enum class UnitaryRelation { Identical, GlobalPhase, BranchSubspaceOnly, Different, NoOracle };

inline std::string to_string(UnitaryRelation r) {
    switch (r) {
        case UnitaryRelation::Identical: return "identical";
        case UnitaryRelation::GlobalPhase: return "global-phase";
        case UnitaryRelation::BranchSubspaceOnly: return "branch-subspace-only";
        case UnitaryRelation::Different: return "different";
        case UnitaryRelation::NoOracle: return "no-oracle";
    }
    return "?";
}

struct RowReport {
    std::string table;
    int row = 0;
    Party receiver = Party::Bob;
    SenderOutcome sender = SenderOutcome::Zeta1;
    std::vector<std::string> collaborator_outcomes;
    std::string printed_rule;        // empty for generated tables
    std::array<std::optional<double>, 2> printed_fidelity;
    std::array<std::optional<double>, 2> reversed_fidelity;  // printed string read right-to-left
    std::optional<std::string> oracle_rule;
    std::array<std::optional<double>, 2> oracle_fidelity;
    std::array<double, 2> branch_probability{0, 0};
    UnitaryRelation relation = UnitaryRelation::NoOracle;
    double aligned_diff = 0.0;  // max|O_oracle - e^{i theta} O_printed|
    Verdict verdict = Verdict::Mismatch;
    std::string note;
    std::vector<int> duplicate_rows;  // other rows printing the same rule
};

struct TableReport {
    std::string table;
    Party receiver;
    std::vector<RowReport> rows;

    std::size_t count(Verdict v) const {
        std::size_t n = 0;
        for (const auto& r : rows) n += r.verdict == v;
        return n;
    }
    bool fully_confirmed() const { return count(Verdict::Mismatch) == 0; }
};

namespace detail {

inline bool passes(const std::array<std::optional<double>, 2>& f) {
    return f[0] && f[1] && *f[0] >= 1.0 - kCorrectTol && *f[1] >= 1.0 - kCorrectTol;
}

inline std::array<std::optional<double>, 2> fidelities_at_points(const CorrectionRule& rule) {
    return {noiseless_fidelity(rule, test_points()[0]), noiseless_fidelity(rule, test_points()[1])};
}

inline std::array<double, 2> probabilities_at_points(const CorrectionRule& rule) {
    std::array<double, 2> p{};
    for (std::size_t k = 0; k < 2; ++k) {
        const auto meas = make_scenario(rule.receiver, rule.sender_outcome,
                                        rule.collaborator_outcomes, test_points()[k]);
        p[k] = branch_probability(resource_density(), build_measurement_operator(meas));
    }
    return p;
}

// Do two corrections act identically (up to one phase) on the receiver's
// branch states at both parameter points?
inline bool agree_on_branch(const Matrix& a, const Matrix& b, const CorrectionRule& rule) {
    std::vector<Vector> vs;
    for (const auto& pt : test_points()) {
        const auto recv = noiseless_receiver_state(rule.receiver, rule.sender_outcome,
                                                   rule.collaborator_outcomes, pt);
        if (!recv) return false;
        const auto eig = hermitian_eigen(*recv);
        vs.push_back(eig.vectors.col(eig.vectors.cols() - 1));
    }
    // Each branch state may pick up its own phase.
    for (const auto& v : vs)
        if (align_global_phase(a * v, b * v).max_diff > 1e-10) return false;
    return true;
}

}  // namespace detail

inline RowReport verify_row(const std::string& table, const CorrectionRule& printed, int row,
                            const std::string& printed_text) {
    RowReport r;
    r.table = table;
    r.row = row;
    r.receiver = printed.receiver;
    r.sender = printed.sender_outcome;
    r.collaborator_outcomes = printed.collaborator_outcomes;
    r.printed_rule = printed_text;
    r.branch_probability = detail::probabilities_at_points(printed);
    r.printed_fidelity = detail::fidelities_at_points(printed);

    CorrectionRule reversed = printed;
    std::reverse(reversed.gates.begin(), reversed.gates.end());
    r.reversed_fidelity = detail::fidelities_at_points(reversed);

    const auto oracle =
        oracle_find_correction(printed.receiver, printed.sender_outcome, printed.collaborator_outcomes);
    if (oracle.rule) {
        r.oracle_rule = oracle.rule->text;
        r.oracle_fidelity = detail::fidelities_at_points(*oracle.rule);
        const Matrix po = correction_unitary(printed), oo = correction_unitary(*oracle.rule);
        const auto al = align_global_phase(oo, po);
        r.aligned_diff = al.max_diff;
        if (max_abs_diff(oo, po) < 1e-10) r.relation = UnitaryRelation::Identical;
        else if (al.max_diff < 1e-10) r.relation = UnitaryRelation::GlobalPhase;
        else if (detail::agree_on_branch(oo, po, printed)) r.relation = UnitaryRelation::BranchSubspaceOnly;
        else r.relation = UnitaryRelation::Different;
    } else {
        r.note = oracle.branch_empty ? "branch has zero probability at a test point"
                                     : "oracle found no sequence up to depth " +
                                           std::to_string(oracle.max_depth_searched);
    }

    if (detail::passes(r.printed_fidelity)) {
        r.verdict = r.relation == UnitaryRelation::GlobalPhase ? Verdict::PhaseEquivalent
                                                               : Verdict::Confirmed;
    } else {
        r.verdict = Verdict::Mismatch;
        if (detail::passes(r.reversed_fidelity)) r.note = "passes only when read right-to-left";
        else if (r.note.empty()) r.note = "printed rule fails under both reading orders";
    }
    return r;
}

/// Row-by-row check of a printed table. Rows run concurrently; each oracle
/// search is sequential.
inline TableReport verify_table(TableId id) {
    const auto& t = printed_table(id);
    std::vector<std::future<RowReport>> jobs;
    for (const auto& row : t.rows)
        jobs.push_back(std::async(std::launch::async, [id, &row] {
            return verify_row(to_string(id), printed_rule(id, row.row), row.row, row.rule_text);
        }));
    TableReport rep{to_string(id), t.receiver, {}};
    for (auto& j : jobs) rep.rows.push_back(j.get());
    for (auto& a : rep.rows)
        for (const auto& b : rep.rows)
            if (a.row != b.row && a.printed_rule == b.printed_rule) a.duplicate_rows.push_back(b.row);
    return rep;
}

// ---------------------------------------------------------------------------
// Generated tables

/// Outcome labels for a Hadamard-basis table, in the printed tables' row order.
inline std::vector<std::vector<std::string>> hadamard_outcome_rows() {
    std::vector<std::vector<std::string>> out;
    for (std::size_t k = 0; k < 16; ++k)
        out.push_back({detail::hadamard_pairs_first()[k], detail::hadamard_pairs_second()[k]});
    return out;
}

/// Oracle-derived correction table for Charlie (Bob and David measure in the
/// Hadamard basis), for one sender outcome.
inline TableReport generate_charlie_table(SenderOutcome sender) {
    const std::string name = sender == SenderOutcome::Zeta1 ? "charlie-zeta1" : "charlie-zeta2";
    const auto rows = hadamard_outcome_rows();
    std::vector<std::future<RowReport>> jobs;
    for (std::size_t k = 0; k < rows.size(); ++k)
        jobs.push_back(std::async(std::launch::async, [&, k] {
            RowReport r;
            r.table = name;
            r.row = static_cast<int>(k) + 1;
            r.receiver = Party::Charlie;
            r.sender = sender;
            r.collaborator_outcomes = rows[k];
            const auto oracle = oracle_find_correction(Party::Charlie, sender, rows[k]);
            if (oracle.rule) {
                r.oracle_rule = oracle.rule->text;
                r.oracle_fidelity = detail::fidelities_at_points(*oracle.rule);
                r.branch_probability = detail::probabilities_at_points(*oracle.rule);
                r.verdict = detail::passes(r.oracle_fidelity) ? Verdict::Confirmed : Verdict::Mismatch;
            } else {
                r.verdict = Verdict::Mismatch;
                r.note = oracle.branch_empty ? "branch has zero probability at a test point"
                                             : "unresolvable up to depth 6";
            }
            return r;
        }));
    TableReport rep{name, Party::Charlie, {}};
    for (auto& j : jobs) rep.rows.push_back(j.get());
    return rep;
}

/// Oracle-derived rule for a Charlie row (1..16) as a usable CorrectionRule.
inline CorrectionRule charlie_rule(SenderOutcome sender, int row) {
    const auto rows = hadamard_outcome_rows();
    if (row < 1 || row > 16) throw std::out_of_range("charlie_rule: row must be 1..16");
    const auto o = oracle_find_correction(Party::Charlie, sender, rows[static_cast<std::size_t>(row - 1)]);
    if (!o.rule) throw std::runtime_error("charlie_rule: no correction found");
    return *o.rule;
}

}  // namespace hrsp
