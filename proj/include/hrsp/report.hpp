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

// Plain-text output for sweeps and verification reports.

#include "hrsp/pipeline.hpp"
#include "hrsp/protocol.hpp"
#include "hrsp/states.hpp"

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

namespace hrsp {

inline std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::string format_general(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline std::string format_optional(const std::optional<double>& v, int digits = 12) {
    return v ? format_fixed(*v, digits) : std::string("nan");
}

inline constexpr const char* kCsvHeader = "noise,receiver,table,row,eta,fidelity";

/// One header line, then one row per grid point. Empty branches print "nan".
inline void write_csv(std::ostream& os, const SweepResult& r) {
    os << kCsvHeader << '\n';
    for (const auto& s : r.samples)
        os << to_string(r.config.noise) << ',' << to_string(r.config.receiver()) << ','
           << r.config.table << ',' << r.config.row << ',' << format_general(s.eta) << ','
           << (s.fidelity ? format_fixed(*s.fidelity, 6) : std::string("nan")) << '\n';
}

inline void write_factorization_report(std::ostream& os, const FactorizationReport& rep,
                                       const TargetSpec& spec) {
    os << "factorization\t" << to_string(rep.variant) << '\n';
    os << "alpha\t" << format_general(spec.alpha.real());
    if (spec.alpha.imag() != 0.0) os << (spec.alpha.imag() < 0 ? "" : "+") << format_general(spec.alpha.imag()) << 'i';
    os << "\nbeta\t" << format_general(spec.beta.real());
    if (spec.beta.imag() != 0.0) os << (spec.beta.imag() < 0 ? "" : "+") << format_general(spec.beta.imag()) << 'i';
    os << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", rep.residual);
    os << "residual\t" << buf << '\n';
    os << "printed_prefactor\t" << format_general(rep.printed_prefactor) << '\n';
    for (int k = 0; k < 2; ++k)
        os << "branch\t" << to_string(static_cast<SenderOutcome>(k)) << "\tnorm="
           << format_fixed(rep.branch_norm[k], 9) << "\tfitted_prefactor="
           << format_fixed(rep.fitted_prefactor[k], 9) << '\n';
    os << "discrepancies\t" << rep.discrepancies.size() << '\n';
    if (!rep.discrepancies.empty())
        os << "#sender\tline\tfirst\tsecond\tprinted\texpected\tmax_diff\n";
    for (const auto& d : rep.discrepancies) {
        std::snprintf(buf, sizeof buf, "%.3e", d.max_diff);
        os << to_string(d.sender) << '\t' << d.line << '\t' << d.first_label << '\t'
           << d.second_label << '\t' << d.printed_expr << '\t' << d.expected_expr << '\t' << buf
           << '\n';
    }
    os << "verdict\t" << (rep.residual < 1e-12 ? "consistent" : "inconsistent") << '\n';
}

namespace detail {

inline std::string join(const std::vector<std::string>& v, char sep) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? std::string(1, sep) : "") + v[k];
    return s;
}

inline std::string pair_str(const std::array<std::optional<double>, 2>& f) {
    return format_optional(f[0], 9) + "," + format_optional(f[1], 9);
}

}  // namespace detail

/// Tab-separated report, one line per row, followed by a summary line.
inline void write_table_report(std::ostream& os, const TableReport& rep) {
    os << "[table " << rep.table << "]\treceiver=" << to_string(rep.receiver) << '\n';
    os << "#row\tsender\toutcomes\tprinted\tF_printed\tF_reversed\toracle\tF_oracle\tp_branch\t"
          "relation\taligned_diff\tverdict\tnote\n";
    char buf[64];
    for (const auto& r : rep.rows) {
        std::snprintf(buf, sizeof buf, "%.3e", r.aligned_diff);
        std::string note = r.note;
        if (!r.duplicate_rows.empty()) {
            std::vector<std::string> d;
            for (int x : r.duplicate_rows) d.push_back(std::to_string(x));
            note += std::string(note.empty() ? "" : "; ") + "same rule as row " + detail::join(d, ',');
        }
        os << r.row << '\t' << to_string(r.sender) << '\t' << detail::join(r.collaborator_outcomes, '/')
           << '\t' << (r.printed_rule.empty() ? "-" : r.printed_rule) << '\t'
           << (r.printed_rule.empty() ? "-" : detail::pair_str(r.printed_fidelity)) << '\t'
           << (r.printed_rule.empty() ? "-" : detail::pair_str(r.reversed_fidelity)) << '\t'
           << r.oracle_rule.value_or("-") << '\t' << detail::pair_str(r.oracle_fidelity) << '\t'
           << format_fixed(r.branch_probability[0], 6) << ',' << format_fixed(r.branch_probability[1], 6)
           << '\t' << (r.printed_rule.empty() ? "-" : to_string(r.relation)) << '\t' << buf << '\t' << to_string(r.verdict) << '\t'
           << (note.empty() ? "-" : note) << '\n';
    }
    os << "summary\t" << rep.table << "\tconfirmed=" << rep.count(Verdict::Confirmed)
       << "\tphase-equivalent=" << rep.count(Verdict::PhaseEquivalent)
       << "\tmismatch=" << rep.count(Verdict::Mismatch) << "\trows=" << rep.rows.size() << '\n';
}

}  // namespace hrsp
