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

// Command implementations and argument parsing for the hrsp tool.
// Exit code 0 means success, 1 a failed check or I/O error, 2 a usage error.

#include "hrsp/noise.hpp"
#include "hrsp/pipeline.hpp"
#include "hrsp/protocol.hpp"
#include "hrsp/report.hpp"
#include "hrsp/states.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hrsp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct Options {
    std::string variant = "bob";
    std::string noise = "ad";
    std::string receiver = "bob";
    double alpha = 1.0 / std::sqrt(2.0);
    double beta = 1.0 / std::sqrt(2.0);
    double step = 0.1;
    std::optional<std::string> table;
    std::optional<int> row;
    std::optional<std::string> out;
    bool uncorrelated = false;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline TargetSpec parse_spec(const Options& o) {
    try {
        return TargetSpec::make(o.alpha, o.beta);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

inline int cmd_verify_factorization(const Options& o, std::ostream& out, std::ostream& err) {
    FactorizationVariant v;
    if (o.variant == "bob") v = FactorizationVariant::BobReceiver;
    else if (o.variant == "david") v = FactorizationVariant::DavidReceiver;
    else {
        err << "error: --variant must be bob or david\n";
        return kExitUsage;
    }
    TargetSpec spec;
    try {
        spec = parse_spec(o);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    const auto rep = verify_factorization(v, spec);
    write_factorization_report(out, rep, spec);
    return rep.residual < 1e-12 ? kExitOk : kExitFail;
}

inline int cmd_verify_tables(std::ostream& out) {
    int status = kExitOk;
    for (auto id : {TableId::I, TableId::II, TableId::III}) {
        const auto rep = verify_table(id);
        write_table_report(out, rep);
        out << '\n';
        if (id == TableId::I && !rep.fully_confirmed()) status = kExitFail;
    }
    for (auto z : {SenderOutcome::Zeta1, SenderOutcome::Zeta2}) {
        write_table_report(out, generate_charlie_table(z));
        out << '\n';
    }
    return status;
}

/// Rule selection for a sweep. Charlie rows 1..16 are the generated zeta1 table,
/// rows 17..32 the zeta2 table.
inline PipelineConfig sweep_config(const Options& o) {
    PipelineConfig cfg;
    try {
        cfg.noise = noise_kind_from_string(o.noise);
    } catch (const std::exception&) {
        throw UsageError("--noise must be ad or pd");
    }
    Party receiver;
    try {
        receiver = party_from_string(o.receiver);
    } catch (const std::exception&) {
        throw UsageError("--receiver must be bob, charlie or david");
    }
    cfg.spec = parse_spec(o);
    try {
        cfg.eta_grid = eta_grid(o.step);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    cfg.mode = o.uncorrelated ? ChannelMode::Uncorrelated : ChannelMode::Correlated;
    cfg.row = o.row.value_or(1);

    switch (receiver) {
        case Party::Bob:
        case Party::David: {
            const std::string def = receiver == Party::Bob ? "I" : "II";
            cfg.table = o.table.value_or(def);
            TableId id;
            try {
                id = table_from_string(cfg.table);
            } catch (const std::exception& e) {
                throw UsageError(e.what());
            }
            if (printed_table(id).receiver != receiver)
                throw UsageError("table " + cfg.table + " does not belong to receiver " + o.receiver);
            try {
                cfg.rule = printed_rule(id, cfg.row);
            } catch (const std::out_of_range& e) {
                throw UsageError(e.what());
            }
            break;
        }
        case Party::Charlie: {
            if (o.table && *o.table != "oracle")
                throw UsageError("charlie has no printed table; use --table oracle or omit it");
            cfg.table = "oracle";
            if (cfg.row < 1 || cfg.row > 32) throw UsageError("--row must be 1..32 for charlie");
            const auto z = cfg.row <= 16 ? SenderOutcome::Zeta1 : SenderOutcome::Zeta2;
            cfg.rule = charlie_rule(z, (cfg.row - 1) % 16 + 1);
            break;
        }
        default: throw UsageError("--receiver must be bob, charlie or david");
    }
    return cfg;
}

inline void write_sweep_summary(std::ostream& os, const SweepResult& r) {
    const auto& c = r.config;
    os << "sweep\tnoise=" << to_string(c.noise) << "\treceiver=" << to_string(c.receiver())
       << "\ttable=" << c.table << "\trow=" << c.row << "\trule=" << c.rule.text << '\n';
    if (c.mode == ChannelMode::Uncorrelated)
        os << "model\tuncorrelated per-qubit noise (baseline, not the correlated protocol model)\n";
    const auto& first = r.samples.front();
    const auto& last = r.samples.back();
    os << "F(" << format_general(first.eta) << ")\t" << format_optional(first.fidelity, 6) << '\n';
    os << "F(" << format_general(last.eta) << ")\t" << format_optional(last.fidelity, 6);
    if (!last.defined()) os << "\t(branch probability " << format_general(last.branch_probability) << ")";
    os << '\n';
    if (!last.defined()) {
        if (const auto* ld = r.last_defined())
            os << "last_defined\tF(" << format_general(ld->eta) << ")\t"
               << format_optional(ld->fidelity, 6) << '\n';
    }
}

inline int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
    PipelineConfig cfg;
    try {
        cfg = sweep_config(o);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    const auto result = sweep(cfg);
    if (o.out) {
        std::ofstream f(*o.out, std::ios::binary | std::ios::trunc);
        if (!f) {
            err << "error: cannot open '" << *o.out << "' for writing\n";
            return kExitFail;
        }
        write_csv(f, result);
        f.flush();
        if (!f) {
            err << "error: write to '" << *o.out << "' failed\n";
            return kExitFail;
        }
        write_sweep_summary(out, result);
    } else {
        write_csv(out, result);
        write_sweep_summary(err, result);
    }
    return kExitOk;
}

/// Parse argv and dispatch. Output streams are injectable for testing.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"Hierarchical remote state preparation simulator"};
    app.require_subcommand(1);
    Options o;

    auto add_spec = [&](CLI::App* sc) {
        sc->add_option("--alpha", o.alpha, "target amplitude on |0>");
        sc->add_option("--beta", o.beta, "target amplitude on |1>");
    };

    auto* vf = app.add_subcommand("verify-factorization", "check branch factorizations of the resource state");
    vf->add_option("--variant", o.variant, "bob or david")->check(CLI::IsMember({"bob", "david"}));
    add_spec(vf);

    auto* vt = app.add_subcommand("verify-tables", "check correction tables against a brute-force search");

    auto* sw = app.add_subcommand("sweep", "fidelity versus noise strength, as CSV");
    sw->add_option("--noise", o.noise, "ad or pd")->check(CLI::IsMember({"ad", "pd"}));
    sw->add_option("--receiver", o.receiver, "bob, charlie or david")
        ->check(CLI::IsMember({"bob", "charlie", "david"}));
    add_spec(sw);
    sw->add_option("--step", o.step, "eta grid spacing; must divide 1");
    sw->add_option("--table", o.table, "I, II, III (printed) or oracle (charlie)")
        ->check(CLI::IsMember({"I", "II", "III", "oracle"}));
    sw->add_option("--row", o.row, "1-based table row");
    sw->add_option("--out", o.out, "CSV output path (stdout if omitted)");
    sw->add_flag("--uncorrelated-noise", o.uncorrelated,
                 "independent noise on every qubit (baseline, not the protocol model)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*vf) return cmd_verify_factorization(o, out, err);
        if (*vt) return cmd_verify_tables(out);
        if (*sw) return cmd_sweep(o, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}

}  // namespace hrsp::cli
