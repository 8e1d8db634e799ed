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

// Gate-string notation for receiver corrections and the 4x4 unitary of a sequence.
//
// Notation: O1 / O2 act on the receiver's first / second qubit, O1,2 on both,
// CXa-b is a CNOT with control a and target b, RCXa-b is the reversed CNOT
// (control b, target a). Tokens may be juxtaposed ("H1,2X1CX1-2"), separated by
// spaces, or written with LaTeX subscripts ("X_{1}").

#include "hrsp/linalg.hpp"
#include "hrsp/states.hpp"

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace hrsp {

enum class Gate { H, X, Y, iY, minus_iY, Z, CX, RCX };

struct GateToken {
    Gate gate;
    std::vector<int> targets;  // 1-based local qubits; (control, target) as printed for CX/RCX

    bool operator==(const GateToken&) const = default;
};

class GateParseError : public std::invalid_argument {
public:
    GateParseError(const std::string& what, std::size_t position)
        : std::invalid_argument(what + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Printed left-to-right order is application order (first printed acts first).
enum class GateOrder { LeftToRight, RightToLeft };

inline std::string gate_name(Gate g) {
    switch (g) {
        case Gate::H: return "H";
        case Gate::X: return "X";
        case Gate::Y: return "Y";
        case Gate::iY: return "iY";
        case Gate::minus_iY: return "-iY";
        case Gate::Z: return "Z";
        case Gate::CX: return "CX";
        case Gate::RCX: return "RCX";
    }
    return "?";
}

inline std::string to_string(const GateToken& t) {
    std::string s = gate_name(t.gate) + std::to_string(t.targets.at(0));
    if (t.targets.size() == 2) s += "-" + std::to_string(t.targets[1]);
    return s;
}

inline std::string to_string(const std::vector<GateToken>& seq) {
    std::string s;
    for (const auto& t : seq) {
        if (!s.empty()) s += ' ';
        s += to_string(t);
    }
    return s;
}

inline std::vector<GateToken> parse_gate_string(std::string_view text, Party receiver = Party::Bob,
                                                GateOrder order = GateOrder::LeftToRight) {
    if (receiver == Party::Alice)
        throw std::invalid_argument("parse_gate_string: Alice applies no correction");
    std::vector<GateToken> out;
    std::size_t i = 0;
    const auto n = text.size();
    auto peek = [&](std::string_view s) { return text.substr(i, s.size()) == s; };
    auto skip_space = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto read_qubit = [&]() -> int {
        if (i < n && (text[i] == '1' || text[i] == '2')) return text[i++] - '0';
        throw GateParseError("expected qubit index 1 or 2", i);
    };

    skip_space();
    while (i < n) {
        const std::size_t start = i;
        Gate g;
        if (peek("-iY")) { g = Gate::minus_iY; i += 3; }
        else if (peek("iY")) { g = Gate::iY; i += 2; }
        else if (peek("RCX")) { g = Gate::RCX; i += 3; }
        else if (peek("CX")) { g = Gate::CX; i += 2; }
        else if (peek("H")) { g = Gate::H; i += 1; }
        else if (peek("X")) { g = Gate::X; i += 1; }
        else if (peek("Y")) { g = Gate::Y; i += 1; }
        else if (peek("Z")) { g = Gate::Z; i += 1; }
        else throw GateParseError("unknown gate token '" + std::string(text.substr(i, 1)) + "'", start);

        bool braced = false;
        if (i < n && text[i] == '_') {
            ++i;
            if (i < n && text[i] == '{') { braced = true; ++i; }
        }
        const int a = read_qubit();
        if (g == Gate::CX || g == Gate::RCX) {
            if (i >= n || text[i] != '-') throw GateParseError("two-qubit gate needs 'a-b'", i);
            ++i;
            const int b = read_qubit();
            if (a == b) throw GateParseError("control and target coincide", start);
            out.push_back({g, {a, b}});
        } else if (i + 1 < n && text[i] == ',' && (text[i + 1] == '1' || text[i + 1] == '2')) {
            ++i;
            const int b = read_qubit();
            out.push_back({g, {a}});
            out.push_back({g, {b}});
        } else {
            out.push_back({g, {a}});
        }
        if (braced) {
            if (i >= n || text[i] != '}') throw GateParseError("missing '}'", i);
            ++i;
        }
        skip_space();
    }
    if (order == GateOrder::RightToLeft) std::reverse(out.begin(), out.end());
    return out;
}

namespace detail {

inline Matrix single_gate(Gate g) {
    Matrix m = Matrix::Zero(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    const Complex I{0.0, 1.0};
    switch (g) {
        case Gate::H: m << s, s, s, -s; break;
        case Gate::X: m << 0, 1, 1, 0; break;
        case Gate::Y: m << 0, -I, I, 0; break;
        case Gate::iY: m << 0, 1, -1, 0; break;
        case Gate::minus_iY: m << 0, -1, 1, 0; break;
        case Gate::Z: m << 1, 0, 0, -1; break;
        default: throw std::logic_error("single_gate: not a one-qubit gate");
    }
    return m;
}

inline Matrix cnot(int control, int target) {
    Matrix m = Matrix::Zero(4, 4);
    for (int idx = 0; idx < 4; ++idx) {
        const int cbit = (idx >> (2 - control)) & 1;
        const int out = cbit ? idx ^ (1 << (2 - target)) : idx;
        m(out, idx) = 1.0;
    }
    return m;
}

}  // namespace detail

/// 4x4 matrix of one token on the receiver's two-qubit register.
inline Matrix gate_matrix(const GateToken& t) {
    switch (t.gate) {
        case Gate::CX: return detail::cnot(t.targets.at(0), t.targets.at(1));
        case Gate::RCX: return detail::cnot(t.targets.at(1), t.targets.at(0));
        default: {
            const Matrix g = detail::single_gate(t.gate);
            const Matrix id = Matrix::Identity(2, 2);
            return t.targets.at(0) == 1 ? kron(g, id) : kron(id, g);
        }
    }
}

/// Product T_last ... T_first for a sequence in application order.
inline Matrix sequence_unitary(const std::vector<GateToken>& seq) {
    Matrix o = Matrix::Identity(4, 4);
    for (const auto& t : seq) o = gate_matrix(t) * o;
    return o;
}

enum class RuleSource { Published, OracleDerived };

struct CorrectionRule {
    Party receiver;
    SenderOutcome sender_outcome;
    std::vector<std::string> collaborator_outcomes;
    std::vector<GateToken> gates;
    RuleSource source;
    std::string text;  // printed form (Published) or rendered sequence (OracleDerived)
};

inline Matrix correction_unitary(const CorrectionRule& rule) { return sequence_unitary(rule.gates); }

/// Smallest max|A - e^{i theta} B| over theta, and the aligning phase.
struct PhaseAlignment {
    double max_diff;
    Complex phase;
};

inline PhaseAlignment align_global_phase(const Matrix& a, const Matrix& b) {
    const Complex overlap = (b.adjoint() * a).trace();
    const Complex phase = std::abs(overlap) > 1e-14 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
    return {max_abs_diff(a, phase * b), phase};
}

}  // namespace hrsp
