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

// The seven-qubit resource state and the target it prepares. Also checks the
// printed branch factorizations numerically.

#include "hrsp/linalg.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hrsp {

inline constexpr double kNormTol = 1e-12;

/// Unit-norm amplitude vector over n qubits.
class StateVector {
public:
    explicit StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
        num_qubits_ = qubits_of(amplitudes_.size());
        if (num_qubits_ < 0)
            throw DimensionError("StateVector: length " + std::to_string(amplitudes_.size()) +
                                 " is not a power of two");
        if (std::abs(amplitudes_.norm() - 1.0) > kNormTol)
            throw std::invalid_argument("StateVector: norm " + std::to_string(amplitudes_.norm()) +
                                        " differs from 1");
    }

    int num_qubits() const { return num_qubits_; }
    const Vector& amplitudes() const { return amplitudes_; }
    Complex operator[](Eigen::Index i) const { return amplitudes_(i); }
    Matrix density() const { return outer(amplitudes_); }

private:
    int num_qubits_ = 0;
    Vector amplitudes_;
};

// ---------------------------------------------------------------------------
// Basis labels

/// Single-qubit ket for '0', '1', '+', '-'; '+'/'-' are (|0> +- |1>)/sqrt(2).
inline Vector single_ket(char c) {
    const double s = 1.0 / std::sqrt(2.0);
    Vector v(2);
    switch (c) {
        case '0': v << 1.0, 0.0; break;
        case '1': v << 0.0, 1.0; break;
        case '+': v << s, s; break;
        case '-': v << s, -s; break;
        default: throw std::invalid_argument(std::string("unknown basis symbol '") + c + "'");
    }
    return v;
}

/// Product ket for a label such as "01", "+-" or "0010101".
inline Vector basis_ket(std::string_view label) {
    if (label.empty()) throw std::invalid_argument("basis_ket: empty label");
    Vector out = single_ket(label.front());
    for (std::size_t k = 1; k < label.size(); ++k) out = kron(out, single_ket(label[k]));
    return out;
}

inline Eigen::Index basis_index(std::string_view bits) {
    Eigen::Index idx = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("basis_index: expected 0/1 string");
        idx = (idx << 1) | (c == '1' ? 1 : 0);
    }
    return idx;
}

inline std::string bit_label(Eigen::Index index, int num_qubits) {
    std::string s(static_cast<std::size_t>(num_qubits), '0');
    for (int q = 0; q < num_qubits; ++q)
        if ((index >> (num_qubits - 1 - q)) & 1) s[static_cast<std::size_t>(q)] = '1';
    return s;
}

// ---------------------------------------------------------------------------
// Target state and sender basis

/// Amplitudes of the prepared state alpha|00> + beta|11>.
struct TargetSpec {
    Complex alpha;
    Complex beta;

    static TargetSpec make(Complex alpha, Complex beta) {
        const double n = std::norm(alpha) + std::norm(beta);
        if (std::abs(n - 1.0) > kNormTol)
            throw std::invalid_argument("TargetSpec: |alpha|^2 + |beta|^2 = " + std::to_string(n) +
                                        ", expected 1");
        return TargetSpec{alpha, beta};
    }

    static TargetSpec equal_weights() {
        const double s = 1.0 / std::sqrt(2.0);
        return TargetSpec{s, s};
    }

    bool is_real() const { return alpha.imag() == 0.0 && beta.imag() == 0.0; }
};

inline StateVector target_state(const TargetSpec& spec) {
    const auto checked = TargetSpec::make(spec.alpha, spec.beta);
    Vector v = Vector::Zero(4);
    v(0) = checked.alpha;
    v(3) = checked.beta;
    return StateVector(v);
}

enum class SenderOutcome { Zeta1, Zeta2 };

inline std::string to_string(SenderOutcome z) { return z == SenderOutcome::Zeta1 ? "zeta1" : "zeta2"; }

struct ZetaBasis {
    StateVector zeta1;
    StateVector zeta2;

    const StateVector& operator[](SenderOutcome z) const {
        return z == SenderOutcome::Zeta1 ? zeta1 : zeta2;
    }
};

/// zeta1 = alpha|0> + beta|1>, zeta2 = conj(beta)|0> - conj(alpha)|1>.
/// For real amplitudes the conjugates are no-ops; complex input is experimental.
inline ZetaBasis zeta_basis(const TargetSpec& spec) {
    const auto s = TargetSpec::make(spec.alpha, spec.beta);
    Vector z1(2), z2(2);
    z1 << s.alpha, s.beta;
    z2 << std::conj(s.beta), -std::conj(s.alpha);
    return ZetaBasis{StateVector(z1), StateVector(z2)};
}

// ---------------------------------------------------------------------------
// Resource states

/// Five-qubit Brown state: eight terms of magnitude 1/(2 sqrt 2).
/// |00110> and |01011> carry a minus sign (from the |phi->, |psi-> pairs).
inline StateVector brown_state() {
    struct Term {
        const char* bits;
        double sign;
    };
    static constexpr Term terms[] = {{"00101", 1}, {"00110", -1}, {"01000", 1}, {"01011", -1},
                                     {"10001", 1}, {"10010", 1},  {"11100", 1}, {"11111", 1}};
    const double amp = 1.0 / (2.0 * std::sqrt(2.0));
    Vector v = Vector::Zero(32);
    for (const auto& t : terms) v(basis_index(t.bits)) = t.sign * amp;
    return StateVector(v);
}

/// CNOT(3 -> 5) CNOT(4 -> 6) applied to brown (x) |00>.
inline StateVector extend_with_ancillas(const StateVector& brown) {
    if (brown.num_qubits() != 5)
        throw DimensionError("extend_with_ancillas: expected a 5-qubit state");
    const Vector padded = kron(brown.amplitudes(), basis_ket("00"));
    Vector out = Vector::Zero(128);
    for (Eigen::Index i = 0; i < 128; ++i) {
        Eigen::Index j = i;
        if ((j >> (6 - 3)) & 1) j ^= Eigen::Index{1} << (6 - 5);
        if ((j >> (6 - 4)) & 1) j ^= Eigen::Index{1} << (6 - 6);
        out(j) += padded(i);
    }
    return StateVector(out);
}

inline const StateVector& resource_state() {
    static const StateVector psi = extend_with_ancillas(brown_state());
    return psi;
}

// ---------------------------------------------------------------------------
// Printed factorizations

enum class FactorizationVariant { BobReceiver, DavidReceiver };

inline std::string to_string(FactorizationVariant v) {
    return v == FactorizationVariant::BobReceiver ? "bob" : "david";
}

/// One printed line of a factorization:
///   sign * |first>|second> (receiver_expr)_receiver
/// where for the Bob variant first/second are Charlie's and David's labels and for
/// the David variant they are Bob's and Charlie's. receiver_expr uses 'a' for alpha
/// and 'b' for beta, e.g. "a|01>+b|00>".
struct PrintedTerm {
    SenderOutcome sender;
    int sign;
    std::string first_label;
    std::string second_label;
    std::string receiver_expr;
};

struct FactorizationData {
    FactorizationVariant variant;
    double prefactor;  // scalar in front of each branch bracket
    std::vector<PrintedTerm> terms;
};

inline const FactorizationData& printed_factorization(FactorizationVariant v) {
    using enum SenderOutcome;
    static const FactorizationData bob{
        FactorizationVariant::BobReceiver,
        0.5,
        {
            {Zeta1, +1, "01", "01", "a|01>+b|00>"},
            {Zeta1, +1, "10", "10", "b|00>-a|01>"},
            {Zeta1, +1, "00", "00", "a|10>+b|11>"},
            {Zeta1, +1, "11", "11", "b|11>-a|10>"},
            {Zeta2, +1, "01", "01", "b|01>-a|00>"},
            {Zeta2, -1, "10", "10", "a|00>+b|01>"},
            {Zeta2, +1, "00", "00", "b|10>-a|11>"},
            {Zeta2, -1, "11", "11", "a|11>+b|10>"},
        }};
    static const FactorizationData david{
        FactorizationVariant::DavidReceiver,
        0.25,
        {
            {Zeta1, +1, "++", "++", "a|-+>+b|++>"},
            {Zeta1, +1, "+-", "++", "a|+->-b|-->"},
            {Zeta1, -1, "-+", "++", "a|+->-b|-->"},
            {Zeta1, +1, "--", "++", "b|++>-a|-+>"},
            {Zeta1, +1, "++", "+-", "a|-->+b|+->"},
            {Zeta1, +1, "++", "-+", "a|++>+b|-+>"},
            {Zeta1, +1, "++", "--", "a|+->+b|-->"},
            {Zeta1, +1, "+-", "+-", "a|+->-b|-+>"},
            {Zeta1, +1, "+-", "-+", "a|-->-b|+->"},
            {Zeta1, +1, "+-", "--", "a|-+>-b|++>"},
            {Zeta1, -1, "-+", "+-", "a|++>+b|-+>"},
            {Zeta1, -1, "-+", "-+", "a|-->+b|+->"},
            {Zeta1, -1, "-+", "--", "a|-+>+b|++>"},
            {Zeta1, +1, "--", "+-", "b|+->-a|-->"},
            {Zeta1, +1, "--", "-+", "b|-+>-a|++>"},
            {Zeta1, +1, "--", "--", "b|-->-a|+->"},
            {Zeta2, +1, "++", "++", "b|-+>-a|++>"},
            {Zeta2, +1, "+-", "++", "a|-->+b|+->"},
            {Zeta2, +1, "-+", "++", "a|-->-b|+->"},
            {Zeta2, -1, "--", "++", "a|++>+b|-+>"},
            {Zeta2, +1, "++", "+-", "b|-->-a|+->"},
            {Zeta2, +1, "++", "-+", "b|-+>-a|-+>"},
            {Zeta2, +1, "++", "--", "b|+->-a|-->"},
            {Zeta2, +1, "+-", "+-", "b|++>+a|-+>"},
            {Zeta2, +1, "+-", "-+", "b|-->+a|+->"},
            {Zeta2, +1, "+-", "--", "a|++>+b|-+>"},
            {Zeta2, +1, "-+", "+-", "a|-+>-b|++>"},
            {Zeta2, +1, "-+", "-+", "a|+->-b|-->"},
            {Zeta2, +1, "-+", "--", "a|++>-b|-+>"},
            {Zeta2, -1, "--", "+-", "a|+->+b|-->"},
            {Zeta2, -1, "--", "-+", "a|-+>+b|++>"},
            {Zeta2, -1, "--", "--", "a|-->+b|+->"},
        }};
    return v == FactorizationVariant::BobReceiver ? bob : david;
}

/// Evaluate an expression like "b|00>-a|01>" at (alpha, beta).
inline Vector evaluate_receiver_expr(std::string_view expr, const TargetSpec& spec) {
    Vector out;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("receiver expression '" + std::string(expr) + "' at " +
                                    std::to_string(i) + ": " + why);
    };
    while (i < expr.size()) {
        double sign = 1.0;
        if (expr[i] == '+' || expr[i] == '-') {
            sign = expr[i] == '-' ? -1.0 : 1.0;
            ++i;
        }
        if (i >= expr.size() || (expr[i] != 'a' && expr[i] != 'b')) fail("expected a or b");
        const Complex coeff = expr[i] == 'a' ? spec.alpha : spec.beta;
        ++i;
        if (i >= expr.size() || expr[i] != '|') fail("expected '|'");
        const auto close = expr.find('>', i);
        if (close == std::string_view::npos) fail("unterminated ket");
        const Vector ket = basis_ket(expr.substr(i + 1, close - i - 1));
        if (out.size() == 0) out = Vector::Zero(ket.size());
        if (out.size() != ket.size()) fail("ket sizes differ");
        out += sign * coeff * ket;
        i = close + 1;
    }
    if (out.size() == 0) fail("empty expression");
    return out;
}

/// One branch of a printed factorization evaluated at a parameter point.
/// receiver_substate includes the line sign but not the bracket prefactor.
struct FactorizationBranch {
    FactorizationVariant variant;
    SenderOutcome sender_outcome;
    std::vector<std::string> collaborator_outcomes;
    Vector receiver_substate;
};

inline std::vector<FactorizationBranch> printed_branches(FactorizationVariant v,
                                                         const TargetSpec& spec) {
    std::vector<FactorizationBranch> out;
    for (const auto& t : printed_factorization(v).terms)
        out.push_back({v, t.sender, {t.first_label, t.second_label},
                       static_cast<double>(t.sign) * evaluate_receiver_expr(t.receiver_expr, spec)});
    return out;
}

namespace detail {

// Full 7-qubit ket |zeta>_A (x) [branch term] with parties in A,B,C,D order.
inline Vector assemble_term(FactorizationVariant v, const Vector& zeta, const std::string& first,
                            const std::string& second, const Vector& receiver) {
    if (v == FactorizationVariant::BobReceiver)
        return kron(kron(kron(zeta, receiver), basis_ket(first)), basis_ket(second));
    return kron(kron(kron(zeta, basis_ket(first)), basis_ket(second)), receiver);
}

// Exact receiver component of sqrt(2) <zeta|_A <first|<second| Psi.
inline Vector true_receiver_component(FactorizationVariant v, const Vector& zeta,
                                      const std::string& first, const std::string& second) {
    const Vector& psi = resource_state().amplitudes();
    Vector out = Vector::Zero(4);
    for (Eigen::Index r = 0; r < 4; ++r) {
        Vector e = Vector::Zero(4);
        e(r) = 1.0;
        out(r) = assemble_term(v, zeta, first, second, e).dot(psi);
    }
    return std::sqrt(2.0) * out;
}

inline std::string format_coeff(double c, char symbol) {
    if (std::abs(c) < 1e-12) return "";
    std::string s = c < 0 ? "-" : "+";
    if (std::abs(std::abs(c) - 1.0) > 1e-9) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", std::abs(c));
        s += buf;
        s += '*';
    }
    s += symbol;
    return s;
}

}  // namespace detail

struct TermDiscrepancy {
    SenderOutcome sender;
    int line;  // 1-based within the sender's bracket
    std::string first_label;
    std::string second_label;
    std::string printed_expr;   // including the line sign
    std::string expected_expr;  // bracket-scale expression consistent with the state
    double max_diff;
};

struct FactorizationReport {
    FactorizationVariant variant;
    double residual = 0.0;          // max |reassembled - Psi|
    double printed_prefactor = 0.0;
    double branch_norm[2] = {0, 0};       // norm of each printed branch (incl. prefactor)
    double fitted_prefactor[2] = {0, 0};  // least-squares prefactor against the true branch
    std::vector<TermDiscrepancy> discrepancies;
};

/// Reassemble Psi from a printed factorization and localise any mismatch to
/// individual printed lines. Discrepancies are term-level differences above 1e-12.
inline FactorizationReport verify_factorization(FactorizationVariant v, const TargetSpec& spec) {
    const auto checked = TargetSpec::make(spec.alpha, spec.beta);
    const auto& data = printed_factorization(v);
    const auto zb = zeta_basis(checked);
    const Vector& psi = resource_state().amplitudes();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    FactorizationReport rep;
    rep.variant = v;
    rep.printed_prefactor = data.prefactor;

    Vector reassembled = Vector::Zero(128);
    Vector printed_branch[2] = {Vector::Zero(64), Vector::Zero(64)};
    Vector true_branch[2] = {Vector::Zero(64), Vector::Zero(64)};
    int line_in_bracket[2] = {0, 0};

    // Basis of the receiver's label alphabet, used to render expected expressions.
    const bool hadamard = v == FactorizationVariant::DavidReceiver;
    const std::vector<std::string> labels =
        hadamard ? std::vector<std::string>{"++", "+-", "-+", "--"}
                 : std::vector<std::string>{"00", "01", "10", "11"};

    for (const auto& t : data.terms) {
        const int k = t.sender == SenderOutcome::Zeta1 ? 0 : 1;
        const int line = ++line_in_bracket[k];
        const Vector& zeta = zb[t.sender].amplitudes();
        const Vector printed = data.prefactor * static_cast<double>(t.sign) *
                               evaluate_receiver_expr(t.receiver_expr, checked);
        reassembled += inv_sqrt2 * detail::assemble_term(v, zeta, t.first_label, t.second_label, printed);

        const Vector unit_zeta = Vector::Ones(1);
        printed_branch[k] += detail::assemble_term(v, unit_zeta, t.first_label, t.second_label, printed);
        const Vector truth = detail::true_receiver_component(v, zeta, t.first_label, t.second_label);
        true_branch[k] += detail::assemble_term(v, unit_zeta, t.first_label, t.second_label, truth);

        const double diff = (printed - truth).cwiseAbs().maxCoeff();
        if (diff > 1e-12) {
            // alpha/beta decomposition of the true component, in the label basis.
            std::string expected;
            if (checked.is_real()) {
                const Vector u = detail::true_receiver_component(
                    v, zeta_basis(TargetSpec{1.0, 0.0})[t.sender].amplitudes(), t.first_label,
                    t.second_label);
                const Vector w = detail::true_receiver_component(
                    v, zeta_basis(TargetSpec{0.0, 1.0})[t.sender].amplitudes(), t.first_label,
                    t.second_label);
                for (const auto& l : labels) {
                    const Vector b = basis_ket(l);
                    const double cu = b.dot(u).real() / data.prefactor;
                    const double cw = b.dot(w).real() / data.prefactor;
                    const std::string part =
                        detail::format_coeff(cu, 'a') + detail::format_coeff(cw, 'b');
                    if (part.empty()) continue;
                    const bool compound = !detail::format_coeff(cu, 'a').empty() &&
                                          !detail::format_coeff(cw, 'b').empty();
                    if (compound) {
                        const std::string inner = part.front() == '+' ? part.substr(1) : part;
                        expected += "+(" + inner + ")|" + l + ">";
                    } else {
                        expected += part + "|" + l + ">";
                    }
                }
                if (!expected.empty() && expected.front() == '+') expected.erase(0, 1);
                if (expected.empty()) expected = "0";
            } else {
                expected = "(complex parameters: not rendered)";
            }
            std::string printed_text = (t.sign < 0 ? "-(" : "+(") + t.receiver_expr + ")";
            rep.discrepancies.push_back(
                {t.sender, line, t.first_label, t.second_label, printed_text, expected, diff});
        }
    }

    rep.residual = (reassembled - psi).cwiseAbs().maxCoeff();
    for (int k = 0; k < 2; ++k) {
        rep.branch_norm[k] = printed_branch[k].norm();
        const Vector unscaled = printed_branch[k] / data.prefactor;
        const double denom = unscaled.squaredNorm();
        rep.fitted_prefactor[k] = denom > 0 ? unscaled.dot(true_branch[k]).real() / denom : 0.0;
    }
    return rep;
}

inline double factorization_residual(FactorizationVariant v, const TargetSpec& spec) {
    return verify_factorization(v, spec).residual;
}

}  // namespace hrsp
