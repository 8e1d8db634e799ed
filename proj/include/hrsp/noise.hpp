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

// Amplitude- and phase-damping Kraus sets and the receiver-correlated channel
// in which both qubits held by one receiver see the same Kraus index.

#include "hrsp/linalg.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace hrsp {

enum class NoiseKind { AD, PD };

inline std::string to_string(NoiseKind k) { return k == NoiseKind::AD ? "ad" : "pd"; }

inline NoiseKind noise_kind_from_string(const std::string& s) {
    if (s == "ad") return NoiseKind::AD;
    if (s == "pd") return NoiseKind::PD;
    throw std::invalid_argument("unknown noise kind '" + s + "'");
}

struct KrausSet {
    NoiseKind kind;
    double eta;
    std::vector<Matrix> operators;

    /// sum_i K_i^dagger K_i
    Matrix completeness() const {
        Matrix acc = Matrix::Zero(2, 2);
        for (const auto& k : operators) acc += k.adjoint() * k;
        return acc;
    }
};

namespace detail {
inline void check_eta(double eta, const char* who) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::invalid_argument(std::string(who) + ": eta = " + std::to_string(eta) +
                                    " outside [0, 1]");
}
}  // namespace detail

/// K0 = diag(1, sqrt(1-eta)), K1 = sqrt(eta) |0><1|.
inline KrausSet ad_kraus(double eta) {
    detail::check_eta(eta, "ad_kraus");
    Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - eta);
    k1(0, 1) = std::sqrt(eta);
    return {NoiseKind::AD, eta, {k0, k1}};
}

/// E0 = sqrt(1-eta) I, E1 = sqrt(eta) |0><0|, E2 = sqrt(eta) |1><1|.
inline KrausSet pd_kraus(double eta) {
    detail::check_eta(eta, "pd_kraus");
    Matrix e0 = std::sqrt(1.0 - eta) * Matrix::Identity(2, 2);
    Matrix e1 = Matrix::Zero(2, 2), e2 = Matrix::Zero(2, 2);
    e1(0, 0) = std::sqrt(eta);
    e2(1, 1) = std::sqrt(eta);
    return {NoiseKind::PD, eta, {e0, e1, e2}};
}

inline KrausSet make_kraus(NoiseKind kind, double eta) {
    return kind == NoiseKind::AD ? ad_kraus(eta) : pd_kraus(eta);
}

enum class ChannelMode {
    Correlated,    // same Kraus index on both qubits of a receiver
    Uncorrelated,  // independent index per qubit; comparison baseline only
};

struct NoiseScenario {
    KrausSet kraus;
    QubitLayout layout;
    std::vector<Party> noisy_parties;
    ChannelMode mode;

    static NoiseScenario make(KrausSet kraus, QubitLayout layout = QubitLayout::protocol(),
                              std::vector<Party> noisy = {Party::Bob, Party::Charlie, Party::David},
                              ChannelMode mode = ChannelMode::Correlated) {
        for (Party p : noisy)
            if (p == Party::Alice)
                throw std::invalid_argument("NoiseScenario: Alice's qubit is never noisy");
        return NoiseScenario{std::move(kraus), std::move(layout), std::move(noisy), mode};
    }
};

/// K^{(x)m} for a Kraus operator repeated on m qubits.
inline Matrix repeated(const Matrix& k, std::size_t m) {
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t i = 0; i < m; ++i) out = kron(out, k);
    return out;
}

namespace detail {
inline void check_channel_input(const Matrix& rho, const QubitLayout& layout, const char* who) {
    const auto d = static_cast<Eigen::Index>(dim_of(layout.total_qubits()));
    if (rho.rows() != d || rho.cols() != d)
        throw DimensionError(std::string(who) + ": expected " + std::to_string(d) + "x" +
                             std::to_string(d) + ", got " + std::to_string(rho.rows()) + "x" +
                             std::to_string(rho.cols()));
    if (!is_hermitian(rho)) throw std::invalid_argument(std::string(who) + ": input is not Hermitian");
}

inline void note_trace_deficit(const Matrix& out, std::vector<std::string>* warnings) {
    const double tr = out.trace().real();
    if (warnings && tr < 1.0 - 1e-9) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "correlated channel output has trace %.9f < 1; the per-receiver shared-index "
                      "model is not trace preserving, normalisation happens after the measurement",
                      tr);
        warnings->emplace_back(buf);
    }
}
}  // namespace detail

/// rho' = sum_{i,j,l} A_ijl rho A_ijl^dagger with A_ijl = I_A (x) K_i (x) K_i (x) K_j (x) K_j
/// (x) K_l (x) K_l. The trace of rho' can be below 1.
inline Matrix apply_correlated_channel(const Matrix& rho, const NoiseScenario& scenario,
                                       std::vector<std::string>* warnings = nullptr) {
    detail::check_channel_input(rho, scenario.layout, "apply_correlated_channel");
    const int n = scenario.layout.total_qubits();
    Matrix current = rho;
    // The index sums over distinct receivers factorise, so the channel is the
    // composition of one shared-index map per receiver.
    for (Party p : scenario.noisy_parties) {
        const auto& qs = scenario.layout.qubits(p);
        Matrix next = Matrix::Zero(current.rows(), current.cols());
        for (const auto& k : scenario.kraus.operators)
            next += conjugate_local(current, repeated(k, qs.size()), qs, n);
        current = std::move(next);
    }
    detail::note_trace_deficit(current, warnings);
    return current;
}

/// Independent single-qubit channel on every noisy qubit (trace preserving).
inline Matrix apply_uncorrelated_channel(const Matrix& rho, const NoiseScenario& scenario) {
    detail::check_channel_input(rho, scenario.layout, "apply_uncorrelated_channel");
    const int n = scenario.layout.total_qubits();
    Matrix current = rho;
    for (Party p : scenario.noisy_parties)
        for (int q : scenario.layout.qubits(p)) {
            const int one[] = {q};
            Matrix next = Matrix::Zero(current.rows(), current.cols());
            for (const auto& k : scenario.kraus.operators) next += conjugate_local(current, k, one, n);
            current = std::move(next);
        }
    return current;
}

inline Matrix apply_channel(const Matrix& rho, const NoiseScenario& scenario,
                            std::vector<std::string>* warnings = nullptr) {
    return scenario.mode == ChannelMode::Correlated
               ? apply_correlated_channel(rho, scenario, warnings)
               : apply_uncorrelated_channel(rho, scenario);
}

}  // namespace hrsp
