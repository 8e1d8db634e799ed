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

// End-to-end fidelity of one outcome branch under noise. `sweep` repeats it over
// a grid of noise strengths.

#include "hrsp/gates.hpp"
#include "hrsp/linalg.hpp"
#include "hrsp/measurement.hpp"
#include "hrsp/noise.hpp"
#include "hrsp/states.hpp"

#include <cmath>
#include <future>
#include <optional>
#include <string>
#include <vector>

namespace hrsp {

inline constexpr double kBranchTol = 1e-12;

class VanishingBranchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline double branch_probability(const Matrix& rho, const Matrix& u) {
    return (u * rho * u.adjoint()).trace().real();
}

/// rho''' = U rho' U^dagger / Tr(U rho' U^dagger).
inline Matrix collapse_and_normalize(const Matrix& rho_noisy, const Matrix& u,
                                     const std::string& scenario_label = "measurement branch") {
    if (rho_noisy.rows() != u.cols() || u.rows() != u.cols() || rho_noisy.rows() != rho_noisy.cols())
        throw DimensionError("collapse_and_normalize: operator dimensions do not match");
    Matrix collapsed = u * rho_noisy * u.adjoint();
    const double p = collapsed.trace().real();
    if (!(p > kBranchTol))
        throw VanishingBranchError("collapse_and_normalize: outcome branch has probability " +
                                   std::to_string(p) + " (" + scenario_label + ")");
    collapsed /= p;
    return 0.5 * (collapsed + collapsed.adjoint());
}

inline Matrix reduce_to_receiver(const Matrix& rho_norm, Party receiver,
                                 const QubitLayout& layout = QubitLayout::protocol()) {
    const auto traced = layout.complement(receiver);
    return partial_trace(rho_norm, traced, layout);
}

inline Matrix apply_correction(const Matrix& rho_recv, const CorrectionRule& rule) {
    if (rho_recv.rows() != 4 || rho_recv.cols() != 4)
        throw DimensionError("apply_correction: receiver state must be 4x4");
    const Matrix o = correction_unitary(rule);
    return o * rho_recv * o.adjoint();
}

/// Tr sqrt( sqrt(rho0) rho_n sqrt(rho0) ) (square-root convention, not squared).
inline double fidelity(const Matrix& rho0, const Matrix& rho_n) {
    if (rho0.rows() != rho_n.rows() || rho0.cols() != rho_n.cols() || rho0.rows() != rho0.cols())
        throw DimensionError("fidelity: shape mismatch");
    if (!is_psd(rho0)) throw NotPsdError("fidelity: rho0 is not Hermitian PSD");
    if (!is_psd(rho_n)) throw NotPsdError("fidelity: rho_n is not Hermitian PSD");
    // Round-off eigenvalues near zero would otherwise add O(sqrt(eps)) to the trace.
    const Matrix s = psd_sqrt(rho0, kSpectralFloor);
    Matrix inner = s * rho_n * s;
    inner = 0.5 * (inner + inner.adjoint());
    return psd_sqrt(inner, kSpectralFloor).trace().real();
}

/// sqrt(<xi| rho_n |xi>), equal to `fidelity` when rho0 = |xi><xi|.
inline double pure_state_fidelity(const Vector& xi, const Matrix& rho_n) {
    return std::sqrt(std::max(0.0, xi.dot(rho_n * xi).real()));
}

/// Evenly spaced grid 0, step, ..., 1. `step` must divide 1.
inline std::vector<double> eta_grid(double step) {
    if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("eta_grid: step must be in (0, 1]");
    const double count = 1.0 / step;
    const long n = std::lround(count);
    if (std::abs(count - static_cast<double>(n)) > 1e-9)
        throw std::invalid_argument("eta_grid: step " + std::to_string(step) + " does not divide 1");
    std::vector<double> g;
    for (long k = 0; k <= n; ++k) g.push_back(static_cast<double>(k) / static_cast<double>(n));
    return g;
}

struct PipelineConfig {
    NoiseKind noise = NoiseKind::AD;
    CorrectionRule rule;  // also selects the measurement branch
    TargetSpec spec = TargetSpec::equal_weights();
    std::vector<double> eta_grid = hrsp::eta_grid(0.1);
    ChannelMode mode = ChannelMode::Correlated;
    std::string table = "I";  // provenance tag for output
    int row = 1;

    Party receiver() const { return rule.receiver; }

    void validate() const {
        TargetSpec::make(spec.alpha, spec.beta);
        if (eta_grid.empty()) throw std::invalid_argument("PipelineConfig: empty eta grid");
        for (std::size_t k = 0; k < eta_grid.size(); ++k) {
            if (!(eta_grid[k] >= 0.0 && eta_grid[k] <= 1.0))
                throw std::invalid_argument("PipelineConfig: eta outside [0, 1]");
            if (k > 0 && !(eta_grid[k] > eta_grid[k - 1]))
                throw std::invalid_argument("PipelineConfig: eta grid must be strictly increasing");
        }
    }
};

struct SweepSample {
    double eta = 0.0;
    double branch_probability = 0.0;     // Tr(U rho' U^dagger)
    double channel_trace = 0.0;          // Tr(rho')
    std::optional<double> fidelity;      // empty when the branch has probability ~0
    std::optional<double> pure_fidelity; // sqrt(<xi|rho_n|xi>)
    std::optional<Matrix> rho_n;
    std::vector<std::string> warnings;

    bool defined() const { return fidelity.has_value(); }
};

struct SweepResult {
    PipelineConfig config;
    std::vector<SweepSample> samples;

    /// Sample at the largest eta whose branch is still populated.
    const SweepSample* last_defined() const {
        for (auto it = samples.rbegin(); it != samples.rend(); ++it)
            if (it->defined()) return &*it;
        return nullptr;
    }
};

inline const Matrix& resource_density() {
    static const Matrix rho = resource_state().density();
    return rho;
}

inline SweepSample run_point(const PipelineConfig& cfg, double eta) {
    const auto layout = QubitLayout::protocol();
    const auto scenario = NoiseScenario::make(make_kraus(cfg.noise, eta), layout,
                                              {Party::Bob, Party::Charlie, Party::David}, cfg.mode);
    SweepSample s;
    s.eta = eta;
    const Matrix noisy = apply_channel(resource_density(), scenario, &s.warnings);
    const auto meas = make_scenario(cfg.rule.receiver, cfg.rule.sender_outcome,
                                    cfg.rule.collaborator_outcomes, cfg.spec);
    const Matrix u = build_measurement_operator(meas);

    s.channel_trace = noisy.trace().real();
    s.branch_probability = branch_probability(noisy, u);
    if (!(s.branch_probability > kBranchTol)) return s;

    const Matrix rho3 = collapse_and_normalize(noisy, u, meas.label);
    const Matrix recv = reduce_to_receiver(rho3, cfg.rule.receiver, layout);
    Matrix rho_n = apply_correction(recv, cfg.rule);
    rho_n = 0.5 * (rho_n + rho_n.adjoint());
    const auto xi = target_state(cfg.spec);
    s.fidelity = fidelity(xi.density(), rho_n);
    s.pure_fidelity = pure_state_fidelity(xi.amplitudes(), rho_n);
    s.rho_n = std::move(rho_n);
    return s;
}

/// Grid points are evaluated concurrently; samples follow eta_grid order.
inline SweepResult sweep(const PipelineConfig& cfg) {
    cfg.validate();
    std::vector<std::future<SweepSample>> jobs;
    jobs.reserve(cfg.eta_grid.size());
    for (double eta : cfg.eta_grid)
        jobs.push_back(std::async(std::launch::async, [&cfg, eta] { return run_point(cfg, eta); }));
    SweepResult r{cfg, {}};
    r.samples.reserve(jobs.size());
    for (auto& j : jobs) r.samples.push_back(j.get());
    return r;
}

/// Receiver state of the noiseless protocol for one branch, or nullopt when the
/// branch cannot occur.
inline std::optional<Matrix> noiseless_receiver_state(Party receiver, SenderOutcome sender,
                                                      const std::vector<std::string>& outcomes,
                                                      const TargetSpec& spec) {
    const auto meas = make_scenario(receiver, sender, outcomes, spec);
    const Matrix u = build_measurement_operator(meas);
    if (!(branch_probability(resource_density(), u) > kBranchTol)) return std::nullopt;
    return reduce_to_receiver(collapse_and_normalize(resource_density(), u, meas.label), receiver);
}

/// Noiseless fidelity of a rule at a parameter point; nullopt if the branch is empty.
inline std::optional<double> noiseless_fidelity(const CorrectionRule& rule, const TargetSpec& spec) {
    const auto recv =
        noiseless_receiver_state(rule.receiver, rule.sender_outcome, rule.collaborator_outcomes, spec);
    if (!recv) return std::nullopt;
    return pure_state_fidelity(target_state(spec).amplitudes(), apply_correction(*recv, rule));
}

}  // namespace hrsp
