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

// Projective measurement scenarios. The receiver's block is left as the identity.

#include "hrsp/linalg.hpp"
#include "hrsp/states.hpp"

#include <map>
#include <string>
#include <vector>

namespace hrsp {

struct MeasurementScenario {
    Party receiver;
    Matrix sender_projector;                        // 2x2
    std::map<Party, Matrix> collaborator_projectors;  // 4x4 each
    std::string label;                              // for diagnostics
};

inline bool is_projector(const Matrix& p, double tol = 1e-12) {
    return p.rows() == p.cols() && max_abs_diff(p * p, p) <= tol && max_abs_diff(p, p.adjoint()) <= tol;
}

/// The two collaborators of a receiver, in layout order.
inline std::vector<Party> collaborators_of(Party receiver) {
    switch (receiver) {
        case Party::Bob: return {Party::Charlie, Party::David};
        case Party::Charlie: return {Party::Bob, Party::David};
        case Party::David: return {Party::Bob, Party::Charlie};
        case Party::Alice: break;
    }
    throw std::invalid_argument("Alice is never the receiver");
}

/// Scenario for one outcome branch. `collaborator_outcomes` are two-qubit labels
/// ("01", "+-", ...) for collaborators_of(receiver), in that order.
inline MeasurementScenario make_scenario(Party receiver, SenderOutcome sender,
                                         const std::vector<std::string>& collaborator_outcomes,
                                         const TargetSpec& spec) {
    const auto parties = collaborators_of(receiver);
    if (collaborator_outcomes.size() != parties.size())
        throw std::invalid_argument("make_scenario: expected one outcome label per collaborator");
    MeasurementScenario s;
    s.receiver = receiver;
    s.sender_projector = zeta_basis(spec)[sender].density();
    s.label = to_string(receiver) + " receives, alice=" + to_string(sender);
    for (std::size_t k = 0; k < parties.size(); ++k) {
        const auto& lab = collaborator_outcomes[k];
        if (lab.size() != 2) throw std::invalid_argument("make_scenario: labels must be two qubits");
        s.collaborator_projectors[parties[k]] = outer(basis_ket(lab));
        s.label += ", " + to_string(parties[k]) + "=" + lab;
    }
    return s;
}

/// U = M_A (x) M_B (x) M_C (x) M_D with the receiver's factor equal to I_4.
inline Matrix build_measurement_operator(const MeasurementScenario& s) {
    if (s.sender_projector.rows() != 2 || !is_projector(s.sender_projector))
        throw std::invalid_argument("build_measurement_operator: sender projector is malformed");
    std::vector<Matrix> factors{s.sender_projector};
    for (Party p : {Party::Bob, Party::Charlie, Party::David}) {
        if (p == s.receiver) {
            factors.push_back(Matrix::Identity(4, 4));
            continue;
        }
        const auto it = s.collaborator_projectors.find(p);
        if (it == s.collaborator_projectors.end()) {
            factors.push_back(Matrix::Identity(4, 4));
            continue;
        }
        if (it->second.rows() != 4 || !is_projector(it->second))
            throw std::invalid_argument("build_measurement_operator: projector for " + to_string(p) +
                                        " is malformed");
        factors.push_back(it->second);
    }
    return kron(factors);
}

}  // namespace hrsp
