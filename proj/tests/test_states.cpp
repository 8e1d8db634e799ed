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
#include "catch_amalgamated.hpp"

#include "hrsp/states.hpp"

#include <cmath>
#include <map>

using namespace hrsp;
using Catch::Matchers::WithinAbs;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Vector ket(std::initializer_list<double> amps) {
    Vector v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (double a : amps) v(i++) = a;
    return v;
}

// |psi>_Br = 1/2 (|001>|phi-> + |010>|psi-> + |100>|phi+> + |111>|psi+>),
// psi(+/-) = (|00> +/- |11>)/sqrt2, phi(+/-) = (|01> +/- |10>)/sqrt2.
Vector brown_from_bell_pairs() {
    const Vector psi_p = kInvSqrt2 * ket({1, 0, 0, 1});
    const Vector psi_m = kInvSqrt2 * ket({1, 0, 0, -1});
    const Vector phi_p = kInvSqrt2 * ket({0, 1, 1, 0});
    const Vector phi_m = kInvSqrt2 * ket({0, 1, -1, 0});
    return 0.5 * (kron(basis_ket("001"), phi_m) + kron(basis_ket("010"), psi_m) +
                  kron(basis_ket("100"), phi_p) + kron(basis_ket("111"), psi_p));
}

// CNOT on n qubits as P0(c) (x) I + P1(c) (x) X(t), embedded by explicit kron products.
Matrix cnot_full(int control, int target, int n) {
    Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2), x = Matrix::Zero(2, 2);
    p0(0, 0) = 1;
    p1(1, 1) = 1;
    x(0, 1) = x(1, 0) = 1;
    Matrix a = Matrix::Identity(1, 1), b = Matrix::Identity(1, 1);
    for (int q = 0; q < n; ++q) {
        const Matrix id = Matrix::Identity(2, 2);
        a = kron(a, q == control ? p0 : id);
        b = kron(b, q == control ? p1 : (q == target ? x : id));
    }
    return a + b;
}

// Literal signed expansion of the seven-qubit resource state.
const std::map<std::string, double>& signed_resource_terms() {
    static const std::map<std::string, double> t{
        {"0010101", 1}, {"0011010", -1}, {"0100000", 1}, {"0101111", -1},
        {"1000101", 1}, {"1001010", 1},  {"1110000", 1}, {"1111111", 1}};
    return t;
}

}  // namespace

TEST_CASE("Brown state matches its Bell-pair construction", "[states][oracle]") {
    const Vector oracle = brown_from_bell_pairs();
    CHECK((brown_state().amplitudes() - oracle).norm() < 1e-15);
}

TEST_CASE("Brown state has eight terms of magnitude 1/(2 sqrt 2)", "[states]") {
    const Vector v = brown_state().amplitudes();
    const double amp = 1.0 / (2.0 * std::sqrt(2.0));
    int support = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) < 1e-15) continue;
        ++support;
        CHECK_THAT(std::abs(v(i)), WithinAbs(amp, 1e-15));
    }
    CHECK(support == 8);
    for (const char* b : {"00101", "00110", "01000", "01011", "10001", "10010", "11100", "11111"})
        CHECK(std::abs(v(basis_index(b))) > 0.3);
}

TEST_CASE("resource state equals the CNOT circuit applied to Brown (x) |00>", "[states][oracle]") {
    const Vector in = kron(brown_from_bell_pairs(), basis_ket("00"));
    const Vector out = cnot_full(4, 6, 7) * cnot_full(3, 5, 7) * in;
    CHECK((resource_state().amplitudes() - out).norm() < 1e-15);
}

TEST_CASE("resource state matches the signed eight-term table", "[states][oracle]") {
    const auto& v = resource_state().amplitudes();
    const double amp = 1.0 / (2.0 * std::sqrt(2.0));
    Vector expected = Vector::Zero(128);
    for (const auto& [bits, sign] : signed_resource_terms()) expected(basis_index(bits)) = sign * amp;
    CHECK((v - expected).norm() < 1e-15);
    CHECK_THAT(v.norm(), WithinAbs(1.0, 1e-15));
    int support = 0;
    for (Eigen::Index i = 0; i < 128; ++i) support += std::abs(v(i)) > 1e-15;
    CHECK(support == 8);
}

TEST_CASE("basis labels and state vector validation", "[states]") {
    CHECK(basis_index("0101") == 5);
    CHECK(bit_label(5, 4) == "0101");
    CHECK_THAT(basis_ket("+-")(3).real(), WithinAbs(-0.5, 1e-15));
    CHECK_THROWS(single_ket('x'));
    CHECK_THROWS(StateVector(ket({1, 1})));
    CHECK_THROWS(StateVector(ket({1, 0, 0})));
    CHECK_NOTHROW(StateVector(ket({0, 1})));
}

TEST_CASE("target spec validation", "[states]") {
    CHECK_THROWS(TargetSpec::make(2.0, 0.0));
    CHECK_THROWS(TargetSpec::make(0.0, 0.0));
    const auto s = TargetSpec::make(0.6, Complex(0.0, 0.8));
    CHECK_FALSE(s.is_real());
    const Vector xi = target_state(TargetSpec::make(0.6, 0.8)).amplitudes();
    CHECK(xi(0) == Complex(0.6));
    CHECK(xi(3) == Complex(0.8));
    CHECK(std::abs(xi(1)) + std::abs(xi(2)) == 0.0);
}

TEST_CASE("zeta basis is orthonormal for real and complex targets", "[states]") {
    for (const auto& spec : {TargetSpec::equal_weights(), TargetSpec::make(0.6, 0.8),
                             TargetSpec::make(Complex(0.6, 0.0), Complex(0.0, 0.8)),
                             TargetSpec::make(Complex(0.48, 0.36), Complex(-0.64, 0.48))}) {
        const auto z = zeta_basis(spec);
        CHECK(std::abs(z[SenderOutcome::Zeta1].amplitudes().dot(z[SenderOutcome::Zeta2].amplitudes())) < 1e-15);
        CHECK_THAT(z[SenderOutcome::Zeta1].amplitudes().norm(), WithinAbs(1.0, 1e-15));
        CHECK_THAT(z[SenderOutcome::Zeta2].amplitudes().norm(), WithinAbs(1.0, 1e-15));
    }
    const auto z = zeta_basis(TargetSpec::make(0.6, 0.8));
    CHECK(z[SenderOutcome::Zeta2][0] == Complex(0.8));
    CHECK(z[SenderOutcome::Zeta2][1] == Complex(-0.6));
}

TEST_CASE("receiver expressions evaluate in the label basis", "[states]") {
    const auto spec = TargetSpec::make(0.6, 0.8);
    const Vector v = evaluate_receiver_expr("a|01>+b|00>", spec);
    CHECK((v - (0.6 * basis_ket("01") + 0.8 * basis_ket("00"))).norm() < 1e-15);
    const Vector w = evaluate_receiver_expr("b|-+>-a|++>", spec);
    CHECK((w - (0.8 * basis_ket("-+") - 0.6 * basis_ket("++"))).norm() < 1e-15);
}

TEST_CASE("Bob factorization reassembles the resource state", "[states][factorization]") {
    for (const auto& spec : {TargetSpec::equal_weights(), TargetSpec::make(0.6, 0.8),
                             TargetSpec::make(0.8, -0.6)}) {
        const auto rep = verify_factorization(FactorizationVariant::BobReceiver, spec);
        CHECK(rep.residual < 1e-12);
        CHECK(rep.discrepancies.empty());
        CHECK_THAT(rep.branch_norm[0], WithinAbs(1.0, 1e-12));
        CHECK_THAT(rep.branch_norm[1], WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("Bob factorization terms are the exact branch components", "[states][factorization][oracle]") {
    // Component oracle: project the state directly onto zeta (x) |c> (x) |d> on A, C, D.
    const auto spec = TargetSpec::make(0.6, 0.8);
    const auto z = zeta_basis(spec);
    const Vector& psi = resource_state().amplitudes();
    for (const auto& br : printed_branches(FactorizationVariant::BobReceiver, spec)) {
        Vector bob = Vector::Zero(4);
        for (Eigen::Index b = 0; b < 4; ++b) {
            const Vector probe = kron(kron(kron(z[br.sender_outcome].amplitudes(), basis_ket(bit_label(b, 2))),
                                           basis_ket(br.collaborator_outcomes[0])),
                                      basis_ket(br.collaborator_outcomes[1]));
            bob(b) = probe.dot(psi);
        }
        // Psi = 1/sqrt2 sum zeta (x) 1/2 [...], so each bracket entry is 2 sqrt2 times the overlap.
        INFO(to_string(br.sender_outcome) << " " << br.collaborator_outcomes[0]);
        CHECK((2.0 * std::sqrt(2.0) * bob - br.receiver_substate).norm() < 1e-12);
    }
}

TEST_CASE("Bob branches only occur with equal Charlie and David outcomes", "[states]") {
    const auto spec = TargetSpec::make(0.6, 0.8);
    const auto z = zeta_basis(spec);
    const Vector& psi = resource_state().amplitudes();
    for (const char* c : {"00", "01", "10", "11"})
        for (const char* d : {"00", "01", "10", "11"}) {
            if (std::string(c) == d) continue;
            double w = 0;
            for (auto s : {SenderOutcome::Zeta1, SenderOutcome::Zeta2})
                for (Eigen::Index b = 0; b < 4; ++b)
                    w += std::norm(kron(kron(kron(z[s].amplitudes(), basis_ket(bit_label(b, 2))), basis_ket(c)),
                                        basis_ket(d))
                                       .dot(psi));
            CHECK(w < 1e-28);
        }
}

TEST_CASE("David factorization residual is localized to three printed lines", "[states][factorization]") {
    for (const auto& spec : {TargetSpec::equal_weights(), TargetSpec::make(0.6, 0.8)}) {
        const auto rep = verify_factorization(FactorizationVariant::DavidReceiver, spec);
        CHECK(rep.residual > 1e-3);
        REQUIRE(rep.discrepancies.size() == 3);
        CHECK(rep.discrepancies[0].sender == SenderOutcome::Zeta1);
        CHECK(rep.discrepancies[0].line == 3);
        CHECK(rep.discrepancies[0].first_label == "-+");
        CHECK(rep.discrepancies[1].sender == SenderOutcome::Zeta1);
        CHECK(rep.discrepancies[1].line == 8);
        CHECK(rep.discrepancies[2].sender == SenderOutcome::Zeta2);
        CHECK(rep.discrepancies[2].line == 6);
        CHECK(rep.discrepancies[2].printed_expr.find("b|-+>-a|-+>") != std::string::npos);
    }
}

TEST_CASE("David factorization with the three lines corrected is exact", "[states][factorization][oracle]") {
    // Substituting the expected expressions must reassemble the state.
    const auto spec = TargetSpec::make(0.6, 0.8);
    const auto rep = verify_factorization(FactorizationVariant::DavidReceiver, spec);
    const auto& data = printed_factorization(FactorizationVariant::DavidReceiver);
    const auto z = zeta_basis(spec);
    Vector total = Vector::Zero(128);
    std::map<std::pair<int, int>, std::string> fixed;
    for (const auto& d : rep.discrepancies) fixed[{static_cast<int>(d.sender), d.line}] = d.expected_expr;
    std::map<int, int> line_of;
    for (const auto& t : data.terms) {
        const int line = ++line_of[static_cast<int>(t.sender)];
        const auto it = fixed.find({static_cast<int>(t.sender), line});
        const Vector recv = it == fixed.end() ? static_cast<double>(t.sign) * evaluate_receiver_expr(t.receiver_expr, spec)
                                              : evaluate_receiver_expr(it->second, spec);
        total += kron(kron(kron(z[t.sender].amplitudes(), basis_ket(t.first_label)), basis_ket(t.second_label)),
                      data.prefactor * recv);
    }
    CHECK((total / std::sqrt(2.0) - resource_state().amplitudes()).norm() < 1e-12);
}
