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

// Dense complex linear algebra over qubit registers.
//
// Basis convention: qubit 0 is the most significant bit of a basis index,
// i.e. |q0 q1 ... q(n-1)> has index sum_k q_k * 2^(n-1-k).

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hrsp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotPsdError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Basic helpers

inline std::size_t dim_of(int num_qubits) { return std::size_t{1} << num_qubits; }

/// Number of qubits n such that 2^n == dim, or -1 if dim is not a power of two.
inline int qubits_of(Eigen::Index dim) {
    if (dim <= 0) return -1;
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    return (Eigen::Index{1} << n) == dim ? n : -1;
}

inline Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

inline Complex trace(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("trace: matrix is not square");
    return m.trace();
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("max_abs_diff: shape mismatch");
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& m, double tol = kHermitianTol) {
    return m.rows() == m.cols() && max_abs_diff(m, m.adjoint()) <= tol;
}

inline Matrix outer(const Vector& v) { return v * v.adjoint(); }

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Matrix kron(std::span<const Matrix> factors) {
    if (factors.empty()) return Matrix::Identity(1, 1);
    Matrix out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
    return out;
}

inline Matrix kron(std::initializer_list<Matrix> factors) {
    return kron(std::span<const Matrix>(factors.begin(), factors.size()));
}

inline Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

// ---------------------------------------------------------------------------
// Parties and qubit layout

enum class Party { Alice, Bob, Charlie, David };

inline constexpr std::array<Party, 4> kAllParties{Party::Alice, Party::Bob, Party::Charlie,
                                                  Party::David};

inline std::string to_string(Party p) {
    switch (p) {
        case Party::Alice: return "alice";
        case Party::Bob: return "bob";
        case Party::Charlie: return "charlie";
        case Party::David: return "david";
    }
    return "?";
}

inline Party party_from_string(const std::string& s) {
    for (Party p : kAllParties)
        if (to_string(p) == s) return p;
    throw std::invalid_argument("unknown party '" + s + "'");
}

/// Assignment of qubit indices to parties. Must partition 0..total_qubits-1.
class QubitLayout {
public:
    QubitLayout(int total_qubits, std::map<Party, std::vector<int>> assignment)
        : total_qubits_(total_qubits), assignment_(std::move(assignment)) {
        std::vector<int> seen(static_cast<std::size_t>(std::max(total_qubits_, 0)), 0);
        if (total_qubits_ < 1) throw std::invalid_argument("QubitLayout: need at least one qubit");
        for (const auto& [party, qs] : assignment_) {
            for (int q : qs) {
                if (q < 0 || q >= total_qubits_)
                    throw std::invalid_argument("QubitLayout: qubit index " + std::to_string(q) +
                                                " out of range");
                if (seen[static_cast<std::size_t>(q)]++)
                    throw std::invalid_argument("QubitLayout: qubit " + std::to_string(q) +
                                                " assigned twice");
            }
        }
        for (int q = 0; q < total_qubits_; ++q)
            if (!seen[static_cast<std::size_t>(q)])
                throw std::invalid_argument("QubitLayout: qubit " + std::to_string(q) +
                                            " unassigned");
    }

    /// Alice:[0], Bob:[1,2], Charlie:[3,4], David:[5,6].
    static QubitLayout protocol() {
        return QubitLayout(7, {{Party::Alice, {0}},
                               {Party::Bob, {1, 2}},
                               {Party::Charlie, {3, 4}},
                               {Party::David, {5, 6}}});
    }

    int total_qubits() const { return total_qubits_; }

    const std::vector<int>& qubits(Party p) const {
        static const std::vector<int> none;
        auto it = assignment_.find(p);
        return it == assignment_.end() ? none : it->second;
    }

    /// All qubits not owned by `p`, ascending.
    std::vector<int> complement(Party p) const {
        const auto& own = qubits(p);
        std::vector<int> out;
        for (int q = 0; q < total_qubits_; ++q)
            if (std::find(own.begin(), own.end(), q) == own.end()) out.push_back(q);
        return out;
    }

private:
    int total_qubits_;
    std::map<Party, std::vector<int>> assignment_;
};

// ---------------------------------------------------------------------------
// Partial trace

namespace detail {

// Scatter the bits of `sub` (|qubits| bits, first qubit = most significant) onto
// the positions `qubits` of an n-qubit basis index.
inline std::size_t scatter_bits(std::size_t sub, std::span<const int> qubits, int n) {
    std::size_t out = 0;
    const auto k = qubits.size();
    for (std::size_t b = 0; b < k; ++b) {
        const std::size_t bit = (sub >> (k - 1 - b)) & 1U;
        out |= bit << (n - 1 - qubits[b]);
    }
    return out;
}

inline std::vector<int> sorted_unique(std::span<const int> qs, int n, const char* what) {
    std::vector<int> v(qs.begin(), qs.end());
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
        throw std::invalid_argument(std::string(what) + ": repeated qubit index");
    for (int q : v)
        if (q < 0 || q >= n)
            throw std::invalid_argument(std::string(what) + ": qubit index " + std::to_string(q) +
                                        " out of range for " + std::to_string(n) + " qubits");
    return v;
}

}  // namespace detail

/// Trace out `traced` from an n-qubit operator. The remaining qubits keep their
/// relative order.
inline Matrix partial_trace(const Matrix& rho, std::span<const int> traced, int num_qubits) {
    if (rho.rows() != rho.cols() || rho.rows() != static_cast<Eigen::Index>(dim_of(num_qubits)))
        throw DimensionError("partial_trace: expected a " + std::to_string(dim_of(num_qubits)) +
                             "x" + std::to_string(dim_of(num_qubits)) + " matrix, got " +
                             std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()));
    const auto tr = detail::sorted_unique(traced, num_qubits, "partial_trace");
    std::vector<int> kept;
    for (int q = 0; q < num_qubits; ++q)
        if (!std::binary_search(tr.begin(), tr.end(), q)) kept.push_back(q);

    const std::size_t dk = dim_of(static_cast<int>(kept.size()));
    const std::size_t dt = dim_of(static_cast<int>(tr.size()));
    std::vector<std::size_t> kept_off(dk), tr_off(dt);
    for (std::size_t i = 0; i < dk; ++i) kept_off[i] = detail::scatter_bits(i, kept, num_qubits);
    for (std::size_t t = 0; t < dt; ++t) tr_off[t] = detail::scatter_bits(t, tr, num_qubits);

    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (std::size_t r = 0; r < dk; ++r)
        for (std::size_t c = 0; c < dk; ++c) {
            Complex acc{0.0, 0.0};
            for (std::size_t t = 0; t < dt; ++t)
                acc += rho(static_cast<Eigen::Index>(kept_off[r] | tr_off[t]),
                           static_cast<Eigen::Index>(kept_off[c] | tr_off[t]));
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
        }
    return out;
}

inline Matrix partial_trace(const Matrix& rho, std::initializer_list<int> traced, int num_qubits) {
    return partial_trace(rho, std::span<const int>(traced.begin(), traced.size()), num_qubits);
}

inline Matrix partial_trace(const Matrix& rho, std::span<const int> traced,
                            const QubitLayout& layout) {
    return partial_trace(rho, traced, layout.total_qubits());
}

// ---------------------------------------------------------------------------
// Local operators

/// M * rho * M^dagger where M acts as `op` on `qubits` (in that order) and as the
/// identity elsewhere. Equivalent to conjugating by the full kron product without
/// forming it.
inline Matrix conjugate_local(const Matrix& rho, const Matrix& op, std::span<const int> qubits,
                              int num_qubits) {
    const auto n = static_cast<Eigen::Index>(dim_of(num_qubits));
    if (rho.rows() != n || rho.cols() != n)
        throw DimensionError("conjugate_local: operator size does not match qubit count");
    const auto k = static_cast<int>(qubits.size());
    if (op.rows() != static_cast<Eigen::Index>(dim_of(k)) || op.cols() != op.rows())
        throw DimensionError("conjugate_local: local operator size does not match qubit list");
    detail::sorted_unique(qubits, num_qubits, "conjugate_local");

    const std::size_t dl = dim_of(k);
    std::vector<std::size_t> local_off(dl);
    for (std::size_t s = 0; s < dl; ++s) local_off[s] = detail::scatter_bits(s, qubits, num_qubits);
    std::size_t mask = 0;
    for (int q : qubits) mask |= std::size_t{1} << (num_qubits - 1 - q);

    auto apply_left = [&](const Matrix& m) {
        Matrix out = Matrix::Zero(n, n);
        for (std::size_t base = 0; base < static_cast<std::size_t>(n); ++base) {
            if (base & mask) continue;
            for (std::size_t a = 0; a < dl; ++a) {
                const auto row = static_cast<Eigen::Index>(base | local_off[a]);
                for (std::size_t b = 0; b < dl; ++b) {
                    const Complex w = op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
                    if (w == Complex{}) continue;
                    out.row(row) += w * m.row(static_cast<Eigen::Index>(base | local_off[b]));
                }
            }
        }
        return out;
    };
    const Matrix left = apply_left(rho);
    return apply_left(left.adjoint()).adjoint();
}

// ---------------------------------------------------------------------------
// Hermitian spectral helpers

struct HermitianEigen {
    Eigen::VectorXd values;  // ascending
    Matrix vectors;          // columns
};

inline HermitianEigen hermitian_eigen(const Matrix& h) {
    if (h.rows() != h.cols()) throw DimensionError("hermitian_eigen: matrix is not square");
    if (!is_hermitian(h)) throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian");
    const Matrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_eigen: solver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

/// Hermitian PSD check: Hermitian within kHermitianTol, eigenvalues >= -kPsdTol.
inline bool is_psd(const Matrix& h) {
    if (!is_hermitian(h)) return false;
    return hermitian_eigen(h).values.minCoeff() >= -kPsdTol;
}

/// Relative eigenvalue resolution of the Hermitian solver.
inline constexpr double kSpectralFloor = 64.0 * std::numeric_limits<double>::epsilon();

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in [-1e-10, 0)
/// are clamped to zero, as are eigenvalues below relative_floor * lambda_max.
inline Matrix psd_sqrt(const Matrix& h, double relative_floor = 0.0) {
    const auto eig = hermitian_eigen(h);
    const double floor = eig.values.size() ? relative_floor * std::max(eig.values.maxCoeff(), 0.0) : 0.0;
    Eigen::VectorXd root(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        const double lambda = eig.values(i);
        if (lambda < -kPsdTol)
            throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(lambda) +
                              " below -1e-10, matrix is not PSD");
        root(i) = lambda <= floor ? 0.0 : std::sqrt(lambda);
    }
    return eig.vectors * root.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

inline Eigen::Index numerical_rank(const Matrix& m, double tol = 1e-9) {
    Eigen::JacobiSVD<Matrix> svd(m);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol) ++r;
    return r;
}

}  // namespace hrsp
