// Copyright 2026 The dqsd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dqsd/operator.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "dqsd/errors.h"

namespace dqsd {

namespace {

void check_dim(std::size_t dim) {
    if (dim == 0 || !std::has_single_bit(dim)) {
        throw ArgumentError("operator dimension must be a power of two, got " + std::to_string(dim));
    }
    if (std::countr_zero(dim) > static_cast<int>(kMaxOperatorQubits)) {
        throw ResourceError("operator spans more than " + std::to_string(kMaxOperatorQubits) + " qubits");
    }
}

void check_same_dim(const Operator &a, const Operator &b) {
    if (a.dim() != b.dim()) {
        throw ArgumentError(
            "dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
}

}  // namespace

Operator::Operator() : dim_(1), entries_(1) {
}

Operator::Operator(std::size_t dim) : dim_(dim) {
    check_dim(dim);
    entries_.assign(dim * dim, Complex{});
}

Operator::Operator(std::size_t dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {
    check_dim(dim);
    if (entries_.size() != dim * dim) {
        throw ArgumentError("operator of dimension " + std::to_string(dim) + " needs " +
                            std::to_string(dim * dim) + " entries, got " + std::to_string(entries_.size()));
    }
}

Operator::Operator(std::initializer_list<std::initializer_list<Complex>> rows) : dim_(rows.size()) {
    check_dim(dim_);
    entries_.reserve(dim_ * dim_);
    for (const auto &row : rows) {
        if (row.size() != dim_) {
            throw ArgumentError("operator rows must all have length " + std::to_string(dim_));
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

Operator Operator::identity(std::size_t dim) {
    Operator result(dim);
    for (std::size_t k = 0; k < dim; k++) {
        result(k, k) = 1.0;
    }
    return result;
}

Operator Operator::outer(std::span<const Complex> ket) {
    Operator result(ket.size());
    for (std::size_t r = 0; r < ket.size(); r++) {
        for (std::size_t c = 0; c < ket.size(); c++) {
            result(r, c) = ket[r] * std::conj(ket[c]);
        }
    }
    return result;
}

std::size_t Operator::num_qubits() const {
    return static_cast<std::size_t>(std::countr_zero(dim_));
}

Operator Operator::adjoint() const {
    Operator result(dim_);
    for (std::size_t r = 0; r < dim_; r++) {
        for (std::size_t c = 0; c < dim_; c++) {
            result(c, r) = std::conj((*this)(r, c));
        }
    }
    return result;
}

Operator Operator::transpose() const {
    Operator result(dim_);
    for (std::size_t r = 0; r < dim_; r++) {
        for (std::size_t c = 0; c < dim_; c++) {
            result(c, r) = (*this)(r, c);
        }
    }
    return result;
}

Operator Operator::conjugate() const {
    Operator result = *this;
    for (auto &z : result.entries_) {
        z = std::conj(z);
    }
    return result;
}

Complex Operator::trace() const {
    Complex sum{};
    for (std::size_t k = 0; k < dim_; k++) {
        sum += (*this)(k, k);
    }
    return sum;
}

Operator &Operator::operator+=(const Operator &other) {
    check_same_dim(*this, other);
    for (std::size_t k = 0; k < entries_.size(); k++) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

Operator &Operator::operator-=(const Operator &other) {
    check_same_dim(*this, other);
    for (std::size_t k = 0; k < entries_.size(); k++) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

Operator &Operator::operator*=(Complex scale) {
    for (auto &z : entries_) {
        z *= scale;
    }
    return *this;
}

bool Operator::approx_equal(const Operator &other, double tol) const {
    if (dim_ != other.dim_) {
        return false;
    }
    for (std::size_t k = 0; k < entries_.size(); k++) {
        if (std::abs(entries_[k] - other.entries_[k]) > tol) {
            return false;
        }
    }
    return true;
}

bool Operator::is_hermitian(double tol) const {
    for (std::size_t r = 0; r < dim_; r++) {
        for (std::size_t c = r; c < dim_; c++) {
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

bool Operator::is_unitary(double tol) const {
    return (adjoint() * *this).approx_equal(identity(dim_), tol);
}

bool Operator::is_psd(double tol) const {
    if (!is_hermitian(tol)) {
        return false;
    }
    return hermitian_eigenvalues(*this).front() >= -tol;
}

Operator operator+(Operator a, const Operator &b) {
    a += b;
    return a;
}

Operator operator-(Operator a, const Operator &b) {
    a -= b;
    return a;
}

Operator operator*(const Operator &a, const Operator &b) {
    check_same_dim(a, b);
    std::size_t n = a.dim();
    Operator result(n);
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t k = 0; k < n; k++) {
            Complex v = a(r, k);
            if (v == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < n; c++) {
                result(r, c) += v * b(k, c);
            }
        }
    }
    return result;
}

Operator operator*(Complex scale, Operator a) {
    a *= scale;
    return a;
}

Complex trace_of_product(const Operator &a, const Operator &b) {
    check_same_dim(a, b);
    std::size_t n = a.dim();
    Complex sum{};
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++) {
            sum += a(r, c) * b(c, r);
        }
    }
    return sum;
}

Operator kron(const Operator &a, const Operator &b) {
    std::size_t na = a.dim();
    std::size_t nb = b.dim();
    Operator result(na * nb);
    for (std::size_t ra = 0; ra < na; ra++) {
        for (std::size_t ca = 0; ca < na; ca++) {
            Complex v = a(ra, ca);
            if (v == Complex{}) {
                continue;
            }
            for (std::size_t rb = 0; rb < nb; rb++) {
                for (std::size_t cb = 0; cb < nb; cb++) {
                    result(ra * nb + rb, ca * nb + cb) = v * b(rb, cb);
                }
            }
        }
    }
    return result;
}

Operator kron(std::span<const Operator> factors) {
    if (factors.empty()) {
        return Operator::identity(1);
    }
    Operator result = factors.front();
    for (std::size_t k = 1; k < factors.size(); k++) {
        result = kron(result, factors[k]);
    }
    return result;
}

Operator partial_trace(const Operator &op, std::span<const std::size_t> keep) {
    std::size_t n = op.num_qubits();
    if (keep.empty()) {
        throw ArgumentError("partial_trace needs at least one kept qubit");
    }
    std::vector<bool> kept(n, false);
    for (std::size_t q : keep) {
        if (q >= n || kept[q]) {
            throw ArgumentError("partial_trace: invalid or repeated qubit index " + std::to_string(q));
        }
        kept[q] = true;
    }
    std::vector<std::size_t> keep_sorted(keep.begin(), keep.end());
    std::sort(keep_sorted.begin(), keep_sorted.end());
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; q++) {
        if (!kept[q]) {
            traced.push_back(q);
        }
    }

    // Qubit q sits at bit (n - 1 - q) of a basis index.
    auto scatter = [n](std::span<const std::size_t> qubits, std::size_t local) {
        std::size_t global = 0;
        std::size_t m = qubits.size();
        for (std::size_t k = 0; k < m; k++) {
            if ((local >> (m - 1 - k)) & 1) {
                global |= std::size_t{1} << (n - 1 - qubits[k]);
            }
        }
        return global;
    };

    std::size_t kd = std::size_t{1} << keep_sorted.size();
    std::size_t td = std::size_t{1} << traced.size();
    Operator result(kd);
    for (std::size_t r = 0; r < kd; r++) {
        std::size_t gr = scatter(keep_sorted, r);
        for (std::size_t c = 0; c < kd; c++) {
            std::size_t gc = scatter(keep_sorted, c);
            Complex sum{};
            for (std::size_t t = 0; t < td; t++) {
                std::size_t gt = scatter(traced, t);
                sum += op(gr | gt, gc | gt);
            }
            result(r, c) = sum;
        }
    }
    return result;
}

std::vector<double> hermitian_eigenvalues(const Operator &op) {
    std::size_t n = op.dim();
    Eigen::MatrixXcd m(n, n);
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++) {
            m(r, c) = op(r, c);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double trace_norm(const Operator &op) {
    double sum = 0;
    for (double v : hermitian_eigenvalues(op)) {
        sum += std::abs(v);
    }
    return sum;
}

DensityMatrix::DensityMatrix(Operator op, double tol) : op_(std::move(op)) {
    if (std::abs(op_.trace() - 1.0) > tol) {
        throw ValidationError("density matrix must have unit trace");
    }
    if (!op_.is_hermitian(tol)) {
        throw ValidationError("density matrix must be Hermitian");
    }
    if (!op_.is_psd(tol)) {
        throw ValidationError("density matrix must be positive semidefinite");
    }
}

DensityMatrix DensityMatrix::from_ket(std::span<const Complex> ket) {
    double norm2 = 0;
    for (const auto &z : ket) {
        norm2 += std::norm(z);
    }
    if (norm2 <= 0) {
        throw ValidationError("cannot build a state from the zero vector");
    }
    Operator op = Operator::outer(ket);
    op *= 1.0 / norm2;
    return DensityMatrix(std::move(op));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t num_qubits) {
    std::size_t dim = std::size_t{1} << num_qubits;
    Operator op = Operator::identity(dim);
    op *= 1.0 / static_cast<double>(dim);
    return DensityMatrix(std::move(op));
}

double DensityMatrix::purity() const {
    return trace_of_product(op_, op_).real();
}

DensityMatrix kron(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix(kron(a.op(), b.op()));
}

DensityMatrix conjugate_in_computational_basis(const DensityMatrix &rho) {
    return DensityMatrix(rho.op().conjugate());
}

}  // namespace dqsd
