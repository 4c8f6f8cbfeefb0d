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

#ifndef DQSD_OPERATOR_H
#define DQSD_OPERATOR_H

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dqsd {

using Complex = std::complex<double>;

/// Tolerance for validity and equality checks on exact-arithmetic paths.
inline constexpr double kTolerance = 1e-9;

/// Largest register an Operator may span. Callers impose tighter caps.
inline constexpr std::size_t kMaxOperatorQubits = 10;

/// Dense square complex matrix over a register of qubits, row-major.
///
/// Qubit 0 is the most significant bit of a basis index, so kron(a, b) puts `a` on
/// the leading qubits. The dimension is always a power of two.
class Operator {
   public:
    /// A 1x1 zero operator. Mostly useful as a placeholder before assignment.
    Operator();
    /// Zero operator of the given dimension.
    explicit Operator(std::size_t dim);
    Operator(std::size_t dim, std::vector<Complex> entries);
    /// Row-major construction from nested rows, e.g. {{1, 0}, {0, -1}}.
    Operator(std::initializer_list<std::initializer_list<Complex>> rows);

    static Operator identity(std::size_t dim);
    /// |psi><psi| for a (not necessarily normalized) ket.
    static Operator outer(std::span<const Complex> ket);

    std::size_t dim() const { return dim_; }
    std::size_t num_qubits() const;

    Complex &operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    const Complex &operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    std::span<const Complex> entries() const { return entries_; }

    Operator adjoint() const;
    Operator transpose() const;
    /// Entrywise complex conjugate in the computational basis.
    Operator conjugate() const;
    Complex trace() const;

    Operator &operator+=(const Operator &other);
    Operator &operator-=(const Operator &other);
    Operator &operator*=(Complex scale);

    bool approx_equal(const Operator &other, double tol = kTolerance) const;
    bool is_hermitian(double tol = kTolerance) const;
    bool is_unitary(double tol = kTolerance) const;
    /// Hermitian with every eigenvalue >= -tol.
    bool is_psd(double tol = kTolerance) const;

   private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

Operator operator+(Operator a, const Operator &b);
Operator operator-(Operator a, const Operator &b);
Operator operator*(const Operator &a, const Operator &b);
Operator operator*(Complex scale, Operator a);

/// Tr[a b] without forming the product.
Complex trace_of_product(const Operator &a, const Operator &b);

Operator kron(const Operator &a, const Operator &b);
Operator kron(std::span<const Operator> factors);

/// Traces out every qubit not listed in `keep`. Kept qubits retain their relative order.
Operator partial_trace(const Operator &op, std::span<const std::size_t> keep);

/// Eigenvalues of a Hermitian operator in ascending order.
std::vector<double> hermitian_eigenvalues(const Operator &op);

/// Sum of absolute eigenvalues of a Hermitian operator.
double trace_norm(const Operator &op);

/// A validated quantum state: unit trace, Hermitian and positive semidefinite within kTolerance.
class DensityMatrix {
   public:
    /// Throws ValidationError if `op` is not a density matrix.
    explicit DensityMatrix(Operator op, double tol = kTolerance);

    static DensityMatrix from_ket(std::span<const Complex> ket);
    static DensityMatrix maximally_mixed(std::size_t num_qubits);

    const Operator &op() const { return op_; }
    std::size_t dim() const { return op_.dim(); }
    std::size_t num_qubits() const { return op_.num_qubits(); }
    /// Tr[rho^2].
    double purity() const;
    bool is_pure(double tol = kTolerance) const { return purity() > 1.0 - tol; }

   private:
    Operator op_;
};

DensityMatrix kron(const DensityMatrix &a, const DensityMatrix &b);

/// Complex conjugation of every entry. An involution that maps states to states.
DensityMatrix conjugate_in_computational_basis(const DensityMatrix &rho);

}  // namespace dqsd

#endif  // DQSD_OPERATOR_H
