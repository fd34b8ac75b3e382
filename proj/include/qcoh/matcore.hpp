#pragma once

// Dense complex-matrix primitives: Hermitian eigendecomposition, singular
// values, trace norm, LU determinant, and the check that ordered diagonal
// magnitudes are majorized by ordered singular values.
//
// All operations are pure; matrices are immutable after construction and
// safe to share across threads. Sizes here are small (d <= 64), so storage
// is a plain row-major vector.

#include <complex>
#include <initializer_list>
#include <vector>

#include "qcoh/errors.hpp"

namespace qcoh {

using cdouble = std::complex<double>;

class ComplexMatrix {
public:
    // Zero-filled matrix.
    ComplexMatrix(int rows, int cols);

    // Row-major entries; length must equal rows*cols and all entries finite.
    ComplexMatrix(int rows, int cols, std::vector<cdouble> entries);

    // Convenience for literals: rows of equal length.
    ComplexMatrix(std::initializer_list<std::initializer_list<cdouble>> rows);

    static ComplexMatrix identity(int n);
    static ComplexMatrix from_diagonal(const std::vector<double>& diag);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cdouble& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
    const cdouble& operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }

    const std::vector<cdouble>& entries() const { return entries_; }

private:
    int rows_;
    int cols_;
    std::vector<cdouble> entries_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cdouble s, const ComplexMatrix& m);
inline ComplexMatrix operator*(double s, const ComplexMatrix& m) { return cdouble(s, 0.0) * m; }

ComplexMatrix adjoint(const ComplexMatrix& m);
cdouble trace(const ComplexMatrix& m);

// Largest entrywise |a_ij - b_ij|; shapes must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Square matrix with h(i,j) == conj(h(j,i)). Construction checks the input
// within `tol` and then symmetrizes, so the invariant holds exactly
// afterwards.
class HermitianMatrix {
public:
    explicit HermitianMatrix(const ComplexMatrix& m, double tol = 1e-12);
    HermitianMatrix(int dim, std::vector<cdouble> entries, double tol = 1e-12);

    int dim() const { return m_.rows(); }
    const cdouble& operator()(int i, int j) const { return m_(i, j); }
    const ComplexMatrix& matrix() const { return m_; }

private:
    ComplexMatrix m_;
};

struct EigResult {
    std::vector<double> eigenvalues;  // descending
    ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

// Full eigendecomposition; U diag(lambda) U^dag reconstructs the input
// within 1e-10 entrywise and U is unitary within 1e-10.
EigResult eig_hermitian(const HermitianMatrix& m);

// Eigenvalues only, descending.
std::vector<double> eigenvalues_hermitian(const HermitianMatrix& m);

// Nonnegative, descending; count = min(rows, cols).
std::vector<double> singular_values(const ComplexMatrix& m);

// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

// Hermitian fast path: sum of |eigenvalues|.
double trace_norm(const HermitianMatrix& m);

// LU with partial pivoting; square input only.
cdouble determinant(const ComplexMatrix& m);

struct MajorizationReport {
    bool holds;
    std::vector<double> prefix_gaps;  // sigma-prefix minus diagonal-prefix, per i
};

// Checks that prefix sums of absolutely-descending diagonal magnitudes stay
// below the matching prefix sums of descending singular values.
MajorizationReport check_diag_majorization(const ComplexMatrix& m, double slack = 1e-10);

}  // namespace qcoh
