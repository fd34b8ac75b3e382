#include "qcoh/matcore.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace qcoh {

namespace {

void check_finite(int rows, int cols, const std::vector<cdouble>& entries) {
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const cdouble& v = entries[static_cast<std::size_t>(i) * cols + j];
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw InvalidMatrixError("matrix entry (" + std::to_string(i) + "," +
                                         std::to_string(j) + ") is not finite");
            }
        }
    }
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
    ComplexMatrix m(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
    for (int i = 0; i < e.rows(); ++i)
        for (int j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
    return m;
}

}  // namespace

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw ShapeError("matrix dimensions must be positive");
    entries_.assign(static_cast<std::size_t>(rows) * cols, cdouble(0.0, 0.0));
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<cdouble> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows < 1 || cols < 1) throw ShapeError("matrix dimensions must be positive");
    if (entries_.size() != static_cast<std::size_t>(rows) * cols)
        throw ShapeError("entry count does not equal rows*cols");
    check_finite(rows_, cols_, entries_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cdouble>> rows)
    : rows_(static_cast<int>(rows.size())), cols_(0) {
    if (rows_ == 0) throw ShapeError("matrix dimensions must be positive");
    cols_ = static_cast<int>(rows.begin()->size());
    if (cols_ == 0) throw ShapeError("matrix dimensions must be positive");
    entries_.reserve(static_cast<std::size_t>(rows_) * cols_);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != cols_) throw ShapeError("ragged row lengths");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
    check_finite(rows_, cols_, entries_);
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::from_diagonal(const std::vector<double>& diag) {
    const int n = static_cast<int>(diag.size());
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("shape mismatch in +");
    ComplexMatrix out = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
    return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("shape mismatch in -");
    ComplexMatrix out = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
    return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("shape mismatch in *");
    ComplexMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const cdouble aik = a(i, k);
            if (aik == cdouble(0.0, 0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexMatrix operator*(cdouble s, const ComplexMatrix& m) {
    ComplexMatrix out = m;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) *= s;
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

cdouble trace(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw ShapeError("trace of non-square matrix");
    cdouble t(0.0, 0.0);
    for (int i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("shape mismatch in max_abs_diff");
    double worst = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tol) : m_(m) {
    if (m.rows() != m.cols()) throw ShapeError("hermitian matrix must be square");
    for (int i = 0; i < m.rows(); ++i) {
        if (std::abs(m(i, i).imag()) > tol)
            throw InvalidMatrixError("diagonal entry " + std::to_string(i) + " is not real");
        for (int j = i + 1; j < m.cols(); ++j) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol)
                throw InvalidMatrixError("entries (" + std::to_string(i) + "," +
                                         std::to_string(j) + ") violate Hermiticity");
        }
    }
    // Symmetrize so the invariant holds exactly from here on.
    for (int i = 0; i < m.rows(); ++i) {
        m_(i, i) = cdouble(m_(i, i).real(), 0.0);
        for (int j = i + 1; j < m.cols(); ++j) {
            const cdouble avg = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
            m_(i, j) = avg;
            m_(j, i) = std::conj(avg);
        }
    }
}

HermitianMatrix::HermitianMatrix(int dim, std::vector<cdouble> entries, double tol)
    : HermitianMatrix(ComplexMatrix(dim, dim, std::move(entries)), tol) {}

EigResult eig_hermitian(const HermitianMatrix& m) {
    const Eigen::MatrixXcd e = to_eigen(m.matrix());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e);
    if (es.info() != Eigen::Success) {
        const double residual = (e * es.eigenvectors() -
                                 es.eigenvectors() * es.eigenvalues().asDiagonal())
                                    .cwiseAbs()
                                    .maxCoeff();
        throw EigenSolverError("hermitian eigensolver did not converge", m.dim(), residual);
    }
    const int n = m.dim();
    EigResult out{std::vector<double>(n), ComplexMatrix(n, n)};
    // Eigen sorts ascending; flip to the descending convention.
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = es.eigenvalues()(n - 1 - k);
        for (int i = 0; i < n; ++i) out.eigenvectors(i, k) = es.eigenvectors()(i, n - 1 - k);
    }
    return out;
}

std::vector<double> eigenvalues_hermitian(const HermitianMatrix& m) {
    const Eigen::MatrixXcd e = to_eigen(m.matrix());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw EigenSolverError("hermitian eigensolver did not converge", m.dim(), 0.0);
    const int n = m.dim();
    std::vector<double> vals(n);
    for (int k = 0; k < n; ++k) vals[k] = es.eigenvalues()(n - 1 - k);
    return vals;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    const Eigen::MatrixXcd e = to_eigen(m);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
    if (svd.info() != Eigen::Success)
        throw EigenSolverError("singular value decomposition did not converge",
                               std::min(m.rows(), m.cols()), 0.0);
    std::vector<double> out(svd.singularValues().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = svd.singularValues()(static_cast<int>(i));
    return out;
}

double trace_norm(const ComplexMatrix& m) {
    double sum = 0.0;
    for (double s : singular_values(m)) sum += s;
    return sum;
}

double trace_norm(const HermitianMatrix& m) {
    double sum = 0.0;
    for (double lambda : eigenvalues_hermitian(m)) sum += std::abs(lambda);
    return sum;
}

cdouble determinant(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw ShapeError("determinant of non-square matrix");
    return to_eigen(m).partialPivLu().determinant();
}

MajorizationReport check_diag_majorization(const ComplexMatrix& m, double slack) {
    const int q = std::min(m.rows(), m.cols());
    std::vector<double> diag(q);
    for (int i = 0; i < q; ++i) diag[i] = std::abs(m(i, i));
    std::sort(diag.begin(), diag.end(), std::greater<>());
    const std::vector<double> sigma = singular_values(m);

    MajorizationReport report{true, std::vector<double>(q)};
    double diag_prefix = 0.0;
    double sigma_prefix = 0.0;
    for (int i = 0; i < q; ++i) {
        diag_prefix += diag[i];
        sigma_prefix += sigma[i];
        report.prefix_gaps[i] = sigma_prefix - diag_prefix;
        if (report.prefix_gaps[i] < -slack) report.holds = false;
    }
    return report;
}

}  // namespace qcoh
