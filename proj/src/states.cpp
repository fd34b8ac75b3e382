#include "qcoh/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qcoh/rng.hpp"

namespace qcoh {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-10;
constexpr double kSumTol = 1e-12;
constexpr int kFamilyRejectionCap = 1000;

// Smallest eigenvalue of the assembled family matrix.
double family_min_eigenvalue(const std::vector<double>& x, double a) {
    const int d = static_cast<int>(x.size());
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = (i == j) ? x[i] : a;
    const std::vector<double> eigs = eigenvalues_hermitian(HermitianMatrix(m));
    return eigs.back();
}

}  // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix& m) : h_(m) { validate(); }

DensityMatrix::DensityMatrix(HermitianMatrix h) : h_(std::move(h)) { validate(); }

void DensityMatrix::validate() const {
    const double tr = trace(h_.matrix()).real();
    if (std::abs(tr - 1.0) > kTraceTol)
        throw NormalizationError("density matrix trace is " + std::to_string(tr));
    const std::vector<double> eigs = eigenvalues_hermitian(h_);
    if (eigs.back() < -kPsdTol)
        throw NotAStateError(
            "density matrix is not positive semidefinite (eigenvalue " +
                std::to_string(eigs.back()) + ")",
            eigs.back());
}

DiagonalState::DiagonalState(std::vector<double> p, double sum_tol) : p_(std::move(p)) {
    if (p_.empty()) throw ShapeError("diagonal state must have at least one entry");
    double sum = 0.0;
    for (double& pi : p_) {
        if (!std::isfinite(pi)) throw InvalidMatrixError("diagonal state entry is not finite");
        if (pi < 0.0) {
            if (pi < -1e-12) throw NotAStateError("diagonal state entry is negative", pi);
            pi = 0.0;
        }
        sum += pi;
    }
    if (std::abs(sum - 1.0) > sum_tol)
        throw NormalizationError("diagonal state probabilities sum to " + std::to_string(sum));
}

FamilyState::FamilyState(std::vector<double> x, double a) : x_(std::move(x)), a_(a) {
    if (x_.size() < 2) throw DimensionError("family state needs dimension >= 2");
    if (!std::isfinite(a_)) throw InvalidMatrixError("off-diagonal value is not finite");
    double sum = 0.0;
    for (double xi : x_) {
        if (!std::isfinite(xi)) throw InvalidMatrixError("diagonal entry is not finite");
        sum += xi;
    }
    if (std::abs(sum - 1.0) > kSumTol)
        throw NormalizationError("family state diagonal sums to " + std::to_string(sum));
    const double min_eig = family_min_eigenvalue(x_, a_);
    if (min_eig < -kPsdTol)
        throw NotAStateError(
            "family state is not positive semidefinite (eigenvalue " +
                std::to_string(min_eig) + ")",
            min_eig);
}

DensityMatrix FamilyState::to_density() const {
    const int d = dim();
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = (i == j) ? x_[i] : a_;
    return DensityMatrix(HermitianMatrix(m));
}

DensityMatrix maximally_coherent(int d) {
    if (d < 2) throw DimensionError("maximally coherent state needs dimension >= 2");
    ComplexMatrix m(d, d);
    const double v = 1.0 / static_cast<double>(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = v;
    return DensityMatrix(HermitianMatrix(m));
}

DiagonalState dephase(const DensityMatrix& rho) {
    std::vector<double> p(rho.dim());
    for (int i = 0; i < rho.dim(); ++i) p[i] = std::max(0.0, rho(i, i).real());
    // The source is a validated density matrix: its trace tolerance plus the
    // clamping of up-to-d entries at the PSD floor bounds the sum error.
    return DiagonalState(std::move(p), kTraceTol + rho.dim() * kPsdTol);
}

DensityMatrix random_density_matrix(int d, std::uint64_t seed) {
    if (d < 2) throw DimensionError("random density matrix needs dimension >= 2");
    Rng rng(seed);
    ComplexMatrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rng.gauss_complex();
    ComplexMatrix ggdag = g * adjoint(g);
    const double tr = trace(ggdag).real();
    return DensityMatrix(HermitianMatrix((1.0 / tr) * ggdag));
}

FamilyState random_family_state(int d, std::uint64_t seed) {
    if (d < 2) throw DimensionError("random family state needs dimension >= 2");
    Rng rng(seed);
    const std::vector<double> x = rng.dirichlet(static_cast<std::size_t>(d));
    const double sign = rng.coin() ? 1.0 : -1.0;
    double a = sign * rng.uniform();
    for (int attempt = 0; attempt < kFamilyRejectionCap; ++attempt) {
        if (family_min_eigenvalue(x, a) >= -kPsdTol) return FamilyState(x, a);
        a *= 0.5;
    }
    throw GenerationError("family state rejection cap exceeded at d=" + std::to_string(d));
}

HermitianMatrix subtract_diagonal(const DensityMatrix& rho, const std::vector<double>& p) {
    if (static_cast<int>(p.size()) != rho.dim())
        throw ShapeError("diagonal length does not match density matrix dimension");
    ComplexMatrix m = rho.matrix();
    for (int i = 0; i < rho.dim(); ++i) m(i, i) -= p[i];
    return HermitianMatrix(m);
}

}  // namespace qcoh
