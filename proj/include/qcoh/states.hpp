#pragma once

// Density matrices, the constant-off-diagonal qudit family, diagonal
// (incoherent) states, and seeded random state generation.
//
// The incoherent basis is the computational basis throughout. Construction
// validates every invariant; values are immutable afterwards.

#include <cstdint>
#include <vector>

#include "qcoh/matcore.hpp"

namespace qcoh {

// d x d Hermitian, unit-trace, positive-semidefinite matrix.
class DensityMatrix {
public:
    // Checks Hermiticity (1e-12), trace (1e-10) and the spectral PSD
    // criterion (smallest eigenvalue >= -1e-10).
    explicit DensityMatrix(const ComplexMatrix& m);
    explicit DensityMatrix(HermitianMatrix h);

    int dim() const { return h_.dim(); }
    const cdouble& operator()(int i, int j) const { return h_(i, j); }
    const HermitianMatrix& hermitian() const { return h_; }
    const ComplexMatrix& matrix() const { return h_.matrix(); }

private:
    void validate() const;

    HermitianMatrix h_;
};

// Probability vector over the computational basis; an incoherent state.
class DiagonalState {
public:
    // p_i >= 0 (entries above -1e-12 are clamped to zero) and sum(p) = 1
    // within sum_tol.
    explicit DiagonalState(std::vector<double> p, double sum_tol = 1e-12);

    int dim() const { return static_cast<int>(p_.size()); }
    const std::vector<double>& p() const { return p_; }

private:
    std::vector<double> p_;
};

// Diagonal vector x plus one real value a filling every off-diagonal slot.
class FamilyState {
public:
    // Requires d >= 2, sum(x) = 1 within 1e-12, and the assembled matrix
    // positive semidefinite within 1e-10.
    FamilyState(std::vector<double> x, double a);

    int dim() const { return static_cast<int>(x_.size()); }
    const std::vector<double>& x() const { return x_; }
    double a() const { return a_; }

    // The d x d matrix with x on the diagonal and a everywhere else.
    DensityMatrix to_density() const;

private:
    std::vector<double> x_;
    double a_;
};

// The state with every matrix entry equal to 1/d (rank one, trace one).
DensityMatrix maximally_coherent(int d);

// Deletes all off-diagonal elements: p_i = Re(rho_ii).
DiagonalState dephase(const DensityMatrix& rho);

// Ginibre construction G G^dag / tr(G G^dag); deterministic in the seed.
DensityMatrix random_density_matrix(int d, std::uint64_t seed);

// x from a flat Dirichlet; a uniform with random sign, halved until the
// assembled matrix is positive semidefinite. Deterministic in the seed.
FamilyState random_family_state(int d, std::uint64_t seed);

// rho - diag(p), as a Hermitian matrix. Shapes must match.
HermitianMatrix subtract_diagonal(const DensityMatrix& rho, const std::vector<double>& p);

}  // namespace qcoh
