#pragma once

// Numeric minimization of tr|rho - diag(delta)| over diagonal states, an
// exhaustive lattice oracle for small dimensions, and the characteristic
// polynomial / sign-bracketing predicates used to cross-check the family
// closed form.

#include "qcoh/measures.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

struct SolverConfig {
    int max_iters = 5000;
    double step_init = 0.1;
    double tol = 1e-8;  // stopping threshold on objective decrease
    int restarts = 5;

    void validate() const;  // all fields strictly positive
};

// tr|rho - diag(delta)|; the objective being minimized.
double trace_distance_to_diagonal(const DensityMatrix& rho, const DiagonalState& delta);

// Euclidean projection onto the probability simplex (sort-and-threshold).
std::vector<double> project_to_simplex(std::vector<double> v);

// Multi-restart projected subgradient descent over the simplex. The
// objective is convex; the subgradient w.r.t. delta_i is
// -sum_k sign(lambda_k) |u_ik|^2 with (lambda, U) the eigensystem of
// rho - diag(delta). Restarts begin at the dephased state and at
// Dirichlet-perturbed copies of it; steps shrink as step_init/sqrt(iter).
// Throws ConvergenceError if no restart stabilizes within max_iters.
MeasureReport closest_incoherent(const DensityMatrix& rho, const SolverConfig& cfg = {});

// Exhaustive minimum of the objective over the lattice
// {delta : delta_i = k_i/steps, sum k_i = steps}. Dimension <= 4 only;
// the lattice minimum lies within d/steps of the true optimum.
MeasureReport grid_oracle(const DensityMatrix& rho, int steps);

struct CharPolyPoint {
    double lambda = 0.0;
    double value = 0.0;      // det[lambda I - (rho - diag(delta))]
    std::vector<double> y;   // y_i = x_i - delta_i

    // Rank-one product form (1 - sum_i a/g_i) prod_i g_i with
    // g_i = lambda - x_i + delta_i + a; only when no factor vanishes.
    std::optional<double> product_value;
    std::optional<bool> product_agrees;
};

// Evaluates det[lambda I - (rho - diag(delta))] for a family state by LU
// determinant (pole-free), cross-checked against the product form where
// that form is defined.
CharPolyPoint char_poly_eval(double lambda, const FamilyState& f, const DiagonalState& delta);

struct BolzanoResult {
    bool eigenvalue_beyond = false;
    double witness = 0.0;
};

// Locates by bisection a root of the characteristic polynomial beyond
// (d-1)a: above it for a > 0, below it for a < 0. Preconditions:
// a != 0, |x_i - delta_i| < d|a| for every i, and some x_i != delta_i.
BolzanoResult bolzano_bracket(const FamilyState& f, const DiagonalState& delta);

struct Theorem2Report {
    double closed = 0.0;       // 2(d-1)|a|
    double numeric = 0.0;      // closest_incoherent value
    double argmin_gap = 0.0;   // l_inf distance between numeric argmin and x
};

Theorem2Report verify_theorem2(const FamilyState& f, const SolverConfig& cfg = {});

}  // namespace qcoh
