#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "qcoh/measures.hpp"
#include "qcoh/rng.hpp"
#include "qcoh/solver.hpp"

using namespace qcoh;

namespace {

// Perturbed copy of the family diagonal that keeps every |x_i - delta_i|
// strictly inside d|a|, as the bracketing preconditions require.
DiagonalState perturbed_delta(const FamilyState& f, Rng& rng) {
    const int d = f.dim();
    const std::vector<double> noise = rng.dirichlet(static_cast<std::size_t>(d));
    double worst = 0.0;
    for (int i = 0; i < d; ++i) worst = std::max(worst, std::abs(f.x()[i] - noise[i]));
    const double beta = std::min(1.0, 0.9 * d * std::abs(f.a()) / worst);
    std::vector<double> delta(d);
    for (int i = 0; i < d; ++i) delta[i] = (1.0 - beta) * f.x()[i] + beta * noise[i];
    return DiagonalState(delta, 1e-9);
}

}  // namespace

TEST_CASE("solver config validation") {
    CHECK_THROWS_AS(closest_incoherent(maximally_coherent(2), SolverConfig{0, 0.1, 1e-8, 5}),
                    PreconditionError);
    CHECK_THROWS_AS(closest_incoherent(maximally_coherent(2), SolverConfig{100, -0.1, 1e-8, 5}),
                    PreconditionError);
}

TEST_CASE("closest_incoherent on a diagonal state") {
    const DensityMatrix diag(
        HermitianMatrix(ComplexMatrix::from_diagonal({0.4, 0.35, 0.25})));
    const MeasureReport rep = closest_incoherent(diag);
    CHECK(rep.value <= 1e-12);
    REQUIRE(rep.argmin.has_value());
    CHECK(rep.argmin->p()[0] == doctest::Approx(0.4));
    CHECK(rep.argmin->p()[1] == doctest::Approx(0.35));
    CHECK(rep.argmin->p()[2] == doctest::Approx(0.25));
    CHECK(rep.measure == MeasureKind::trace_dist_numeric);
    CHECK(rep.diagnostics.has_value());
}

TEST_CASE("closest_incoherent on the maximally coherent qutrit") {
    const MeasureReport rep = closest_incoherent(maximally_coherent(3));
    CHECK(std::abs(rep.value - 4.0 / 3.0) <= 1e-6);
    for (double pi : rep.argmin->p()) CHECK(std::abs(pi - 1.0 / 3.0) <= 1e-4);
}

TEST_CASE("closest_incoherent matches the qubit closed form") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const DensityMatrix rho = random_density_matrix(2, 100 + seed);
        CHECK(std::abs(closest_incoherent(rho).value - c_tr_qubit(rho)) <= 1e-6);
    }
}

TEST_CASE("closest_incoherent never beats a feasible point but never exceeds dephasing") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int d = 2 + static_cast<int>(seed % 4);
        const DensityMatrix rho = random_density_matrix(d, 200 + seed);
        const double at_dephased = trace_distance_to_diagonal(rho, dephase(rho));
        CHECK(closest_incoherent(rho).value <= at_dephased + 1e-12);
    }
}

TEST_CASE("objective is midpoint convex") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const int d = 2 + static_cast<int>(seed % 4);
        const DensityMatrix rho = random_density_matrix(d, 300 + seed);
        Rng rng(400 + seed);
        const std::vector<double> p1 = rng.dirichlet(static_cast<std::size_t>(d));
        const std::vector<double> p2 = rng.dirichlet(static_cast<std::size_t>(d));
        std::vector<double> mid(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) mid[static_cast<std::size_t>(i)] = 0.5 * (p1[i] + p2[i]);
        const double f1 = trace_distance_to_diagonal(rho, DiagonalState(p1, 1e-9));
        const double f2 = trace_distance_to_diagonal(rho, DiagonalState(p2, 1e-9));
        const double fm = trace_distance_to_diagonal(rho, DiagonalState(mid, 1e-9));
        CHECK(fm <= 0.5 * (f1 + f2) + 1e-10);
    }
}

TEST_CASE("solver reports non-stabilization as ConvergenceError") {
    SolverConfig tiny;
    tiny.max_iters = 5;  // below the stall window, so no restart can settle
    CHECK_THROWS_AS(closest_incoherent(maximally_coherent(3), tiny), ConvergenceError);
    try {
        closest_incoherent(maximally_coherent(3), tiny);
    } catch (const ConvergenceError& e) {
        CHECK(e.best_value <= 4.0 / 3.0 + 1e-9);  // still carries the best value found
    }
}

TEST_CASE("simplex projection") {
    const std::vector<double> p = project_to_simplex({0.5, 0.5, 0.5});
    double sum = 0.0;
    for (double v : p) {
        CHECK(v >= 0.0);
        sum += v;
    }
    CHECK(sum == doctest::Approx(1.0));

    // already on the simplex: unchanged
    const std::vector<double> q = project_to_simplex({0.2, 0.3, 0.5});
    CHECK(q[0] == doctest::Approx(0.2));
    CHECK(q[1] == doctest::Approx(0.3));
    CHECK(q[2] == doctest::Approx(0.5));

    // strongly negative coordinate gets clipped out
    const std::vector<double> r = project_to_simplex({1.4, -1.0, 0.6});
    CHECK(r[1] == 0.0);
    CHECK(r[0] + r[2] == doctest::Approx(1.0));
}

TEST_CASE("grid oracle") {
    const MeasureReport mc2 = grid_oracle(maximally_coherent(2), 200);
    CHECK(std::abs(mc2.value - 1.0) <= 5e-2);

    const DensityMatrix diag(HermitianMatrix(ComplexMatrix::from_diagonal({0.5, 0.5})));
    CHECK(grid_oracle(diag, 100).value <= 1e-12);  // lattice contains the diagonal

    const FamilyState f({0.5, 0.3, 0.2}, 0.1);
    const MeasureReport g = grid_oracle(f.to_density(), 100);
    CHECK(std::abs(g.value - 0.4) <= 3e-2);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(g.argmin->p()[i] - f.x()[i]) <= 1e-2 + 1e-12);

    CHECK_THROWS_AS(grid_oracle(maximally_coherent(5), 50), DimensionError);
    CHECK_THROWS_AS(grid_oracle(maximally_coherent(2), 10), PreconditionError);
}

TEST_CASE("characteristic polynomial at known roots") {
    const FamilyState f({0.5, 0.3, 0.2}, 0.1);
    const DiagonalState diag = dephase(f.to_density());

    // with delta = diag(rho): roots at (d-1)a and -a
    CHECK(std::abs(char_poly_eval((3 - 1) * 0.1, f, diag).value) <= 1e-10);
    CHECK(std::abs(char_poly_eval(-0.1, f, diag).value) <= 1e-10);

    // d=2, x = delta, lambda = 1: (lambda+a)(lambda-a) = 0.91
    const FamilyState f2({0.5, 0.5}, 0.3);
    const CharPolyPoint p2 = char_poly_eval(1.0, f2, DiagonalState({0.5, 0.5}));
    CHECK(p2.value == doctest::Approx(0.91).epsilon(1e-12));
    CHECK(p2.y[0] == 0.0);
    CHECK(p2.y[1] == 0.0);
}

TEST_CASE("characteristic polynomial vanishes at every eigenvalue") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const int d = 2 + static_cast<int>(seed % 5);
        const FamilyState f = random_family_state(d, 700 + seed);
        Rng rng(800 + seed);
        const DiagonalState delta(rng.dirichlet(static_cast<std::size_t>(d)), 1e-9);
        const std::vector<double> eigs =
            eig_hermitian(subtract_diagonal(f.to_density(), delta.p())).eigenvalues;
        const double scale = std::max(1.0, std::abs(eigs.front()));
        const double tol = 1e-8 * std::pow(scale, d);
        for (double lambda : eigs)
            CHECK(std::abs(char_poly_eval(lambda, f, delta).value) <= tol);
    }
}

TEST_CASE("product form agrees with the determinant away from poles") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const int d = 2 + static_cast<int>(seed % 5);
        const FamilyState f = random_family_state(d, 1100 + seed);
        Rng rng(1200 + seed);
        const DiagonalState delta(rng.dirichlet(static_cast<std::size_t>(d)), 1e-9);
        const double lambda = rng.uniform(-2.0, 2.0);
        const CharPolyPoint point = char_poly_eval(lambda, f, delta);
        if (!point.product_agrees.has_value()) continue;
        CHECK(*point.product_agrees);
        ++checked;
    }
    CHECK(checked > 50);  // poles are rare at random lambda
}

TEST_CASE("bolzano bracketing finds an eigenvalue beyond (d-1)a") {
    // a > 0 worked example
    const FamilyState f({0.5, 0.3, 0.2}, 0.1);
    const DiagonalState delta({0.4, 0.4, 0.2});
    const BolzanoResult res = bolzano_bracket(f, delta);
    CHECK(res.eigenvalue_beyond);
    CHECK(res.witness > 0.2);
    const std::vector<double> eigs =
        eig_hermitian(subtract_diagonal(f.to_density(), delta.p())).eigenvalues;
    CHECK(eigs.front() > 0.2);  // independent confirmation
    double nearest = 1e9;
    for (double lambda : eigs) nearest = std::min(nearest, std::abs(lambda - res.witness));
    CHECK(nearest <= 1e-8);

    // delta = diag(rho): all y vanish
    CHECK_THROWS_AS(bolzano_bracket(f, dephase(f.to_density())), PreconditionError);

    // a = 0
    CHECK_THROWS_AS(bolzano_bracket(FamilyState({0.6, 0.4}, 0.0), DiagonalState({0.5, 0.5})),
                    PreconditionError);

    // a < 0 mirror case
    const FamilyState g({0.6, 0.4}, -0.2);
    const BolzanoResult neg = bolzano_bracket(g, DiagonalState({0.5, 0.5}));
    CHECK(neg.eigenvalue_beyond);
    CHECK(neg.witness < -0.2);
    const std::vector<double> eigs2 =
        eig_hermitian(subtract_diagonal(g.to_density(), {0.5, 0.5})).eigenvalues;
    CHECK(eigs2.back() < -0.2);
    CHECK(std::abs(eigs2.back() - neg.witness) <= 1e-8);

    // |x_i - delta_i| >= d|a| violates the Taylor-domain precondition
    CHECK_THROWS_AS(bolzano_bracket(FamilyState({0.6, 0.4}, 0.01), DiagonalState({0.4, 0.6})),
                    PreconditionError);
}

TEST_CASE("sign structure of the polynomial inside the bracket domain") {
    int positive_cases = 0;
    int negative_cases = 0;
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const int d = 2 + static_cast<int>(seed % 5);
        const FamilyState f = random_family_state(d, 1500 + seed);
        if (std::abs(f.a()) < 1e-6) continue;
        Rng rng(1600 + seed);
        const DiagonalState delta = perturbed_delta(f, rng);
        bool any_nonzero = false;
        for (int i = 0; i < d; ++i)
            if (f.x()[i] != delta.p()[i]) any_nonzero = true;
        if (!any_nonzero) continue;

        const double at_target = char_poly_eval((d - 1) * f.a(), f, delta).value;
        if (f.a() > 0.0) {
            CHECK(at_target < 0.0);
            ++positive_cases;
        } else {
            // sign at -infinity is (-1)^d; the target value must oppose it
            const double inf_sign = (d % 2 == 0) ? 1.0 : -1.0;
            CHECK(at_target * inf_sign < 0.0);
            ++negative_cases;
        }
    }
    CHECK(positive_cases > 20);
    CHECK(negative_cases > 20);
}

TEST_CASE("verify_theorem2") {
    // the maximally coherent family at d = 5
    const FamilyState mc5({0.2, 0.2, 0.2, 0.2, 0.2}, 0.2);
    const Theorem2Report rep = verify_theorem2(mc5);
    CHECK(rep.closed == doctest::Approx(8.0 / 5.0));
    CHECK(std::abs(rep.numeric - rep.closed) <= 1e-6);
    CHECK(rep.argmin_gap <= 1e-4);

    // a = 0: nothing to remove
    const Theorem2Report flat = verify_theorem2(FamilyState({0.7, 0.3}, 0.0));
    CHECK(flat.closed == 0.0);
    CHECK(flat.numeric <= 1e-12);

    // random family states across dimensions, both bounds
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int d = 2 + static_cast<int>(seed % 7);
        const FamilyState f = random_family_state(d, 2000 + seed);
        const Theorem2Report r = verify_theorem2(f);
        CHECK(r.numeric >= r.closed - 1e-6);
        CHECK(r.numeric <= r.closed + 1e-6);
        CHECK(r.argmin_gap <= 1e-4);
    }
}

TEST_CASE("grid oracle corroborates the solver on random qutrit families") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const FamilyState f = random_family_state(3, 2500 + seed);
        const double numeric = closest_incoherent(f.to_density()).value;
        const double gridded = grid_oracle(f.to_density(), 60).value;
        // lattice value sits within its resolution bound above the optimum
        CHECK(gridded >= numeric - 1e-9);
        CHECK(gridded <= numeric + 3.0 / 60.0 + 1e-9);
    }
}

TEST_CASE("solver descends below the dephasing point on general qutrits") {
    // For generic states the dephased diagonal is not the minimizer; the
    // subgradient steps must find something strictly better, and the result
    // must sandwich against the exhaustive lattice.
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const DensityMatrix rho = random_density_matrix(3, 42000 + seed);
        const double at_dephase = trace_distance_to_diagonal(rho, dephase(rho));
        const double solved = closest_incoherent(rho).value;
        const double gridded = grid_oracle(rho, 100).value;
        CHECK(solved < at_dephase - 1e-3);
        CHECK(solved <= gridded + 1e-9);                 // at least lattice-optimal
        CHECK(solved >= gridded - 3.0 / 100.0 - 1e-9);   // within the lattice bound
    }
}
