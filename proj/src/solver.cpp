#include "qcoh/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "qcoh/rng.hpp"

namespace qcoh {

namespace {

// Iterations without a tol-sized improvement before a restart is considered
// stabilized.
constexpr int kStallWindow = 250;

// Stream constant for the Dirichlet restart perturbations.
constexpr std::uint64_t kRestartStream = 0x5eed5eed5eed5eedull;

constexpr double kCharPolyPoleTol = 1e-12;
constexpr double kCharPolyAgreeTol = 1e-8;
constexpr double kWitnessTol = 1e-10;

double linf_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

void SolverConfig::validate() const {
    if (max_iters <= 0 || step_init <= 0.0 || tol <= 0.0 || restarts <= 0)
        throw PreconditionError("solver config fields must be strictly positive");
}

double trace_distance_to_diagonal(const DensityMatrix& rho, const DiagonalState& delta) {
    return trace_norm(subtract_diagonal(rho, delta.p()));
}

std::vector<double> project_to_simplex(std::vector<double> v) {
    const int n = static_cast<int>(v.size());
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumsum = 0.0;
    double tau = 0.0;
    for (int j = 0; j < n; ++j) {
        cumsum += u[j];
        const double candidate = (1.0 - cumsum) / (j + 1);
        if (u[j] + candidate > 0.0) tau = candidate;
    }
    for (double& vi : v) vi = std::max(0.0, vi + tau);
    return v;
}

MeasureReport closest_incoherent(const DensityMatrix& rho, const SolverConfig& cfg) {
    cfg.validate();
    const int d = rho.dim();
    const std::vector<double> dephased = dephase(rho).p();

    std::vector<double> best_p = dephased;
    double best_val = std::numeric_limits<double>::infinity();
    double best_residual = 0.0;
    long total_evals = 0;
    bool any_stabilized = false;

    for (int restart = 0; restart < cfg.restarts; ++restart) {
        std::vector<double> delta = dephased;
        if (restart > 0) {
            Rng rng(mix_seed(kRestartStream, static_cast<std::uint64_t>(restart)));
            const std::vector<double> noise = rng.dirichlet(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) delta[i] = 0.7 * dephased[i] + 0.3 * noise[i];
        }

        double local_best = std::numeric_limits<double>::infinity();
        double stall_anchor = std::numeric_limits<double>::infinity();  // value at last reset
        int stall = 0;
        bool stabilized = false;
        bool owns_best = false;

        for (int iter = 1; iter <= cfg.max_iters; ++iter) {
            const EigResult eig = eig_hermitian(subtract_diagonal(rho, delta));
            ++total_evals;
            double val = 0.0;
            for (double lambda : eig.eigenvalues) val += std::abs(lambda);

            if (val < local_best - cfg.tol || iter == 1) {
                stall_anchor = val;
                stall = 0;
            } else {
                ++stall;
            }
            local_best = std::min(local_best, val);
            if (val < best_val) {
                best_val = val;
                best_p = delta;
                owns_best = true;
            }
            if (stall >= kStallWindow) {
                stabilized = true;
                break;
            }

            std::vector<double> next(d);
            const double step = cfg.step_init / std::sqrt(static_cast<double>(iter));
            for (int i = 0; i < d; ++i) {
                double g = 0.0;
                for (int k = 0; k < d; ++k) {
                    const double lambda = eig.eigenvalues[k];
                    if (lambda == 0.0) continue;  // sign(0) = 0 is a valid subgradient
                    const double w = std::norm(eig.eigenvectors(i, k));
                    g -= (lambda > 0.0 ? w : -w);
                }
                next[i] = delta[i] - step * g;
            }
            delta = project_to_simplex(std::move(next));
        }
        any_stabilized = any_stabilized || stabilized;
        // Trailing objective decrease of the restart that found the minimum.
        if (owns_best) best_residual = std::max(0.0, stall_anchor - local_best);
    }

    if (!any_stabilized)
        throw ConvergenceError("objective did not stabilize within max_iters", best_val);

    MeasureReport report;
    report.measure = MeasureKind::trace_dist_numeric;
    report.value = best_val;
    report.argmin = DiagonalState(best_p, 1e-8);
    report.diagnostics = SolverDiagnostics{total_evals, best_residual};
    return report;
}

MeasureReport grid_oracle(const DensityMatrix& rho, int steps) {
    const int d = rho.dim();
    if (d > 4) throw DimensionError("grid oracle supports dimension <= 4");
    if (steps < 20) throw PreconditionError("grid oracle needs steps >= 20");

    std::vector<double> delta(d);
    std::vector<double> best_p(d);
    double best_val = std::numeric_limits<double>::infinity();
    long evals = 0;
    const double inv_steps = 1.0 / static_cast<double>(steps);

    std::vector<int> counts(d, 0);
    // Enumerate compositions of `steps` into d parts.
    std::function<void(int, int)> recurse = [&](int level, int remaining) {
        if (level == d - 1) {
            counts[level] = remaining;
            for (int i = 0; i < d; ++i) delta[i] = counts[i] * inv_steps;
            const double val = trace_norm(subtract_diagonal(rho, delta));
            ++evals;
            if (val < best_val) {
                best_val = val;
                best_p = delta;
            }
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            counts[level] = k;
            recurse(level + 1, remaining - k);
        }
    };
    recurse(0, steps);

    MeasureReport report;
    report.measure = MeasureKind::trace_dist_numeric;
    report.value = best_val;
    report.argmin = DiagonalState(best_p, 1e-9);
    // Residual is the Lipschitz resolution bound of the lattice.
    report.diagnostics = SolverDiagnostics{evals, static_cast<double>(d) / steps};
    return report;
}

CharPolyPoint char_poly_eval(double lambda, const FamilyState& f, const DiagonalState& delta) {
    const int d = f.dim();
    if (delta.dim() != d) throw ShapeError("family state and diagonal state dimensions differ");

    CharPolyPoint point;
    point.lambda = lambda;
    point.y.resize(d);
    for (int i = 0; i < d; ++i) point.y[i] = f.x()[i] - delta.p()[i];

    // Primary route: LU determinant of lambda I - (rho - diag(delta)).
    const double a = f.a();
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = (i == j) ? lambda - point.y[i] : -a;
    point.value = determinant(m).real();

    // Product form from the rank-one determinant update; defined only when
    // no factor g_i vanishes.
    std::vector<double> factors(d);
    bool pole_free = true;
    for (int i = 0; i < d; ++i) {
        factors[i] = lambda - point.y[i] + a;
        if (std::abs(factors[i]) <= kCharPolyPoleTol) pole_free = false;
    }
    if (pole_free) {
        double sum = 0.0;
        double prod = 1.0;
        double scale = 1.0;
        for (int i = 0; i < d; ++i) {
            sum += a / factors[i];
            prod *= factors[i];
            scale *= std::max(std::abs(factors[i]), 1.0);
        }
        point.product_value = (1.0 - sum) * prod;
        point.product_agrees =
            std::abs(point.value - *point.product_value) <= kCharPolyAgreeTol * scale;
    }
    return point;
}

BolzanoResult bolzano_bracket(const FamilyState& f, const DiagonalState& delta) {
    const int d = f.dim();
    if (delta.dim() != d) throw ShapeError("family state and diagonal state dimensions differ");
    const double a = f.a();
    if (a == 0.0) throw PreconditionError("bolzano bracket needs a != 0");

    const double da = d * std::abs(a);
    bool some_y_nonzero = false;
    for (int i = 0; i < d; ++i) {
        const double y = f.x()[i] - delta.p()[i];
        if (std::abs(y) >= da)
            throw PreconditionError("bolzano bracket needs |x_i - delta_i| < d|a| for all i");
        if (y != 0.0) some_y_nonzero = true;
    }
    if (!some_y_nonzero)
        throw PreconditionError("bolzano bracket needs x_i != delta_i for some i");

    const double target = (d - 1) * a;
    const auto poly = [&](double lambda) { return char_poly_eval(lambda, f, delta).value; };

    // Eigenvalues of a difference of two states lie in [-1, 1], so a bracket
    // of width d past the target always encloses the root.
    double lo, hi;
    if (a > 0.0) {
        lo = target;
        hi = target + d;
    } else {
        lo = target - d;
        hi = target;
    }
    double flo = poly(lo);
    double fhi = poly(hi);
    if (flo == 0.0 || fhi == 0.0 || (flo > 0.0) == (fhi > 0.0))
        return {false, target};  // no numeric sign change; degenerate input

    while (hi - lo > kWitnessTol) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = poly(mid);
        if (fmid == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
            fhi = fmid;
        }
    }
    return {true, 0.5 * (lo + hi)};
}

Theorem2Report verify_theorem2(const FamilyState& f, const SolverConfig& cfg) {
    Theorem2Report report;
    report.closed = 2.0 * (f.dim() - 1) * std::abs(f.a());
    const MeasureReport numeric = closest_incoherent(f.to_density(), cfg);
    report.numeric = numeric.value;
    report.argmin_gap = linf_distance(numeric.argmin->p(), f.x());
    return report;
}

}  // namespace qcoh
