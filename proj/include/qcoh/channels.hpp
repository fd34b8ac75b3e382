#pragma once

// Kraus-operator instruments: incoherence predicates, completeness
// validation, selective and nonselective channel application, seeded random
// strictly-incoherent instrument generation, and the selective-monotonicity
// and convexity checks.

#include <cstdint>
#include <utility>
#include <vector>

#include "qcoh/measures.hpp"
#include "qcoh/solver.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

// A single Kraus operator mapping dimension in_dim to out_dim.
class KrausOperator {
public:
    explicit KrausOperator(ComplexMatrix m) : m_(std::move(m)) {}

    int out_dim() const { return m_.rows(); }
    int in_dim() const { return m_.cols(); }
    const cdouble& operator()(int i, int j) const { return m_(i, j); }
    const ComplexMatrix& matrix() const { return m_; }

private:
    ComplexMatrix m_;
};

// Nonempty shape-consistent Kraus list with sum_n K_n^dag K_n = I within
// 1e-10 entrywise.
class Instrument {
public:
    explicit Instrument(std::vector<KrausOperator> kraus, double tol = 1e-10);

    int out_dim() const { return kraus_.front().out_dim(); }
    int in_dim() const { return kraus_.front().in_dim(); }
    int size() const { return static_cast<int>(kraus_.size()); }
    const std::vector<KrausOperator>& kraus() const { return kraus_; }

private:
    std::vector<KrausOperator> kraus_;
};

struct SelectiveOutcome {
    double probability = 0.0;
    std::optional<DensityMatrix> state;  // absent below probability 1e-12
};

// At most one entry above 1e-12 per column: maps diagonal states to
// diagonal states.
bool is_incoherent_kraus(const KrausOperator& k, double tol = 1e-12);

// At most one entry above 1e-12 per column and per row.
bool is_strictly_incoherent(const KrausOperator& k, double tol = 1e-12);

// Outcome n carries p_n = tr(K_n rho K_n^dag) and, when p_n >= 1e-12, the
// normalized post-state.
std::vector<SelectiveOutcome> apply_selective(const Instrument& inst, const DensityMatrix& rho);

// Nonselective application sum_n K_n rho K_n^dag.
DensityMatrix apply_channel(const Instrument& inst, const DensityMatrix& rho);

// Random strictly incoherent instrument of n_kraus operators with shape
// out_dim x d. Columns are matched to (operator, row) slots at random and
// each column's squared magnitudes are split by a Dirichlet draw with
// random phases, so completeness holds by construction.
Instrument random_sio_instrument_shaped(int out_dim, int d, int n_kraus, std::uint64_t seed);

// The 2 x d case.
Instrument random_sio_instrument(int d, int n_kraus, std::uint64_t seed);

// sum_n p_n * c_tr_qubit(rho_n); requires out_dim = 2 so the qubit closed
// form applies exactly. Zero-probability branches contribute nothing.
double avg_coherence_selective(const Instrument& inst, const DensityMatrix& rho);

struct C2bReport {
    double avg = 0.0;       // sum_n p_n C_tr(rho_n)
    double bound_da = 0.0;  // d|a|
    double ctr = 0.0;       // 2(d-1)|a|
    bool holds = false;
};

// Selective monotonicity chain avg <= d|a| <= 2(d-1)|a| for a family state
// under a strictly incoherent 2 x d instrument.
C2bReport check_c2b_family(const FamilyState& f, const Instrument& inst);

struct C3Report {
    double lhs = 0.0;  // sum_n w_n C(rho_n)
    double rhs = 0.0;  // C(sum_n w_n rho_n)
    bool holds = false;
};

// Convexity check sum w_n C(rho_n) >= C(mixture). The trace-distance
// variant runs the numeric solver and is limited to dimension <= 4.
C3Report check_c3_convexity(MeasureKind measure,
                            const std::vector<std::pair<double, DensityMatrix>>& ensemble,
                            const SolverConfig& cfg = {});

}  // namespace qcoh
