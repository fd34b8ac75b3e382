#pragma once

// Closed-form coherence measures: l1 norm, relative entropy, the family
// closed form 2(d-1)|a|, and the qubit trace-distance expression 2|rho_01|.

#include <optional>
#include <string>

#include "qcoh/states.hpp"

namespace qcoh {

enum class MeasureKind { l1, rel_entropy, trace_dist_closed, trace_dist_numeric };

std::string to_string(MeasureKind kind);
MeasureKind measure_kind_from_string(const std::string& name);

struct SolverDiagnostics {
    long iterations = 0;
    double residual = 0.0;
};

struct MeasureReport {
    MeasureKind measure = MeasureKind::l1;
    double value = 0.0;
    std::optional<DiagonalState> argmin;          // trace-distance variants only
    std::optional<SolverDiagnostics> diagnostics;
};

// Sum of |rho_ij| over all off-diagonal entries.
double c_l1(const DensityMatrix& rho);

// S(dephase(rho)) - S(rho), von Neumann entropy in bits. Eigenvalues below
// 1e-14 contribute nothing.
double c_rel_entropy(const DensityMatrix& rho);

// 2(d-1)|a| with the dephased state as the attained minimizer.
MeasureReport c_tr_family_closed(const FamilyState& f);

// 2|rho_01|; qubit input only.
double c_tr_qubit(const DensityMatrix& rho);

struct OrderingReport {
    double ctr = 0.0;
    double cr = 0.0;
    double cl1 = 0.0;
    bool ordered = false;
};

// The three closed forms on the maximally coherent state of dimension d:
// (2(d-1)/d, log2 d, d-1), plus whether ctr <= cr <= cl1.
OrderingReport maximally_coherent_ordering(int d);

}  // namespace qcoh
