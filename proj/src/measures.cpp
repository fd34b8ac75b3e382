#include "qcoh/measures.hpp"

#include <algorithm>
#include <cmath>

namespace qcoh {

namespace {

constexpr double kEntropyCutoff = 1e-14;

// Shannon entropy in bits; terms below the cutoff are dropped (x log x -> 0).
double entropy_bits(const std::vector<double>& probs) {
    double s = 0.0;
    for (double p : probs) {
        if (p < kEntropyCutoff) continue;
        s -= p * std::log2(p);
    }
    return s;
}

}  // namespace

std::string to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::l1: return "l1";
        case MeasureKind::rel_entropy: return "rel_entropy";
        case MeasureKind::trace_dist_closed: return "trace_dist_closed";
        case MeasureKind::trace_dist_numeric: return "trace_dist_numeric";
    }
    throw Error("unknown measure kind");
}

MeasureKind measure_kind_from_string(const std::string& name) {
    if (name == "l1") return MeasureKind::l1;
    if (name == "rel_entropy") return MeasureKind::rel_entropy;
    if (name == "trace_dist_closed") return MeasureKind::trace_dist_closed;
    if (name == "trace_dist_numeric") return MeasureKind::trace_dist_numeric;
    throw ParseError("unknown measure '" + name + "'");
}

double c_l1(const DensityMatrix& rho) {
    double sum = 0.0;
    for (int i = 0; i < rho.dim(); ++i)
        for (int j = 0; j < rho.dim(); ++j)
            if (i != j) sum += std::abs(rho(i, j));
    return sum;
}

double c_rel_entropy(const DensityMatrix& rho) {
    const double s_diag = entropy_bits(dephase(rho).p());
    const double s_rho = entropy_bits(eigenvalues_hermitian(rho.hermitian()));
    // Nonnegative in exact arithmetic; clamp rounding noise.
    return std::max(0.0, s_diag - s_rho);
}

MeasureReport c_tr_family_closed(const FamilyState& f) {
    MeasureReport report;
    report.measure = MeasureKind::trace_dist_closed;
    report.value = 2.0 * (f.dim() - 1) * std::abs(f.a());
    report.argmin = DiagonalState(f.x());
    return report;
}

double c_tr_qubit(const DensityMatrix& rho) {
    if (rho.dim() != 2) throw DimensionError("qubit closed form needs dimension 2");
    return 2.0 * std::abs(rho(0, 1));
}

OrderingReport maximally_coherent_ordering(int d) {
    if (d < 2) throw DimensionError("ordering needs dimension >= 2");
    OrderingReport r;
    r.ctr = 2.0 * (d - 1) / static_cast<double>(d);
    r.cr = std::log2(static_cast<double>(d));
    r.cl1 = static_cast<double>(d - 1);
    r.ordered = r.ctr <= r.cr && r.cr <= r.cl1;
    return r;
}

}  // namespace qcoh
