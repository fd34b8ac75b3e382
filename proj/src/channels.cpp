#include "qcoh/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcoh/rng.hpp"

namespace qcoh {

namespace {

constexpr double kZeroProbability = 1e-12;
constexpr double kC2bSlack = 1e-9;
constexpr double kC3Slack = 1e-9;

double measure_value(MeasureKind kind, const DensityMatrix& rho, const SolverConfig& cfg) {
    switch (kind) {
        case MeasureKind::l1:
            return c_l1(rho);
        case MeasureKind::rel_entropy:
            return c_rel_entropy(rho);
        case MeasureKind::trace_dist_numeric:
            if (rho.dim() > 4)
                throw DimensionError("numeric trace-distance convexity check needs dim <= 4");
            return closest_incoherent(rho, cfg).value;
        case MeasureKind::trace_dist_closed:
            throw PreconditionError("closed-form trace distance applies to family states only");
    }
    throw Error("unknown measure kind");
}

}  // namespace

Instrument::Instrument(std::vector<KrausOperator> kraus, double tol) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw ShapeError("instrument needs at least one Kraus operator");
    const int out = kraus_.front().out_dim();
    const int in = kraus_.front().in_dim();
    for (const KrausOperator& k : kraus_) {
        if (k.out_dim() != out || k.in_dim() != in)
            throw ShapeError("Kraus operators have inconsistent shapes");
    }
    ComplexMatrix sum(in, in);
    for (const KrausOperator& k : kraus_) sum = sum + adjoint(k.matrix()) * k.matrix();
    const double dev = max_abs_diff(sum, ComplexMatrix::identity(in));
    if (dev > tol)
        throw CompletenessError(
            "Kraus completeness relation fails (worst deviation " + std::to_string(dev) + ")",
            dev);
}

bool is_incoherent_kraus(const KrausOperator& k, double tol) {
    for (int j = 0; j < k.in_dim(); ++j) {
        int nonzeros = 0;
        for (int i = 0; i < k.out_dim(); ++i)
            if (std::abs(k(i, j)) > tol) ++nonzeros;
        if (nonzeros > 1) return false;
    }
    return true;
}

bool is_strictly_incoherent(const KrausOperator& k, double tol) {
    if (!is_incoherent_kraus(k, tol)) return false;
    for (int i = 0; i < k.out_dim(); ++i) {
        int nonzeros = 0;
        for (int j = 0; j < k.in_dim(); ++j)
            if (std::abs(k(i, j)) > tol) ++nonzeros;
        if (nonzeros > 1) return false;
    }
    return true;
}

std::vector<SelectiveOutcome> apply_selective(const Instrument& inst, const DensityMatrix& rho) {
    if (inst.in_dim() != rho.dim())
        throw ShapeError("instrument input dimension does not match the state");
    std::vector<SelectiveOutcome> outcomes;
    outcomes.reserve(inst.kraus().size());
    for (const KrausOperator& k : inst.kraus()) {
        ComplexMatrix sandwiched = k.matrix() * rho.matrix() * adjoint(k.matrix());
        const double p = std::max(0.0, trace(sandwiched).real());
        SelectiveOutcome outcome;
        outcome.probability = p;
        if (p >= kZeroProbability)
            outcome.state = DensityMatrix(HermitianMatrix((1.0 / p) * sandwiched));
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

DensityMatrix apply_channel(const Instrument& inst, const DensityMatrix& rho) {
    if (inst.in_dim() != rho.dim())
        throw ShapeError("instrument input dimension does not match the state");
    ComplexMatrix sum(inst.out_dim(), inst.out_dim());
    for (const KrausOperator& k : inst.kraus())
        sum = sum + k.matrix() * rho.matrix() * adjoint(k.matrix());
    return DensityMatrix(HermitianMatrix(sum));
}

Instrument random_sio_instrument_shaped(int out_dim, int d, int n_kraus, std::uint64_t seed) {
    if (out_dim < 1 || d < 2 || n_kraus < 1)
        throw DimensionError("instrument shape parameters out of range");
    const int total_slots = n_kraus * out_dim;
    if (total_slots < d)
        throw GenerationError("n_kraus too small: " + std::to_string(total_slots) +
                              " row slots cannot host " + std::to_string(d) + " columns");

    Rng rng(seed);

    // Slot s = (operator s/out_dim, row s%out_dim). Shuffle, then give every
    // column one slot; leftover slots may host a second appearance of a
    // column, provided that operator does not already carry it.
    std::vector<int> slots(total_slots);
    for (int s = 0; s < total_slots; ++s) slots[s] = s;
    rng.shuffle(slots);

    std::vector<int> column_of_slot(total_slots, -1);
    for (int j = 0; j < d; ++j) column_of_slot[slots[j]] = j;
    for (int s = d; s < total_slots; ++s) {
        if (!rng.coin()) continue;
        const int slot = slots[s];
        const int op = slot / out_dim;
        const int j = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d)));
        bool taken = false;
        for (int r = 0; r < out_dim; ++r)
            if (column_of_slot[op * out_dim + r] == j) taken = true;
        if (!taken) column_of_slot[slot] = j;
    }

    // Per column: Dirichlet weights over its slots, a random phase per entry.
    std::vector<ComplexMatrix> mats(static_cast<std::size_t>(n_kraus), ComplexMatrix(out_dim, d));
    for (int j = 0; j < d; ++j) {
        std::vector<int> hosting;
        for (int s = 0; s < total_slots; ++s)
            if (column_of_slot[s] == j) hosting.push_back(s);
        const std::vector<double> weights = rng.dirichlet(hosting.size());
        for (std::size_t h = 0; h < hosting.size(); ++h) {
            const int op = hosting[h] / out_dim;
            const int row = hosting[h] % out_dim;
            const double phase = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
            mats[op](row, j) = std::polar(std::sqrt(weights[h]), phase);
        }
    }

    std::vector<KrausOperator> kraus;
    kraus.reserve(mats.size());
    for (ComplexMatrix& m : mats) kraus.emplace_back(std::move(m));
    return Instrument(std::move(kraus));
}

Instrument random_sio_instrument(int d, int n_kraus, std::uint64_t seed) {
    return random_sio_instrument_shaped(2, d, n_kraus, seed);
}

double avg_coherence_selective(const Instrument& inst, const DensityMatrix& rho) {
    if (inst.out_dim() != 2)
        throw DimensionError("selective coherence averaging needs output dimension 2");
    double avg = 0.0;
    for (const SelectiveOutcome& outcome : apply_selective(inst, rho)) {
        if (!outcome.state) continue;
        avg += outcome.probability * c_tr_qubit(*outcome.state);
    }
    return avg;
}

C2bReport check_c2b_family(const FamilyState& f, const Instrument& inst) {
    if (inst.out_dim() != 2)
        throw DimensionError("selective monotonicity check needs output dimension 2");
    if (inst.in_dim() != f.dim())
        throw ShapeError("instrument input dimension does not match the family state");
    for (const KrausOperator& k : inst.kraus())
        if (!is_strictly_incoherent(k))
            throw SIOError("instrument contains a non-strictly-incoherent operator");

    C2bReport report;
    report.avg = avg_coherence_selective(inst, f.to_density());
    report.bound_da = f.dim() * std::abs(f.a());
    report.ctr = 2.0 * (f.dim() - 1) * std::abs(f.a());
    report.holds =
        report.avg <= report.bound_da + kC2bSlack && report.bound_da <= report.ctr + 1e-12;
    return report;
}

C3Report check_c3_convexity(MeasureKind measure,
                            const std::vector<std::pair<double, DensityMatrix>>& ensemble,
                            const SolverConfig& cfg) {
    if (ensemble.empty()) throw ShapeError("convexity check needs a nonempty ensemble");
    const int d = ensemble.front().second.dim();
    double weight_sum = 0.0;
    for (const auto& [w, rho] : ensemble) {
        if (rho.dim() != d) throw ShapeError("ensemble states have mixed dimensions");
        if (w < 0.0) throw PreconditionError("ensemble weights must be nonnegative");
        weight_sum += w;
    }
    if (std::abs(weight_sum - 1.0) > 1e-10)
        throw NormalizationError("ensemble weights sum to " + std::to_string(weight_sum));

    C3Report report;
    ComplexMatrix mix(d, d);
    for (const auto& [w, rho] : ensemble) {
        report.lhs += w * measure_value(measure, rho, cfg);
        mix = mix + w * rho.matrix();
    }
    report.rhs = measure_value(measure, DensityMatrix(HermitianMatrix(mix)), cfg);
    report.holds = report.lhs >= report.rhs - kC3Slack;
    return report;
}

}  // namespace qcoh
