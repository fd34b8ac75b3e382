#pragma once

// JSON serialization for states, instruments and measure reports.
//
// Formats:
//   density matrix : {"dim": d, "re": [[...]], "im": [[...]]}
//   family state   : {"x": [...], "a": a}
//   diagonal state : {"p": [...]}
//   instrument     : {"out_dim": m, "in_dim": d, "kraus": [{"re": .., "im": ..}, ..]}
//   measure report : {"measure": "..", "value": v, "argmin": {..}|null,
//                     "diagnostics": {..}|null}
//
// Numbers are emitted with 17 significant digits, so parsing back is exact.

#include <string>
#include <variant>

#include "qcoh/channels.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

// Shortest-exact is not used; fixed 17 significant digits keeps emitted
// files diffable across writers.
std::string format_double(double v);

std::string to_json(const DensityMatrix& rho);
std::string to_json(const FamilyState& f);
std::string to_json(const DiagonalState& delta);
std::string to_json(const Instrument& inst);

// extra_fields, when nonempty, is spliced into the top-level object; the CLI
// uses it to embed the run manifest.
std::string to_json(const MeasureReport& report, const std::string& extra_fields = "");

DensityMatrix density_from_json(const std::string& text);
FamilyState family_from_json(const std::string& text);
DiagonalState diagonal_from_json(const std::string& text);
Instrument instrument_from_json(const std::string& text);

using ParsedState = std::variant<DensityMatrix, FamilyState>;

// Accepts either a density-matrix or a family-state document.
ParsedState state_from_json(const std::string& text);

}  // namespace qcoh
