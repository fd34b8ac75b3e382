#include "qcoh/json_io.hpp"

#include <cstdio>

#include "json.hpp"

namespace qcoh {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += parts[i];
    }
    return out;
}

std::string real_grid_json(const ComplexMatrix& m, bool imag_part) {
    std::vector<std::string> rows;
    rows.reserve(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
        std::vector<std::string> cells;
        cells.reserve(static_cast<std::size_t>(m.cols()));
        for (int j = 0; j < m.cols(); ++j)
            cells.push_back(format_double(imag_part ? m(i, j).imag() : m(i, j).real()));
        rows.push_back("[" + join(cells) + "]");
    }
    return "[" + join(rows) + "]";
}

std::string vector_json(const std::vector<double>& v) {
    std::vector<std::string> cells;
    cells.reserve(v.size());
    for (double x : v) cells.push_back(format_double(x));
    return "[" + join(cells) + "]";
}

json parse(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ParseError("malformed JSON document");
    return doc;
}

std::vector<double> number_vector(const json& node, const std::string& what) {
    if (!node.is_array()) throw ParseError(what + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(node.size());
    for (const json& x : node) {
        if (!x.is_number()) throw ParseError(what + " must contain only numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

ComplexMatrix matrix_from_grids(const json& re, const json& im, const std::string& what) {
    if (!re.is_array() || re.empty()) throw ParseError(what + ": 're' must be a nonempty grid");
    const int rows = static_cast<int>(re.size());
    const std::vector<double> first = number_vector(re[0], what + " row");
    const int cols = static_cast<int>(first.size());
    if (cols < 1) throw ParseError(what + ": rows must be nonempty");

    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const std::vector<double> row = number_vector(re[i], what + " row");
        if (static_cast<int>(row.size()) != cols) throw ParseError(what + ": ragged 're' grid");
        for (int j = 0; j < cols; ++j) m(i, j) = row[j];
    }
    if (!im.is_null()) {
        if (!im.is_array() || static_cast<int>(im.size()) != rows)
            throw ParseError(what + ": 'im' grid does not match 're'");
        for (int i = 0; i < rows; ++i) {
            const std::vector<double> row = number_vector(im[i], what + " row");
            if (static_cast<int>(row.size()) != cols)
                throw ParseError(what + ": 'im' grid does not match 're'");
            for (int j = 0; j < cols; ++j) m(i, j) = cdouble(m(i, j).real(), row[j]);
        }
    }
    return m;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_json(const DensityMatrix& rho) {
    return "{\"dim\":" + std::to_string(rho.dim()) +
           ",\"re\":" + real_grid_json(rho.matrix(), false) +
           ",\"im\":" + real_grid_json(rho.matrix(), true) + "}";
}

std::string to_json(const FamilyState& f) {
    return "{\"x\":" + vector_json(f.x()) + ",\"a\":" + format_double(f.a()) + "}";
}

std::string to_json(const DiagonalState& delta) {
    return "{\"p\":" + vector_json(delta.p()) + "}";
}

std::string to_json(const Instrument& inst) {
    std::vector<std::string> ops;
    ops.reserve(inst.kraus().size());
    for (const KrausOperator& k : inst.kraus())
        ops.push_back("{\"re\":" + real_grid_json(k.matrix(), false) +
                      ",\"im\":" + real_grid_json(k.matrix(), true) + "}");
    return "{\"out_dim\":" + std::to_string(inst.out_dim()) +
           ",\"in_dim\":" + std::to_string(inst.in_dim()) + ",\"kraus\":[" + join(ops) + "]}";
}

std::string to_json(const MeasureReport& report, const std::string& extra_fields) {
    std::string out = "{\"measure\":\"" + to_string(report.measure) + "\"";
    out += ",\"value\":" + format_double(report.value);
    out += ",\"argmin\":";
    out += report.argmin ? to_json(*report.argmin) : "null";
    out += ",\"diagnostics\":";
    if (report.diagnostics) {
        out += "{\"iterations\":" + std::to_string(report.diagnostics->iterations) +
               ",\"residual\":" + format_double(report.diagnostics->residual) + "}";
    } else {
        out += "null";
    }
    if (!extra_fields.empty()) out += "," + extra_fields;
    out += "}";
    return out;
}

DensityMatrix density_from_json(const std::string& text) {
    const json doc = parse(text);
    if (!doc.contains("dim") || !doc.contains("re"))
        throw ParseError("density matrix document needs 'dim' and 're'");
    const int dim = doc["dim"].is_number_integer() ? doc["dim"].get<int>() : -1;
    if (dim < 1) throw ParseError("'dim' must be a positive integer");
    ComplexMatrix m =
        matrix_from_grids(doc["re"], doc.contains("im") ? doc["im"] : json(), "density matrix");
    if (m.rows() != dim || m.cols() != dim)
        throw ParseError("grid shape does not match 'dim'");
    return DensityMatrix(m);
}

FamilyState family_from_json(const std::string& text) {
    const json doc = parse(text);
    if (!doc.contains("x") || !doc.contains("a"))
        throw ParseError("family state document needs 'x' and 'a'");
    if (!doc["a"].is_number()) throw ParseError("'a' must be a number");
    return FamilyState(number_vector(doc["x"], "'x'"), doc["a"].get<double>());
}

DiagonalState diagonal_from_json(const std::string& text) {
    const json doc = parse(text);
    if (!doc.contains("p")) throw ParseError("diagonal state document needs 'p'");
    return DiagonalState(number_vector(doc["p"], "'p'"));
}

Instrument instrument_from_json(const std::string& text) {
    const json doc = parse(text);
    if (!doc.contains("kraus") || !doc["kraus"].is_array() || doc["kraus"].empty())
        throw ParseError("instrument document needs a nonempty 'kraus' array");
    std::vector<KrausOperator> ops;
    ops.reserve(doc["kraus"].size());
    for (const json& op : doc["kraus"]) {
        if (!op.contains("re")) throw ParseError("Kraus operator needs 're'");
        ops.emplace_back(
            matrix_from_grids(op["re"], op.contains("im") ? op["im"] : json(), "Kraus operator"));
    }
    Instrument inst(std::move(ops));
    if (doc.contains("out_dim") &&
        (!doc["out_dim"].is_number_integer() || doc["out_dim"].get<int>() != inst.out_dim()))
        throw ParseError("'out_dim' does not match the Kraus grids");
    if (doc.contains("in_dim") &&
        (!doc["in_dim"].is_number_integer() || doc["in_dim"].get<int>() != inst.in_dim()))
        throw ParseError("'in_dim' does not match the Kraus grids");
    return inst;
}

ParsedState state_from_json(const std::string& text) {
    const json doc = parse(text);
    if (doc.contains("x") && doc.contains("a")) return family_from_json(text);
    if (doc.contains("re")) return density_from_json(text);
    throw ParseError("document is neither a density matrix nor a family state");
}

}  // namespace qcoh
