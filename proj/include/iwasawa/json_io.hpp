#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "iwasawa/families.hpp"
#include "iwasawa/kan.hpp"
#include "iwasawa/matrix.hpp"
#include "iwasawa/spectral_frame.hpp"
#include "iwasawa/triangular.hpp"

namespace iwasawa::io {

using nlohmann::json;

/// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
json matrix_to_json(const ComplexMatrix& m);
/// Throws InvalidInput on a missing field, a wrong entry count or a
/// non-finite entry.
ComplexMatrix matrix_from_json(const json& j);

/// {"clusters": [[value, multiplicity], ...], "basis": <matrix>}.
json frame_to_json(const SpectralFrame& frame);
SpectralFrame frame_from_json(const json& j);

json report_to_json(const MembershipReport& report);

/// {"k", "a", "n", "residuals"}.
json factors_to_json(const KanFactors& f, const MembershipReport& report);
/// {"k_part", "a_part", "n_part", "residuals"}.
json parts_to_json(const TriadicParts& parts, const MembershipReport& report);
/// Family, operators (null when absent), adapted basis, basis relations and
/// construction invariants.
json context_to_json(const StructureContext& ctx);

/// JSON text with every double printed to 17 significant digits.
std::string dump(const json& j, int indent = 2);

/// Numbers in CSV files use the same 17-digit form.
std::string format_double(double v);

void write_growth_csv(std::ostream& out, std::span<const GrowthRow> rows);
void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve);

/// Reads and parses a JSON file. Throws InvalidInput naming the path.
json read_json_file(const std::string& path);
ComplexMatrix read_matrix_file(const std::string& path);
/// Throws InvalidInput naming the path when it cannot be written.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace iwasawa::io
