#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "submaj/families.hpp"
#include "submaj/matrix.hpp"
#include "submaj/means.hpp"

namespace submaj::io {

using nlohmann::json;

// Matrices are nested arrays of [re, im] pairs, row-major.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);
json hermitian_to_json(const HermitianMatrix& m);
HermitianMatrix hermitian_from_json(const json& j);

// {"dim": d, "X": [...], "Y": [...], "rho": {label: matrix}, "sigma": {...}}
json family_to_json(const FamilyPair& p);
FamilyPair family_from_json(const json& j);

// [{"load": "y1"}, {"load": "y2"}, {"geo": [0, 1, 0.5]}]
json program_to_json(const MeanProgram& p);
MeanProgram program_from_json(const json& j);

// {"y0": 0.5, "y1": 0.5}
json measure_to_json(const FiniteMeasure& m);
FiniteMeasure measure_from_json(const json& j);

// Group description for equivariance constraints:
//   {"kind": "finite", "in": [U...], "out": [U...]}   (out defaults to in)
//   {"kind": "u1", "h_in": H, "h_out": H'}            (h_out defaults to h_in)
struct GroupSpec {
  enum class Kind { Finite, U1 } kind;
  std::vector<Matrix> in_elements, out_elements;  // Finite
  Matrix h_in, h_out;                             // U1
};
GroupSpec group_from_json(const json& j);

// Parses a file, wrapping syntax errors as ParseError with line/column.
json load_json_file(const std::string& path);

// Parse from a string (same error reporting), path used in messages only.
json parse_json(const std::string& text, const std::string& path = "<string>");

// Writes via a temp file + rename so readers never observe partial output.
void write_text_atomic(const std::string& path, const std::string& content);

std::string format_double(double v);  // round-trippable, 17 significant digits

}  // namespace submaj::io
