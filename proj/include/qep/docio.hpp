#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qep/channels.hpp"
#include "qep/epistemic.hpp"
#include "qep/qcore.hpp"

// Structure and channel documents, and the serialization helpers shared by
// the report writers. All formats are JSON with complex numbers as [re, im]
// pairs and a leading format_version field.

namespace qep::docio {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line = 0, int column = 0);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

Json complex_to_json(cdouble z);
Json vector_to_json(const CVector& v);
Json matrix_to_json(const CMatrix& m);

cdouble complex_from_json(const Json& j);
CVector vector_from_json(const Json& j);
CMatrix matrix_from_json(const Json& j);

// "identity" | "hadamard" | "sqrt-not" | explicit 2x2 matrix.
TruthPerspective perspective_from_json(const Json& j, double eps = kDefaultEpsilon);
// Accepts a preset name or an inline JSON matrix (CLI argument form).
TruthPerspective parse_perspective(const std::string& text, double eps = kDefaultEpsilon);

struct StructureDocument {
  EpistemicStructure structure;
  InteractionMap interactions;
  bool has_interactions = false;
};

StructureDocument parse_structure(const std::string& text, double eps = kDefaultEpsilon);
StructureDocument load_structure(const std::string& path, double eps = kDefaultEpsilon);

struct ChannelDocument {
  int n = 1;
  // Raw operators for the Kraus form; completeness is a reported check, not a
  // parse-time invariant, so broken fixtures load and fail the check.
  std::vector<CMatrix> kraus_ops;
  std::optional<SuperOperator> superop;
  std::string form;         // "kraus" or "superoperator"
  std::string description;  // preset name or "explicit"
};

ChannelDocument parse_channel(const std::string& text, double eps = kDefaultEpsilon);
ChannelDocument load_channel(const std::string& path, double eps = kDefaultEpsilon);

// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_text(const std::string& path);

// Writes via a temp file + rename so readers never observe partial output.
void write_text_atomic(const std::string& path, const std::string& text);

}  // namespace qep::docio
