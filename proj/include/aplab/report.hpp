#pragma once

// Byte-stable report output: JSON with insertion-ordered keys and every float
// printed as %.12e (non-finite values become null), CSV and JSON lines, and
// all-or-nothing file emission.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "aplab/estimates.hpp"

namespace aplab {

using Json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "%.12e", or "null" for NaN and infinities.
std::string format_double(double v);

/// Two-space indented JSON, trailing newline.
std::string dump_json(const Json& j);
/// Single-line JSON, no trailing newline.
std::string dump_json_line(const Json& j);

/// {"check", "seed", "lhs", "rhs", "margin", "pass"} in that order.
Json certificate_json(const BoundCertificate& c);

struct ReportFile {
  std::string name;
  std::string contents;
};

/// Creates `dir` if needed and verifies it is writable.  Throws IoError.
void prepare_output_dir(const std::filesystem::path& dir);

/// Creates `dir` like prepare_output_dir, writes every file to a temporary
/// name and renames only after all writes succeeded.  Throws
/// std::invalid_argument for an empty list (nothing is created) and IoError
/// on failure (temporaries are removed).
void emit_report(const std::filesystem::path& dir, const std::vector<ReportFile>& files);

}  // namespace aplab
