#pragma once

#include <string>
#include <utility>
#include <vector>

#include "phasecone/core.hpp"
#include "phasecone/fock.hpp"
#include "phasecone/positivity.hpp"
#include "phasecone/warnings.hpp"

namespace phasecone::io {

// Payload layout behind the one-line JSON header that starts every field
// and operator file.  Binary is interleaved little-endian (re, im) 64-bit
// floats; csv is one "re,im" line per entry.  Both are row-major in q.
enum class Encoding { binary, csv };

Encoding encoding_from_name(const std::string& name);  // "binary" | "csv"

// Round-trip-exact decimal form, 17 significant digits.  Every float this
// project prints goes through here so repeated runs are byte-identical.
std::string format_double(double v);

// `s` as a quoted, escaped JSON string literal.
std::string json_quote(const std::string& s);

// Tabulated field with its header-declared role ("char", "wigner", or
// empty for a plain field).
struct FieldFile {
  ComplexField field;
  std::string side;
};

void write_field(const std::string& path, const ComplexField& f, Encoding enc,
                 const std::string& side = "");
FieldFile read_field(const std::string& path);

void write_operator(const std::string& path, const fock::FockOperator& a,
                    Encoding enc);
fock::FockOperator read_operator(const std::string& path);

std::string psd_report_json(const positivity::PSDReport& r);

void write_sample_set(const std::string& path, const positivity::SampleSet& s);
std::vector<PhasePoint> read_sample_points(const std::string& path);

// Hex SHA-256 of a file's bytes; IOError when unreadable.
std::string sha256_file(const std::string& path);

// Everything needed to audit one CLI run: what was asked, with which
// settings, what came out, and whether it passed.
struct ExperimentRecord {
  std::string command;
  std::string config_json;  // flat snapshot, already serialized
  double wall_seconds = 0.0;
  std::vector<std::pair<std::string, std::string>> files;  // path, sha256
  std::vector<warn::Warning> warnings;
  std::string summary;
  bool ok = true;
};

// Serializes the record; hashes in `files` must already be filled in.
std::string record_json(const ExperimentRecord& r);

// Re-hashes every file listed in a record's manifest (paths resolved
// against the record's directory); returns one message per mismatch or
// missing file, empty when the manifest checks out.
std::vector<std::string> check_manifest(const std::string& record_path);

void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

}  // namespace phasecone::io
