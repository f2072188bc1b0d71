// Channel-file parsing, pattern CSV emission, and the run report.
//
// Channel files are JSON objects {"dim": d, "kraus": [matrix, ...]} where a
// matrix is a row-major array of rows and every entry is a two-element
// [re, im] array. Optional "name" (string) and "metadata" (object) fields are
// accepted; any other key is a schema error. State-vector files are bare
// JSON arrays of [re, im] pairs.
//
// All emitted artifacts are deterministic: fixed number formatting, LF line
// endings, insertion-ordered JSON. Reports carry an FNV-1a digest of every
// input file so a report identifies its inputs exactly.
#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fringe/channel.hpp"
#include "fringe/error.hpp"
#include "fringe/interferometer.hpp"
#include "fringe/linalg.hpp"
#include "fringe/version.hpp"

namespace fringe {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Files and digests

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::io_error, "cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) raise(Errc::io_error, "read failed: " + path);
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::io_error, "cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out.good()) raise(Errc::io_error, "write failed: " + path);
}

inline std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

// ---------------------------------------------------------------------------
// Channel and state files

namespace detail {

inline Complex parse_entry(const Json& entry, const std::string& where) {
  if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
    raise(Errc::schema_error, where + ": entry must be a [re, im] pair of numbers");
  return Complex(entry[0].get<double>(), entry[1].get<double>());
}

inline ComplexMatrix parse_matrix(const Json& rows, Index dim, const std::string& where) {
  if (!rows.is_array() || static_cast<Index>(rows.size()) != dim)
    raise(Errc::schema_error, where + ": expected " + std::to_string(dim) + " rows");
  ComplexMatrix m(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != dim)
      raise(Errc::schema_error,
            where + ", row " + std::to_string(r) + ": expected " + std::to_string(dim) +
                " entries");
    for (Index c = 0; c < dim; ++c)
      m(r, c) = parse_entry(row[static_cast<std::size_t>(c)],
                            where + ", row " + std::to_string(r) + ", col " + std::to_string(c));
  }
  return m;
}

inline Json parse_json(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    raise(Errc::parse_error, std::string(what) + ": " + e.what());
  }
}

}  // namespace detail

// Parses and validates a ChannelFile; Kraus ordering is kept exactly as
// listed. Malformed JSON is a parse error, wrong structure a schema error,
// and a well-formed file describing an invalid channel a validation error.
inline KrausChannel parse_channel(const std::string& text) {
  Json doc = detail::parse_json(text, "channel file");
  if (!doc.is_object()) raise(Errc::schema_error, "channel file: top level must be an object");
  for (const auto& item : doc.items())
    if (item.key() != "dim" && item.key() != "kraus" && item.key() != "name" &&
        item.key() != "metadata")
      raise(Errc::schema_error, "channel file: unknown field \"" + item.key() + "\"");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1)
    raise(Errc::schema_error, "channel file: \"dim\" must be a positive integer");
  if (!doc.contains("kraus") || !doc["kraus"].is_array() || doc["kraus"].empty())
    raise(Errc::schema_error, "channel file: \"kraus\" must be a non-empty array");
  if (doc.contains("name") && !doc["name"].is_string())
    raise(Errc::schema_error, "channel file: \"name\" must be a string");
  if (doc.contains("metadata") && !doc["metadata"].is_object())
    raise(Errc::schema_error, "channel file: \"metadata\" must be an object");
  const Index dim = doc["dim"].get<Index>();
  std::vector<ComplexMatrix> ops;
  ops.reserve(doc["kraus"].size());
  for (std::size_t i = 0; i < doc["kraus"].size(); ++i)
    ops.push_back(detail::parse_matrix(doc["kraus"][i], dim,
                                       "channel file: kraus[" + std::to_string(i) + "]"));
  try {
    return validate(std::move(ops), dim);
  } catch (const Error& e) {
    raise(Errc::validation_error, std::string("channel file: ") + e.what());
  }
}

inline KrausChannel load_channel(const std::string& path) {
  return parse_channel(read_file(path));
}

inline Json serialize_matrix(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c)
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Numeric values survive a serialize/parse round trip bit-exactly (shortest
// round-trip float printing).
inline Json serialize_channel(const KrausChannel& ch) {
  Json doc;
  doc["dim"] = ch.dim;
  Json kraus = Json::array();
  for (const ComplexMatrix& op : ch.ops) kraus.push_back(serialize_matrix(op));
  doc["kraus"] = std::move(kraus);
  return doc;
}

inline void write_channel(const std::string& path, const KrausChannel& ch) {
  write_file(path, serialize_channel(ch).dump(2) + "\n");
}

// State-vector file: bare array of [re, im] amplitude pairs; normalized by
// pure_state (which rejects vectors more than 1e-9 away from unit norm).
inline DensityMatrix parse_pure_state(const std::string& text) {
  Json doc = detail::parse_json(text, "state file");
  if (!doc.is_array() || doc.empty())
    raise(Errc::schema_error, "state file: top level must be a non-empty array");
  ComplexVector psi(static_cast<Index>(doc.size()));
  for (std::size_t i = 0; i < doc.size(); ++i)
    psi[static_cast<Index>(i)] =
        detail::parse_entry(doc[i], "state file: amplitude " + std::to_string(i));
  try {
    return pure_state(psi);
  } catch (const Error& e) {
    raise(Errc::validation_error, std::string("state file: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Pattern CSV

// Header `phi,p0`, one row per sample, radians, 15 significant digits, LF
// endings, ascending phi.
inline std::string pattern_csv(const InterferencePattern& p) {
  std::string out = "phi,p0\n";
  char buf[80];
  for (std::size_t k = 0; k < p.phases.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.15g,%.15g\n", p.phases[k], p.probabilities[k]);
    out += buf;
  }
  return out;
}

inline void emit_pattern_csv(const InterferencePattern& p, const std::string& path) {
  write_file(path, pattern_csv(p));
}

// ---------------------------------------------------------------------------
// Run reports

// Fixed-point metric rendering: 12 decimal places, negative zero normalized.
inline std::string format_metric(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12f", value);
  std::string s = buf;
  if (s.size() > 1 && s[0] == '-' && s.find_first_not_of("0.", 1) == std::string::npos)
    s.erase(0, 1);
  return s;
}

// A report accumulates lines in emission order and renders either as plain
// text or as JSON carrying the same values: every metric is rounded through
// its 12-decimal text form first, so the two renderings can never disagree.
class RunReport {
 public:
  explicit RunReport(std::string command) {
    doc_["tool"] = kToolName;
    doc_["version"] = kVersion;
    doc_["command"] = command;
    doc_["inputs"] = Json::object();
    text_ = std::string(kToolName) + " " + kVersion + "\ncommand: " + command + "\n";
  }

  void add_input(const std::string& role, const std::string& path, const std::string& digest) {
    doc_["inputs"][role] = Json{{"path", path}, {"fnv1a", digest}};
    text_ += "input " + role + ": " + path + " fnv1a=" + digest + "\n";
  }

  void add_metric(const std::string& name, double value) {
    std::string formatted = format_metric(value);
    doc_["metrics"][name] = std::strtod(formatted.c_str(), nullptr);
    text_ += name + "=" + formatted + "\n";
  }

  void add_flag(const std::string& name, bool value) {
    doc_["flags"][name] = value;
    text_ += name + "=" + (value ? "true" : "false") + "\n";
  }

  void add_text(const std::string& name, const std::string& value) {
    doc_["outputs"][name] = value;
    text_ += name + "=" + value + "\n";
  }

  void add_vector(const std::string& name, const ComplexVector& v) {
    Json arr = Json::array();
    std::string line = name + "=[";
    for (Index i = 0; i < v.size(); ++i) {
      std::string re = format_metric(v[i].real());
      std::string im = format_metric(v[i].imag());
      arr.push_back(Json::array(
          {std::strtod(re.c_str(), nullptr), std::strtod(im.c_str(), nullptr)}));
      line += std::string(i == 0 ? "" : ",") + "[" + re + "," + im + "]";
    }
    doc_["vectors"][name] = std::move(arr);
    text_ += line + "]\n";
  }

  std::string render_text() const { return text_; }
  std::string render_json() const { return doc_.dump(2) + "\n"; }

 private:
  Json doc_;
  std::string text_;
};

}  // namespace fringe
