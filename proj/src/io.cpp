#include "phasecone/io.hpp"

#include <openssl/evp.h>

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace phasecone::io {

namespace {

using nlohmann::json;

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

// Interleaved (re, im) doubles as little-endian bytes.
void append_values(std::string& out, const std::vector<cdouble>& values) {
  static_assert(sizeof(double) == 8);
  const std::size_t start = out.size();
  out.resize(start + values.size() * 16);
  char* dst = out.data() + start;
  std::memcpy(dst, values.data(), values.size() * 16);
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < values.size() * 16; i += 8)
      for (int b = 0; b < 4; ++b) std::swap(dst[i + b], dst[i + 7 - b]);
  }
}

std::vector<cdouble> parse_binary(const std::string& payload,
                                  std::size_t count, const std::string& path) {
  if (payload.size() != count * 16)
    throw ParseError(path + ": payload holds " +
                     std::to_string(payload.size()) + " bytes, expected " +
                     std::to_string(count * 16));
  std::vector<cdouble> values(count);
  std::memcpy(values.data(), payload.data(), payload.size());
  if constexpr (std::endian::native == std::endian::big) {
    auto* raw = reinterpret_cast<unsigned char*>(values.data());
    for (std::size_t i = 0; i < payload.size(); i += 8)
      for (int b = 0; b < 4; ++b) std::swap(raw[i + b], raw[i + 7 - b]);
  }
  return values;
}

std::vector<cdouble> parse_csv(const std::string& payload, std::size_t count,
                               const std::string& path) {
  std::vector<cdouble> values;
  values.reserve(count);
  const char* p = payload.data();
  const char* end = p + payload.size();
  while (p < end) {
    while (p < end && (*p == '\n' || *p == '\r')) ++p;
    if (p >= end) break;
    double re = 0.0, im = 0.0;
    auto r1 = std::from_chars(p, end, re);
    if (r1.ec != std::errc{} || r1.ptr >= end || *r1.ptr != ',')
      throw ParseError(path + ": bad csv row near offset " +
                       std::to_string(p - payload.data()));
    auto r2 = std::from_chars(r1.ptr + 1, end, im);
    if (r2.ec != std::errc{})
      throw ParseError(path + ": bad csv row near offset " +
                       std::to_string(p - payload.data()));
    values.push_back({re, im});
    p = r2.ptr;
  }
  if (values.size() != count)
    throw ParseError(path + ": csv payload holds " +
                     std::to_string(values.size()) + " rows, expected " +
                     std::to_string(count));
  return values;
}

struct HeaderAndPayload {
  json header;
  std::string payload;
};

HeaderAndPayload read_with_header(const std::string& path) {
  std::string all = read_text(path);
  std::size_t nl = all.find('\n');
  if (nl == std::string::npos)
    throw ParseError(path + ": missing header line");
  HeaderAndPayload out;
  try {
    out.header = json::parse(all.substr(0, nl));
  } catch (const json::exception& e) {
    throw ParseError(path + ": bad header: " + e.what());
  }
  out.payload = all.substr(nl + 1);
  return out;
}

Encoding encoding_of_header(const json& header, const std::string& path) {
  try {
    return encoding_from_name(header.at("format").get<std::string>());
  } catch (const json::exception& e) {
    throw ParseError(path + ": bad header: " + e.what());
  }
}

std::string hex(const unsigned char* data, unsigned int len) {
  static const char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += digits[data[i] >> 4];
    out += digits[data[i] & 0xf];
  }
  return out;
}

}  // namespace

Encoding encoding_from_name(const std::string& name) {
  if (name == "binary") return Encoding::binary;
  if (name == "csv") return Encoding::csv;
  throw ParseError("unknown encoding \"" + name + "\"");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_quote(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  append_escaped(out, s);
  return out;
}

void write_field(const std::string& path, const ComplexField& f, Encoding enc,
                 const std::string& side) {
  std::string out = "{\"kind\":\"field\",\"format\":\"";
  out += enc == Encoding::binary ? "binary" : "csv";
  out += "\",\"half_extent\":" + format_double(f.grid().half_extent());
  out += ",\"points\":" + std::to_string(f.grid().points());
  if (!side.empty()) {
    out += ",\"side\":";
    append_escaped(out, side);
  }
  out += "}\n";
  if (enc == Encoding::binary) {
    append_values(out, f.values());
  } else {
    for (cdouble v : f.values())
      out += format_double(v.real()) + "," + format_double(v.imag()) + "\n";
  }
  write_text(path, out);
}

FieldFile read_field(const std::string& path) {
  HeaderAndPayload file = read_with_header(path);
  double half_extent = 0.0;
  int points = 0;
  std::string side;
  try {
    if (file.header.at("kind").get<std::string>() != "field")
      throw ParseError(path + ": not a field file");
    half_extent = file.header.at("half_extent").get<double>();
    points = file.header.at("points").get<int>();
    side = file.header.value("side", "");
  } catch (const json::exception& e) {
    throw ParseError(path + ": bad header: " + e.what());
  }
  PhaseGrid grid(half_extent, points);
  std::size_t count = static_cast<std::size_t>(points) * points;
  std::vector<cdouble> values =
      encoding_of_header(file.header, path) == Encoding::binary
          ? parse_binary(file.payload, count, path)
          : parse_csv(file.payload, count, path);
  ComplexField f(grid);
  f.values() = std::move(values);
  return {std::move(f), std::move(side)};
}

void write_operator(const std::string& path, const fock::FockOperator& a,
                    Encoding enc) {
  std::string out = "{\"kind\":\"operator\",\"format\":\"";
  out += enc == Encoding::binary ? "binary" : "csv";
  out += "\",\"dim\":" + std::to_string(a.dim());
  out += "}\n";
  const int n = a.dim();
  std::vector<cdouble> values;
  values.reserve(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) values.push_back(a.matrix()(r, c));
  if (enc == Encoding::binary) {
    append_values(out, values);
  } else {
    for (cdouble v : values)
      out += format_double(v.real()) + "," + format_double(v.imag()) + "\n";
  }
  write_text(path, out);
}

fock::FockOperator read_operator(const std::string& path) {
  HeaderAndPayload file = read_with_header(path);
  int dim = 0;
  try {
    if (file.header.at("kind").get<std::string>() != "operator")
      throw ParseError(path + ": not an operator file");
    dim = file.header.at("dim").get<int>();
  } catch (const json::exception& e) {
    throw ParseError(path + ": bad header: " + e.what());
  }
  if (dim < 2) throw ParseError(path + ": dimension " + std::to_string(dim));
  std::size_t count = static_cast<std::size_t>(dim) * dim;
  std::vector<cdouble> values =
      encoding_of_header(file.header, path) == Encoding::binary
          ? parse_binary(file.payload, count, path)
          : parse_csv(file.payload, count, path);
  fock::Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      m(r, c) = values[static_cast<std::size_t>(r) * dim + c];
  return fock::FockOperator(std::move(m));
}

std::string psd_report_json(const positivity::PSDReport& r) {
  std::string out = "{\"gram_dim\":" + std::to_string(r.gram_dim);
  out += ",\"min_eig\":" + format_double(r.min_eig);
  out += ",\"max_eig\":" + format_double(r.max_eig);
  out += ",\"hermiticity_defect\":" + format_double(r.hermiticity_defect);
  out += ",\"tolerance_used\":" + format_double(r.tolerance_used);
  out += std::string(",\"pass\":") + (r.pass ? "true" : "false") + "}";
  return out;
}

void write_sample_set(const std::string& path,
                      const positivity::SampleSet& s) {
  std::string out = "q,p\n";
  for (PhasePoint z : s.points())
    out += format_double(z.q) + "," + format_double(z.p) + "\n";
  write_text(path, out);
}

std::vector<PhasePoint> read_sample_points(const std::string& path) {
  std::string text = read_text(path);
  std::vector<PhasePoint> points;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "q,p") continue;
    const char* p = line.data();
    const char* end = p + line.size();
    double q = 0.0, pp = 0.0;
    auto r1 = std::from_chars(p, end, q);
    if (r1.ec != std::errc{} || r1.ptr >= end || *r1.ptr != ',')
      throw ParseError(path + ": bad sample row \"" + line + "\"");
    auto r2 = std::from_chars(r1.ptr + 1, end, pp);
    if (r2.ec != std::errc{})
      throw ParseError(path + ": bad sample row \"" + line + "\"");
    points.push_back({q, pp});
  }
  return points;
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot open " + path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw IOError("digest context allocation failed");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  for (;;) {
    in.read(buf, sizeof buf);
    std::streamsize got = in.gcount();
    if (got > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(got));
    if (got < static_cast<std::streamsize>(sizeof buf)) break;
  }
  bool bad = in.bad();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  if (bad) throw IOError("read failed on " + path);
  return hex(md, len);
}

std::string record_json(const ExperimentRecord& r) {
  std::string out = "{\"command\":";
  append_escaped(out, r.command);
  out += ",\"config\":" + r.config_json;
  out += ",\"wall_seconds\":" + format_double(r.wall_seconds);
  out += ",\"files\":[";
  for (std::size_t i = 0; i < r.files.size(); ++i) {
    if (i) out += ',';
    out += "{\"path\":";
    append_escaped(out, r.files[i].first);
    out += ",\"sha256\":";
    append_escaped(out, r.files[i].second);
    out += '}';
  }
  out += "],\"warnings\":[";
  for (std::size_t i = 0; i < r.warnings.size(); ++i) {
    if (i) out += ',';
    out += "{\"code\":";
    append_escaped(out, warn::code_name(r.warnings[i].code));
    out += ",\"detail\":";
    append_escaped(out, r.warnings[i].detail);
    out += '}';
  }
  out += "],\"summary\":";
  append_escaped(out, r.summary);
  out += std::string(",\"ok\":") + (r.ok ? "true" : "false") + "}\n";
  return out;
}

std::vector<std::string> check_manifest(const std::string& record_path) {
  json j;
  try {
    j = json::parse(read_text(record_path));
  } catch (const json::exception& e) {
    throw ParseError(record_path + ": " + e.what());
  }
  std::filesystem::path base =
      std::filesystem::path(record_path).parent_path();
  std::vector<std::string> problems;
  try {
    for (const auto& entry : j.at("files")) {
      std::string rel = entry.at("path").get<std::string>();
      std::string want = entry.at("sha256").get<std::string>();
      std::filesystem::path p = base / rel;
      std::error_code ec;
      if (!std::filesystem::exists(p, ec) || ec) {
        problems.push_back(rel + ": missing");
        continue;
      }
      if (sha256_file(p.string()) != want)
        problems.push_back(rel + ": hash mismatch");
    }
  } catch (const json::exception& e) {
    throw ParseError(record_path + ": " + e.what());
  }
  return problems;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IOError("write failed on " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IOError("read failed on " + path);
  return buf.str();
}

}  // namespace phasecone::io
