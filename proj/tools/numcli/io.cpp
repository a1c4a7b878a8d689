#include "io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace numcli {

namespace {

const char* kind_name(IoErrorKind k) {
  switch (k) {
    case IoErrorKind::MalformedCsv: return "MalformedCsv";
    case IoErrorKind::MalformedPgm: return "MalformedPgm";
    case IoErrorKind::NonFinite: return "NonFinite";
  }
  return "IoError";
}

[[noreturn]] void bad_csv(const std::string& what) { throw IoError(IoErrorKind::MalformedCsv, what); }
[[noreturn]] void bad_pgm(const std::string& what) { throw IoError(IoErrorKind::MalformedPgm, what); }

std::string format17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

double parse_number(std::string_view field, std::size_t line_no) {
  if (field.empty()) bad_csv("empty field on line " + std::to_string(line_no));
  const std::string s(field);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) bad_csv("not a number '" + s + "' on line " + std::to_string(line_no));
  if (!std::isfinite(v)) bad_csv("non-finite value '" + s + "' on line " + std::to_string(line_no));
  return v;
}

// Whitespace-separated PGM tokens with '#' comments removed.
std::vector<std::string_view> pgm_tokens(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
    } else {
      const std::size_t start = i;
      while (i < text.size() && text[i] != '#' && text[i] != ' ' && text[i] != '\t' && text[i] != '\n' &&
             text[i] != '\r')
        ++i;
      out.push_back(text.substr(start, i - start));
    }
  }
  return out;
}

unsigned long pgm_uint(std::string_view tok, const char* what) {
  unsigned long v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) bad_pgm(std::string("bad ") + what + " '" + std::string(tok) + "'");
  return v;
}

}  // namespace

IoError::IoError(IoErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

std::string write_csv(const Table& t) {
  std::string out;
  for (std::size_t j = 0; j < t.headers.size(); ++j) {
    if (j) out += ',';
    out += t.headers[j];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.headers.size()) throw IoError(IoErrorKind::MalformedCsv, "row width differs from header");
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!std::isfinite(row[j])) throw IoError(IoErrorKind::NonFinite, "refusing to write a non-finite value");
      if (j) out += ',';
      out += format17(row[j]);
    }
    out += '\n';
  }
  return out;
}

Table read_csv(std::string_view text) {
  if (text.empty()) bad_csv("missing header line");
  if (text.back() == '\n') text.remove_suffix(1);
  std::vector<std::string_view> lines = split(text, '\n');
  for (auto& l : lines)
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  Table t;
  for (std::string_view h : split(lines[0], ',')) t.headers.emplace_back(h);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) bad_csv("blank line " + std::to_string(i + 1));
    const auto fields = split(lines[i], ',');
    if (fields.size() != t.headers.size()) bad_csv("line " + std::to_string(i + 1) + " has the wrong number of fields");
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::string_view f : fields) row.push_back(parse_number(f, i + 1));
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string write_pgm(const Gray& img) {
  if (img.data.size() != img.rows * img.cols) throw IoError(IoErrorKind::MalformedPgm, "image size mismatch");
  std::string out = "P2\n" + std::to_string(img.cols) + " " + std::to_string(img.rows) + "\n255\n";
  for (std::size_t r = 0; r < img.rows; ++r) {
    std::size_t width = 0;
    for (std::size_t c = 0; c < img.cols; ++c) {
      const double v = img.data[r * img.cols + c];
      if (!std::isfinite(v)) throw IoError(IoErrorKind::NonFinite, "refusing to write a non-finite pixel");
      if (v < -0.5 || v >= 255.5) throw IoError(IoErrorKind::MalformedPgm, "pixel outside [0, 255]");
      const std::string tok = std::to_string(static_cast<int>(std::lround(v)));
      // keep every line within 70 characters
      if (width > 0 && width + 1 + tok.size() > 70) {
        out += '\n';
        width = 0;
      }
      if (width > 0) {
        out += ' ';
        ++width;
      }
      out += tok;
      width += tok.size();
    }
    out += '\n';
  }
  return out;
}

Gray read_pgm(std::string_view text) {
  const auto toks = pgm_tokens(text);
  if (toks.empty() || toks[0] != "P2") bad_pgm("only ASCII P2 images are supported");
  if (toks.size() < 4) bad_pgm("truncated header");
  Gray g;
  g.cols = pgm_uint(toks[1], "width");
  g.rows = pgm_uint(toks[2], "height");
  const unsigned long maxval = pgm_uint(toks[3], "maxval");
  if (maxval == 0 || maxval > 65535) bad_pgm("maxval out of range");
  if (toks.size() - 4 != g.rows * g.cols) bad_pgm("pixel count does not match the header");
  g.data.reserve(g.rows * g.cols);
  for (std::size_t i = 4; i < toks.size(); ++i) {
    const unsigned long v = pgm_uint(toks[i], "pixel");
    if (v > maxval) bad_pgm("pixel exceeds maxval");
    g.data.push_back(static_cast<double>(v));
  }
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace numcli
