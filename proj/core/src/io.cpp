#include "proxproj/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace proxproj {

namespace {

constexpr char kMatMagic[8] = {'P', 'P', 'M', 'A', 'T', '1', '\0', '\0'};
constexpr char kVecMagic[8] = {'P', 'P', 'V', 'E', 'C', '1', '\0', '\0'};

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64(const std::string& in, std::size_t off) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[off + i]))
         << (8 * i);
  }
  return v;
}

void put_f64(std::string& out, double d) {
  put_u64(out, std::bit_cast<std::uint64_t>(d));
}

void need(const std::string& in, std::size_t off, std::size_t len,
          const char* what) {
  if (in.size() < off + len) {
    throw FormatError(std::string("truncated ") + what, in.size());
  }
}

void check_magic(const std::string& in, const char (&magic)[8],
                 const char* what) {
  need(in, 0, 8, what);
  for (std::size_t i = 0; i < 8; ++i) {
    if (in[i] != magic[i]) {
      throw FormatError(std::string("bad ") + what + " magic", i);
    }
  }
}

double read_value(const std::string& in, std::size_t off) {
  const double d = std::bit_cast<double>(get_u64(in, off));
  if (!std::isfinite(d)) throw FormatError("non-finite value", off);
  return d;
}

}  // namespace

std::string encode_matrix(const Matrix& a) {
  std::string out(kMatMagic, 8);
  out.reserve(24 + 8 * static_cast<std::size_t>(a.size()));
  put_u64(out, static_cast<std::uint64_t>(a.rows()));
  put_u64(out, static_cast<std::uint64_t>(a.cols()));
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) put_f64(out, a(i, j));
  }
  return out;
}

Matrix decode_matrix(const std::string& in) {
  check_magic(in, kMatMagic, "PPMAT1");
  need(in, 8, 16, "PPMAT1 header");
  const std::uint64_t rows = get_u64(in, 8);
  const std::uint64_t cols = get_u64(in, 16);
  const std::uint64_t avail = (in.size() - 24) / 8;
  if (cols != 0 && rows > avail / cols) {
    throw FormatError("truncated PPMAT1 payload", in.size());
  }
  const std::size_t expect = 24 + 8 * rows * cols;
  if (in.size() != expect) {
    throw FormatError("trailing bytes after PPMAT1 payload", expect);
  }
  Matrix a(static_cast<Index>(rows), static_cast<Index>(cols));
  std::size_t off = 24;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j, off += 8) a(i, j) = read_value(in, off);
  }
  return a;
}

std::string encode_vector(const Vector& v) {
  std::string out(kVecMagic, 8);
  put_u64(out, static_cast<std::uint64_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i) put_f64(out, v(i));
  return out;
}

Vector decode_vector(const std::string& in) {
  check_magic(in, kVecMagic, "PPVEC1");
  need(in, 8, 8, "PPVEC1 header");
  const std::uint64_t len = get_u64(in, 8);
  if (len > (in.size() - 16) / 8) {
    throw FormatError("truncated PPVEC1 payload", in.size());
  }
  const std::size_t expect = 16 + 8 * len;
  if (in.size() != expect) {
    throw FormatError("trailing bytes after PPVEC1 payload", expect);
  }
  Vector v(static_cast<Index>(len));
  for (Index i = 0; i < v.size(); ++i) v(i) = read_value(in, 16 + 8 * i);
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error("write to '" + path + "' failed");
}

void write_matrix(const std::string& path, const Matrix& a) {
  write_file(path, encode_matrix(a));
}
Matrix read_matrix(const std::string& path) {
  return decode_matrix(read_file(path));
}
void write_vector(const std::string& path, const Vector& v) {
  write_file(path, encode_vector(v));
}
Vector read_vector(const std::string& path) {
  return decode_vector(read_file(path));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void write_matrix_csv(const std::string& path, const Matrix& a) {
  std::string out;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (j > 0) out.push_back(',');
      out += format_double(a(i, j));
    }
    out += "\r\n";
  }
  write_file(path, out);
}

Matrix parse_matrix_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::vector<double> row;
  std::string field;
  bool quoted = false;
  bool in_quotes = false;
  std::size_t field_start = 0;
  auto flush_field = [&](std::size_t at) {
    std::string_view sv(field);
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
    while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\t')) sv.remove_suffix(1);
    double d = 0.0;
    const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), d);
    if (sv.empty() || res.ec != std::errc() || res.ptr != sv.data() + sv.size() ||
        !std::isfinite(d)) {
      throw FormatError("CSV field '" + field + "' is not a finite number",
                        field_start);
    }
    row.push_back(d);
    field.clear();
    quoted = false;
    field_start = at + 1;
  };
  auto flush_row = [&](std::size_t at) {
    if (row.empty() && field.empty() && !quoted) return;  // blank line
    flush_field(at);
    if (!rows.empty() && rows.front().size() != row.size()) {
      throw FormatError("CSV rows have different lengths", at);
    }
    rows.push_back(std::move(row));
    row.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      in_quotes = true;
      quoted = true;
    } else if (ch == ',') {
      flush_field(i);
    } else if (ch == '\n') {
      flush_row(i);
      field_start = i + 1;
    } else if (ch != '\r') {
      field.push_back(ch);
    }
  }
  if (in_quotes) throw FormatError("unterminated quoted CSV field", text.size());
  flush_row(text.size());
  if (rows.empty()) return Matrix(0, 0);
  Matrix a(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) a(i, j) = rows[i][j];
  }
  return a;
}

Matrix read_matrix_csv(const std::string& path) {
  return parse_matrix_csv(read_file(path));
}

namespace {

// Reads one PGM header token, skipping whitespace and '#' comments.
long pgm_token(const std::string& in, std::size_t& pos) {
  while (pos < in.size()) {
    const char c = in[pos];
    if (c == '#') {
      while (pos < in.size() && in[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  long v = 0;
  while (pos < in.size() && std::isdigit(static_cast<unsigned char>(in[pos]))) {
    v = v * 10 + (in[pos] - '0');
    if (v > 1'000'000'000L) throw FormatError("PGM number too large", start);
    ++pos;
  }
  if (pos == start) throw FormatError("expected a number in PGM data", start);
  return v;
}

}  // namespace

Matrix parse_pgm(const std::string& in) {
  if (in.size() < 2 || in[0] != 'P' || (in[1] != '2' && in[1] != '5')) {
    throw FormatError("not a P2/P5 PGM file", 0);
  }
  const bool binary = in[1] == '5';
  std::size_t pos = 2;
  const long w = pgm_token(in, pos);
  const long h = pgm_token(in, pos);
  const std::size_t maxval_at = pos;
  const long maxval = pgm_token(in, pos);
  if (w < 1 || h < 1) throw FormatError("PGM dimensions must be positive", 2);
  if (maxval < 1 || maxval > 65535) {
    throw FormatError("PGM maxval must lie in [1, 65535]", maxval_at);
  }
  Matrix a(h, w);
  const double scale = 1.0 / static_cast<double>(maxval);
  if (binary) {
    if (pos >= in.size() || !std::isspace(static_cast<unsigned char>(in[pos]))) {
      throw FormatError("missing whitespace after PGM header", pos);
    }
    ++pos;
    const std::size_t bytes = maxval < 256 ? 1 : 2;
    const std::size_t need_bytes = static_cast<std::size_t>(w * h) * bytes;
    if (in.size() < pos + need_bytes) {
      throw FormatError("truncated P5 raster", in.size());
    }
    for (long i = 0; i < h; ++i) {
      for (long j = 0; j < w; ++j) {
        long v = static_cast<unsigned char>(in[pos++]);
        if (bytes == 2) v = (v << 8) | static_cast<unsigned char>(in[pos++]);
        if (v > maxval) throw FormatError("PGM sample exceeds maxval", pos - bytes);
        a(i, j) = static_cast<double>(v) * scale;
      }
    }
  } else {
    for (long i = 0; i < h; ++i) {
      for (long j = 0; j < w; ++j) {
        const std::size_t at = pos;
        const long v = pgm_token(in, pos);
        if (v > maxval) throw FormatError("PGM sample exceeds maxval", at);
        a(i, j) = static_cast<double>(v) * scale;
      }
    }
  }
  return a;
}

Matrix read_pgm(const std::string& path) { return parse_pgm(read_file(path)); }

void write_pgm(const std::string& path, const Matrix& a, bool binary,
               int maxval) {
  if (maxval < 1 || maxval > 65535) throw ConfigError("PGM maxval out of range");
  std::string out = binary ? "P5\n" : "P2\n";
  out += std::to_string(a.cols()) + " " + std::to_string(a.rows()) + "\n" +
         std::to_string(maxval) + "\n";
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      const double c = std::clamp(a(i, j), 0.0, 1.0);
      const long v = std::lround(c * maxval);
      if (binary) {
        if (maxval > 255) out.push_back(static_cast<char>((v >> 8) & 0xff));
        out.push_back(static_cast<char>(v & 0xff));
      } else {
        out += std::to_string(v);
        out.push_back(j + 1 < a.cols() ? ' ' : '\n');
      }
    }
  }
  write_file(path, out);
}

void write_metrics_csv(std::ostream& os, const IterateLog& log) {
  os << "iter,violation,objective,residual,wall_ms\n";
  for (const MetricRow& r : log.rows) {
    os << r.iter << ',' << format_double(r.violation) << ','
       << format_double(r.objective) << ',' << format_double(r.residual) << ','
       << format_double(r.wall_ms) << '\n';
  }
}

void write_metrics_csv(const std::string& path, const IterateLog& log) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  write_metrics_csv(f, log);
}

}  // namespace proxproj
