#pragma once

#include <iosfwd>
#include <string>

#include "proxproj/drs.hpp"

namespace proxproj {

// Binary formats, all little-endian:
//   PPMAT1: "PPMAT1\0", one zero pad byte, u64 rows, u64 cols,
//           rows*cols binary64 values in row-major order.
//   PPVEC1: "PPVEC1\0", one zero pad byte, u64 length, binary64 values.
// Readers reject bad magic, truncation, trailing bytes and non-finite
// values with a FormatError carrying the byte offset.

void write_matrix(const std::string& path, const Matrix& a);
Matrix read_matrix(const std::string& path);
void write_vector(const std::string& path, const Vector& v);
Vector read_vector(const std::string& path);

std::string encode_matrix(const Matrix& a);
Matrix decode_matrix(const std::string& bytes);
std::string encode_vector(const Vector& v);
Vector decode_vector(const std::string& bytes);

/// Comma separated rows, no header, shortest round-trip values. Quoted
/// fields are accepted on input.
void write_matrix_csv(const std::string& path, const Matrix& a);
Matrix read_matrix_csv(const std::string& path);
Matrix parse_matrix_csv(const std::string& text);

/// Grayscale P2 (ASCII) or P5 (binary, 8 or 16 bit big-endian samples)
/// scaled to [0, 1] by maxval.
Matrix read_pgm(const std::string& path);
Matrix parse_pgm(const std::string& bytes);
/// Writes values clamped to [0, 1] quantized to maxval.
void write_pgm(const std::string& path, const Matrix& a, bool binary,
               int maxval = 255);

/// Header "iter,violation,objective,residual,wall_ms" then one row per
/// logged iteration.
void write_metrics_csv(const std::string& path, const IterateLog& log);
void write_metrics_csv(std::ostream& os, const IterateLog& log);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

/// Shortest round-trip decimal text for a double ("inf", "-inf", "nan" for
/// non-finite values).
std::string format_double(double v);

}  // namespace proxproj
