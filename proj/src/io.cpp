#include "scl/io.hpp"

#include <cstring>
#include <fstream>
#include <vector>

#include "scl/errors.hpp"
#include "scl/readouts.hpp"

namespace scl {
namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

struct Reader {
  std::ifstream in;
  std::uint64_t offset = 0;
  std::string path;

  explicit Reader(const std::string& p) : in(p, std::ios::binary), path(p) {
    if (!in) throw FileFormatError("cannot open " + p, 0);
  }

  void read_bytes(unsigned char* dst, std::size_t n, const char* what) {
    in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
      throw FileFormatError(path + ": truncated while reading " + what +
                                " at byte offset " + std::to_string(offset),
                            offset);
    offset += n;
  }

  std::uint32_t get_u32(const char* what) {
    unsigned char b[4];
    read_bytes(b, 4, what);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
  }

  double get_f64(const char* what) {
    unsigned char b[8];
    read_bytes(b, 8, what);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
};

void save_matrix(const Matrix& m, const char magic[4], const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileFormatError("cannot open " + path + " for writing", 0);
  out.write(magic, 4);
  put_u32(out, static_cast<std::uint32_t>(m.rows()));
  put_u32(out, static_cast<std::uint32_t>(m.cols()));
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) put_f64(out, m(i, j));
  if (!out) throw FileFormatError("write failed for " + path, 0);
}

Matrix load_matrix(const char magic[4], const std::string& path) {
  Reader r(path);
  unsigned char got[4];
  r.read_bytes(got, 4, "magic");
  if (std::memcmp(got, magic, 4) != 0)
    throw FileFormatError(path + ": bad magic at byte offset 0 (expected " +
                              std::string(magic, 4) + ")",
                          0);
  const std::uint32_t rows = r.get_u32("row count");
  const std::uint32_t cols = r.get_u32("column count");
  if (rows == 0 || cols == 0)
    throw FileFormatError(path + ": zero dimension in header", 4);
  if (static_cast<std::uint64_t>(rows) * cols > (1ULL << 31))
    throw FileFormatError(path + ": header dimensions implausibly large", 4);
  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::uint32_t j = 0; j < cols; ++j)
    for (std::uint32_t i = 0; i < rows; ++i) m(i, j) = r.get_f64("matrix entry");
  // reject trailing bytes so a mislabeled file can't half-parse
  char extra;
  if (r.in.read(&extra, 1); r.in.gcount() == 1)
    throw FileFormatError(path + ": trailing data at byte offset " +
                              std::to_string(r.offset),
                          r.offset);
  return m;
}

}  // namespace

void save_code(const Code& code, const std::string& path) {
  validate(code);
  save_matrix(code.columns, "SCLB", path);
}

Code load_code(const std::string& path) {
  Matrix m = load_matrix("SCLB", path);
  Code code{m.rows(), m.cols(), std::move(m), CodeKind::External};
  validate(code);  // unit columns within 1e-10, finite entries
  return code;
}

void save_readout(const Readout& readout, const std::string& path) {
  if (readout.G.rows() < 1 || readout.G.cols() < 1)
    throw ContractError("save_readout: empty matrix");
  if (!readout.G.allFinite()) throw ContractError("save_readout: non-finite entries");
  save_matrix(readout.G, "SCLR", path);
}

Readout load_readout(const std::string& path) {
  Matrix m = load_matrix("SCLR", path);
  if (!m.allFinite()) throw ContractError(path + ": readout has non-finite entries");
  return Readout{std::move(m), ReadoutKind::External, false};
}

}  // namespace scl
