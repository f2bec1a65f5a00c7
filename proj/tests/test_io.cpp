#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "scl/codes.hpp"
#include "scl/errors.hpp"
#include "scl/io.hpp"
#include "scl/readouts.hpp"

using namespace scl;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("scl_io_test_" + name)).string();
}

struct FileGuard {
  std::string path;
  ~FileGuard() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("code save/load round trip is bit exact") {
  const std::string path = temp_path("roundtrip.sclb");
  FileGuard g{path};
  Code c = random_unit_code(5, 17, 99);
  save_code(c, path);
  Code back = load_code(path);
  CHECK(back.d == 5);
  CHECK(back.F == 17);
  CHECK(back.kind == CodeKind::External);
  CHECK((back.columns - c.columns).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("readout save/load round trip") {
  const std::string path = temp_path("roundtrip.sclr");
  FileGuard g{path};
  Code c = random_unit_code(4, 9, 7);
  Readout r = transpose_readout(c);
  save_readout(r, path);
  Readout back = load_readout(path);
  CHECK(back.kind == ReadoutKind::External);
  CHECK(!back.unit_diagonal);
  CHECK((back.G - r.G).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("truncated code file reports the byte offset") {
  const std::string path = temp_path("truncated.sclb");
  FileGuard g{path};
  Code c = random_unit_code(3, 4, 1);
  save_code(c, path);
  std::filesystem::resize_file(path, 12 + 5 * 8);  // header + 5 of 12 doubles
  try {
    load_code(path);
    FAIL("expected FileFormatError");
  } catch (const FileFormatError& e) {
    CHECK(e.byte_offset == 12 + 5 * 8);
    CHECK(std::string(e.what()).find("byte offset") != std::string::npos);
  }
}

TEST_CASE("bad magic is rejected at offset zero") {
  const std::string path = temp_path("badmagic.sclb");
  FileGuard g{path};
  std::ofstream out(path, std::ios::binary);
  out << "NOPE" << std::string(8, '\0');
  out.close();
  try {
    load_code(path);
    FAIL("expected FileFormatError");
  } catch (const FileFormatError& e) {
    CHECK(e.byte_offset == 0);
  }
}

TEST_CASE("loading a readout file as a code is rejected") {
  const std::string path = temp_path("miskind.sclr");
  FileGuard g{path};
  save_readout(transpose_readout(random_unit_code(3, 5, 3)), path);
  CHECK_THROWS_AS(load_code(path), FileFormatError);
}

TEST_CASE("loaded codes must have unit columns") {
  const std::string path = temp_path("nonunit.sclb");
  FileGuard g{path};
  Code c = random_unit_code(3, 4, 5);
  c.columns *= 2.0;  // break the invariant, then write raw bytes by hand
  std::ofstream out(path, std::ios::binary);
  out << "SCLB";
  auto put_u32 = [&](std::uint32_t v) {
    char b[4] = {char(v), char(v >> 8), char(v >> 16), char(v >> 24)};
    out.write(b, 4);
  };
  put_u32(3);
  put_u32(4);
  for (Index j = 0; j < 4; ++j)
    for (Index i = 0; i < 3; ++i) {
      double v = c.columns(i, j);
      out.write(reinterpret_cast<const char*>(&v), 8);
    }
  out.close();
  CHECK_THROWS_AS(load_code(path), ContractError);
}

TEST_CASE("trailing bytes are rejected") {
  const std::string path = temp_path("trailing.sclb");
  FileGuard g{path};
  save_code(random_unit_code(2, 2, 8), path);
  std::ofstream app(path, std::ios::binary | std::ios::app);
  app << "x";
  app.close();
  CHECK_THROWS_AS(load_code(path), FileFormatError);
}
