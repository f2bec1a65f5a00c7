#pragma once

#include <string>

#include "scl/codes.hpp"

// Binary matrix files, little-endian throughout:
//   code    "SCLB" | u32 rows=d | u32 cols=F | rows*cols float64, column-major
//   readout "SCLR" | u32 rows=F | u32 cols=d | rows*cols float64, column-major
// Loaders throw FileFormatError naming the byte offset where parsing failed, and
// ContractError when the payload violates the type's invariants (e.g. a loaded code
// with a non-unit column).
namespace scl {

struct Readout;  // readouts.hpp

void save_code(const Code& code, const std::string& path);
Code load_code(const std::string& path);

void save_readout(const Readout& readout, const std::string& path);
// Loaded readouts are kind External and not yet unit-diagonal; callers rescale.
Readout load_readout(const std::string& path);

}  // namespace scl
