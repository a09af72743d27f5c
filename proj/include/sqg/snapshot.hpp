#pragma once

#include <string>

#include "sqg/field.hpp"

namespace sqg {

// Field snapshot container, fixed little-endian layout:
//   "SQGF" | version u8 = 1 | n1 u32 | n2 u32 | L1 f64 | L2 f64 |
//   n1*n2 physical values f64, row-major with x1 fastest.
// Writers emit exactly this; readers reject anything else loudly.

void write_snapshot(const std::string& path, const PhysicalField& f);

// Throws std::runtime_error on missing file, bad magic, unsupported version,
// or truncated payload.
PhysicalField read_snapshot(const std::string& path);

}  // namespace sqg
