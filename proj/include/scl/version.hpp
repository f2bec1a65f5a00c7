#pragma once

namespace scl {

inline constexpr const char* kVersionString = "0.1.0";

}  // namespace scl
