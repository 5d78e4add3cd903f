#pragma once

namespace nhqm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nhqm
