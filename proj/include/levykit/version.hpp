#pragma once

namespace levykit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace levykit
