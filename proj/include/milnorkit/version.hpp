#pragma once

namespace milnorkit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace milnorkit
