#pragma once

namespace spinreg {

inline constexpr const char* version_string = "spinreg 0.1.0";

}  // namespace spinreg
