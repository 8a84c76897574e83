#pragma once

namespace expsum {

inline constexpr const char* library_version = "0.1.0";

}  // namespace expsum
