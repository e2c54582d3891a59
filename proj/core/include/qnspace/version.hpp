#pragma once

namespace qns {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qns
