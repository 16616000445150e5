#pragma once

namespace qspa {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "qspa";

}  // namespace qspa
