#pragma once

namespace s2xs2 {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

} // namespace s2xs2
