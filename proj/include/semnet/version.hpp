#pragma once

namespace semnet {

inline constexpr const char* kToolName = "semnet";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

}  // namespace semnet
