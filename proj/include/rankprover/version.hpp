#pragma once

namespace rankprover {

inline constexpr const char* kToolName = "rankprover";
inline constexpr const char* kToolVersion = "1.0.0";

} // namespace rankprover
