#pragma once

namespace polytc {

inline constexpr const char* kEngineVersion = "1.0.0";

}  // namespace polytc
