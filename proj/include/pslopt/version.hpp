#pragma once

namespace pslopt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pslopt
