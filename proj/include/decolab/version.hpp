#pragma once

namespace decolab {
inline constexpr const char* kVersion = "0.1.0";
}
