#pragma once

namespace ulf {
inline constexpr const char* kVersion = "0.1.0";
}
