#pragma once

#define POLYEXP_VERSION "0.1.0"

namespace polyexp {
inline const char* version() { return POLYEXP_VERSION; }
}  // namespace polyexp
