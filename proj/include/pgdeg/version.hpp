#pragma once

namespace pgdeg {

inline constexpr const char* kEngineVersion = "1.0.0";

}  // namespace pgdeg
