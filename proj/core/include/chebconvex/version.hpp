#pragma once

namespace chebconvex {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace chebconvex
