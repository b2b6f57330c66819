#pragma once

namespace claimsim {

inline constexpr const char* version = "0.1.0";

} // namespace claimsim
