#pragma once

namespace subfrac {

inline constexpr const char* version_string = "subfrac 0.1.0";

}  // namespace subfrac
