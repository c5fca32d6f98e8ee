#pragma once

namespace tautcalc {

inline constexpr const char* kVersion = "1.0.0";

}
