#pragma once

namespace elastinet {

inline constexpr const char* version = "0.1.0";

}  // namespace elastinet
