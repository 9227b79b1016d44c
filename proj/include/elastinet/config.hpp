#pragma once

#include <string>

#include "elastinet/minimizer.hpp"

namespace elastinet {

/// Reads an optimization config. Missing keys keep their defaults; unknown
/// keys and wrong types throw Parse, out-of-range values throw InvalidConfig.
OptimizationConfig config_from_json(const std::string& text);
std::string config_to_json(const OptimizationConfig& config, int indent = 2);

}  // namespace elastinet
