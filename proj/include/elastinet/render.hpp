#pragma once

#include <string>

#include "elastinet/network.hpp"

namespace elastinet {

/// SVG drawing of a network: view box fitted to the bounding box plus a 5%
/// margin, one stroke colour per curve index, junctions as dots.
std::string render_svg(const Network& network, const std::string& title = "");

}  // namespace elastinet
