#pragma once

#include <string>
#include <vector>

#include "rotamime/bifurcation.hpp"

namespace rotamime {

/// Bifurcation scatter: black attractor samples over steepness, the two
/// critical-point curves in red, vertical gridlines in cyan. Standalone
/// SVG, no display dependencies.
std::string scan_svg(const std::vector<ScanRecord>& records,
                     const Rational& offset, KernelTag kernel,
                     int width = 1100, int height = 740);

/// The map on [b-1, b] (green), the diagonal (grey), the return graph on
/// J (blue) and the n-step graph on K (magenta).
std::string return_map_svg(const ReturnMapData& data, const Rational& offset,
                           KernelTag kernel, double a, int width = 740,
                           int height = 740);

} // namespace rotamime
