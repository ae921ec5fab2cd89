#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "xplain/dataset.hpp"
#include "xplain/evidence.hpp"

namespace xplain {

/// Scatter plot of the training data over its two highest-variance feature
/// columns: class-colored points, ring markers on the hull vertex rows, one
/// marker style per evidence kind and polarity, and the test point as a
/// cross-in-square. All coordinates are written with fixed two-decimal
/// formatting, so a run renders byte-identical SVG.
std::string render_svg_plot(const Dataset& ds, const std::vector<std::size_t>& hull_rows,
                            const EvidenceSet& evidence, const TestQuery& x0);

} // namespace xplain
