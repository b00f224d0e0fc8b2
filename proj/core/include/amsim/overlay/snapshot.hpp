#pragma once

#include <iosfwd>
#include <string>

#include "amsim/overlay/overlay.hpp"

namespace amsim::overlay {

/// One line per node: `id,alive,successor,predecessor,finger0..fingerM-1`.
/// Peers are written as ring ids; missing entries are left empty.
void write_topology(std::ostream& out, const Overlay& overlay, bool header = true);
std::string topology_csv(const Overlay& overlay);

}  // namespace amsim::overlay
