#include "amsim/overlay/snapshot.hpp"

#include <ostream>
#include <sstream>

namespace amsim::overlay {

namespace {

void write_peer(std::ostream& out, const Overlay& overlay, const std::optional<NodeIndex>& peer) {
  out << ',';
  if (peer) out << overlay.node(*peer).id.to_string();
}

}  // namespace

void write_topology(std::ostream& out, const Overlay& overlay, bool header) {
  const unsigned bits = overlay.config().bits;
  if (header) {
    out << "id,alive,successor,predecessor";
    for (unsigned i = 0; i < bits; ++i) out << ",finger" << i;
    out << '\n';
  }
  for (NodeIndex n = 0; n < overlay.size(); ++n) {
    const auto& st = overlay.node(n);
    out << st.id.to_string() << ',' << (st.alive ? 1 : 0);
    write_peer(out, overlay, st.peers.successor);
    write_peer(out, overlay, st.peers.predecessor);
    for (unsigned i = 0; i < bits; ++i) {
      write_peer(out, overlay, i < st.peers.fingers.size() ? st.peers.fingers[i] : std::nullopt);
    }
    out << '\n';
  }
}

std::string topology_csv(const Overlay& overlay) {
  std::ostringstream out;
  write_topology(out, overlay);
  return out.str();
}

}  // namespace amsim::overlay
