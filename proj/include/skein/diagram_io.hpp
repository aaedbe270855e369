#pragma once

#include <string>

#include "skein/diagram.hpp"

namespace skein {

// Textual diagram format. Top-level keys: crossings, top, bottom,
// orientations, framing, components; integers only; '#' starts a comment.
//
//   crossings:          # one line per crossing: 4 arc labels, counter-
//     0 3 1 2           # clockwise from the incoming under-strand
//     2 1 3 0
//   top:                # arc labels at top boundary positions (may be empty)
//   bottom:
//   orientations:       # entries "arc d", d = 1 or -1: arc runs from its
//     0 1               # first to second endpoint (1) or back (-1), where
//                       # endpoints are scanned crossing slots 0..3 in listed
//                       # order, then top, then bottom positions
//   framing:            # entries "arc f": framing correction of the closed
//     0 2               # component through that arc
//   components: 4 5     # crossing-free closed components
//
// Under-strand slots force most directions; explicit entries are needed only
// for arcs the propagation cannot reach (e.g. always-over components).
TangleDiagram parse_diagram(const std::string& text);
TangleDiagram parse_diagram_file(const std::string& path);
std::string serialize_diagram(const TangleDiagram& d);

}  // namespace skein
