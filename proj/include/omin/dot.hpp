#pragma once

#include <string>

#include "omin/conflict.hpp"

namespace omin {

/// Graphviz rendering of the omega network carrying `ms`.
///
/// One node per (boundary, line); the two output lines of each switch are
/// grouped in a cluster. Gray edges are the wiring (each line feeds both
/// outputs of the switch its shuffle lands on). Message paths are drawn in
/// black; links shared by two messages are red and bold, and each switch
/// conflict adds a dashed orange edge between the two messages' output
/// nodes at that stage.
std::string network_dot(const MessageSet& ms);

}  // namespace omin
