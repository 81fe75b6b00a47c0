#include "omin/dot.hpp"

#include <map>
#include <set>
#include <utility>

#include <fmt/format.h>

namespace omin {

namespace {

std::string node(unsigned boundary, std::uint32_t line) {
  return fmt::format("b{}_l{}", boundary, line);
}

}  // namespace

std::string network_dot(const MessageSet& ms) {
  const auto& cfg = ms.config();
  const unsigned n = cfg.stages();
  const auto report = analyze(ms);

  std::string out = "digraph omega {\n  rankdir=LR;\n  node [shape=circle, fontsize=9];\n";
  for (std::uint32_t line = 0; line < cfg.size(); ++line) {
    out += fmt::format("  {} [label=\"{}\", shape=box];\n", node(0, line),
                       cfg.binary(Address{line}));
  }
  for (unsigned k = 0; k < n; ++k) {
    for (std::uint32_t sw = 0; sw < cfg.switches_per_stage(); ++sw) {
      out += fmt::format("  subgraph cluster_s{}_{} {{\n    label=\"S{}.{}\";\n",
                         k, sw, k, sw);
      for (std::uint32_t low = 0; low < 2; ++low) {
        const auto line = 2 * sw + low;
        out += fmt::format("    {} [label=\"{}\"];\n", node(k + 1, line),
                           cfg.binary(Address{line}));
      }
      out += "  }\n";
    }
  }

  for (unsigned k = 0; k < n; ++k) {
    for (std::uint32_t line = 0; line < cfg.size(); ++line) {
      const auto base = shuffle(Address{line}, cfg).value & ~1u;
      for (std::uint32_t low = 0; low < 2; ++low) {
        out += fmt::format("  {} -> {} [color=gray80, arrowhead=none];\n",
                           node(k, line), node(k + 1, base | low));
      }
    }
  }

  std::set<std::pair<unsigned, std::uint32_t>> shared_links;
  for (const auto& o : report.link_occurrences) {
    shared_links.emplace(o.boundary, o.line);
  }
  // Path segments are deduplicated so a shared link is drawn once.
  std::map<std::pair<std::string, std::string>, bool> segments;
  for (const auto& m : ms.messages()) {
    const auto path = route_path(m.source, m.destination, cfg);
    for (unsigned b = 0; b < n; ++b) {
      const bool shared = shared_links.contains({b, path.links[b]}) ||
                          shared_links.contains({b + 1, path.links[b + 1]});
      auto key = std::pair(node(b, path.links[b]), node(b + 1, path.links[b + 1]));
      segments[key] = segments[key] || shared;
    }
  }
  for (const auto& [edge, shared] : segments) {
    out += fmt::format("  {} -> {} [{}];\n", edge.first, edge.second,
                       shared ? "color=red, penwidth=2.5" : "color=black");
  }

  for (const auto& o : report.switch_occurrences) {
    const auto a = route_path(ms[o.pair.first].source, ms[o.pair.first].destination, cfg);
    const auto b = route_path(ms[o.pair.second].source, ms[o.pair.second].destination, cfg);
    out += fmt::format(
        "  {} -> {} [style=dashed, color=orange, dir=none, constraint=false];\n",
        node(o.stage + 1, a.links[o.stage + 1]), node(o.stage + 1, b.links[o.stage + 1]));
  }
  out += "}\n";
  return out;
}

}  // namespace omin
