#pragma once

// Rendering of paths, conflict analyses and schedules for the command line.
// Index lists are always rendered as source addresses.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "omin/sched.hpp"

namespace omin {

using Json = nlohmann::ordered_json;

enum class ReportFormat { json, text, csv };

std::optional<ReportFormat> parse_format(std::string_view name);

Json path_json(Address source, Address destination, const NetworkConfig& cfg);
std::string path_text(Address source, Address destination,
                      const NetworkConfig& cfg);

/// Window-based and path-based conflict analysis of a message set.
struct Analysis {
  ConflictReport windows;
  ConflictReport paths;
  PairSet wm_pairs;
  ConflictMatrix iwm;

  bool consistent() const;
};

Analysis analyze_messages(const MessageSet& ms);
Json analysis_json(const MessageSet& ms, const Analysis& a);
std::string analysis_text(const MessageSet& ms, const Analysis& a);

/// Keys: network, algorithm, mode, passes, trace, metrics.
Json schedule_json(const Schedule& s);
std::string emit_report(const Schedule& s, ReportFormat format);

}  // namespace omin
