#include "omin/report.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "omin/bench.hpp"

namespace omin {

std::optional<ReportFormat> parse_format(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "text") return ReportFormat::text;
  if (name == "csv") return ReportFormat::csv;
  return std::nullopt;
}

namespace {

Json network_json(const NetworkConfig& cfg) {
  return Json{{"size", cfg.size()}, {"stages", cfg.stages()}};
}

Json sources_json(const MessageSet& ms, const IndexList& indices) {
  Json out = Json::array();
  for (auto i : indices) out.push_back(ms[i].source.value);
  return out;
}

Json pair_json(const MessageSet& ms, MessagePair p) {
  return Json::array({ms[p.first].source.value, ms[p.second].source.value});
}

std::string bin(const MessageSet& ms, std::size_t i) {
  return ms.config().binary(ms[i].source);
}

}  // namespace

// ---------------------------------------------------------------------------
// Paths

Json path_json(Address source, Address destination, const NetworkConfig& cfg) {
  const auto path = route_path(source, destination, cfg);
  Json switches = Json::array();
  for (const auto& s : path.switches) {
    switches.push_back(Json{{"stage", s.stage}, {"switch", s.index}});
  }
  return Json{{"network", network_json(cfg)},
              {"source", source.value},
              {"destination", destination.value},
              {"combination", combination_row(source, destination, cfg).to_string()},
              {"links", path.links},
              {"switches", std::move(switches)}};
}

std::string path_text(Address source, Address destination,
                      const NetworkConfig& cfg) {
  const auto path = route_path(source, destination, cfg);
  std::string out = fmt::format("{} -> {}  (N={}, combination {})\n",
                                cfg.binary(source), cfg.binary(destination),
                                cfg.size(),
                                combination_row(source, destination, cfg).to_string());
  std::vector<std::string> links;
  for (auto l : path.links) links.push_back(cfg.binary(Address{l}));
  out += fmt::format("links:    {}\n", fmt::join(links, " "));
  out += fmt::format("links(#): {}\n", fmt::join(path.links, ","));
  for (const auto& s : path.switches) {
    out += fmt::format("stage {}: switch {}\n", s.stage, s.index);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Analysis

bool Analysis::consistent() const {
  return windows == paths && wm_pairs == windows.switch_pairs();
}

Analysis analyze_messages(const MessageSet& ms) {
  return Analysis{analyze(ms), path_analyze(ms), wm_conflict_pairs(ms),
                  iwm_conflict_matrix(ms)};
}

namespace {

Json report_json(const MessageSet& ms, const ConflictReport& r) {
  Json switch_list = Json::array();
  for (const auto& o : r.switch_occurrences) {
    switch_list.push_back(Json{{"stage", o.stage},
                               {"switch", o.switch_index},
                               {"pair", pair_json(ms, o.pair)}});
  }
  Json link_list = Json::array();
  for (const auto& o : r.link_occurrences) {
    link_list.push_back(Json{{"boundary", o.boundary},
                             {"line", o.line},
                             {"pair", pair_json(ms, o.pair)}});
  }
  return Json{
      {"switch", Json{{"occurrences", r.switch_occurrences.size()},
                      {"distinct_pairs", r.switch_pairs().size()},
                      {"list", std::move(switch_list)}}},
      {"link", Json{{"occurrences", r.link_occurrences.size()},
                    {"distinct_pairs", r.link_pairs().size()},
                    {"list", std::move(link_list)}}}};
}

}  // namespace

Json analysis_json(const MessageSet& ms, const Analysis& a) {
  Json wm = Json::array();
  for (const auto& p : a.wm_pairs) wm.push_back(pair_json(ms, p));
  Json iwm = Json::array();
  for (const auto& p : matrix_pairs(ms, a.iwm)) iwm.push_back(pair_json(ms, p));
  return Json{{"network", network_json(ms.config())},
              {"messages", ms.size()},
              {"permutation", ms.is_permutation()},
              {"windows", report_json(ms, a.windows)},
              {"paths", Json{{"switch_occurrences", a.paths.switch_occurrences.size()},
                             {"link_occurrences", a.paths.link_occurrences.size()}}},
              {"consistent", a.consistent()},
              {"wm_pairs", std::move(wm)},
              {"iwm_pairs", std::move(iwm)}};
}

std::string analysis_text(const MessageSet& ms, const Analysis& a) {
  std::string out = fmt::format("network: N={} n={}  messages={}{}\n",
                                ms.config().size(), ms.config().stages(),
                                ms.size(), ms.is_permutation() ? " (permutation)" : "");
  out += fmt::format("switch conflicts: {} occurrences, {} distinct pairs\n",
                     a.windows.switch_occurrences.size(),
                     a.windows.switch_pairs().size());
  for (const auto& o : a.windows.switch_occurrences) {
    out += fmt::format("  stage {} switch {}: {} {}\n", o.stage, o.switch_index,
                       bin(ms, o.pair.first), bin(ms, o.pair.second));
  }
  out += fmt::format("link conflicts: {} occurrences, {} distinct pairs\n",
                     a.windows.link_occurrences.size(),
                     a.windows.link_pairs().size());
  for (const auto& o : a.windows.link_occurrences) {
    out += fmt::format("  boundary {} line {}: {} {}\n", o.boundary,
                       ms.config().binary(Address{o.line}), bin(ms, o.pair.first),
                       bin(ms, o.pair.second));
  }
  out += fmt::format("path check: {} switch, {} link occurrences ({})\n",
                     a.paths.switch_occurrences.size(),
                     a.paths.link_occurrences.size(),
                     a.consistent() ? "agrees" : "MISMATCH");
  return out;
}

// ---------------------------------------------------------------------------
// Schedules

namespace {

struct TraceJson {
  const MessageSet& ms;

  Json operator()(const std::monostate&) const { return Json::object(); }

  Json operator()(const GreedyTrace& t) const {
    Json out{{"order", sources_json(ms, t.order)}};
    if (!t.degrees.empty()) out["degrees"] = t.degrees;
    return out;
  }

  Json operator()(const AsaTrace& t) const {
    Json rows = Json::array();
    for (const auto& r : t.middle_rows) rows.push_back(r);
    return Json{{"sources", t.sources},
                {"middle_rows", std::move(rows)},
                {"first_sums", t.first_sums},
                {"second_sums", t.second_sums},
                {"diff", t.diff},
                {"initial_pass", sources_json(ms, t.initial_pass)},
                {"deferred", sources_json(ms, t.deferred)},
                {"demoted", sources_json(ms, t.demoted)},
                {"extension", t.extension}};
  }

  Json operator()(const RsaTrace& t) const {
    return Json{{"sources", t.sources},
                {"row_sums", t.row_sums},
                {"zero_sum", sources_json(ms, t.zero_sum)},
                {"promoted", sources_json(ms, t.promoted)},
                {"selected_list", sources_json(ms, t.selected_list)},
                {"conflicted_list", sources_json(ms, t.conflicted_list)},
                {"demoted", sources_json(ms, t.demoted)},
                {"extension", t.extension}};
  }
};

}  // namespace

Json schedule_json(const Schedule& s) {
  Json passes = Json::array();
  for (const auto& p : s.passes) passes.push_back(sources_json(s.messages, p));
  const auto metrics = evaluate(s);
  return Json{{"network", network_json(s.messages.config())},
              {"algorithm", s.algorithm},
              {"mode", mode_name(s.mode)},
              {"passes", std::move(passes)},
              {"trace", std::visit(TraceJson{s.messages}, s.trace)},
              {"metrics", Json{{"pass_count", metrics.pass_count},
                               {"switch_occurrences", metrics.switch_occurrences},
                               {"link_occurrences", metrics.link_occurrences}}}};
}

namespace {

std::string schedule_text(const Schedule& s) {
  const auto& ms = s.messages;
  std::string out = fmt::format("algorithm: {} ({})\nnetwork: N={} n={}\n",
                                s.algorithm, mode_name(s.mode), ms.config().size(),
                                ms.config().stages());
  for (std::size_t p = 0; p < s.passes.size(); ++p) {
    std::vector<std::string> names;
    for (auto i : s.passes[p]) names.push_back(bin(ms, i));
    const auto& r = s.reports[p];
    out += fmt::format("pass {}: {}  [switch {}, link {}]\n", p + 1,
                       fmt::join(names, " "), r.switch_occurrences.size(),
                       r.link_occurrences.size());
    for (const auto& o : r.switch_occurrences) {
      out += fmt::format("    switch conflict stage {} switch {}: {} {}\n",
                         o.stage, o.switch_index, bin(ms, o.pair.first),
                         bin(ms, o.pair.second));
    }
    for (const auto& o : r.link_occurrences) {
      out += fmt::format("    link conflict boundary {} line {}: {} {}\n",
                         o.boundary, ms.config().binary(Address{o.line}),
                         bin(ms, o.pair.first), bin(ms, o.pair.second));
    }
  }
  const auto trace = std::visit(TraceJson{ms}, s.trace);
  if (!trace.empty()) {
    out += "trace:\n";
    for (const auto& [key, value] : trace.items()) {
      out += fmt::format("  {}: {}\n", key, value.dump());
    }
  }
  return out;
}

}  // namespace

std::string emit_report(const Schedule& s, ReportFormat format) {
  switch (format) {
    case ReportFormat::json:
      return schedule_json(s).dump(2) + "\n";
    case ReportFormat::text:
      return schedule_text(s);
    case ReportFormat::csv:
      return to_csv({evaluate(s)});
  }
  return {};
}

}  // namespace omin
