#include "omin/sched.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <utility>

#include <fmt/format.h>

namespace omin {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 7> kNames = {{
    {Algorithm::window, "wm"},
    {Algorithm::heuristic_ascending, "heur-asc"},
    {Algorithm::heuristic_descending, "heur-desc"},
    {Algorithm::heuristic_min_degree, "heur-min"},
    {Algorithm::heuristic_max_degree, "heur-max"},
    {Algorithm::address_selection, "asa"},
    {Algorithm::route_selection, "rsa"},
}};

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  for (const auto& [algo, name] : kNames) {
    if (algo == a) return name;
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (const auto& [algo, n] : kNames) {
    if (n == name) return algo;
  }
  return std::nullopt;
}

std::string_view mode_name(ResolutionMode m) {
  return m == ResolutionMode::paper ? "paper" : "strict";
}

std::optional<ResolutionMode> parse_mode(std::string_view name) {
  if (name == "paper") return ResolutionMode::paper;
  if (name == "strict") return ResolutionMode::strict;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Schedule

std::vector<std::uint32_t> Schedule::pass_sources(std::size_t p) const {
  std::vector<std::uint32_t> out;
  out.reserve(passes.at(p).size());
  for (auto i : passes[p]) out.push_back(messages[i].source.value);
  return out;
}

bool Schedule::is_partition() const {
  std::vector<int> hits(messages.size(), 0);
  for (const auto& pass : passes) {
    for (auto i : pass) {
      if (i >= hits.size()) return false;
      ++hits[i];
    }
  }
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

namespace {

std::vector<ConflictReport> reports_for(const MessageSet& ms,
                                        const std::vector<IndexList>& passes) {
  std::vector<ConflictReport> out;
  out.reserve(passes.size());
  for (const auto& pass : passes) out.push_back(analyze(ms, pass));
  return out;
}

Schedule make_schedule(const MessageSet& ms, std::string algorithm,
                       ResolutionMode mode, std::vector<IndexList> passes,
                       Trace trace) {
  std::erase_if(passes, [](const IndexList& p) { return p.empty(); });
  auto reports = reports_for(ms, passes);
  return Schedule{ms,
                  std::move(algorithm),
                  mode,
                  std::move(passes),
                  std::move(reports),
                  std::move(trace)};
}

IndexList by_source(const MessageSet& ms) {
  IndexList order = all_members(ms);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ms[a].source < ms[b].source;
  });
  return order;
}

std::vector<std::uint32_t> sources_of(const MessageSet& ms,
                                      const IndexList& order) {
  std::vector<std::uint32_t> out;
  out.reserve(order.size());
  for (auto i : order) out.push_back(ms[i].source.value);
  return out;
}

void require_two_pass_size(const MessageSet& ms, std::string_view what) {
  if (ms.config().size() < 8) {
    throw InputError(
        fmt::format("{} needs N >= 8, got N={}", what, ms.config().size()));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Greedy partition and heuristic orders

Schedule greedy_partition(const MessageSet& ms, const PairSet& conflict_pairs,
                          const IndexList& order) {
  const std::size_t m = ms.size();
  {
    std::vector<bool> seen(m, false);
    if (order.size() != m) {
      throw InputError(fmt::format("order has {} entries for {} messages",
                                   order.size(), m));
    }
    for (auto i : order) {
      if (i >= m || seen[i]) {
        throw InputError("order is not a permutation of message indices");
      }
      seen[i] = true;
    }
  }

  std::vector<IndexList> adjacency(m);
  for (const auto& p : conflict_pairs) {
    if (p.second >= m) throw InputError("conflict pair outside message set");
    adjacency[p.first].push_back(p.second);
    adjacency[p.second].push_back(p.first);
  }

  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pass_of(m, kUnassigned);
  std::vector<IndexList> passes;
  std::vector<std::size_t> blocked_by(m + 1, kUnassigned);
  for (auto v : order) {
    for (auto u : adjacency[v]) {
      if (pass_of[u] != kUnassigned) blocked_by[pass_of[u]] = v;
    }
    std::size_t p = 0;
    while (p < passes.size() && blocked_by[p] == v) ++p;
    if (p == passes.size()) passes.emplace_back();
    passes[p].push_back(v);
    pass_of[v] = p;
  }

  return make_schedule(ms, "greedy", ResolutionMode::paper, std::move(passes),
                       GreedyTrace{order, {}});
}

IndexList heuristic_order(const MessageSet& ms, const ConflictMatrix& cm,
                          HeuristicStrategy strategy) {
  IndexList order = by_source(ms);
  if (strategy == HeuristicStrategy::ascending) return order;
  if (strategy == HeuristicStrategy::descending) {
    std::reverse(order.begin(), order.end());
    return order;
  }
  std::vector<unsigned> degree(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    degree[i] = cm.degree(ms[i].source.value);
  }
  const bool lowest_first = strategy == HeuristicStrategy::min_degree;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lowest_first ? degree[a] < degree[b] : degree[a] > degree[b];
  });
  return order;
}

Schedule window_schedule(const MessageSet& ms) {
  auto s = greedy_partition(ms, wm_conflict_pairs(ms), by_source(ms));
  s.algorithm = algorithm_name(Algorithm::window);
  return s;
}

Schedule heuristic_schedule(const MessageSet& ms, HeuristicStrategy strategy) {
  const auto cm = iwm_conflict_matrix(ms);
  const auto order = heuristic_order(ms, cm, strategy);
  auto s = greedy_partition(ms, matrix_pairs(ms, cm), order);
  static constexpr std::array kByStrategy = {
      Algorithm::heuristic_ascending, Algorithm::heuristic_descending,
      Algorithm::heuristic_min_degree, Algorithm::heuristic_max_degree};
  s.algorithm = algorithm_name(kByStrategy[static_cast<std::size_t>(strategy)]);
  auto& trace = std::get<GreedyTrace>(s.trace);
  for (const auto& m : ms.messages()) {
    trace.degrees.push_back(cm.degree(m.source.value));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Address Selection arithmetic

MiddleRows asa_middle_rows(const CombinationMatrix& cm) {
  const unsigned n = cm.stages();
  if (cm.rows.empty()) return {};
  if (n < 3) {
    throw InputError(fmt::format(
        "address selection needs N >= 8 (n >= 3), got n={}", n));
  }
  MiddleRows out;
  for (unsigned r = 0; r < 4; ++r) {
    const unsigned column = n - 2 + r;
    out[r].reserve(cm.rows.size());
    for (const auto& row : cm.rows) {
      if (row.width() != 2 * n) throw InputError("ragged combination matrix");
      out[r].push_back(static_cast<std::uint8_t>(row.at(column)));
    }
  }
  return out;
}

std::vector<int> asa_diff_vector(const MiddleRows& rows) {
  const std::size_t len = rows[0].size();
  for (const auto& r : rows) {
    if (r.size() != len) throw InputError("middle rows differ in length");
  }
  std::vector<int> diff(len);
  for (std::size_t j = 0; j < len; ++j) {
    diff[j] = (rows[0][j] + rows[1][j]) - (rows[2][j] + rows[3][j]);
  }
  return diff;
}

// ---------------------------------------------------------------------------
// Pair resolution

namespace {

PairSource from_report(std::function<ConflictReport(Members)> scan,
                       bool links) {
  return [scan = std::move(scan), links](Members members) {
    const auto report = scan(members);
    std::vector<RankedPair> out;
    if (links) {
      for (const auto& o : report.link_occurrences) {
        out.push_back(RankedPair{o.boundary, o.line, o.pair});
      }
    } else {
      for (const auto& o : report.switch_occurrences) {
        out.push_back(RankedPair{o.stage, o.switch_index, o.pair});
      }
    }
    return out;
  };
}

}  // namespace

PairSource stage0_pair_source(const MessageSet& ms) {
  return from_report(
      [&ms](Members m) { return stage_conflicts(ms, m, 0); }, false);
}

PairSource switch_pair_source(const MessageSet& ms) {
  return from_report(
      [&ms](Members m) { return switch_conflicts(ms, m); }, false);
}

PairSource link_pair_source(const MessageSet& ms) {
  return from_report(
      [&ms](Members m) { return link_conflicts(ms, m); }, true);
}

std::size_t demote_lower_magnitude(const MessageSet& ms, MessagePair pair) {
  return ms[pair.first].source < ms[pair.second].source ? pair.first
                                                        : pair.second;
}

Resolution resolve_pairs(const MessageSet& ms, const IndexList& pass,
                         const PairSource& pairs, const DemoteRule& demote) {
  Resolution out{pass, {}};
  // Each round removes one message, so at most |pass| rounds.
  for (std::size_t round = 0; round <= pass.size(); ++round) {
    const auto ranked = pairs(out.kept);
    if (ranked.empty()) return out;
    auto key = [&](const RankedPair& r) {
      const auto lower = std::min(ms[r.pair.first].source.value,
                                  ms[r.pair.second].source.value);
      return std::tuple(r.level, r.position, lower);
    };
    const auto first = std::min_element(
        ranked.begin(), ranked.end(),
        [&](const RankedPair& a, const RankedPair& b) { return key(a) < key(b); });
    const auto victim = demote(ms, first->pair);
    const auto it = std::find(out.kept.begin(), out.kept.end(), victim);
    if (it == out.kept.end()) {
      throw std::logic_error("demote rule picked a message outside the pass");
    }
    out.kept.erase(it);
    out.demoted.push_back(victim);
  }
  throw std::logic_error("pair resolution did not terminate");
}

namespace {

// Strict mode: keep peeling the last pass until it is clean.
void split_tail(const MessageSet& ms, std::vector<IndexList>& passes,
                const PairSource& pairs) {
  while (!passes.empty() && !passes.back().empty()) {
    auto r = resolve_pairs(ms, passes.back(), pairs);
    if (r.demoted.empty()) return;
    passes.back() = std::move(r.kept);
    passes.push_back(std::move(r.demoted));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Address Selection

Schedule asa_schedule(const MessageSet& ms, ResolutionMode mode) {
  require_two_pass_size(ms, "address selection");
  AsaTrace trace;
  const IndexList order = by_source(ms);
  trace.sources = sources_of(ms, order);
  trace.extension = !ms.is_permutation();

  CombinationMatrix cm;
  for (auto i : order) {
    cm.rows.push_back(combination_row(ms[i].source, ms[i].destination,
                                      ms.config()));
  }
  if (!cm.rows.empty()) {
    trace.middle_rows = asa_middle_rows(cm);
    trace.diff = asa_diff_vector(trace.middle_rows);
    for (std::size_t j = 0; j < order.size(); ++j) {
      trace.first_sums.push_back(trace.middle_rows[0][j] + trace.middle_rows[1][j]);
      trace.second_sums.push_back(trace.middle_rows[2][j] + trace.middle_rows[3][j]);
      (trace.diff[j] <= 0 ? trace.initial_pass : trace.deferred)
          .push_back(order[j]);
    }
  }

  const auto pairs = mode == ResolutionMode::paper ? stage0_pair_source(ms)
                                                   : switch_pair_source(ms);
  auto resolved = resolve_pairs(ms, trace.initial_pass, pairs);
  trace.demoted = resolved.demoted;

  std::vector<IndexList> passes{std::move(resolved.kept), trace.deferred};
  passes[1].insert(passes[1].end(), trace.demoted.begin(), trace.demoted.end());
  if (mode == ResolutionMode::strict) split_tail(ms, passes, pairs);

  return make_schedule(ms, std::string(algorithm_name(Algorithm::address_selection)),
                       mode, std::move(passes), std::move(trace));
}

// ---------------------------------------------------------------------------
// Route Selection

Schedule rsa_schedule(const MessageSet& ms, ResolutionMode mode) {
  require_two_pass_size(ms, "route selection");
  RsaTrace trace;
  const IndexList order = by_source(ms);
  trace.sources = sources_of(ms, order);
  trace.extension = !ms.is_permutation();

  const auto cm = rsa_conflict_matrix(ms);
  IndexList conflicted;
  for (auto i : order) {
    const auto sum = cm.row_sum(ms[i].source.value);
    trace.row_sums.push_back(sum);
    (sum == 0 ? trace.zero_sum : conflicted).push_back(i);
  }

  // The two largest sources leave the conflicted list (all of it if <= 2).
  const std::size_t moved = std::min<std::size_t>(2, conflicted.size());
  trace.promoted.assign(conflicted.end() - static_cast<std::ptrdiff_t>(moved),
                        conflicted.end());
  trace.conflicted_list.assign(
      conflicted.begin(), conflicted.end() - static_cast<std::ptrdiff_t>(moved));
  trace.selected_list = trace.zero_sum;
  trace.selected_list.insert(trace.selected_list.end(), trace.promoted.begin(),
                             trace.promoted.end());

  const auto pairs = link_pair_source(ms);
  auto resolved = resolve_pairs(ms, trace.selected_list, pairs);
  trace.demoted = resolved.demoted;

  std::vector<IndexList> passes{std::move(resolved.kept), trace.conflicted_list};
  passes[1].insert(passes[1].end(), trace.demoted.begin(), trace.demoted.end());
  if (mode == ResolutionMode::strict) split_tail(ms, passes, pairs);

  return make_schedule(ms, std::string(algorithm_name(Algorithm::route_selection)),
                       mode, std::move(passes), std::move(trace));
}

Schedule run_algorithm(const MessageSet& ms, Algorithm algorithm,
                       ResolutionMode mode) {
  Schedule s = [&] {
    switch (algorithm) {
      case Algorithm::window:
        return window_schedule(ms);
      case Algorithm::heuristic_ascending:
        return heuristic_schedule(ms, HeuristicStrategy::ascending);
      case Algorithm::heuristic_descending:
        return heuristic_schedule(ms, HeuristicStrategy::descending);
      case Algorithm::heuristic_min_degree:
        return heuristic_schedule(ms, HeuristicStrategy::min_degree);
      case Algorithm::heuristic_max_degree:
        return heuristic_schedule(ms, HeuristicStrategy::max_degree);
      case Algorithm::address_selection:
        return asa_schedule(ms, mode);
      case Algorithm::route_selection:
        return rsa_schedule(ms, mode);
    }
    throw std::logic_error("unhandled algorithm");
  }();
  s.mode = mode;
  if (!s.is_partition()) {
    throw std::logic_error(fmt::format("{} produced a schedule that is not a partition",
                                       algorithm_name(algorithm)));
  }
  return s;
}

}  // namespace omin
