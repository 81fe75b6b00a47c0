#pragma once

// Time-domain scheduling: split a message set into passes so that messages
// sharing a pass do not conflict (or conflict less).

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "omin/conflict.hpp"

namespace omin {

using IndexList = std::vector<std::size_t>;

enum class HeuristicStrategy { ascending, descending, min_degree, max_degree };

/// paper: the two-pass procedures, resolving only the pairs they target.
/// strict: resolve pass 1 against the full oracle and keep splitting the
/// last pass until it is conflict-free.
enum class ResolutionMode { paper, strict };

enum class Algorithm {
  window,
  heuristic_ascending,
  heuristic_descending,
  heuristic_min_degree,
  heuristic_max_degree,
  address_selection,
  route_selection,
};

inline constexpr std::array kAllAlgorithms = {
    Algorithm::window,
    Algorithm::heuristic_ascending,
    Algorithm::heuristic_descending,
    Algorithm::heuristic_min_degree,
    Algorithm::heuristic_max_degree,
    Algorithm::address_selection,
    Algorithm::route_selection,
};

/// CLI names: wm, heur-asc, heur-desc, heur-min, heur-max, asa, rsa.
std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);
std::string_view mode_name(ResolutionMode m);
std::optional<ResolutionMode> parse_mode(std::string_view name);

struct GreedyTrace {
  IndexList order;
  std::vector<unsigned> degrees;  // per message, empty for plain WM
};

/// Address Selection intermediates. Column j of every vector refers to the
/// message sources[j]; columns are in ascending source order.
struct AsaTrace {
  std::vector<std::uint32_t> sources;
  std::array<std::vector<std::uint8_t>, 4> middle_rows;
  std::vector<int> first_sums;
  std::vector<int> second_sums;
  std::vector<int> diff;
  IndexList initial_pass;
  IndexList deferred;  // diff > 0
  IndexList demoted;
  bool extension = false;  // input was not a full permutation
};

/// Route Selection intermediates; row_sums follows ascending source order.
struct RsaTrace {
  std::vector<std::uint32_t> sources;
  std::vector<unsigned> row_sums;
  IndexList zero_sum;
  IndexList promoted;
  IndexList selected_list;
  IndexList conflicted_list;
  IndexList demoted;
  bool extension = false;
};

using Trace = std::variant<std::monostate, GreedyTrace, AsaTrace, RsaTrace>;

/// Ordered partition of a message set into passes, with the conflict
/// analysis of each pass.
struct Schedule {
  MessageSet messages;
  std::string algorithm;
  ResolutionMode mode = ResolutionMode::paper;
  std::vector<IndexList> passes;
  std::vector<ConflictReport> reports;
  Trace trace;

  /// Source addresses of pass p, in pass order.
  std::vector<std::uint32_t> pass_sources(std::size_t p) const;
  /// True when passes are disjoint and cover every message exactly once.
  bool is_partition() const;
};

/// First-fit: each message in `order` joins the earliest pass holding none
/// of its conflict partners.
Schedule greedy_partition(const MessageSet& ms, const PairSet& conflict_pairs,
                          const IndexList& order);

/// Ascending/descending by source; by symmetrized degree otherwise, ties to
/// the smaller source.
IndexList heuristic_order(const MessageSet& ms, const ConflictMatrix& cm,
                          HeuristicStrategy strategy);

Schedule window_schedule(const MessageSet& ms);
Schedule heuristic_schedule(const MessageSet& ms, HeuristicStrategy strategy);

using MiddleRows = std::array<std::vector<std::uint8_t>, 4>;

/// Rows n-2..n+1 of the transposed combination matrix. Requires n >= 3.
MiddleRows asa_middle_rows(const CombinationMatrix& cm);

/// (row0 + row1) - (row2 + row3), columnwise.
std::vector<int> asa_diff_vector(const MiddleRows& rows);

/// A conflicting pair ranked for resolution: smallest (level, position,
/// lower source) goes first.
struct RankedPair {
  unsigned level = 0;      // stage or boundary
  std::uint32_t position = 0;  // switch or line
  MessagePair pair;
};

using PairSource = std::function<std::vector<RankedPair>(Members)>;
/// Picks which member of a pair leaves the pass.
using DemoteRule = std::function<std::size_t(const MessageSet&, MessagePair)>;

PairSource stage0_pair_source(const MessageSet& ms);
PairSource switch_pair_source(const MessageSet& ms);
PairSource link_pair_source(const MessageSet& ms);

/// Demotes the member with the smaller source address.
std::size_t demote_lower_magnitude(const MessageSet& ms, MessagePair pair);

struct Resolution {
  IndexList kept;
  IndexList demoted;
};

/// Repeatedly demotes one member of the first-ranked conflicting pair until
/// the pass is conflict-free under `pairs`. Kept preserves input order.
Resolution resolve_pairs(const MessageSet& ms, const IndexList& pass,
                         const PairSource& pairs,
                         const DemoteRule& demote = demote_lower_magnitude);

/// Address Selection. Requires N >= 8.
Schedule asa_schedule(const MessageSet& ms,
                      ResolutionMode mode = ResolutionMode::paper);

/// Route Selection. Requires N >= 8.
Schedule rsa_schedule(const MessageSet& ms,
                      ResolutionMode mode = ResolutionMode::paper);

Schedule run_algorithm(const MessageSet& ms, Algorithm algorithm,
                       ResolutionMode mode = ResolutionMode::paper);

}  // namespace omin
