#pragma once

// Message sets, combination rows and the conflict predicates built on them.
//
// Two messages share the stage-k switch exactly when the (n-1)-bit windows
// of their combination rows starting at column k+1 agree, and share the
// line at boundary b exactly when the n-bit windows starting at column b
// agree. Everything here is phrased over those windows; route_path() is the
// independent path-level check.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "omin/topology.hpp"

namespace omin {

struct Message {
  Address source;
  Address destination;

  friend bool operator==(const Message&, const Message&) = default;
};

/// Ordered messages over one network. Sources are pairwise distinct;
/// destinations may repeat in partial sets.
class MessageSet {
 public:
  /// Validates ranges and source uniqueness; throws InputError.
  static MessageSet create(const NetworkConfig& cfg,
                           std::vector<Message> messages);

  /// Full permutation given as destinations indexed by source.
  static MessageSet from_destinations(const NetworkConfig& cfg,
                                      std::span<const std::uint32_t> dests);

  const NetworkConfig& config() const { return cfg_; }
  std::span<const Message> messages() const { return messages_; }
  std::size_t size() const { return messages_.size(); }
  bool empty() const { return messages_.empty(); }
  const Message& operator[](std::size_t i) const { return messages_[i]; }

  /// True when sources and destinations each cover 0..N-1 exactly once.
  bool is_permutation() const;

  /// Message index for a source address, or size() when absent.
  std::size_t index_of_source(Address source) const;

  MessageSet without(std::size_t index) const;

  friend bool operator==(const MessageSet&, const MessageSet&) = default;

 private:
  MessageSet(NetworkConfig cfg, std::vector<Message> messages)
      : cfg_(cfg), messages_(std::move(messages)) {}

  NetworkConfig cfg_;
  std::vector<Message> messages_;
};

/// Fixed-width bit string, column 0 is the most significant bit.
class BitRow {
 public:
  static constexpr unsigned kMaxWidth = 64;

  BitRow() = default;
  BitRow(std::uint64_t bits, unsigned width);
  /// Parses a string of '0'/'1'; throws InputError otherwise.
  static BitRow parse(std::string_view text);

  unsigned width() const { return width_; }
  std::uint64_t value() const { return bits_; }
  unsigned at(unsigned column) const;
  /// Columns [pos, pos+len).
  BitRow slice(unsigned pos, unsigned len) const;
  std::string to_string() const;

  friend bool operator==(const BitRow&, const BitRow&) = default;

 private:
  std::uint64_t bits_ = 0;
  unsigned width_ = 0;
};

/// source||destination, 2n columns.
BitRow combination_row(Address source, Address destination,
                       const NetworkConfig& cfg);

struct CombinationMatrix {
  std::vector<BitRow> rows;

  /// Row width / 2.
  unsigned stages() const;
};

CombinationMatrix combination_matrix(const MessageSet& ms);

/// Columns [k+1, k+n-1] of a 2n-column row; equal windows share stage k's
/// switch.
BitRow switch_window(const BitRow& row, unsigned stage);

/// Columns [b, b+n-1]; equal windows share the line at boundary b.
BitRow link_window(const BitRow& row, unsigned boundary);

/// Message indices, first < second.
struct MessagePair {
  std::size_t first = 0;
  std::size_t second = 0;

  static MessagePair of(std::size_t a, std::size_t b);
  friend constexpr auto operator<=>(const MessagePair&,
                                    const MessagePair&) = default;
};

using PairSet = std::set<MessagePair>;

struct SwitchOccurrence {
  unsigned stage = 0;
  std::uint32_t switch_index = 0;
  MessagePair pair;

  friend constexpr auto operator<=>(const SwitchOccurrence&,
                                    const SwitchOccurrence&) = default;
};

struct LinkOccurrence {
  unsigned boundary = 0;
  std::uint32_t line = 0;
  MessagePair pair;

  friend constexpr auto operator<=>(const LinkOccurrence&,
                                    const LinkOccurrence&) = default;
};

/// Occurrence-level conflicts: one entry per (stage or boundary, pair).
/// Sorted by (stage/boundary, switch/line, pair).
struct ConflictReport {
  std::vector<SwitchOccurrence> switch_occurrences;
  std::vector<LinkOccurrence> link_occurrences;

  PairSet switch_pairs() const;
  PairSet link_pairs() const;

  friend bool operator==(const ConflictReport&,
                         const ConflictReport&) = default;
};

/// Restricts an analysis to a subset of message indices. Reports keep the
/// indices of the full set.
using Members = std::span<const std::size_t>;

std::vector<std::size_t> all_members(const MessageSet& ms);

// Window-based detection.
ConflictReport switch_conflicts(const MessageSet& ms);
ConflictReport switch_conflicts(const MessageSet& ms, Members members);
ConflictReport link_conflicts(const MessageSet& ms);
ConflictReport link_conflicts(const MessageSet& ms, Members members);
/// Switch and link occurrences together.
ConflictReport analyze(const MessageSet& ms);
ConflictReport analyze(const MessageSet& ms, Members members);

/// Occurrences at a single stage only.
ConflictReport stage_conflicts(const MessageSet& ms, Members members,
                               unsigned stage);

// Path-based detection through route_path(), compared pairwise.
ConflictReport path_switch_conflicts(const MessageSet& ms);
ConflictReport path_link_conflicts(const MessageSet& ms);
ConflictReport path_analyze(const MessageSet& ms);

/// Window Method: pairs whose switch windows agree at any stage.
PairSet wm_conflict_pairs(const MessageSet& ms);

/// N x N matrix over source addresses. Only the upper cell (min, max) of a
/// conflicting pair is recorded, so row sums are asymmetric.
class ConflictMatrix {
 public:
  explicit ConflictMatrix(std::uint32_t size);

  std::uint32_t size() const { return size_; }
  unsigned at(std::uint32_t row, std::uint32_t col) const;
  /// Records (min(a,b), max(a,b)); a == b is ignored.
  void mark(std::uint32_t a, std::uint32_t b);
  /// Either (a,b) or (b,a) recorded.
  bool conflicts(std::uint32_t a, std::uint32_t b) const;

  unsigned row_sum(std::uint32_t row) const;
  std::vector<unsigned> sums() const;
  /// Row plus column count, i.e. degree in the conflict graph.
  unsigned degree(std::uint32_t address) const;
  std::size_t marked() const;

  friend bool operator==(const ConflictMatrix&,
                         const ConflictMatrix&) = default;

 private:
  std::uint32_t size_;
  std::vector<std::uint8_t> cells_;
};

/// Improved Window Method: seeds (i, i+N/2) for every present pair, then
/// adds switch-window matches at stages 1..n-1.
ConflictMatrix iwm_conflict_matrix(const MessageSet& ms);

/// Route Selection matrix: two width-2 windows over the middle four columns
/// (n-2..n+1). No (i, i+N/2) seeding. Requires N >= 8.
ConflictMatrix rsa_conflict_matrix(const MessageSet& ms);

/// Conflict pairs of the matrix, translated to message indices.
PairSet matrix_pairs(const MessageSet& ms, const ConflictMatrix& cm);

}  // namespace omin
