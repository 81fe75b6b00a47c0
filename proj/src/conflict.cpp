#include "omin/conflict.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include <fmt/format.h>

namespace omin {

// ---------------------------------------------------------------------------
// MessageSet

MessageSet MessageSet::create(const NetworkConfig& cfg,
                              std::vector<Message> messages) {
  std::vector<bool> seen(cfg.size(), false);
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const auto& m = messages[i];
    if (!cfg.contains(m.source) || !cfg.contains(m.destination)) {
      throw InputError(fmt::format(
          "message {} ({} -> {}) out of range for N={}", i, m.source.value,
          m.destination.value, cfg.size()));
    }
    if (seen[m.source.value]) {
      throw InputError(
          fmt::format("duplicate source address {}", m.source.value));
    }
    seen[m.source.value] = true;
  }
  return MessageSet(cfg, std::move(messages));
}

MessageSet MessageSet::from_destinations(const NetworkConfig& cfg,
                                         std::span<const std::uint32_t> dests) {
  if (dests.size() != cfg.size()) {
    throw InputError(fmt::format("expected {} destinations, got {}",
                                 cfg.size(), dests.size()));
  }
  std::vector<Message> messages;
  messages.reserve(dests.size());
  for (std::uint32_t s = 0; s < dests.size(); ++s) {
    messages.push_back(Message{Address{s}, Address{dests[s]}});
  }
  return create(cfg, std::move(messages));
}

bool MessageSet::is_permutation() const {
  if (messages_.size() != cfg_.size()) return false;
  std::vector<bool> dest_seen(cfg_.size(), false);
  for (const auto& m : messages_) {
    if (dest_seen[m.destination.value]) return false;
    dest_seen[m.destination.value] = true;
  }
  // Sources are distinct and in range by construction.
  return true;
}

std::size_t MessageSet::index_of_source(Address source) const {
  for (std::size_t i = 0; i < messages_.size(); ++i) {
    if (messages_[i].source == source) return i;
  }
  return messages_.size();
}

MessageSet MessageSet::without(std::size_t index) const {
  auto copy = messages_;
  copy.erase(copy.begin() + static_cast<std::ptrdiff_t>(index));
  return MessageSet(cfg_, std::move(copy));
}

// ---------------------------------------------------------------------------
// BitRow

BitRow::BitRow(std::uint64_t bits, unsigned width) : bits_(bits), width_(width) {
  if (width > kMaxWidth) {
    throw InputError(fmt::format("bit row width {} exceeds {}", width, kMaxWidth));
  }
  if (width < kMaxWidth) bits_ &= (std::uint64_t{1} << width) - 1;
}

BitRow BitRow::parse(std::string_view text) {
  if (text.size() > kMaxWidth) {
    throw InputError(fmt::format("bit row '{}' too long", text));
  }
  std::uint64_t bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw InputError(fmt::format("'{}' is not a bit string", text));
    }
    bits = (bits << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return BitRow(bits, static_cast<unsigned>(text.size()));
}

unsigned BitRow::at(unsigned column) const {
  if (column >= width_) {
    throw InputError(fmt::format("column {} outside row of width {}", column, width_));
  }
  return static_cast<unsigned>((bits_ >> (width_ - 1 - column)) & 1u);
}

BitRow BitRow::slice(unsigned pos, unsigned len) const {
  if (pos + len > width_) {
    throw InputError(fmt::format("slice [{}, {}) outside row of width {}", pos,
                                 pos + len, width_));
  }
  if (len == 0) return BitRow(0, 0);
  return BitRow(bits_ >> (width_ - pos - len), len);
}

std::string BitRow::to_string() const {
  std::string out(width_, '0');
  for (unsigned i = 0; i < width_; ++i) {
    if (at(i)) out[i] = '1';
  }
  return out;
}

BitRow combination_row(Address source, Address destination,
                       const NetworkConfig& cfg) {
  cfg.check(source);
  cfg.check(destination);
  const unsigned n = cfg.stages();
  return BitRow((std::uint64_t{source.value} << n) | destination.value, 2 * n);
}

unsigned CombinationMatrix::stages() const {
  return rows.empty() ? 0 : rows.front().width() / 2;
}

CombinationMatrix combination_matrix(const MessageSet& ms) {
  CombinationMatrix cm;
  cm.rows.reserve(ms.size());
  for (const auto& m : ms.messages()) {
    cm.rows.push_back(combination_row(m.source, m.destination, ms.config()));
  }
  return cm;
}

namespace {

unsigned row_stages(const BitRow& row) {
  if (row.width() < 2 * NetworkConfig::kMinStages || row.width() % 2 != 0) {
    throw InputError(
        fmt::format("combination row width {} is not 2n", row.width()));
  }
  return row.width() / 2;
}

}  // namespace

BitRow switch_window(const BitRow& row, unsigned stage) {
  const unsigned n = row_stages(row);
  if (stage >= n) {
    throw InputError(fmt::format("stage {} outside [0, {}]", stage, n - 1));
  }
  return row.slice(stage + 1, n - 1);
}

BitRow link_window(const BitRow& row, unsigned boundary) {
  const unsigned n = row_stages(row);
  if (boundary > n) {
    throw InputError(fmt::format("boundary {} outside [0, {}]", boundary, n));
  }
  return row.slice(boundary, n);
}

// ---------------------------------------------------------------------------
// Reports

MessagePair MessagePair::of(std::size_t a, std::size_t b) {
  return a < b ? MessagePair{a, b} : MessagePair{b, a};
}

PairSet ConflictReport::switch_pairs() const {
  PairSet out;
  for (const auto& o : switch_occurrences) out.insert(o.pair);
  return out;
}

PairSet ConflictReport::link_pairs() const {
  PairSet out;
  for (const auto& o : link_occurrences) out.insert(o.pair);
  return out;
}

std::vector<std::size_t> all_members(const MessageSet& ms) {
  std::vector<std::size_t> out(ms.size());
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

namespace {

// Groups members by key and calls emit(key, pair) for every pair sharing a
// key. Pairs come out ordered by key, then by pair.
template <typename KeyFn, typename Emit>
void for_each_equal(Members members, KeyFn key_of, Emit emit) {
  std::vector<std::pair<std::uint64_t, std::size_t>> keyed;
  keyed.reserve(members.size());
  for (auto i : members) keyed.emplace_back(key_of(i), i);
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t lo = 0; lo < keyed.size();) {
    std::size_t hi = lo + 1;
    while (hi < keyed.size() && keyed[hi].first == keyed[lo].first) ++hi;
    for (std::size_t a = lo; a < hi; ++a) {
      for (std::size_t b = a + 1; b < hi; ++b) {
        emit(keyed[lo].first, MessagePair::of(keyed[a].second, keyed[b].second));
      }
    }
    lo = hi;
  }
}

std::vector<BitRow> rows_for(const MessageSet& ms) {
  return combination_matrix(ms).rows;
}

void add_switch_stage(const std::vector<BitRow>& rows, Members members,
                      unsigned stage, ConflictReport& out) {
  for_each_equal(
      members, [&](std::size_t i) { return switch_window(rows[i], stage).value(); },
      [&](std::uint64_t key, MessagePair p) {
        out.switch_occurrences.push_back(
            SwitchOccurrence{stage, static_cast<std::uint32_t>(key), p});
      });
}

void add_links(const std::vector<BitRow>& rows, Members members, unsigned n,
               ConflictReport& out) {
  for (unsigned b = 0; b <= n; ++b) {
    for_each_equal(
        members, [&](std::size_t i) { return link_window(rows[i], b).value(); },
        [&](std::uint64_t key, MessagePair p) {
          out.link_occurrences.push_back(
              LinkOccurrence{b, static_cast<std::uint32_t>(key), p});
        });
  }
}

void sort_report(ConflictReport& r) {
  std::sort(r.switch_occurrences.begin(), r.switch_occurrences.end());
  std::sort(r.link_occurrences.begin(), r.link_occurrences.end());
}

void check_members(const MessageSet& ms, Members members) {
  for (auto i : members) {
    if (i >= ms.size()) {
      throw InputError(fmt::format("message index {} outside set of {}", i, ms.size()));
    }
  }
}

}  // namespace

ConflictReport switch_conflicts(const MessageSet& ms, Members members) {
  check_members(ms, members);
  const auto rows = rows_for(ms);
  ConflictReport out;
  for (unsigned k = 0; k < ms.config().stages(); ++k) {
    add_switch_stage(rows, members, k, out);
  }
  sort_report(out);
  return out;
}

ConflictReport switch_conflicts(const MessageSet& ms) {
  const auto members = all_members(ms);
  return switch_conflicts(ms, members);
}

ConflictReport link_conflicts(const MessageSet& ms, Members members) {
  check_members(ms, members);
  const auto rows = rows_for(ms);
  ConflictReport out;
  add_links(rows, members, ms.config().stages(), out);
  sort_report(out);
  return out;
}

ConflictReport link_conflicts(const MessageSet& ms) {
  const auto members = all_members(ms);
  return link_conflicts(ms, members);
}

ConflictReport analyze(const MessageSet& ms, Members members) {
  check_members(ms, members);
  const auto rows = rows_for(ms);
  ConflictReport out;
  for (unsigned k = 0; k < ms.config().stages(); ++k) {
    add_switch_stage(rows, members, k, out);
  }
  add_links(rows, members, ms.config().stages(), out);
  sort_report(out);
  return out;
}

ConflictReport analyze(const MessageSet& ms) {
  const auto members = all_members(ms);
  return analyze(ms, members);
}

ConflictReport stage_conflicts(const MessageSet& ms, Members members,
                               unsigned stage) {
  check_members(ms, members);
  if (stage >= ms.config().stages()) {
    throw InputError(fmt::format("stage {} outside network of {} stages", stage,
                                 ms.config().stages()));
  }
  const auto rows = rows_for(ms);
  ConflictReport out;
  add_switch_stage(rows, members, stage, out);
  sort_report(out);
  return out;
}

// ---------------------------------------------------------------------------
// Path-level comparison

namespace {

std::vector<Path> paths_for(const MessageSet& ms) {
  std::vector<Path> paths;
  paths.reserve(ms.size());
  for (const auto& m : ms.messages()) {
    paths.push_back(route_path(m.source, m.destination, ms.config()));
  }
  return paths;
}

void path_switches(const std::vector<Path>& paths, ConflictReport& out) {
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = i + 1; j < paths.size(); ++j) {
      for (std::size_t k = 0; k < paths[i].switches.size(); ++k) {
        if (paths[i].switches[k] == paths[j].switches[k]) {
          out.switch_occurrences.push_back(
              SwitchOccurrence{paths[i].switches[k].stage,
                               paths[i].switches[k].index, MessagePair{i, j}});
        }
      }
    }
  }
}

void path_links(const std::vector<Path>& paths, ConflictReport& out) {
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = i + 1; j < paths.size(); ++j) {
      for (std::size_t b = 0; b < paths[i].links.size(); ++b) {
        if (paths[i].links[b] == paths[j].links[b]) {
          out.link_occurrences.push_back(
              LinkOccurrence{static_cast<unsigned>(b), paths[i].links[b],
                             MessagePair{i, j}});
        }
      }
    }
  }
}

}  // namespace

ConflictReport path_switch_conflicts(const MessageSet& ms) {
  ConflictReport out;
  path_switches(paths_for(ms), out);
  sort_report(out);
  return out;
}

ConflictReport path_link_conflicts(const MessageSet& ms) {
  ConflictReport out;
  path_links(paths_for(ms), out);
  sort_report(out);
  return out;
}

ConflictReport path_analyze(const MessageSet& ms) {
  const auto paths = paths_for(ms);
  ConflictReport out;
  path_switches(paths, out);
  path_links(paths, out);
  sort_report(out);
  return out;
}

PairSet wm_conflict_pairs(const MessageSet& ms) {
  const auto rows = rows_for(ms);
  const unsigned n = ms.config().stages();
  PairSet out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      for (unsigned k = 0; k < n; ++k) {
        if (switch_window(rows[i], k) == switch_window(rows[j], k)) {
          out.insert(MessagePair{i, j});
          break;
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// ConflictMatrix

ConflictMatrix::ConflictMatrix(std::uint32_t size)
    : size_(size), cells_(std::size_t{size} * size, 0) {}

unsigned ConflictMatrix::at(std::uint32_t row, std::uint32_t col) const {
  if (row >= size_ || col >= size_) {
    throw InputError(fmt::format("cell ({}, {}) outside {}x{} matrix", row, col,
                                 size_, size_));
  }
  return cells_[std::size_t{row} * size_ + col];
}

void ConflictMatrix::mark(std::uint32_t a, std::uint32_t b) {
  if (a == b) return;
  const auto lo = std::min(a, b);
  const auto hi = std::max(a, b);
  if (hi >= size_) {
    throw InputError(fmt::format("cell ({}, {}) outside {}x{} matrix", lo, hi,
                                 size_, size_));
  }
  cells_[std::size_t{lo} * size_ + hi] = 1;
}

bool ConflictMatrix::conflicts(std::uint32_t a, std::uint32_t b) const {
  return at(a, b) != 0 || at(b, a) != 0;
}

unsigned ConflictMatrix::row_sum(std::uint32_t row) const {
  unsigned sum = 0;
  for (std::uint32_t c = 0; c < size_; ++c) sum += at(row, c);
  return sum;
}

std::vector<unsigned> ConflictMatrix::sums() const {
  std::vector<unsigned> out(size_);
  for (std::uint32_t r = 0; r < size_; ++r) out[r] = row_sum(r);
  return out;
}

unsigned ConflictMatrix::degree(std::uint32_t address) const {
  unsigned d = 0;
  for (std::uint32_t other = 0; other < size_; ++other) {
    d += at(address, other) + at(other, address);
  }
  return d;
}

std::size_t ConflictMatrix::marked() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), 1));
}

ConflictMatrix iwm_conflict_matrix(const MessageSet& ms) {
  const auto& cfg = ms.config();
  ConflictMatrix cm(cfg.size());
  std::vector<bool> present(cfg.size(), false);
  for (const auto& m : ms.messages()) present[m.source.value] = true;

  const std::uint32_t half = cfg.size() / 2;
  for (std::uint32_t i = 0; i < half; ++i) {
    if (present[i] && present[i + half]) cm.mark(i, i + half);
  }

  // The first window is replaced by the seeding above.
  const auto rows = rows_for(ms);
  const auto members = all_members(ms);
  for (unsigned k = 1; k < cfg.stages(); ++k) {
    for_each_equal(
        members, [&](std::size_t i) { return switch_window(rows[i], k).value(); },
        [&](std::uint64_t, MessagePair p) {
          cm.mark(ms[p.first].source.value, ms[p.second].source.value);
        });
  }
  return cm;
}

ConflictMatrix rsa_conflict_matrix(const MessageSet& ms) {
  const auto& cfg = ms.config();
  if (cfg.size() < 8) {
    throw InputError(fmt::format(
        "route selection needs N >= 8, got N={}", cfg.size()));
  }
  const unsigned n = cfg.stages();
  const auto rows = rows_for(ms);
  ConflictMatrix cm(cfg.size());
  const auto members = all_members(ms);
  // Selected columns n-2..n+1; windows are selected columns 1-2 and 2-3.
  for (unsigned start : {n - 1, n}) {
    for_each_equal(
        members, [&](std::size_t i) { return rows[i].slice(start, 2).value(); },
        [&](std::uint64_t, MessagePair p) {
          cm.mark(ms[p.first].source.value, ms[p.second].source.value);
        });
  }
  return cm;
}

PairSet matrix_pairs(const MessageSet& ms, const ConflictMatrix& cm) {
  PairSet out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      if (cm.conflicts(ms[i].source.value, ms[j].source.value)) {
        out.insert(MessagePair{i, j});
      }
    }
  }
  return out;
}

}  // namespace omin
