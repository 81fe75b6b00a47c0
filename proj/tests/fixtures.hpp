#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "omin/conflict.hpp"
#include "omin/topology.hpp"

namespace fixtures {

// Destinations indexed by source.
inline constexpr std::array<std::uint32_t, 8> kAsaDests = {4, 3, 5, 6, 2, 1, 0, 7};
inline constexpr std::array<std::uint32_t, 8> kRsaDests = {5, 1, 3, 6, 0, 2, 4, 7};

inline omin::MessageSet asa_example() {
  return omin::MessageSet::from_destinations(omin::NetworkConfig::from_size(8), kAsaDests);
}

inline omin::MessageSet rsa_example() {
  return omin::MessageSet::from_destinations(omin::NetworkConfig::from_size(8), kRsaDests);
}

inline omin::MessageSet subset(const omin::MessageSet& ms,
                               const std::set<std::uint32_t>& sources) {
  std::vector<omin::Message> picked;
  for (const auto& m : ms.messages()) {
    if (sources.contains(m.source.value)) picked.push_back(m);
  }
  return omin::MessageSet::create(ms.config(), std::move(picked));
}

inline std::set<std::uint32_t> sources(const omin::MessageSet& ms,
                                       const std::vector<std::size_t>& indices) {
  std::set<std::uint32_t> out;
  for (auto i : indices) out.insert(ms[i].source.value);
  return out;
}

inline std::set<std::pair<std::uint32_t, std::uint32_t>> source_pairs(
    const omin::MessageSet& ms, const omin::PairSet& pairs) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& p : pairs) {
    const auto a = ms[p.first].source.value, b = ms[p.second].source.value;
    out.emplace(std::min(a, b), std::max(a, b));
  }
  return out;
}


}  // namespace fixtures
