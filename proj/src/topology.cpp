#include "omin/topology.hpp"

#include <bit>
#include <fmt/format.h>

namespace omin {

bool is_power_of_two(std::uint64_t v) { return std::has_single_bit(v); }

NetworkConfig NetworkConfig::from_size(std::uint32_t size) {
  if (!is_power_of_two(size)) {
    throw InputError(fmt::format("network size {} is not a power of two", size));
  }
  const auto stages = static_cast<unsigned>(std::countr_zero(size));
  if (stages < kMinStages || stages > kMaxStages) {
    throw InputError(fmt::format("network size {} outside [{}, {}]", size,
                                 1u << kMinStages, 1u << kMaxStages));
  }
  return NetworkConfig(size, stages);
}

NetworkConfig NetworkConfig::from_stages(unsigned stages) {
  if (stages < kMinStages || stages > kMaxStages) {
    throw InputError(fmt::format("stage count {} outside [{}, {}]", stages,
                                 kMinStages, kMaxStages));
  }
  return NetworkConfig(1u << stages, stages);
}

void NetworkConfig::check(Address a) const {
  if (!contains(a)) {
    throw InputError(
        fmt::format("address {} out of range for N={}", a.value, size_));
  }
}

std::string NetworkConfig::binary(Address a) const {
  std::string out(stages_, '0');
  for (unsigned i = 0; i < stages_; ++i) {
    if ((a.value >> (stages_ - 1 - i)) & 1u) out[i] = '1';
  }
  return out;
}

Address shuffle(Address a, const NetworkConfig& cfg) {
  cfg.check(a);
  const unsigned n = cfg.stages();
  const std::uint32_t mask = cfg.size() - 1;
  return Address{((a.value << 1) | (a.value >> (n - 1))) & mask};
}

unsigned routing_bit(Address destination, unsigned stage,
                     const NetworkConfig& cfg) {
  return (destination.value >> (cfg.stages() - 1 - stage)) & 1u;
}

Path route_path(Address source, Address destination, const NetworkConfig& cfg) {
  cfg.check(source);
  cfg.check(destination);
  const unsigned n = cfg.stages();
  const std::uint64_t combined =
      (std::uint64_t{source.value} << n) | destination.value;
  const std::uint64_t line_mask = cfg.size() - 1;

  Path path;
  path.links.reserve(n + 1);
  path.switches.reserve(n);
  // Boundary b is the n-bit window starting at column b of the 2n columns.
  for (unsigned b = 0; b <= n; ++b) {
    path.links.push_back(
        static_cast<std::uint32_t>((combined >> (n - b)) & line_mask));
  }
  // Stage k switch is the (n-1)-bit window starting at column k+1.
  const std::uint64_t switch_mask = line_mask >> 1;
  for (unsigned k = 0; k < n; ++k) {
    path.switches.push_back(SwitchId{
        k, static_cast<std::uint32_t>((combined >> (n - k)) & switch_mask)});
  }
  return path;
}

Path simulate_path(Address source, Address destination,
                   const NetworkConfig& cfg) {
  cfg.check(source);
  cfg.check(destination);
  Path path;
  Address line = source;
  path.links.push_back(line.value);
  for (unsigned k = 0; k < cfg.stages(); ++k) {
    line = shuffle(line, cfg);
    line.value = (line.value & ~1u) | routing_bit(destination, k, cfg);
    path.switches.push_back(SwitchId{k, line.value >> 1});
    path.links.push_back(line.value);
  }
  return path;
}

}  // namespace omin
