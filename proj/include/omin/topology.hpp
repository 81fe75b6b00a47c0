#pragma once

// Omega network model: perfect-shuffle wiring between stages of 2x2
// switching elements, routed by destination tag (MSB first).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace omin {

/// Raised for malformed user input: bad sizes, out-of-range addresses,
/// duplicate sources, unparsable files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Address {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(const Address&, const Address&) = default;
};

class NetworkConfig {
 public:
  static constexpr unsigned kMinStages = 2;
  static constexpr unsigned kMaxStages = 24;

  /// Throws InputError unless size is a power of two in [4, 2^24].
  static NetworkConfig from_size(std::uint32_t size);
  static NetworkConfig from_stages(unsigned stages);

  std::uint32_t size() const { return size_; }
  unsigned stages() const { return stages_; }
  std::uint32_t switches_per_stage() const { return size_ / 2; }

  bool contains(Address a) const { return a.value < size_; }
  void check(Address a) const;

  /// n-bit rendering, most significant bit first.
  std::string binary(Address a) const;

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;

 private:
  NetworkConfig(std::uint32_t size, unsigned stages)
      : size_(size), stages_(stages) {}

  std::uint32_t size_;
  unsigned stages_;
};

bool is_power_of_two(std::uint64_t v);

struct SwitchId {
  unsigned stage = 0;
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(const SwitchId&, const SwitchId&) = default;
};

/// Lines occupied at boundaries 0..n and the switch used at each stage.
struct Path {
  std::vector<std::uint32_t> links;
  std::vector<SwitchId> switches;

  friend bool operator==(const Path&, const Path&) = default;
};

/// Left circular rotation of the n-bit address.
Address shuffle(Address a, const NetworkConfig& cfg);

/// Destination bit consumed at stage k (bit k counted from the MSB).
unsigned routing_bit(Address destination, unsigned stage,
                     const NetworkConfig& cfg);

/// Closed form: boundary b carries bits [b, b+n) of source||destination.
Path route_path(Address source, Address destination, const NetworkConfig& cfg);

/// Stage-by-stage simulation: shuffle, then exchange to the routing bit.
/// Kept separate from route_path so each can check the other.
Path simulate_path(Address source, Address destination,
                   const NetworkConfig& cfg);

}  // namespace omin
