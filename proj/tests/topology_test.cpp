#include <doctest.h>

#include "omin/topology.hpp"
#include "oracle.hpp"

using namespace omin;

namespace {

std::vector<std::uint32_t> bits(std::initializer_list<const char*> words) {
  std::vector<std::uint32_t> out;
  for (const char* w : words) out.push_back(static_cast<std::uint32_t>(std::stoul(w, nullptr, 2)));
  return out;
}

}  // namespace

TEST_CASE("network config accepts powers of two from 4") {
  const auto cfg = NetworkConfig::from_size(8);
  CHECK(cfg.stages() == 3);
  CHECK(cfg.switches_per_stage() == 4);
  CHECK(NetworkConfig::from_stages(5).size() == 32);
  CHECK_THROWS_AS(NetworkConfig::from_size(12), InputError);
  CHECK_THROWS_AS(NetworkConfig::from_size(2), InputError);
  CHECK_THROWS_AS(NetworkConfig::from_size(0), InputError);
  CHECK_THROWS_AS(NetworkConfig::from_stages(1), InputError);
  CHECK(cfg.binary(Address{6}) == "110");
}

TEST_CASE("shuffle rotates left") {
  const auto cfg = NetworkConfig::from_size(8);
  CHECK(shuffle(Address{0b100}, cfg).value == 0b001);
  CHECK(shuffle(Address{0b000}, cfg).value == 0b000);
  CHECK(shuffle(Address{0b011}, cfg).value == 0b110);
  CHECK_THROWS_AS(shuffle(Address{8}, cfg), InputError);
}

TEST_CASE("shuffle is a bijection of order n") {
  for (unsigned n : {2u, 3u, 4u, 5u, 6u}) {
    const auto cfg = NetworkConfig::from_stages(n);
    std::vector<bool> hit(cfg.size(), false);
    for (std::uint32_t a = 0; a < cfg.size(); ++a) {
      const auto once = shuffle(Address{a}, cfg);
      CHECK_FALSE(hit[once.value]);
      hit[once.value] = true;
      Address x{a};
      for (unsigned i = 0; i < n; ++i) x = shuffle(x, cfg);
      CHECK(x.value == a);
    }
  }
}

TEST_CASE("route_path examples") {
  const auto cfg = NetworkConfig::from_size(8);
  SUBCASE("011 -> 110") {
    const auto p = route_path(Address{0b011}, Address{0b110}, cfg);
    CHECK(p.links == bits({"011", "111", "111", "110"}));
    REQUIRE(p.switches.size() == 3);
    for (unsigned k = 0; k < 3; ++k) {
      CHECK(p.switches[k].stage == k);
      CHECK(p.switches[k].index == 0b11);
    }
  }
  SUBCASE("000 -> 000") {
    const auto p = route_path(Address{0}, Address{0}, cfg);
    CHECK(p.links == bits({"000", "000", "000", "000"}));
    for (const auto& s : p.switches) CHECK(s.index == 0);
  }
  SUBCASE("000 -> 100") {
    const auto p = route_path(Address{0b000}, Address{0b100}, cfg);
    CHECK(p.links == bits({"000", "001", "010", "100"}));
  }
  CHECK_THROWS_AS(route_path(Address{8}, Address{0}, cfg), InputError);
  CHECK_THROWS_AS(route_path(Address{0}, Address{9}, cfg), InputError);
}

TEST_CASE("routing bit is consumed most significant first") {
  const auto cfg = NetworkConfig::from_size(8);
  CHECK(routing_bit(Address{0b100}, 0, cfg) == 1);
  CHECK(routing_bit(Address{0b100}, 1, cfg) == 0);
  CHECK(routing_bit(Address{0b001}, 2, cfg) == 1);
}

TEST_CASE("closed-form path equals stage simulation, exhaustively") {
  for (unsigned n : {3u, 4u, 5u}) {
    const auto cfg = NetworkConfig::from_stages(n);
    for (std::uint32_t s = 0; s < cfg.size(); ++s) {
      for (std::uint32_t d = 0; d < cfg.size(); ++d) {
        const auto closed = route_path(Address{s}, Address{d}, cfg);
        const auto sim = simulate_path(Address{s}, Address{d}, cfg);
        REQUIRE(closed == sim);
        REQUIRE(closed.links == oracle::walk(s, d, n));
        REQUIRE(closed.links.front() == s);
        REQUIRE(closed.links.back() == d);
        for (unsigned k = 0; k < n; ++k) {
          REQUIRE(closed.switches[k].index == closed.links[k + 1] / 2);
        }
      }
    }
  }
}
