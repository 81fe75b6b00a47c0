#pragma once

// Plain-text message files: one "SRC DST" pair of decimal integers per line,
// '#' starts a comment, blank lines are ignored. A comment of the form
// "# N=<size>" declares the network size.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "omin/conflict.hpp"

namespace omin {

struct MessageFile {
  MessageSet messages;
  std::vector<std::size_t> line_numbers;  // 1-based, one per message
};

struct LoadOptions {
  /// Explicit network size; wins over a "# N=" declaration and inference.
  std::optional<std::uint32_t> size;
  /// Floor for the inferred size.
  std::uint32_t min_size = 4;
};

/// Smallest power of two strictly greater than max_address, at least
/// min_size.
std::uint32_t infer_size(std::uint32_t max_address, std::uint32_t min_size);

MessageFile load_messages(std::istream& in, const LoadOptions& opts = {});
MessageFile load_messages(const std::filesystem::path& path,
                          const LoadOptions& opts = {});

/// Inverse of load_messages for sets in file order.
std::string render_messages(const MessageSet& ms);

}  // namespace omin
