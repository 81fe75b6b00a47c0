#include "omin/message_file.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string_view>

#include <fmt/format.h>

namespace omin {

std::uint32_t infer_size(std::uint32_t max_address, std::uint32_t min_size) {
  std::uint64_t size = 1;
  while (size <= max_address) size <<= 1;
  if (size < min_size) size = min_size;
  if (size > (std::uint64_t{1} << NetworkConfig::kMaxStages)) {
    throw InputError(fmt::format("address {} needs a network larger than 2^{}",
                                 max_address, NetworkConfig::kMaxStages));
  }
  return static_cast<std::uint32_t>(size);
}

namespace {

std::uint32_t parse_address(std::string_view token, std::size_t line) {
  std::uint32_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InputError(fmt::format("line {}: '{}' is not a non-negative integer",
                                 line, token));
  }
  return value;
}

}  // namespace

MessageFile load_messages(std::istream& in, const LoadOptions& opts) {
  std::vector<Message> messages;
  std::vector<std::size_t> lines;
  std::map<std::uint32_t, std::size_t> first_line_of;
  std::uint32_t max_address = 0;
  std::optional<std::uint32_t> declared_size;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view text = raw;
    if (auto hash = text.find('#'); hash != std::string_view::npos) {
      auto comment = text.substr(hash + 1);
      while (!comment.empty() && comment.front() == ' ') comment.remove_prefix(1);
      while (!comment.empty() && (comment.back() == ' ' || comment.back() == '\r')) {
        comment.remove_suffix(1);
      }
      if (comment.starts_with("N=")) {
        declared_size = parse_address(comment.substr(2), line_no);
      }
      text = text.substr(0, hash);
    }
    std::istringstream fields{std::string(text)};
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(std::move(t));
    if (tokens.empty()) continue;
    if (tokens.size() != 2) {
      throw InputError(fmt::format(
          "line {}: expected 'SRC DST', found {} fields", line_no, tokens.size()));
    }
    const auto src = parse_address(tokens[0], line_no);
    const auto dst = parse_address(tokens[1], line_no);
    if (auto [it, fresh] = first_line_of.emplace(src, line_no); !fresh) {
      throw InputError(fmt::format("line {}: duplicate source {} (first on line {})",
                                   line_no, src, it->second));
    }
    max_address = std::max({max_address, src, dst});
    messages.push_back(Message{Address{src}, Address{dst}});
    lines.push_back(line_no);
  }

  const auto cfg = NetworkConfig::from_size(
      opts.size ? *opts.size
                : declared_size ? *declared_size
                                : infer_size(max_address, opts.min_size));
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const auto& m = messages[i];
    if (!cfg.contains(m.source) || !cfg.contains(m.destination)) {
      throw InputError(fmt::format("line {}: address {} out of range for N={}",
                                   lines[i],
                                   std::max(m.source.value, m.destination.value),
                                   cfg.size()));
    }
  }
  return MessageFile{MessageSet::create(cfg, std::move(messages)),
                     std::move(lines)};
}

MessageFile load_messages(const std::filesystem::path& path,
                          const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot read '{}'", path.string()));
  return load_messages(in, opts);
}

std::string render_messages(const MessageSet& ms) {
  std::string out = fmt::format("# N={}\n", ms.config().size());
  for (const auto& m : ms.messages()) {
    out += fmt::format("{} {}\n", m.source.value, m.destination.value);
  }
  return out;
}

}  // namespace omin
