#include "tagcoop/config.hpp"

#include <charconv>
#include <sstream>

#include "tagcoop/output.hpp"

namespace tagcoop {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("invalid value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "on" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "off" || text == "no") return false;
  throw ConfigError("invalid boolean '" + std::string(text) + "' for " + std::string(key));
}

}  // namespace

void apply_setting(SimConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "n") config.n = parse_number<std::uint32_t>(key, value);
  else if (key == "r") config.r = parse_number<std::uint32_t>(key, value);
  else if (key == "m") config.m = parse_number<std::uint32_t>(key, value);
  else if (key == "b") config.game.b = parse_number<double>(key, value);
  else if (key == "c") config.game.c = parse_number<double>(key, value);
  else if (key == "epsilon") config.game.epsilon = parse_number<double>(key, value);
  else if (key == "alpha") config.prior.alpha = parse_number<double>(key, value);
  else if (key == "beta") config.prior.beta = parse_number<double>(key, value);
  else if (key == "replacement_prob") config.replacement_prob = parse_number<double>(key, value);
  else if (key == "steps") config.steps = parse_number<std::uint32_t>(key, value);
  else if (key == "runs") config.runs = parse_number<std::uint32_t>(key, value);
  else if (key == "seed") config.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "bias") config.bias = parse_bool(key, value);
  else if (key == "schedule") config.schedule = parse_schedule(value);
  else throw ConfigError("unknown key '" + std::string(key) + "'");
}

SimConfig parse_config(std::string_view text) {
  SimConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    while (!line.empty()) {
      const auto comma = line.find(',');
      const std::string_view item = trim(line.substr(0, comma));
      line = comma == std::string_view::npos ? std::string_view{} : line.substr(comma + 1);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError(line_no, "expected 'key = value', got '" + std::string(item) + "'");
      }
      const auto key = trim(item.substr(0, eq));
      if (key.empty()) throw ParseError(line_no, "missing key before '='");
      try {
        apply_setting(config, key, item.substr(eq + 1));
      } catch (const ConfigError& e) {
        throw ParseError(line_no, e.what());
      }
    }
  }
  config.validate();
  return config;
}

std::string format_config(const SimConfig& config) {
  std::ostringstream out;
  out << "n = " << config.n << '\n'
      << "r = " << config.r << '\n'
      << "m = " << config.m << '\n'
      << "b = " << format_number(config.game.b) << '\n'
      << "c = " << format_number(config.game.c) << '\n'
      << "epsilon = " << format_number(config.game.epsilon) << '\n'
      << "alpha = " << format_number(config.prior.alpha) << '\n'
      << "beta = " << format_number(config.prior.beta) << '\n'
      << "replacement_prob = " << format_number(config.replacement_prob) << '\n'
      << "steps = " << config.steps << '\n'
      << "runs = " << config.runs << '\n'
      << "seed = " << config.seed << '\n'
      << "bias = " << (config.bias ? "true" : "false") << '\n'
      << "schedule = " << to_string(config.schedule) << '\n';
  return out.str();
}

}  // namespace tagcoop
