#ifndef TAGCOOP_CONFIG_HPP
#define TAGCOOP_CONFIG_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tagcoop/engine.hpp"

namespace tagcoop {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Flat `key = value` text. `#` starts a comment; several pairs may share a
// line when separated by commas. Keys: n r m b c alpha beta epsilon
// replacement_prob steps runs seed bias schedule. Unlisted keys keep their
// defaults. The result is validated (ConfigError on violation).
SimConfig parse_config(std::string_view text);

// Sets one key. Throws ConfigError for unknown keys or malformed values; does
// not validate the config as a whole.
void apply_setting(SimConfig& config, std::string_view key, std::string_view value);

// Every key, one per line, in a form parse_config reads back exactly.
std::string format_config(const SimConfig& config);

}  // namespace tagcoop

#endif  // TAGCOOP_CONFIG_HPP
