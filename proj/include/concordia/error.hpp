#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace concordia {

enum class errc {
  invalid_group,
  invalid_argument,
  invalid_form,
  resource_limit,
  hypothesis_not_met,
  not_normalizable,
  parse_error,
  semantic_error,
  unsupported_feature,
  empty_input,
  group_mismatch,
};

inline const char* to_string(errc c) {
  switch (c) {
    case errc::invalid_group: return "invalid-group";
    case errc::invalid_argument: return "invalid-argument";
    case errc::invalid_form: return "invalid-form";
    case errc::resource_limit: return "resource-limit";
    case errc::hypothesis_not_met: return "hypothesis-not-met";
    case errc::not_normalizable: return "not-normalizable";
    case errc::parse_error: return "parse-error";
    case errc::semantic_error: return "semantic-error";
    case errc::unsupported_feature: return "unsupported-feature";
    case errc::empty_input: return "empty-input";
    case errc::group_mismatch: return "group-mismatch";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

/// Source position (1-based) attached to parser diagnostics.
struct source_pos {
  std::size_t line = 1;
  std::size_t column = 1;
  friend bool operator==(const source_pos&, const source_pos&) = default;
};

class parse_error : public error {
 public:
  parse_error(errc code, source_pos pos, const std::string& what)
      : error(code, std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + what),
        pos_(pos) {}

  source_pos where() const noexcept { return pos_; }

 private:
  source_pos pos_;
};

}  // namespace concordia
