#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lipmod {

// Raised when an input lies on an excluded locus or a mathematical
// hypothesis fails (degenerate face, non-isolated singularity, ...).
// `code` is a stable machine-readable identifier, `locus` names the
// offending condition when there is one (e.g. "s^2+3=0").
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string code, const std::string& message, std::string locus = {})
      : std::runtime_error(message), code_(std::move(code)), locus_(std::move(locus)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& locus() const noexcept { return locus_; }

 private:
  std::string code_;
  std::string locus_;
};

enum class ParseErrorKind { Syntax, UnboundIdentifier, ExponentOverflow };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t offset, const std::string& message)
      : std::runtime_error(message + " at offset " + std::to_string(offset)),
        kind_(kind),
        offset_(offset) {}

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  ParseErrorKind kind_;
  std::size_t offset_;
};

}  // namespace lipmod
