#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tunclock {

/// Broad classification of every failure the library reports. The sweep
/// engine and the CLI turn these into row-level status strings.
enum class ErrorKind {
  dimension,
  domain,
  range,
  horizon,
  divergence,
  convergence,
  degenerate,
  unknown_identifier,
  unsupported_profile,
  shape,
  parse,
  format,
};

/// Short, stable, machine-readable name used in status columns.
std::string_view status_name(ErrorKind kind) noexcept;

/// Half-open byte range [begin, end) into some source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<Span> span = std::nullopt)
      : std::runtime_error(what), kind_(kind), span_(span) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<Span>& span() const noexcept { return span_; }

 private:
  ErrorKind kind_;
  std::optional<Span> span_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what, std::optional<Span> span = std::nullopt)
      : Error(ErrorKind::domain, what, span) {}
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error(ErrorKind::range, what) {}
};

}  // namespace tunclock
