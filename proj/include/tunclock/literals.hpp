#pragma once

// Unit-suffixed command-line literals such as "10eV", "1nm" or "electron".
// A bare number is taken in SI units. Suffixes come from a fixed table.

#include <string_view>

namespace tunclock {

enum class LiteralKind { energy, length, mass, time };

/// Throws DomainError for malformed text or a suffix not valid for `kind`.
double parse_literal(std::string_view text, LiteralKind kind);

}  // namespace tunclock
