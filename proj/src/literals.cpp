#include "tunclock/literals.hpp"

#include <charconv>
#include <cmath>
#include <string>
#include <utility>

#include "tunclock/constants.hpp"
#include "tunclock/error.hpp"

namespace tunclock {

namespace {

using Suffix = std::pair<std::string_view, double>;

constexpr Suffix kEnergy[] = {{"J", 1.0}, {"eV", si::eV}, {"meV", 1e-3 * si::eV}, {"keV", 1e3 * si::eV},
                              {"MeV", 1e6 * si::eV}};
constexpr Suffix kLength[] = {{"m", 1.0},   {"km", 1e3},   {"cm", 1e-2},  {"mm", 1e-3}, {"um", 1e-6},
                              {"nm", 1e-9}, {"pm", 1e-12}, {"fm", 1e-15}, {"A", 1e-10}};
constexpr Suffix kMass[] = {{"kg", 1.0}, {"g", 1e-3}, {"me", si::electron_mass}};
constexpr Suffix kTime[] = {{"s", 1.0},    {"ms", 1e-3},   {"us", 1e-6},  {"ns", 1e-9},
                            {"ps", 1e-12}, {"fs", 1e-15}, {"as", 1e-18}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

template <std::size_t N>
double lookup(const Suffix (&table)[N], std::string_view suffix, std::string_view text, const char* what) {
  for (const auto& [name, scale] : table) {
    if (name == suffix) return scale;
  }
  throw DomainError("unknown " + std::string(what) + " unit in '" + std::string(text) + "'");
}

}  // namespace

double parse_literal(std::string_view text, LiteralKind kind) {
  const std::string_view s = trim(text);
  if (kind == LiteralKind::mass) {
    if (s == "electron") return si::electron_mass;
    if (s == "proton") return si::proton_mass;
  }
  double value = 0.0;
  const char* begin = s.data();
  if (!s.empty() && s.front() == '+') ++begin;
  auto res = std::from_chars(begin, s.data() + s.size(), value);
  if (res.ec != std::errc{} || !std::isfinite(value)) {
    throw DomainError("malformed number '" + std::string(text) + "'");
  }
  const std::string_view suffix = trim(std::string_view(res.ptr, s.data() + s.size() - res.ptr));
  if (suffix.empty()) return value;
  switch (kind) {
    case LiteralKind::energy: return value * lookup(kEnergy, suffix, text, "energy");
    case LiteralKind::length: return value * lookup(kLength, suffix, text, "length");
    case LiteralKind::mass: return value * lookup(kMass, suffix, text, "mass");
    case LiteralKind::time: return value * lookup(kTime, suffix, text, "time");
  }
  return value;
}

}  // namespace tunclock
