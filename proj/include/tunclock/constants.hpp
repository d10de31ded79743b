#pragma once

#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tunclock/units.hpp"

namespace tunclock {

/// CODATA 2018 values in coherent SI units. Kernels that work on plain
/// doubles read these; the registry below wraps the same numbers.
namespace si {
inline constexpr std::string_view kEdition = "CODATA-2018";

inline constexpr double c = 299792458.0;                 // m s^-1, exact
inline constexpr double h = 6.62607015e-34;              // J s, exact
inline constexpr double hbar = h / (2.0 * std::numbers::pi);
inline constexpr double G = 6.67430e-11;                 // m^3 kg^-1 s^-2
inline constexpr double electron_mass = 9.1093837015e-31;  // kg
inline constexpr double proton_mass = 1.67262192369e-27;   // kg
inline constexpr double eV = 1.602176634e-19;            // J, exact

/// sqrt(hbar G / c^3)
double planck_length();
}  // namespace si

/// Immutable name -> Quantity table preloaded with the pinned constants.
/// `with` returns a new registry; the original is never modified.
class ConstantsRegistry {
 public:
  static const ConstantsRegistry& codata2018();

  std::optional<units::Quantity> find(std::string_view name) const;
  /// Throws Error(unknown_identifier) when absent.
  const units::Quantity& at(std::string_view name) const;
  bool contains(std::string_view name) const;

  ConstantsRegistry with(std::string name, units::Quantity value) const;

  std::vector<std::string> names() const;
  std::string_view edition() const noexcept { return si::kEdition; }

 private:
  ConstantsRegistry() = default;
  std::map<std::string, units::Quantity, std::less<>> table_;
};

}  // namespace tunclock
