#include "tunclock/constants.hpp"

#include <cmath>

namespace tunclock {

using units::Quantity;
using units::Rational;
namespace dims = units::dims;

double si::planck_length() { return std::sqrt(si::hbar * si::G / (si::c * si::c * si::c)); }

const ConstantsRegistry& ConstantsRegistry::codata2018() {
  static const ConstantsRegistry registry = [] {
    ConstantsRegistry r;
    const Quantity c(si::c, dims::velocity());
    const Quantity hbar(si::hbar, dims::action());
    const Quantity G(si::G, units::DimensionVector::of(3, -1, -2));
    r.table_.emplace("c", c);
    r.table_.emplace("h", Quantity(si::h, dims::action()));
    r.table_.emplace("hbar", hbar);
    r.table_.emplace("G", G);
    r.table_.emplace("m_e", Quantity(si::electron_mass, dims::mass()));
    r.table_.emplace("m_p", Quantity(si::proton_mass, dims::mass()));
    r.table_.emplace("eV", Quantity(si::eV, dims::energy()));
    r.table_.emplace("pi", Quantity(std::numbers::pi));
    r.table_.emplace("l_p", units::q_pow(hbar * G / units::q_pow(c, 3), Rational(1, 2)));
    return r;
  }();
  return registry;
}

std::optional<Quantity> ConstantsRegistry::find(std::string_view name) const {
  auto it = table_.find(name);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

const Quantity& ConstantsRegistry::at(std::string_view name) const {
  auto it = table_.find(name);
  if (it == table_.end()) throw Error(ErrorKind::unknown_identifier, "unknown identifier '" + std::string(name) + "'");
  return it->second;
}

bool ConstantsRegistry::contains(std::string_view name) const { return table_.find(name) != table_.end(); }

ConstantsRegistry ConstantsRegistry::with(std::string name, Quantity value) const {
  ConstantsRegistry copy = *this;
  copy.table_.insert_or_assign(std::move(name), std::move(value));
  return copy;
}

std::vector<std::string> ConstantsRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(table_.size());
  for (const auto& [name, _] : table_) out.push_back(name);
  return out;
}

}  // namespace tunclock
