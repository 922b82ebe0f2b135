#include "fringelab/gw_analytic.hpp"

#include <stdexcept>

namespace fringelab {

double protected_limit(const CanonicalLaw& law) {
  const double pi0 = law.pi0();
  return law.phi_tilde(1.0 - pi0) - pi0;
}

double ell_protected_limit(const CanonicalLaw& law, std::size_t ell) {
  if (ell == 0) return 1.0;
  const double pi0 = law.pi0();
  double p = 1.0 - pi0;
  for (std::size_t i = 2; i <= ell; ++i) {
    // Rounding can leave a hair below zero once the sequence has collapsed.
    p = law.phi_tilde(p) - pi0;
    if (p < 0.0) p = 0.0;
  }
  return p;
}

ProtectionProfile protection_profile(const CanonicalLaw& law, std::size_t max_level) {
  if (max_level < 1) throw std::invalid_argument("protection profile needs L >= 1");
  ProtectionProfile profile;
  profile.family = law.family().spec();
  profile.values.reserve(max_level + 1);
  profile.values.push_back(1.0);
  const double pi0 = law.pi0();
  for (std::size_t ell = 1; ell <= max_level; ++ell) {
    double p = ell == 1 ? 1.0 - pi0 : law.phi_tilde(profile.values.back()) - pi0;
    if (p < 0.0) p = 0.0;
    profile.values.push_back(p);
    profile.levels.push_back(profile.values[ell - 1] - p);
  }
  return profile;
}

double gw_tree_probability(const CanonicalLaw& law, const Tree& t) {
  double p = 1.0;
  for (auto d : t.degrees()) {
    p *= law.pmf(d);
    if (p == 0.0) break;
  }
  return p;
}

}  // namespace fringelab
