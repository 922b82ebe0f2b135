#pragma once

// Limiting proportions of ell-protected nodes in simply generated trees.
// The limit is the probability that the root of the unconditioned
// Galton-Watson tree with the canonical offspring law is ell-protected.

#include <cstddef>
#include <string>
#include <vector>

#include "fringelab/tree.hpp"
#include "fringelab/weight_family.hpp"

namespace fringelab {

/// Phi~(1 - pi0) - pi0.
double protected_limit(const CanonicalLaw& law);

/// p*_0 = 1, p*_1 = 1 - pi0, p*_ell = Phi~(p*_{ell-1}) - pi0.
double ell_protected_limit(const CanonicalLaw& law, std::size_t ell);

struct ProtectionProfile {
  std::string family;
  std::vector<double> values;  // p*_0 .. p*_L
  std::vector<double> levels;  // c_1 .. c_L stored at index ell - 1

  double level(std::size_t ell) const { return levels.at(ell - 1); }
};

/// Table of p*_ell and the level masses c_ell = p*_{ell-1} - p*_ell.
ProtectionProfile protection_profile(const CanonicalLaw& law, std::size_t max_level);

/// P(T = t) for the Galton-Watson tree: product of pi over the outdegrees.
double gw_tree_probability(const CanonicalLaw& law, const Tree& t);

}  // namespace fringelab
