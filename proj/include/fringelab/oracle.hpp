#pragma once

// Exact ground truth at small sizes by exhaustive enumeration: all ordered
// trees with n nodes, all n! BST insertion orders and all (n-1)! recursive
// tree attachment sequences.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fringelab/tree.hpp"
#include "fringelab/weight_family.hpp"

namespace fringelab::oracle {

inline constexpr std::size_t kMaxTreeSize = 14;
inline constexpr std::size_t kMaxBstSize = 9;
inline constexpr std::size_t kMaxRrtSize = 10;

/// Streams every ordered tree with n nodes in lexicographic order of the
/// preorder degree sequence, starting from the path. Throws SizeTooLarge.
void for_each_tree(std::size_t n, const std::function<void(const Tree&)>& visit);

std::vector<Tree> enumerate_trees(std::size_t n);

/// Lexicographic successor among valid degree sequences of the same length;
/// false when `degrees` is already the last (the star).
bool next_tree(std::vector<Tree::Degree>& degrees);

struct OracleValue {
  double value = 0.0;
  bool exact = false;
  std::string fraction;  // reduced "p/q" when exact
};

/// E[n_ell(T_n) / n] for the simply generated tree with the family's
/// weights. Exact rational arithmetic when all weights are integers.
/// Throws SizeTooLarge, DegenerateWeights.
OracleValue exact_expected_proportion(const WeightFamily& family, std::size_t n, std::size_t ell);

/// Values for ell = 0..max_level from a single enumeration pass.
std::vector<OracleValue> exact_expected_profile(const WeightFamily& family, std::size_t n, std::size_t max_level);
std::vector<OracleValue> exact_bst_profile(std::size_t n, std::size_t max_level);
std::vector<OracleValue> exact_rrt_profile(std::size_t n, std::size_t max_level);

/// Average ell-protected proportion over all n! insertion orders.
OracleValue exact_bst_expectation(std::size_t n, std::size_t ell);

/// Average ell-protected proportion over all (n-1)! attachment sequences.
OracleValue exact_rrt_expectation(std::size_t n, std::size_t ell);

struct FringeLaw {
  std::map<std::string, double> probability;
  std::map<std::string, std::string> fraction;  // filled when exact
};

/// P(T_n* = t) for the fringe subtree at a uniform node of T_n.
FringeLaw exact_fringe_law(const WeightFamily& family, std::size_t n);

/// P(T_n = t) for every tree with n nodes (the conditioned law itself).
std::map<std::string, double> exact_conditioned_law(const WeightFamily& family, std::size_t n);

}  // namespace fringelab::oracle
