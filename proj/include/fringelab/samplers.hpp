#pragma once

// Random tree generators: conditioned and unconditioned Galton-Watson trees,
// random binary search trees and uniform random recursive trees.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fringelab/random.hpp"
#include "fringelab/tree.hpp"
#include "fringelab/weight_family.hpp"

namespace fringelab {

/// Vose alias table over {0, ..., K}.
class AliasTable {
 public:
  explicit AliasTable(const std::vector<double>& weights);

  std::size_t sample(Pcg64& rng) const;
  std::size_t size() const { return prob_.size(); }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

/// One draw from the offspring law: geometric and Poisson laws by inversion,
/// finite supports through an alias table.
class OffspringSampler {
 public:
  explicit OffspringSampler(const CanonicalLaw& law);

  std::size_t operator()(Pcg64& rng) const;

 private:
  struct Geometric {};
  struct Poisson {
    double p0;
  };
  std::variant<Geometric, Poisson, AliasTable> impl_;
};

/// True when a tree with n nodes has positive probability under the law:
/// n - 1 must be a non-negative combination of the degrees k >= 1 in the
/// support.
bool is_feasible_size(const CanonicalLaw& law, std::uint64_t n);

/// Human-readable statement of the size rule, e.g. "n must be 1 (mod 3)".
std::string feasibility_rule(const CanonicalLaw& law);

inline constexpr std::uint64_t kDefaultRejectionBudget = 1'000'000;

/// Exact draw from the Galton-Watson tree conditioned on n nodes.
///
/// The n outdegrees are i.i.d. from pi conditioned on summing to n - 1. The
/// degree histogram is drawn as a multinomial via sequential binomials and
/// rejected until the sum matches; the accepted multiset is shuffled and the
/// cycle lemma picks the unique rotation that is a valid preorder sequence.
/// Throws InfeasibleSize or RejectionBudgetExceeded.
Tree sample_conditioned_gw(const CanonicalLaw& law, std::uint64_t n, Seed seed,
                           std::uint64_t max_attempts = kDefaultRejectionBudget);

/// Rotates a degree sequence with sum n - 1 into the unique valid rotation.
std::vector<Tree::Degree> cycle_lemma_rotate(std::vector<Tree::Degree> degrees);

/// BST from inserting a uniform random permutation of 1..n.
BinaryTree sample_bst(std::uint64_t n, Seed seed);

/// BST obtained by inserting `keys` in order (keys must be distinct).
BinaryTree bst_from_keys(const std::vector<std::uint32_t>& keys);

/// Node i picks its parent uniformly among 1..i-1; children kept in
/// arrival order.
Tree sample_rrt(std::uint64_t n, Seed seed);

/// Recursive tree from an explicit parent list: parents[i] is the parent of
/// node i + 1 (0-based ids, parents[i] <= i).
Tree rrt_from_parents(const std::vector<std::uint32_t>& parents);

/// Unconditioned Galton-Watson tree; nullopt when it would exceed node_cap.
std::optional<Tree> sample_gw(const CanonicalLaw& law, Seed seed, std::uint64_t node_cap);

}  // namespace fringelab
