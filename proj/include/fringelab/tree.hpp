#pragma once

// Rooted ordered trees stored as preorder outdegree sequences, binary trees
// with optional children, protection levels and fringe-subtree statistics.
//
// Every traversal here uses an explicit stack: BSTs built from sorted input
// and recursive-tree paths reach height n.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fringelab {

class Tree {
 public:
  using Degree = std::uint32_t;

  /// Validates the Lukasiewicz conditions; throws std::invalid_argument.
  explicit Tree(std::vector<Degree> degrees);

  static Tree leaf() { return Tree(std::vector<Degree>{0}); }

  std::size_t size() const { return degrees_.size(); }
  std::span<const Degree> degrees() const { return degrees_; }
  Degree degree(std::size_t v) const { return degrees_[v]; }

  /// Size of T_v for every node v, in preorder.
  std::vector<std::size_t> subtree_sizes() const;

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  std::vector<Degree> degrees_;
};

/// True when `degrees` is the preorder outdegree sequence of some tree.
bool is_valid_degree_sequence(std::span<const Tree::Degree> degrees);

class BinaryTree {
 public:
  static constexpr std::int32_t kNone = -1;

  struct Node {
    std::int32_t left = kNone;
    std::int32_t right = kNone;
  };

  /// Node 0 is the root. Throws std::invalid_argument unless every other
  /// node has exactly one parent and all nodes are reachable from the root.
  explicit BinaryTree(std::vector<Node> nodes);

  static BinaryTree leaf() { return BinaryTree(std::vector<Node>(1)); }

  std::size_t size() const { return nodes_.size(); }
  const Node& node(std::size_t v) const { return nodes_[v]; }
  std::span<const Node> nodes() const { return nodes_; }

 private:
  std::vector<Node> nodes_;
};

/// level(v) = 0 for a leaf, else 1 + min over children. Node v is
/// ell-protected iff level(v) >= ell. Indexed by preorder position.
std::vector<std::uint32_t> protection_levels(const Tree& t);
/// Same, indexed by BinaryTree node id.
std::vector<std::uint32_t> protection_levels(const BinaryTree& b);

struct ProtectionStats {
  std::size_t n = 0;
  /// counts[ell] = number of ell-protected nodes, ell = 0..L.
  std::vector<std::uint64_t> counts;

  std::size_t max_level() const { return counts.empty() ? 0 : counts.size() - 1; }
  double proportion(std::size_t ell) const;
  std::vector<double> proportions() const;
};

inline constexpr std::size_t kDefaultMaxLevel = 8;

ProtectionStats protection_stats_from_levels(std::span<const std::uint32_t> levels, std::size_t max_level);
ProtectionStats protection_stats(const Tree& t, std::size_t max_level = kDefaultMaxLevel);
ProtectionStats protection_stats(const BinaryTree& b, std::size_t max_level = kDefaultMaxLevel);

/// T_v as a contiguous preorder slice. Throws std::out_of_range.
Tree fringe_subtree(const Tree& t, std::size_t v);

/// Comma-separated preorder degrees, e.g. "2,0,0".
std::string canonical_encoding(const Tree& t);
std::string canonical_encoding(std::span<const Tree::Degree> degrees);
/// Inverse of canonical_encoding; throws std::invalid_argument.
Tree decode_tree(std::string_view encoding);

struct FringeDistribution {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t overflow = 0;  // fringe subtrees larger than the cap

  std::uint64_t total() const;
};

FringeDistribution fringe_distribution(const Tree& t, std::size_t size_cap);

/// Children listed left then right; single children are kept as the only child.
Tree binary_to_tree(const BinaryTree& b);

}  // namespace fringelab
