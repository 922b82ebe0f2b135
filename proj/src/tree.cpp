#include "fringelab/tree.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>
#include <utility>

namespace fringelab {

bool is_valid_degree_sequence(std::span<const Tree::Degree> degrees) {
  if (degrees.empty()) return false;
  // open = number of child slots still waiting for a node.
  std::int64_t open = 1;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (open <= 0) return false;
    open += static_cast<std::int64_t>(degrees[i]) - 1;
  }
  return open == 0;
}

Tree::Tree(std::vector<Degree> degrees) : degrees_(std::move(degrees)) {
  if (!is_valid_degree_sequence(degrees_))
    throw std::invalid_argument("not a preorder outdegree sequence: " + canonical_encoding(degrees_));
}

std::vector<std::size_t> Tree::subtree_sizes() const {
  const std::size_t n = degrees_.size();
  std::vector<std::size_t> sizes(n);
  std::vector<std::size_t> stack;
  stack.reserve(64);
  // Reverse preorder: the d children of v sit on top of the stack in order.
  for (std::size_t i = n; i-- > 0;) {
    std::size_t s = 1;
    for (Degree c = 0; c < degrees_[i]; ++c) {
      s += stack.back();
      stack.pop_back();
    }
    sizes[i] = s;
    stack.push_back(s);
  }
  return sizes;
}

BinaryTree::BinaryTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  const auto n = nodes_.size();
  if (n == 0) throw std::invalid_argument("binary tree needs at least one node");
  if (n > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
    throw std::invalid_argument("binary tree too large");
  std::vector<std::uint8_t> parents(n, 0);
  for (const auto& node : nodes_) {
    for (auto c : {node.left, node.right}) {
      if (c == kNone) continue;
      if (c <= 0 || static_cast<std::size_t>(c) >= n) throw std::invalid_argument("child index out of range");
      if (++parents[static_cast<std::size_t>(c)] > 1) throw std::invalid_argument("node with two parents");
    }
  }
  for (std::size_t v = 1; v < n; ++v)
    if (parents[v] != 1) throw std::invalid_argument("non-root node without a parent");
  // With n - 1 edges and one parent per non-root node, reachability from the
  // root rules out cycles.
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::int32_t> stack{0};
  std::size_t reached = 0;
  while (!stack.empty()) {
    auto v = static_cast<std::size_t>(stack.back());
    stack.pop_back();
    if (seen[v]) throw std::invalid_argument("cycle in binary tree");
    seen[v] = 1;
    ++reached;
    for (auto c : {nodes_[v].left, nodes_[v].right})
      if (c != kNone) stack.push_back(c);
  }
  if (reached != n) throw std::invalid_argument("binary tree has unreachable nodes");
}

std::vector<std::uint32_t> protection_levels(const Tree& t) {
  const auto deg = t.degrees();
  const std::size_t n = deg.size();
  std::vector<std::uint32_t> levels(n);
  std::vector<std::uint32_t> stack;
  stack.reserve(64);
  for (std::size_t i = n; i-- > 0;) {
    std::uint32_t level = 0;
    if (deg[i] > 0) {
      std::uint32_t lowest = std::numeric_limits<std::uint32_t>::max();
      for (Tree::Degree c = 0; c < deg[i]; ++c) {
        lowest = std::min(lowest, stack.back());
        stack.pop_back();
      }
      level = lowest + 1;
    }
    levels[i] = level;
    stack.push_back(level);
  }
  return levels;
}

std::vector<std::uint32_t> protection_levels(const BinaryTree& b) {
  const std::size_t n = b.size();
  std::vector<std::uint32_t> levels(n, 0);
  // Iterative post-order: push (v, expanded); children are finished before v.
  std::vector<std::pair<std::int32_t, bool>> stack{{0, false}};
  while (!stack.empty()) {
    auto [v, expanded] = stack.back();
    stack.pop_back();
    const auto& node = b.node(static_cast<std::size_t>(v));
    if (!expanded) {
      stack.emplace_back(v, true);
      if (node.left != BinaryTree::kNone) stack.emplace_back(node.left, false);
      if (node.right != BinaryTree::kNone) stack.emplace_back(node.right, false);
      continue;
    }
    const bool has_left = node.left != BinaryTree::kNone;
    const bool has_right = node.right != BinaryTree::kNone;
    std::uint32_t level = 0;
    if (has_left && has_right)
      level = 1 + std::min(levels[static_cast<std::size_t>(node.left)], levels[static_cast<std::size_t>(node.right)]);
    else if (has_left)
      level = 1 + levels[static_cast<std::size_t>(node.left)];
    else if (has_right)
      level = 1 + levels[static_cast<std::size_t>(node.right)];
    levels[static_cast<std::size_t>(v)] = level;
  }
  return levels;
}

double ProtectionStats::proportion(std::size_t ell) const {
  if (ell >= counts.size()) throw std::out_of_range("protection level beyond tracked maximum");
  return static_cast<double>(counts[ell]) / static_cast<double>(n);
}

std::vector<double> ProtectionStats::proportions() const {
  std::vector<double> out(counts.size());
  for (std::size_t ell = 0; ell < counts.size(); ++ell) out[ell] = proportion(ell);
  return out;
}

ProtectionStats protection_stats_from_levels(std::span<const std::uint32_t> levels, std::size_t max_level) {
  if (max_level < 1) throw std::invalid_argument("max protection level must be >= 1");
  ProtectionStats stats;
  stats.n = levels.size();
  // Histogram of clipped levels, then suffix sums give "level >= ell".
  std::vector<std::uint64_t> hist(max_level + 1, 0);
  for (auto level : levels) ++hist[std::min<std::size_t>(level, max_level)];
  stats.counts.assign(max_level + 1, 0);
  std::uint64_t running = 0;
  for (std::size_t ell = max_level + 1; ell-- > 0;) {
    running += hist[ell];
    stats.counts[ell] = running;
  }
  return stats;
}

ProtectionStats protection_stats(const Tree& t, std::size_t max_level) {
  return protection_stats_from_levels(protection_levels(t), max_level);
}

ProtectionStats protection_stats(const BinaryTree& b, std::size_t max_level) {
  return protection_stats_from_levels(protection_levels(b), max_level);
}

Tree fringe_subtree(const Tree& t, std::size_t v) {
  if (v >= t.size()) throw std::out_of_range("fringe_subtree: node index out of range");
  const auto deg = t.degrees();
  std::int64_t open = 1;
  std::size_t end = v;
  while (open > 0) {
    open += static_cast<std::int64_t>(deg[end]) - 1;
    ++end;
  }
  return Tree(std::vector<Tree::Degree>(deg.begin() + static_cast<std::ptrdiff_t>(v),
                                        deg.begin() + static_cast<std::ptrdiff_t>(end)));
}

std::string canonical_encoding(std::span<const Tree::Degree> degrees) {
  std::string out;
  out.reserve(degrees.size() * 2);
  char buf[16];
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (i) out.push_back(',');
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, degrees[i]);
    out.append(buf, ptr);
  }
  return out;
}

std::string canonical_encoding(const Tree& t) { return canonical_encoding(t.degrees()); }

Tree decode_tree(std::string_view encoding) {
  std::vector<Tree::Degree> degrees;
  const char* p = encoding.data();
  const char* end = p + encoding.size();
  while (true) {
    Tree::Degree d = 0;
    auto [ptr, ec] = std::from_chars(p, end, d);
    if (ec != std::errc() || ptr == p)
      throw std::invalid_argument("bad tree encoding '" + std::string(encoding) + "'");
    degrees.push_back(d);
    if (ptr == end) break;
    if (*ptr != ',') throw std::invalid_argument("bad tree encoding '" + std::string(encoding) + "'");
    p = ptr + 1;
  }
  return Tree(std::move(degrees));
}

std::uint64_t FringeDistribution::total() const {
  std::uint64_t sum = overflow;
  for (const auto& [key, count] : counts) sum += count;
  return sum;
}

FringeDistribution fringe_distribution(const Tree& t, std::size_t size_cap) {
  if (size_cap < 1) throw std::invalid_argument("fringe size cap must be >= 1");
  FringeDistribution dist;
  const auto sizes = t.subtree_sizes();
  const auto deg = t.degrees();
  for (std::size_t v = 0; v < t.size(); ++v) {
    if (sizes[v] > size_cap) {
      ++dist.overflow;
      continue;
    }
    ++dist.counts[canonical_encoding(deg.subspan(v, sizes[v]))];
  }
  return dist;
}

Tree binary_to_tree(const BinaryTree& b) {
  std::vector<Tree::Degree> degrees;
  degrees.reserve(b.size());
  std::vector<std::int32_t> stack{0};
  while (!stack.empty()) {
    const auto& node = b.node(static_cast<std::size_t>(stack.back()));
    stack.pop_back();
    Tree::Degree d = 0;
    if (node.right != BinaryTree::kNone) {
      stack.push_back(node.right);
      ++d;
    }
    if (node.left != BinaryTree::kNone) {
      stack.push_back(node.left);
      ++d;
    }
    degrees.push_back(d);
  }
  return Tree(std::move(degrees));
}

}  // namespace fringelab
