#include <doctest.h>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "fringelab/samplers.hpp"
#include "fringelab/tree.hpp"

using namespace fringelab;

namespace {

// Reference levels by brute force: level(v) is the distance to the nearest
// leaf of T_v, found by scanning every descendant.
std::vector<std::uint32_t> brute_levels(const Tree& t) {
  const auto sizes = t.subtree_sizes();
  std::vector<std::uint32_t> depth(t.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < t.size(); ++v) {
    while (!stack.empty() && stack.back() + sizes[stack.back()] <= v) stack.pop_back();
    depth[v] = static_cast<std::uint32_t>(stack.size());
    stack.push_back(v);
  }
  std::vector<std::uint32_t> out(t.size());
  for (std::size_t v = 0; v < t.size(); ++v) {
    std::uint32_t best = UINT32_MAX;
    for (std::size_t u = v; u < v + sizes[v]; ++u)
      if (t.degree(u) == 0) best = std::min(best, depth[u] - depth[v]);
    out[v] = best;
  }
  return out;
}

Tree path(std::size_t n) {
  std::vector<Tree::Degree> d(n, 1);
  d.back() = 0;
  return Tree(d);
}

}  // namespace

TEST_CASE("degree sequence validation") {
  CHECK(is_valid_degree_sequence(std::vector<Tree::Degree>{0}));
  CHECK(is_valid_degree_sequence(std::vector<Tree::Degree>{2, 0, 1, 0}));
  CHECK_FALSE(is_valid_degree_sequence(std::vector<Tree::Degree>{}));
  CHECK_FALSE(is_valid_degree_sequence(std::vector<Tree::Degree>{0, 0}));
  CHECK_FALSE(is_valid_degree_sequence(std::vector<Tree::Degree>{1}));
  CHECK_FALSE(is_valid_degree_sequence(std::vector<Tree::Degree>{0, 1, 0}));
  CHECK_THROWS_AS(Tree({2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Tree(std::vector<Tree::Degree>{}), std::invalid_argument);
}

TEST_CASE("protection level examples") {
  CHECK(protection_levels(Tree::leaf()) == std::vector<std::uint32_t>{0});
  CHECK(protection_levels(path(3)) == std::vector<std::uint32_t>{2, 1, 0});
  CHECK(protection_levels(Tree({2, 0, 1, 0})) == std::vector<std::uint32_t>{1, 0, 1, 0});
  CHECK(protection_levels(Tree({2, 1, 0, 1, 0})) == std::vector<std::uint32_t>{2, 1, 0, 1, 0});
}

TEST_CASE("protection stats examples") {
  const Tree complete({2, 2, 0, 0, 2, 0, 0});
  const auto s = protection_stats(complete, 2);
  CHECK(s.n == 7);
  CHECK(s.counts == std::vector<std::uint64_t>{7, 3, 1});
  CHECK(s.proportion(1) == doctest::Approx(3.0 / 7.0));

  const Tree spider({3, 1, 0, 1, 0, 1, 0});
  CHECK(protection_stats(spider, 2).counts == std::vector<std::uint64_t>{7, 4, 1});
  CHECK(protection_stats(Tree::leaf(), 3).counts == std::vector<std::uint64_t>{1, 0, 0, 0});
  CHECK_THROWS_AS(protection_stats(spider, 0), std::invalid_argument);
  CHECK_THROWS_AS(s.proportion(3), std::out_of_range);
}

TEST_CASE("levels agree with brute force on every small tree") {
  // Walk all degree sequences of length <= 8 and keep the valid ones.
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    std::vector<Tree::Degree> d(n, 0);
    while (true) {
      if (is_valid_degree_sequence(d)) {
        const Tree t(d);
        CHECK(protection_levels(t) == brute_levels(t));
        const auto s = protection_stats(t, 4);
        for (std::size_t ell = 0; ell < 4; ++ell) CHECK(s.counts[ell + 1] <= s.counts[ell]);
        ++checked;
      }
      std::size_t i = n;
      while (i > 0 && d[i - 1] == n - 1) d[--i] = 0;
      if (i == 0) break;
      ++d[i - 1];
    }
  }
  // Sum of Catalan numbers C_0..C_7.
  CHECK(checked == 1 + 1 + 2 + 5 + 14 + 42 + 132 + 429);
}

TEST_CASE("fringe subtrees") {
  const Tree t({2, 0, 1, 0});
  CHECK(fringe_subtree(t, 0) == t);
  CHECK(fringe_subtree(t, 1) == Tree::leaf());
  CHECK(fringe_subtree(t, 2) == Tree({1, 0}));
  CHECK(fringe_subtree(t, 3) == Tree::leaf());
  CHECK_THROWS_AS(fringe_subtree(t, 4), std::out_of_range);
  CHECK(t.subtree_sizes() == std::vector<std::size_t>{4, 1, 2, 1});
}

TEST_CASE("fringe distribution") {
  const Tree t({2, 2, 0, 0, 2, 0, 0});
  const auto d = fringe_distribution(t, 7);
  CHECK(d.counts.at("0") == 4);
  CHECK(d.counts.at("2,0,0") == 2);
  CHECK(d.counts.at("2,2,0,0,2,0,0") == 1);
  CHECK(d.overflow == 0);
  CHECK(d.total() == 7);

  const auto capped = fringe_distribution(t, 3);
  CHECK(capped.overflow == 1);
  CHECK(capped.total() == 7);
  CHECK(capped.counts.count("2,2,0,0,2,0,0") == 0);
}

TEST_CASE("fringe distribution counts one subtree per node") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Tree t = sample_rrt(200, Seed{7, s});
    const auto d = fringe_distribution(t, 6);
    CHECK(d.total() == t.size());
    const auto zeros = static_cast<std::uint64_t>(std::count(t.degrees().begin(), t.degrees().end(), 0u));
    CHECK(d.counts.at("0") == zeros);
    // Each counted class is the fringe subtree of exactly that many nodes.
    std::map<std::string, std::uint64_t> direct;
    for (std::size_t v = 0; v < t.size(); ++v) {
      const Tree f = fringe_subtree(t, v);
      if (f.size() <= 6) ++direct[canonical_encoding(f)];
    }
    CHECK(direct == d.counts);
  }
}

TEST_CASE("canonical encoding round trip") {
  const Tree t({3, 0, 1, 0, 0});
  CHECK(canonical_encoding(t) == "3,0,1,0,0");
  CHECK(decode_tree("3,0,1,0,0") == t);
  CHECK(decode_tree("0") == Tree::leaf());
  for (const char* bad : {"", "1", "0,0", "2,0", "a", "1,,0", "1,0,", "-1,0"})
    CHECK_THROWS_AS(decode_tree(bad), std::invalid_argument);
}

TEST_CASE("binary trees") {
  // Root with a left child that has a right child.
  const BinaryTree b({{1, BinaryTree::kNone}, {BinaryTree::kNone, 2}, {}});
  CHECK(protection_levels(b) == std::vector<std::uint32_t>{2, 1, 0});
  CHECK(binary_to_tree(b) == path(3));

  const BinaryTree full({{1, 2}, {}, {}});
  CHECK(binary_to_tree(full) == Tree({2, 0, 0}));
  CHECK(protection_stats(full, 2).counts == std::vector<std::uint64_t>{3, 1, 0});

  CHECK_THROWS_AS(BinaryTree({{1, 1}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(BinaryTree({{}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(BinaryTree({{1, BinaryTree::kNone}, {0, BinaryTree::kNone}}), std::invalid_argument);
  CHECK_THROWS_AS(BinaryTree({{5, BinaryTree::kNone}}), std::invalid_argument);
  CHECK_THROWS_AS(BinaryTree(std::vector<BinaryTree::Node>{}), std::invalid_argument);
}

TEST_CASE("sorted insertion builds a right chain") {
  std::vector<std::uint32_t> keys(2000);
  for (std::size_t i = 0; i < keys.size(); ++i) keys[i] = static_cast<std::uint32_t>(i);
  const BinaryTree chain = bst_from_keys(keys);
  CHECK(protection_levels(chain).front() == keys.size() - 1);
  CHECK(binary_to_tree(chain) == path(keys.size()));
}

TEST_CASE("binary_to_tree preserves protection statistics") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const BinaryTree b = sample_bst(300, Seed{3, s});
    CHECK(protection_stats(b, 6).counts == protection_stats(binary_to_tree(b), 6).counts);
  }
}

TEST_CASE("deep trees do not recurse") {
  const std::size_t n = 1'000'000;
  const Tree p = path(n);
  const auto levels = protection_levels(p);
  CHECK(levels.front() == n - 1);
  CHECK(levels.back() == 0);
  CHECK(p.subtree_sizes().front() == n);
  CHECK(fringe_distribution(p, 5).overflow == n - 5);

  std::vector<BinaryTree::Node> nodes(n);
  for (std::size_t i = 0; i + 1 < n; ++i) nodes[i].right = static_cast<std::int32_t>(i + 1);
  const BinaryTree chain(std::move(nodes));
  CHECK(protection_levels(chain).front() == n - 1);
  CHECK(binary_to_tree(chain) == p);

  std::vector<std::uint32_t> parents(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) parents[i] = static_cast<std::uint32_t>(i);
  CHECK(rrt_from_parents(parents) == p);
}
