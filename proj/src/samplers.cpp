#include "fringelab/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "fringelab/errors.hpp"

namespace fringelab {

AliasTable::AliasTable(const std::vector<double>& weights) {
  const std::size_t k = weights.size();
  if (k == 0) throw std::invalid_argument("alias table needs at least one weight");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw std::invalid_argument("alias table weights must have positive sum");

  prob_.assign(k, 0.0);
  alias_.assign(k, 0);
  std::vector<double> scaled(k);
  std::vector<std::uint32_t> small, large;
  for (std::size_t i = 0; i < k; ++i) {
    scaled[i] = weights[i] * static_cast<double>(k) / total;
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    auto s = small.back();
    small.pop_back();
    auto l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (auto i : large) prob_[i] = 1.0;
  for (auto i : small) prob_[i] = 1.0;
}

std::size_t AliasTable::sample(Pcg64& rng) const {
  const auto column = static_cast<std::size_t>(rng.below(prob_.size()));
  return rng.uniform() < prob_[column] ? column : alias_[column];
}

OffspringSampler::OffspringSampler(const CanonicalLaw& law) : impl_(Geometric{}) {
  switch (law.family().kind()) {
    case FamilyKind::Ordered: impl_ = Geometric{}; break;
    case FamilyKind::Cayley: impl_ = Poisson{law.pi0()}; break;
    default: impl_ = AliasTable(law.pmf_table()); break;
  }
}

std::size_t OffspringSampler::operator()(Pcg64& rng) const {
  if (std::holds_alternative<Geometric>(impl_)) {
    // P(K >= k) = 2^-k; 1 - u lies in (0, 1].
    const double u = 1.0 - rng.uniform();
    return static_cast<std::size_t>(std::floor(-std::log2(u)));
  }
  if (const auto* poisson = std::get_if<Poisson>(&impl_)) {
    const double u = rng.uniform();
    std::size_t k = 0;
    double p = poisson->p0;
    double cdf = p;
    while (u >= cdf && k < 200) {
      ++k;
      p /= static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  return std::get<AliasTable>(impl_).sample(rng);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::uint64_t> positive_support(const CanonicalLaw& law) {
  std::vector<std::uint64_t> support;
  const auto& table = law.pmf_table();
  for (std::size_t k = 1; k < table.size(); ++k)
    if (table[k] > 0.0) support.push_back(k);
  return support;
}

}  // namespace

bool is_feasible_size(const CanonicalLaw& law, std::uint64_t n) {
  if (n == 0) return false;
  const std::uint64_t target = n - 1;
  const auto support = positive_support(law);
  if (support.front() == 1) return true;
  const std::uint64_t g = law.span();
  if (target % g != 0) return false;
  const std::uint64_t m = target / g;
  std::uint64_t largest = support.back() / g;
  // Beyond largest^2 every multiple of the gcd is representable.
  if (m >= largest * largest) return true;
  std::vector<std::uint8_t> reachable(m + 1, 0);
  reachable[0] = 1;
  for (std::uint64_t s = 1; s <= m; ++s)
    for (auto k : support)
      if (k / g <= s && reachable[s - k / g]) {
        reachable[s] = 1;
        break;
      }
  return reachable[m] != 0;
}

std::string feasibility_rule(const CanonicalLaw& law) {
  const auto support = positive_support(law);
  const std::uint64_t g = law.span();
  if (support.front() == 1) return "any n >= 1";
  std::string degrees;
  for (std::size_t i = 0; i < support.size(); ++i) degrees += (i ? "," : "") + std::to_string(support[i]);
  std::string rule = "n - 1 must be a sum of outdegrees from {" + degrees + "}";
  if (g > 1) rule = "n must be 1 (mod " + std::to_string(g) + "); " + rule;
  return rule;
}

std::vector<Tree::Degree> cycle_lemma_rotate(std::vector<Tree::Degree> degrees) {
  const std::size_t n = degrees.size();
  std::int64_t sum = 0;
  std::int64_t lowest = 1;
  std::size_t first_min = 0;
  for (std::size_t j = 0; j < n; ++j) {
    sum += static_cast<std::int64_t>(degrees[j]) - 1;
    if (sum < lowest) {
      lowest = sum;
      first_min = j + 1;
    }
  }
  if (sum != -1) throw std::invalid_argument("cycle lemma needs outdegrees summing to n - 1");
  std::rotate(degrees.begin(), degrees.begin() + static_cast<std::ptrdiff_t>(first_min % n), degrees.end());
  return degrees;
}

Tree sample_conditioned_gw(const CanonicalLaw& law, std::uint64_t n, Seed seed, std::uint64_t max_attempts) {
  if (!is_feasible_size(law, n))
    throw InfeasibleSize("no tree with n=" + std::to_string(n) + " nodes for family " + law.family().spec() + ": " +
                         feasibility_rule(law));
  if (n == 1) return Tree::leaf();

  const auto& pmf = law.pmf_table();
  const std::size_t kmax = pmf.size() - 1;
  // cond[k] = P(K = k | K >= k), from tails summed upward for accuracy.
  std::vector<double> cond(pmf.size(), 1.0);
  double tail = 0.0;
  for (std::size_t k = kmax + 1; k-- > 0;) {
    tail += pmf[k];
    cond[k] = tail > 0.0 ? std::min(1.0, pmf[k] / tail) : 0.0;
  }

  Pcg64 rng(seed);
  const std::uint64_t target = n - 1;
  std::vector<std::uint64_t> counts(pmf.size(), 0);
  for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::fill(counts.begin(), counts.end(), 0);
    std::uint64_t remaining = n;
    std::uint64_t sum = 0;
    bool overshoot = false;
    for (std::size_t k = 0; k <= kmax && remaining > 0; ++k) {
      std::uint64_t m = remaining;
      if (k < kmax && cond[k] < 1.0) {
        if (cond[k] <= 0.0) continue;
        std::binomial_distribution<std::uint64_t> binom(remaining, cond[k]);
        m = binom(rng);
      }
      counts[k] = m;
      remaining -= m;
      sum += k * m;
      if (sum > target) {
        overshoot = true;
        break;
      }
    }
    if (overshoot || sum != target) continue;

    std::vector<Tree::Degree> degrees;
    degrees.reserve(n);
    for (std::size_t k = 0; k <= kmax; ++k) degrees.insert(degrees.end(), counts[k], static_cast<Tree::Degree>(k));
    for (std::size_t i = degrees.size() - 1; i > 0; --i) std::swap(degrees[i], degrees[rng.below(i + 1)]);
    return Tree(cycle_lemma_rotate(std::move(degrees)));
  }
  throw RejectionBudgetExceeded("conditioned sampler for n=" + std::to_string(n) + " gave up after " +
                                std::to_string(max_attempts) + " attempts");
}

BinaryTree bst_from_keys(const std::vector<std::uint32_t>& keys) {
  if (keys.empty()) throw std::invalid_argument("BST needs at least one key");
  std::vector<BinaryTree::Node> nodes(keys.size());
  for (std::size_t i = 1; i < keys.size(); ++i) {
    std::size_t v = 0;
    while (true) {
      if (keys[i] == keys[v]) throw std::invalid_argument("BST keys must be distinct");
      auto& slot = keys[i] < keys[v] ? nodes[v].left : nodes[v].right;
      if (slot == BinaryTree::kNone) {
        slot = static_cast<std::int32_t>(i);
        break;
      }
      v = static_cast<std::size_t>(slot);
    }
  }
  return BinaryTree(std::move(nodes));
}

BinaryTree sample_bst(std::uint64_t n, Seed seed) {
  if (n < 1) throw std::invalid_argument("BST size must be >= 1");
  Pcg64 rng(seed);
  std::vector<std::uint32_t> keys(n);
  std::iota(keys.begin(), keys.end(), 0u);
  for (std::size_t i = keys.size() - 1; i > 0; --i) std::swap(keys[i], keys[rng.below(i + 1)]);
  return bst_from_keys(keys);
}

Tree rrt_from_parents(const std::vector<std::uint32_t>& parents) {
  const std::size_t n = parents.size() + 1;
  std::vector<std::uint32_t> offset(n + 1, 0);
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (parents[i] > i) throw std::invalid_argument("recursive tree parent must precede its child");
    ++offset[parents[i] + 1];
  }
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  std::vector<std::uint32_t> children(parents.size());
  std::vector<std::uint32_t> fill(offset.begin(), offset.end() - 1);
  for (std::size_t i = 0; i < parents.size(); ++i) children[fill[parents[i]]++] = static_cast<std::uint32_t>(i + 1);

  std::vector<Tree::Degree> degrees;
  degrees.reserve(n);
  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    degrees.push_back(offset[v + 1] - offset[v]);
    for (auto c = offset[v + 1]; c-- > offset[v];) stack.push_back(children[c]);
  }
  return Tree(std::move(degrees));
}

Tree sample_rrt(std::uint64_t n, Seed seed) {
  if (n < 1) throw std::invalid_argument("recursive tree size must be >= 1");
  Pcg64 rng(seed);
  std::vector<std::uint32_t> parents(n - 1);
  for (std::uint64_t i = 1; i < n; ++i) parents[i - 1] = static_cast<std::uint32_t>(rng.below(i));
  return rrt_from_parents(parents);
}

std::optional<Tree> sample_gw(const CanonicalLaw& law, Seed seed, std::uint64_t node_cap) {
  if (node_cap < 1) throw std::invalid_argument("node cap must be >= 1");
  Pcg64 rng(seed);
  const OffspringSampler draw(law);
  std::vector<Tree::Degree> degrees;
  std::uint64_t open = 1;
  // Preorder generation: each open slot becomes a node with i.i.d. degree.
  while (open > 0) {
    const auto d = draw(rng);
    degrees.push_back(static_cast<Tree::Degree>(d));
    open = open - 1 + d;
    if (degrees.size() + open > node_cap) return std::nullopt;
  }
  return Tree(std::move(degrees));
}

}  // namespace fringelab
