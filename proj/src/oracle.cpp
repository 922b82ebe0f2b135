#include "fringelab/oracle.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <stdexcept>

#include "fringelab/errors.hpp"
#include "fringelab/samplers.hpp"

namespace fringelab::oracle {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

void check_guard(std::size_t n, std::size_t limit, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + " oracle needs n >= 1");
  if (n > limit)
    throw SizeTooLarge(std::string(what) + " oracle is limited to n <= " + std::to_string(limit) + " (got " +
                       std::to_string(n) + ")");
}

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

OracleValue make_exact(const cpp_rational& q) {
  return {static_cast<double>(q), true, q.str()};
}

// Minimal first-fit completion of positions [from, n) given `open` pending
// child slots before position `from`.
void fill_smallest(std::vector<Tree::Degree>& degrees, std::size_t from, std::int64_t open) {
  const std::size_t n = degrees.size();
  for (std::size_t j = from; j < n; ++j) {
    const std::int64_t left_after = static_cast<std::int64_t>(n - j - 1);
    const std::int64_t needed = left_after == 0 ? 0 : 1;
    const std::int64_t d = std::max<std::int64_t>(0, needed - (open - 1));
    degrees[j] = static_cast<Tree::Degree>(d);
    open += d - 1;
  }
}

std::vector<OracleValue> finish_integer_profile(const std::vector<std::uint64_t>& sums, std::size_t n,
                                                const cpp_int& outcomes) {
  std::vector<OracleValue> out;
  for (auto s : sums) out.push_back(make_exact(cpp_rational(cpp_int(s), outcomes * n)));
  return out;
}

}  // namespace

bool next_tree(std::vector<Tree::Degree>& degrees) {
  const std::size_t n = degrees.size();
  if (n < 2) return false;
  std::vector<std::int64_t> open_before(n);
  std::int64_t open = 1;
  for (std::size_t i = 0; i < n; ++i) {
    open_before[i] = open;
    open += static_cast<std::int64_t>(degrees[i]) - 1;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    const std::int64_t after = open_before[i] - 1 + static_cast<std::int64_t>(degrees[i]) + 1;
    const auto remaining = static_cast<std::int64_t>(n - 1 - i);
    if (after >= 1 && after <= remaining) {
      ++degrees[i];
      fill_smallest(degrees, i + 1, after);
      return true;
    }
  }
  return false;
}

void for_each_tree(std::size_t n, const std::function<void(const Tree&)>& visit) {
  check_guard(n, kMaxTreeSize, "tree enumeration");
  std::vector<Tree::Degree> degrees(n, 0);
  fill_smallest(degrees, 0, 1);
  do {
    visit(Tree(degrees));
  } while (next_tree(degrees));
}

std::vector<Tree> enumerate_trees(std::size_t n) {
  std::vector<Tree> trees;
  for_each_tree(n, [&](const Tree& t) { trees.push_back(t); });
  return trees;
}

std::vector<OracleValue> exact_expected_profile(const WeightFamily& family, std::size_t n, std::size_t max_level) {
  check_guard(n, kMaxTreeSize, "simply generated tree");
  if (family.has_integer_weights()) {
    std::vector<std::uint64_t> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = *family.integer_weight(k);
    cpp_int total = 0;
    std::vector<cpp_int> sums(max_level + 1, 0);
    for_each_tree(n, [&](const Tree& t) {
      cpp_int weight = 1;
      for (auto d : t.degrees()) {
        weight *= w[d];
        if (weight == 0) return;
      }
      total += weight;
      const auto stats = protection_stats(t, std::max<std::size_t>(max_level, 1));
      for (std::size_t ell = 0; ell <= max_level; ++ell) sums[ell] += weight * stats.counts[ell];
    });
    if (total == 0) throw DegenerateWeights("no tree with n=" + std::to_string(n) + " has positive weight");
    std::vector<OracleValue> out;
    for (const auto& s : sums) out.push_back(make_exact(cpp_rational(s, total * n)));
    return out;
  }

  CompensatedSum total;
  std::vector<CompensatedSum> sums(max_level + 1);
  for_each_tree(n, [&](const Tree& t) {
    double weight = 1.0;
    for (auto d : t.degrees()) weight *= family.weight(d);
    if (weight == 0.0) return;
    total.add(weight);
    const auto stats = protection_stats(t, std::max<std::size_t>(max_level, 1));
    for (std::size_t ell = 0; ell <= max_level; ++ell) sums[ell].add(weight * static_cast<double>(stats.counts[ell]));
  });
  if (!(total.value() > 0.0)) throw DegenerateWeights("no tree with n=" + std::to_string(n) + " has positive weight");
  std::vector<OracleValue> out;
  for (const auto& s : sums) out.push_back({s.value() / (total.value() * static_cast<double>(n)), false, {}});
  return out;
}

OracleValue exact_expected_proportion(const WeightFamily& family, std::size_t n, std::size_t ell) {
  return exact_expected_profile(family, n, ell).back();
}

std::vector<OracleValue> exact_bst_profile(std::size_t n, std::size_t max_level) {
  check_guard(n, kMaxBstSize, "BST");
  std::vector<std::uint32_t> keys(n);
  std::iota(keys.begin(), keys.end(), 0u);
  std::vector<std::uint64_t> sums(max_level + 1, 0);
  cpp_int outcomes = 0;
  do {
    const auto stats = protection_stats(bst_from_keys(keys), std::max<std::size_t>(max_level, 1));
    for (std::size_t ell = 0; ell <= max_level; ++ell) sums[ell] += stats.counts[ell];
    ++outcomes;
  } while (std::next_permutation(keys.begin(), keys.end()));
  return finish_integer_profile(sums, n, outcomes);
}

OracleValue exact_bst_expectation(std::size_t n, std::size_t ell) { return exact_bst_profile(n, ell).back(); }

std::vector<OracleValue> exact_rrt_profile(std::size_t n, std::size_t max_level) {
  check_guard(n, kMaxRrtSize, "recursive tree");
  // parents[i] is the parent of node i + 1, ranging over 0..i (mixed radix).
  std::vector<std::uint32_t> parents(n - 1, 0);
  std::vector<std::uint64_t> sums(max_level + 1, 0);
  cpp_int outcomes = 0;
  while (true) {
    const auto stats = protection_stats(rrt_from_parents(parents), std::max<std::size_t>(max_level, 1));
    for (std::size_t ell = 0; ell <= max_level; ++ell) sums[ell] += stats.counts[ell];
    ++outcomes;
    std::size_t i = 0;
    while (i < parents.size() && parents[i] == i) parents[i++] = 0;
    if (i == parents.size()) break;
    ++parents[i];
  }
  return finish_integer_profile(sums, n, outcomes);
}

OracleValue exact_rrt_expectation(std::size_t n, std::size_t ell) { return exact_rrt_profile(n, ell).back(); }

FringeLaw exact_fringe_law(const WeightFamily& family, std::size_t n) {
  check_guard(n, kMaxTreeSize, "fringe law");
  FringeLaw law;
  if (family.has_integer_weights()) {
    cpp_int total = 0;
    std::map<std::string, cpp_int> mass;
    for_each_tree(n, [&](const Tree& t) {
      cpp_int weight = 1;
      for (auto d : t.degrees()) weight *= *family.integer_weight(d);
      if (weight == 0) return;
      total += weight;
      for (const auto& [key, count] : fringe_distribution(t, n).counts) mass[key] += weight * count;
    });
    if (total == 0) throw DegenerateWeights("no tree with n=" + std::to_string(n) + " has positive weight");
    for (const auto& [key, m] : mass) {
      const cpp_rational q(m, total * n);
      law.probability[key] = static_cast<double>(q);
      law.fraction[key] = q.str();
    }
    return law;
  }
  CompensatedSum total;
  std::map<std::string, CompensatedSum> mass;
  for_each_tree(n, [&](const Tree& t) {
    double weight = 1.0;
    for (auto d : t.degrees()) weight *= family.weight(d);
    if (weight == 0.0) return;
    total.add(weight);
    for (const auto& [key, count] : fringe_distribution(t, n).counts) mass[key].add(weight * static_cast<double>(count));
  });
  if (!(total.value() > 0.0)) throw DegenerateWeights("no tree with n=" + std::to_string(n) + " has positive weight");
  for (const auto& [key, m] : mass) law.probability[key] = m.value() / (total.value() * static_cast<double>(n));
  return law;
}

std::map<std::string, double> exact_conditioned_law(const WeightFamily& family, std::size_t n) {
  check_guard(n, kMaxTreeSize, "conditioned law");
  std::map<std::string, double> law;
  CompensatedSum total;
  for_each_tree(n, [&](const Tree& t) {
    double weight = 1.0;
    for (auto d : t.degrees()) weight *= family.weight(d);
    if (weight == 0.0) return;
    total.add(weight);
    law[canonical_encoding(t)] = weight;
  });
  if (!(total.value() > 0.0)) throw DegenerateWeights("no tree with n=" + std::to_string(n) + " has positive weight");
  for (auto& [key, w] : law) w /= total.value();
  return law;
}

}  // namespace fringelab::oracle
