#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "fringelab/errors.hpp"
#include "fringelab/oracle.hpp"
#include "fringelab/samplers.hpp"

using namespace fringelab;

namespace {

const std::uint64_t kCatalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012, 742900};

}  // namespace

TEST_CASE("enumeration counts are Catalan numbers") {
  for (std::size_t n = 1; n <= 12; ++n) {
    CAPTURE(n);
    std::uint64_t count = 0;
    std::set<std::string> seen;
    std::string previous;
    oracle::for_each_tree(n, [&](const Tree& t) {
      ++count;
      CHECK(t.size() == n);
      if (n <= 9) {
        const auto code = canonical_encoding(t);
        seen.insert(code);
      }
    });
    CHECK(count == kCatalan[n - 1]);
    if (n <= 9) CHECK(seen.size() == count);
  }
  CHECK(oracle::enumerate_trees(14).size() == kCatalan[13]);
}

TEST_CASE("lexicographic successor") {
  std::vector<Tree::Degree> d{1, 1, 0};
  CHECK(oracle::next_tree(d));
  CHECK(d == std::vector<Tree::Degree>{2, 0, 0});
  CHECK_FALSE(oracle::next_tree(d));
  const auto all = oracle::enumerate_trees(4);
  CHECK(canonical_encoding(all.front()) == "1,1,1,0");
  CHECK(canonical_encoding(all.back()) == "3,0,0,0");
  for (std::size_t i = 1; i < all.size(); ++i)
    CHECK(std::lexicographical_compare(all[i - 1].degrees().begin(), all[i - 1].degrees().end(),
                                       all[i].degrees().begin(), all[i].degrees().end()));
}

TEST_CASE("hand-computed expectations") {
  const auto ordered = WeightFamily::ordered();
  auto v = oracle::exact_expected_proportion(ordered, 3, 2);
  CHECK(v.exact);
  CHECK(v.fraction == "1/6");
  CHECK(v.value == doctest::Approx(1.0 / 6.0));

  v = oracle::exact_bst_expectation(3, 2);
  CHECK(v.exact);
  CHECK(v.fraction == "2/9");

  CHECK(oracle::exact_rrt_expectation(2, 1).fraction == "1/2");
  CHECK(oracle::exact_rrt_expectation(3, 2).fraction == "1/6");

  CHECK(oracle::exact_expected_proportion(ordered, 1, 0).fraction == "1");
  CHECK(oracle::exact_expected_proportion(ordered, 1, 1).fraction == "0");
  CHECK(oracle::exact_bst_expectation(1, 1).fraction == "0");
  CHECK(oracle::exact_rrt_expectation(1, 1).fraction == "0");
  CHECK(oracle::exact_rrt_expectation(1, 0).fraction == "1");
}

TEST_CASE("oracle values at the size guard approach the limits") {
  const auto ordered12 = oracle::exact_expected_proportion(WeightFamily::ordered(), 12, 2);
  CHECK(ordered12.fraction == "57563/352716");
  CHECK(std::abs(ordered12.value - 1.0 / 6.0) < 0.02);

  const auto rrt9 = oracle::exact_rrt_expectation(9, 2);
  CHECK(rrt9.fraction == "5993/45360");
  CHECK(std::abs(rrt9.value - (0.5 - std::exp(-1.0))) < 0.05);

  // The BST mean count of 2-protected nodes is (11n - 19)/30 for n >= 4, so
  // the proportion sits 19/(30n) below 11/30: about 0.079 at n = 8.
  for (std::size_t n = 4; n <= 9; ++n) {
    CAPTURE(n);
    const auto v = oracle::exact_bst_expectation(n, 2);
    CHECK(v.value == doctest::Approx((11.0 * n - 19.0) / (30.0 * n)).epsilon(1e-14));
  }
  CHECK(oracle::exact_bst_expectation(8, 2).fraction == "23/80");
  CHECK(std::abs(oracle::exact_bst_expectation(8, 2).value - 11.0 / 30.0) == doctest::Approx(19.0 / 240.0));
}

TEST_CASE("profiles agree with single-level queries") {
  const auto profile = oracle::exact_expected_profile(WeightFamily::motzkin(), 7, 4);
  REQUIRE(profile.size() == 5);
  for (std::size_t ell = 0; ell <= 4; ++ell) {
    const auto single = oracle::exact_expected_proportion(WeightFamily::motzkin(), 7, ell);
    CHECK(profile[ell].fraction == single.fraction);
  }
  const auto bst = oracle::exact_bst_profile(6, 3);
  const auto rrt = oracle::exact_rrt_profile(6, 3);
  for (std::size_t ell = 0; ell <= 3; ++ell) {
    CHECK(bst[ell].fraction == oracle::exact_bst_expectation(6, ell).fraction);
    CHECK(rrt[ell].fraction == oracle::exact_rrt_expectation(6, ell).fraction);
  }
  CHECK(bst[0].fraction == "1");
}

TEST_CASE("uniform ordered trees: expectation is the plain average") {
  for (std::size_t n = 2; n <= 9; ++n) {
    double sum = 0.0;
    std::size_t count = 0;
    oracle::for_each_tree(n, [&](const Tree& t) {
      sum += protection_stats(t, 2).proportion(2);
      ++count;
    });
    CHECK(oracle::exact_expected_proportion(WeightFamily::ordered(), n, 2).value == doctest::Approx(sum / count).epsilon(1e-13));
  }
}

TEST_CASE("non-integer weights fall back to floating point") {
  const auto v = oracle::exact_expected_proportion(WeightFamily::cayley(), 6, 2);
  CHECK_FALSE(v.exact);
  CHECK(v.fraction.empty());
  CHECK(v.value > 0.0);
  CHECK(v.value < 1.0);
  // Cayley trees are uniform labelled trees; weights 1/k! vs a rescaled copy.
  const auto scaled = oracle::exact_expected_proportion(WeightFamily::finite({2, 2, 1}), 6, 2);
  const auto motzkin_like = oracle::exact_expected_proportion(WeightFamily::finite({1, 1, 0.5}), 6, 2);
  CHECK(scaled.value == doctest::Approx(motzkin_like.value).epsilon(1e-13));
}

TEST_CASE("conditioned law sums to one") {
  for (const auto& f : {WeightFamily::ordered(), WeightFamily::cayley(), WeightFamily::full_dary(3)}) {
    const CanonicalLaw law(f);
    for (std::size_t n = 1; n <= 10; ++n) {
      CAPTURE(f.spec());
      CAPTURE(n);
      if (!is_feasible_size(law, n)) {
        CHECK_THROWS_AS(oracle::exact_conditioned_law(f, n), DegenerateWeights);
        continue;
      }
      double total = 0.0;
      for (const auto& [code, p] : oracle::exact_conditioned_law(f, n)) total += p;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("fringe law of ordered trees with 3 nodes") {
  const auto law = oracle::exact_fringe_law(WeightFamily::ordered(), 3);
  CHECK(law.fraction.at("0") == "1/2");
  CHECK(law.fraction.at("1,0") == "1/6");
  CHECK(law.fraction.at("1,1,0") == "1/6");
  CHECK(law.fraction.at("2,0,0") == "1/6");
  CHECK(law.probability.size() == 4);
}

TEST_CASE("size guards") {
  CHECK_THROWS_AS(oracle::enumerate_trees(oracle::kMaxTreeSize + 1), SizeTooLarge);
  CHECK_THROWS_AS(oracle::exact_bst_expectation(oracle::kMaxBstSize + 1, 1), SizeTooLarge);
  CHECK_THROWS_AS(oracle::exact_rrt_expectation(oracle::kMaxRrtSize + 1, 1), SizeTooLarge);
  CHECK_THROWS_AS(oracle::exact_expected_proportion(WeightFamily::ordered(), 0, 1), std::invalid_argument);
}
