#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <functional>
#include <vector>

#include "fringelab/gw_analytic.hpp"
#include "fringelab/oracle.hpp"

using namespace fringelab;
using boost::multiprecision::cpp_rational;

namespace {

// Exact p*_ell iterated in rationals: the test-side oracle for families whose
// tilted generating function has rational coefficients.
std::vector<cpp_rational> rational_profile(const std::function<cpp_rational(const cpp_rational&)>& phi_tilde,
                                           const cpp_rational& pi0, std::size_t max_level) {
  std::vector<cpp_rational> p{cpp_rational(1)};
  for (std::size_t ell = 1; ell <= max_level; ++ell) p.push_back(phi_tilde(p.back()) - pi0);
  return p;
}

cpp_rational pow_r(const cpp_rational& x, int k) {
  cpp_rational r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

std::vector<WeightFamily> builtins() {
  return {WeightFamily::ordered(),    WeightFamily::cayley(),     WeightFamily::motzkin(),
          WeightFamily::full_dary(2), WeightFamily::full_dary(3), WeightFamily::full_dary(4),
          WeightFamily::dary(2),      WeightFamily::dary(3),      WeightFamily::dary(4)};
}

}  // namespace

TEST_CASE("protected_limit worked examples") {
  CHECK(protected_limit(CanonicalLaw(WeightFamily::ordered())) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  const double cayley = std::exp(-std::exp(-1.0)) - std::exp(-1.0);
  CHECK(protected_limit(CanonicalLaw(WeightFamily::cayley())) == doctest::Approx(cayley).epsilon(1e-14));
  CHECK(std::abs(protected_limit(CanonicalLaw(WeightFamily::cayley())) - 0.32432) < 5e-6);
  CHECK(protected_limit(CanonicalLaw(WeightFamily::dary(2))) == doctest::Approx(33.0 / 64.0).epsilon(1e-14));
  CHECK(protected_limit(CanonicalLaw(WeightFamily::motzkin())) == doctest::Approx(10.0 / 27.0).epsilon(1e-14));
  CHECK(protected_limit(CanonicalLaw(WeightFamily::full_dary(2))) == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
  CHECK(protected_limit(CanonicalLaw(WeightFamily::full_dary(3))) == doctest::Approx(1.0 / 81.0).epsilon(1e-14));
}

TEST_CASE("ordered trees follow 3/(4^ell + 2) exactly") {
  const auto exact = rational_profile([](const cpp_rational& t) { return 1 / (2 - t); }, cpp_rational(1, 2), 12);
  const CanonicalLaw law(WeightFamily::ordered());
  for (std::size_t ell = 0; ell <= 12; ++ell) {
    CAPTURE(ell);
    const cpp_rational target = cpp_rational(3) / (pow_r(cpp_rational(4), static_cast<int>(ell)) + 2);
    CHECK(exact[ell] == target);
    CHECK(ell_protected_limit(law, ell) == doctest::Approx(static_cast<double>(target)).epsilon(1e-13));
  }
  CHECK(ell_protected_limit(law, 3) == doctest::Approx(1.0 / 22.0).epsilon(1e-13));
  CHECK(ell_protected_limit(law, 4) == doctest::Approx(1.0 / 86.0).epsilon(1e-13));
}

TEST_CASE("rational families match exact recursions") {
  struct Case {
    WeightFamily family;
    std::function<cpp_rational(const cpp_rational&)> phi_tilde;
    cpp_rational pi0;
  };
  std::vector<Case> cases{
      {WeightFamily::motzkin(), [](const cpp_rational& t) { return (1 + t + t * t) / 3; }, cpp_rational(1, 3)},
      {WeightFamily::dary(2), [](const cpp_rational& t) { return pow_r((1 + t) / 2, 2); }, cpp_rational(1, 4)},
      {WeightFamily::dary(3), [](const cpp_rational& t) { return pow_r((2 + t) / 3, 3); }, cpp_rational(8, 27)},
      {WeightFamily::full_dary(2), [](const cpp_rational& t) { return (1 + t * t) / 2; }, cpp_rational(1, 2)},
      {WeightFamily::full_dary(3), [](const cpp_rational& t) { return (2 + t * t * t) / 3; }, cpp_rational(2, 3)},
      {WeightFamily::full_dary(4), [](const cpp_rational& t) { return (3 + pow_r(t, 4)) / 4; }, cpp_rational(3, 4)},
  };
  for (const auto& c : cases) {
    CAPTURE(c.family.spec());
    const CanonicalLaw law(c.family);
    const auto exact = rational_profile(c.phi_tilde, c.pi0, 6);
    for (std::size_t ell = 0; ell <= 6; ++ell)
      CHECK(std::abs(ell_protected_limit(law, ell) - static_cast<double>(exact[ell])) < 1e-14);
  }
  // Named constants.
  CHECK(rational_profile(cases[0].phi_tilde, cases[0].pi0, 2)[2] == cpp_rational(10, 27));
  CHECK(rational_profile(cases[1].phi_tilde, cases[1].pi0, 2)[2] == cpp_rational(33, 64));
  CHECK(rational_profile(cases[3].phi_tilde, cases[3].pi0, 2)[2] == cpp_rational(1, 8));
  CHECK(rational_profile(cases[4].phi_tilde, cases[4].pi0, 2)[2] == cpp_rational(1, 81));
  CHECK(rational_profile(cases[5].phi_tilde, cases[5].pi0, 2)[2] == cpp_rational(1, 1024));
}

TEST_CASE("Cayley three-protected value") {
  const CanonicalLaw law(WeightFamily::cayley());
  const double e1 = std::exp(-1.0);
  const double expected = std::exp(std::exp(-e1) - e1 - 1.0) - e1;
  CHECK(ell_protected_limit(law, 3) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(std::abs(ell_protected_limit(law, 3) - 0.14093) < 5e-6);
  CHECK(std::abs(ell_protected_limit(law, 1) - 0.63212) < 5e-6);
}

TEST_CASE("recursion and direct formula agree bit for bit") {
  for (const auto& f : builtins()) {
    CAPTURE(f.spec());
    const CanonicalLaw law(f);
    CHECK(ell_protected_limit(law, 2) == protected_limit(law));
    CHECK(ell_protected_limit(law, 0) == 1.0);
    CHECK(ell_protected_limit(law, 1) == 1.0 - law.pi0());
  }
  const CanonicalLaw generic(WeightFamily::finite({1, 0.5, 2, 0.25}));
  CHECK(ell_protected_limit(generic, 2) == protected_limit(generic));
}

TEST_CASE("protection levels are monotone and vanish") {
  for (const auto& f : builtins()) {
    CAPTURE(f.spec());
    const CanonicalLaw law(f);
    for (std::size_t ell = 0; ell < 20; ++ell) CHECK(ell_protected_limit(law, ell + 1) <= ell_protected_limit(law, ell));
    CHECK(ell_protected_limit(law, 20) < ell_protected_limit(law, 2));
  }
}

TEST_CASE("protection profile tables") {
  const CanonicalLaw ordered(WeightFamily::ordered());
  const auto p = protection_profile(ordered, 2);
  CHECK(p.family == "ordered");
  REQUIRE(p.values.size() == 3);
  REQUIRE(p.levels.size() == 2);
  CHECK(p.level(1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.level(2) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  for (const auto& f : builtins()) {
    CAPTURE(f.spec());
    const CanonicalLaw law(f);
    const auto prof = protection_profile(law, 8);
    CHECK(prof.level(1) == doctest::Approx(law.pi0()).epsilon(1e-15));
    double total = 0.0;
    for (std::size_t ell = 1; ell <= 8; ++ell) {
      CHECK(prof.level(ell) >= 0.0);
      CHECK(prof.values[ell] == ell_protected_limit(law, ell));
      total += prof.level(ell);
    }
    CHECK(total == doctest::Approx(1.0 - prof.values[8]).epsilon(1e-14));
  }

  const auto cayley = protection_profile(CanonicalLaw(WeightFamily::cayley()), 3);
  CHECK(std::abs(cayley.level(3) - (0.32432 - 0.14093)) < 1e-5);
  CHECK_THROWS_AS(protection_profile(ordered, 0), std::invalid_argument);
}

TEST_CASE("gw_tree_probability") {
  const CanonicalLaw ordered(WeightFamily::ordered());
  CHECK(gw_tree_probability(ordered, Tree::leaf()) == 0.5);
  CHECK(gw_tree_probability(ordered, Tree({1, 0})) == 0.125);
  CHECK(gw_tree_probability(ordered, Tree({2, 0, 0})) == 1.0 / 32.0);
  CHECK(gw_tree_probability(ordered, Tree({1, 1, 0})) == 1.0 / 32.0);
  CHECK(gw_tree_probability(CanonicalLaw(WeightFamily::full_dary(2)), Tree({1, 0})) == 0.0);
}

TEST_CASE("GW probabilities over small trees accumulate to P(|T| <= m)") {
  const CanonicalLaw law(WeightFamily::ordered());
  double previous = 0.0;
  double cumulative = 0.0;
  const double catalan[] = {1, 1, 2, 5, 14, 42};
  for (std::size_t n = 1; n <= 6; ++n) {
    double mass = 0.0;
    oracle::for_each_tree(n, [&](const Tree& t) { mass += gw_tree_probability(law, t); });
    // Every ordered tree with n nodes has probability 2^-(2n-1).
    CHECK(mass == doctest::Approx(catalan[n - 1] * std::ldexp(1.0, -static_cast<int>(2 * n - 1))).epsilon(1e-14));
    cumulative += mass;
    CHECK(cumulative > previous);
    CHECK(cumulative <= 1.0);
    previous = cumulative;
  }
  for (const auto& f : {WeightFamily::motzkin(), WeightFamily::cayley(), WeightFamily::dary(2)}) {
    const CanonicalLaw l(f);
    double total = 0.0;
    for (std::size_t n = 1; n <= 6; ++n) oracle::for_each_tree(n, [&](const Tree& t) { total += gw_tree_probability(l, t); });
    CHECK(total <= 1.0);
    CHECK(total > l.pi0());
  }
}
