#include "fringelab/weight_family.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fringelab/errors.hpp"

namespace fringelab {

namespace {

double binomial(int d, std::size_t k) {
  if (k > static_cast<std::size_t>(d)) return 0.0;
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(d - static_cast<int>(i) + 1) / static_cast<double>(i);
  return std::round(c);
}

double inverse_factorial(std::size_t k) {
  double v = 1.0;
  for (std::size_t i = 2; i <= k; ++i) {
    v /= static_cast<double>(i);
    if (v == 0.0) break;
  }
  return v;
}

double parse_double(std::string_view text, std::string_view spec) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError("bad weight '" + std::string(text) + "' in family spec '" + std::string(spec) + "'");
  return value;
}

int parse_arity(std::string_view text, std::string_view spec) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError("bad arity '" + std::string(text) + "' in family spec '" + std::string(spec) + "'");
  if (value < 2) throw ParseError("arity must be >= 2 in family spec '" + std::string(spec) + "'");
  return value;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

WeightFamily::WeightFamily(FamilyKind kind, int d, std::vector<double> weights)
    : kind_(kind), d_(d), weights_(std::move(weights)) {}

WeightFamily WeightFamily::ordered() { return {FamilyKind::Ordered, 0, {}}; }
WeightFamily WeightFamily::cayley() { return {FamilyKind::Cayley, 0, {}}; }
WeightFamily WeightFamily::motzkin() { return {FamilyKind::Motzkin, 0, {}}; }

WeightFamily WeightFamily::full_dary(int d) {
  if (d < 2) throw std::invalid_argument("full d-ary trees need d >= 2");
  return {FamilyKind::FullDary, d, {}};
}

WeightFamily WeightFamily::dary(int d) {
  if (d < 2) throw std::invalid_argument("d-ary trees need d >= 2");
  return {FamilyKind::Dary, d, {}};
}

WeightFamily WeightFamily::finite(std::vector<double> weights) {
  for (double w : weights)
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("weights must be finite and non-negative");
  while (!weights.empty() && weights.back() == 0.0) weights.pop_back();
  if (weights.empty() || weights[0] <= 0.0) throw std::invalid_argument("w_0 must be positive");
  if (weights.size() < 3) throw std::invalid_argument("some w_k with k >= 2 must be positive");
  return {FamilyKind::FiniteWeights, 0, std::move(weights)};
}

WeightFamily WeightFamily::parse(std::string_view spec) {
  if (spec == "ordered") return ordered();
  if (spec == "cayley") return cayley();
  if (spec == "motzkin") return motzkin();

  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw ParseError("unknown family spec '" + std::string(spec) + "'");
  auto head = spec.substr(0, colon);
  auto tail = spec.substr(colon + 1);

  if (head == "full-dary") return full_dary(parse_arity(tail, spec));
  if (head == "dary") return dary(parse_arity(tail, spec));
  if (head == "weights") {
    std::vector<double> w;
    std::size_t pos = 0;
    while (true) {
      auto comma = tail.find(',', pos);
      auto item = tail.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      w.push_back(parse_double(item, spec));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    try {
      return finite(std::move(w));
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string(e.what()) + " in family spec '" + std::string(spec) + "'");
    }
  }
  throw ParseError("unknown family spec '" + std::string(spec) + "'");
}

std::string WeightFamily::spec() const {
  switch (kind_) {
    case FamilyKind::Ordered: return "ordered";
    case FamilyKind::Cayley: return "cayley";
    case FamilyKind::Motzkin: return "motzkin";
    case FamilyKind::FullDary: return "full-dary:" + std::to_string(d_);
    case FamilyKind::Dary: return "dary:" + std::to_string(d_);
    case FamilyKind::FiniteWeights: {
      std::string s = "weights:";
      for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (i) s += ',';
        s += format_double(weights_[i]);
      }
      return s;
    }
  }
  return {};
}

double WeightFamily::weight(std::size_t k) const {
  switch (kind_) {
    case FamilyKind::Ordered: return 1.0;
    case FamilyKind::Cayley: return inverse_factorial(k);
    case FamilyKind::Motzkin: return k <= 2 ? 1.0 : 0.0;
    case FamilyKind::FullDary: return (k == 0 || k == static_cast<std::size_t>(d_)) ? 1.0 : 0.0;
    case FamilyKind::Dary: return binomial(d_, k);
    case FamilyKind::FiniteWeights: return k < weights_.size() ? weights_[k] : 0.0;
  }
  return 0.0;
}

double WeightFamily::phi(double t) const {
  switch (kind_) {
    case FamilyKind::Ordered: return t < 1.0 ? 1.0 / (1.0 - t) : std::numeric_limits<double>::infinity();
    case FamilyKind::Cayley: return std::exp(t);
    case FamilyKind::Motzkin: return 1.0 + t + t * t;
    case FamilyKind::FullDary: return 1.0 + std::pow(t, d_);
    case FamilyKind::Dary: return std::pow(1.0 + t, d_);
    case FamilyKind::FiniteWeights: {
      double acc = 0.0;
      for (auto it = weights_.rbegin(); it != weights_.rend(); ++it) acc = acc * t + *it;
      return acc;
    }
  }
  return 0.0;
}

double WeightFamily::phi_prime(double t) const {
  switch (kind_) {
    case FamilyKind::Ordered:
      return t < 1.0 ? 1.0 / ((1.0 - t) * (1.0 - t)) : std::numeric_limits<double>::infinity();
    case FamilyKind::Cayley: return std::exp(t);
    case FamilyKind::Motzkin: return 1.0 + 2.0 * t;
    case FamilyKind::FullDary: return d_ * std::pow(t, d_ - 1);
    case FamilyKind::Dary: return d_ * std::pow(1.0 + t, d_ - 1);
    case FamilyKind::FiniteWeights: {
      double acc = 0.0;
      for (std::size_t k = weights_.size() - 1; k >= 1; --k) acc = acc * t + static_cast<double>(k) * weights_[k];
      return acc;
    }
  }
  return 0.0;
}

double WeightFamily::radius() const {
  return kind_ == FamilyKind::Ordered ? 1.0 : std::numeric_limits<double>::infinity();
}

std::optional<std::size_t> WeightFamily::max_degree() const {
  switch (kind_) {
    case FamilyKind::Ordered:
    case FamilyKind::Cayley: return std::nullopt;
    case FamilyKind::Motzkin: return 2;
    case FamilyKind::FullDary:
    case FamilyKind::Dary: return static_cast<std::size_t>(d_);
    case FamilyKind::FiniteWeights: return weights_.size() - 1;
  }
  return std::nullopt;
}

bool WeightFamily::has_integer_weights() const {
  switch (kind_) {
    case FamilyKind::Cayley: return false;
    case FamilyKind::FiniteWeights:
      return std::all_of(weights_.begin(), weights_.end(), [](double w) {
        return w == std::floor(w) && w < 9.0e15;
      });
    default: return true;
  }
}

std::optional<std::uint64_t> WeightFamily::integer_weight(std::size_t k) const {
  if (!has_integer_weights()) return std::nullopt;
  return static_cast<std::uint64_t>(weight(k));
}

// ---------------------------------------------------------------------------

namespace {

double solve_tau_numeric(const WeightFamily& family, double tol) {
  auto h = [&](double t) { return t * family.phi_prime(t) - family.phi(t); };
  double lo = 1e-12;
  double hi = 0.0;
  const double rho = family.radius();
  if (std::isinf(rho)) {
    hi = 1.0;
    for (int i = 0; i < 1100 && !(h(hi) > 0.0); ++i) hi *= 2.0;
    if (!(h(hi) > 0.0)) throw NoCriticalPoint("tau equation has no root for family " + family.spec());
  } else {
    // Approach rho from below; Phi may blow up there.
    for (int j = 1; j <= 60; ++j) {
      double t = rho * (1.0 - std::ldexp(1.0, -j));
      if (h(t) > 0.0) {
        hi = t;
        break;
      }
    }
    if (hi == 0.0) throw NoCriticalPoint("tau equation has no root below the radius for family " + family.spec());
  }
  if (!(h(lo) < 0.0)) throw NoCriticalPoint("tau equation changes sign too close to 0 for family " + family.spec());

  for (int it = 0; it < 2000; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (h(mid) > 0.0 ? hi : lo) = mid;
  }
  double tau = std::abs(h(lo)) <= std::abs(h(hi)) ? lo : hi;
  if (std::abs(h(tau)) > tol * family.phi(tau))
    throw NoCriticalPoint("bisection for tau did not reach tolerance for family " + family.spec());
  return tau;
}

}  // namespace

double solve_tau(const WeightFamily& family, double tol, TauPath path) {
  if (!(tol > 0.0 && tol <= 1e-6)) throw std::invalid_argument("solve_tau tolerance must lie in (0, 1e-6]");
  if (path == TauPath::Auto) {
    switch (family.kind()) {
      case FamilyKind::Ordered: return 0.5;
      case FamilyKind::Cayley:
      case FamilyKind::Motzkin: return 1.0;
      case FamilyKind::FullDary: return std::pow(static_cast<double>(family.d() - 1), -1.0 / family.d());
      case FamilyKind::Dary: return 1.0 / static_cast<double>(family.d() - 1);
      case FamilyKind::FiniteWeights: break;
    }
  }
  return solve_tau_numeric(family, tol);
}

CanonicalLaw::CanonicalLaw(WeightFamily family) : family_(std::move(family)) {
  tau_ = solve_tau(family_);
  const int d = family_.d();
  switch (family_.kind()) {
    case FamilyKind::Ordered: phi_at_tau_ = 2.0; break;
    case FamilyKind::Cayley: phi_at_tau_ = std::exp(1.0); break;
    case FamilyKind::Motzkin: phi_at_tau_ = 3.0; break;
    case FamilyKind::FullDary: phi_at_tau_ = static_cast<double>(d) / (d - 1); break;
    case FamilyKind::Dary: phi_at_tau_ = std::pow(static_cast<double>(d) / (d - 1), d); break;
    case FamilyKind::FiniteWeights: phi_at_tau_ = family_.phi(tau_); break;
  }
  mean_ = tau_ * family_.phi_prime(tau_) / family_.phi(tau_);

  if (auto kmax = family_.max_degree()) {
    table_.reserve(*kmax + 1);
    for (std::size_t k = 0; k <= *kmax; ++k) table_.push_back(pmf(k));
  } else {
    for (std::size_t k = 0;; ++k) {
      double p = pmf(k);
      if (p < std::numeric_limits<double>::min()) break;
      table_.push_back(p);
    }
  }
  pi0_ = pmf(0);

  span_ = 0;
  for (std::size_t k = 1; k < table_.size(); ++k)
    if (table_[k] > 0.0) span_ = std::gcd(span_, static_cast<std::uint64_t>(k));
}

double CanonicalLaw::pmf(std::size_t k) const {
  const int d = family_.d();
  switch (family_.kind()) {
    case FamilyKind::Ordered: return k > 2000 ? 0.0 : std::ldexp(1.0, -static_cast<int>(k) - 1);
    case FamilyKind::Cayley: return std::exp(-1.0) * family_.weight(k);
    case FamilyKind::Motzkin: return k <= 2 ? 1.0 / 3.0 : 0.0;
    case FamilyKind::FullDary:
      if (k == 0) return static_cast<double>(d - 1) / d;
      return k == static_cast<std::size_t>(d) ? 1.0 / d : 0.0;
    case FamilyKind::Dary: {
      if (k > static_cast<std::size_t>(d)) return 0.0;
      const double p = 1.0 / d;
      return family_.weight(k) * std::pow(p, static_cast<double>(k)) *
             std::pow(1.0 - p, static_cast<double>(d - static_cast<int>(k)));
    }
    case FamilyKind::FiniteWeights: {
      double w = family_.weight(k);
      return w == 0.0 ? 0.0 : w * std::pow(tau_, static_cast<double>(k)) / phi_at_tau_;
    }
  }
  return 0.0;
}

double CanonicalLaw::phi_tilde(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("phi_tilde argument must lie in [0, 1]");
  const int d = family_.d();
  switch (family_.kind()) {
    case FamilyKind::Ordered: return 1.0 / (2.0 - t);
    case FamilyKind::Cayley: return std::exp(t - 1.0);
    case FamilyKind::Motzkin: return (1.0 + t + t * t) / 3.0;
    case FamilyKind::FullDary: return (d - 1 + std::pow(t, d)) / d;
    case FamilyKind::Dary: return std::pow((d - 1 + t) / d, d);
    case FamilyKind::FiniteWeights: return family_.phi(tau_ * t) / phi_at_tau_;
  }
  return 0.0;
}

}  // namespace fringelab
