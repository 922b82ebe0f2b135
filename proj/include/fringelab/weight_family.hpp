#pragma once

/// Weight sequences (w_k) for simply generated trees and the canonical
/// offspring law pi_k = w_k tau^k / Phi(tau) obtained by tilting them to the
/// critical point of Phi(t)/t.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fringelab {

enum class FamilyKind { Ordered, Cayley, FullDary, Dary, Motzkin, FiniteWeights };

class WeightFamily {
 public:
  static WeightFamily ordered();
  static WeightFamily cayley();
  static WeightFamily motzkin();
  static WeightFamily full_dary(int d);
  static WeightFamily dary(int d);
  static WeightFamily finite(std::vector<double> weights);

  /// Parses `ordered | cayley | motzkin | full-dary:<d> | dary:<d> |
  /// weights:<w0>,<w1>,...`. Throws ParseError on malformed input and
  /// std::invalid_argument when the weights admit no nontrivial tree.
  static WeightFamily parse(std::string_view spec);

  FamilyKind kind() const { return kind_; }
  int d() const { return d_; }
  bool is_builtin() const { return kind_ != FamilyKind::FiniteWeights; }

  /// Canonical spec string; parse(spec()) reproduces the family.
  std::string spec() const;

  double weight(std::size_t k) const;
  double phi(double t) const;
  double phi_prime(double t) const;

  /// Radius of convergence of Phi (infinity for entire functions).
  double radius() const;

  /// Largest k with w_k > 0, or nullopt for infinite support.
  std::optional<std::size_t> max_degree() const;

  /// w_k as an exact integer when every weight of the family is a
  /// non-negative integer; nullopt otherwise (Cayley, fractional weights).
  std::optional<std::uint64_t> integer_weight(std::size_t k) const;
  bool has_integer_weights() const;

 private:
  WeightFamily(FamilyKind kind, int d, std::vector<double> weights);

  FamilyKind kind_;
  int d_ = 0;
  std::vector<double> weights_;  // only for FiniteWeights
};

enum class TauPath { Auto, Numeric };

/// Solves tau * Phi'(tau) = Phi(tau). Builtins return the closed form unless
/// `path` is Numeric, in which case the generic bisection runs.
double solve_tau(const WeightFamily& family, double tol = 1e-12, TauPath path = TauPath::Auto);

class CanonicalLaw {
 public:
  explicit CanonicalLaw(WeightFamily family);

  const WeightFamily& family() const { return family_; }
  double tau() const { return tau_; }
  double phi_at_tau() const { return phi_at_tau_; }
  double pi0() const { return pi0_; }
  /// gcd of {k >= 1 : pi_k > 0}.
  std::uint64_t span() const { return span_; }
  /// tau Phi'(tau) / Phi(tau); 1 for critical laws.
  double mean() const { return mean_; }

  double pmf(std::size_t k) const;
  double phi_tilde(double t) const;

  /// pi_0..pi_K where K is the end of the support, or for infinite support
  /// the last index whose mass is still a normal double.
  const std::vector<double>& pmf_table() const { return table_; }

 private:
  WeightFamily family_;
  double tau_;
  double phi_at_tau_;
  double pi0_;
  std::uint64_t span_;
  double mean_;
  std::vector<double> table_;
};

inline CanonicalLaw canonical_law(const WeightFamily& family) { return CanonicalLaw(family); }
inline double offspring_pmf(const CanonicalLaw& law, std::size_t k) { return law.pmf(k); }
inline double phi_tilde(const CanonicalLaw& law, double t) { return law.phi_tilde(t); }

}  // namespace fringelab
