#pragma once

// Continuous-time embeddings of the binary search tree (each missing child
// slot fills at rate 1) and the random recursive tree (Yule process: each
// node spawns children at rate 1). Fringe limits are integrals of root
// protection curves against an independent Exp(1) stopping time.

#include <cstddef>
#include <vector>

namespace fringelab {

struct GridSpec {
  double t_max = 40.0;
  double step = 1.0 / 256.0;

  /// Number of intervals; throws std::invalid_argument unless even.
  std::size_t intervals() const;
};

class GridFunction {
 public:
  GridFunction(GridSpec grid, std::vector<double> values);

  const GridSpec& grid() const { return grid_; }
  double t_max() const { return grid_.t_max; }
  double step() const { return grid_.step; }
  std::size_t size() const { return values_.size(); }
  double t(std::size_t i) const { return static_cast<double>(i) * grid_.step; }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

/// C(t) = integral_0^t f(s) exp(-decay (t - s)) ds at every grid point.
/// Composite Simpson over pairs of intervals; odd points close the last
/// half-pair with the three-point quadratic rule. All intermediates stay
/// bounded by sup|f| / decay, so no rebasing is needed.
GridFunction discounted_cumulative_integral(const GridFunction& f, double decay);

/// Composite Simpson for integral_0^t_max f(t) e^{-t} dt.
double exp_weighted_integral(const GridFunction& f);

/// q_ell(t): probability the BST-process root is not ell-protected at t.
GridFunction bst_unprotected_curve(std::size_t ell, GridSpec grid = {});

/// p_ell(t): probability the Yule-process root is ell-protected at t.
GridFunction rrt_protected_curve(std::size_t ell, GridSpec grid = {});

/// p*_ell = 1 - integral q_ell(t) e^{-t} dt on a fixed grid (no refinement).
double bst_ell_limit_on_grid(std::size_t ell, GridSpec grid);
/// p*_ell = integral p_ell(t) e^{-t} dt on a fixed grid (no refinement).
double rrt_ell_limit_on_grid(std::size_t ell, GridSpec grid);

struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;  // last refinement change plus e^{-t_max} tail
  double step = 0.0;         // finest step used
};

inline constexpr int kFinestStepExponent = 14;

/// Halves the step from 2^-6 until successive values differ by < tol / 2.
/// Throws NoConvergence when 2^-finest_exponent is reached first.
/// tol >= 1e-10.
QuadratureResult bst_ell_limit_detailed(std::size_t ell, double tol = 1e-10, int finest_exponent = kFinestStepExponent);
QuadratureResult rrt_ell_limit_detailed(std::size_t ell, double tol = 1e-10, int finest_exponent = kFinestStepExponent);

inline double bst_ell_limit(std::size_t ell, double tol = 1e-10) { return bst_ell_limit_detailed(ell, tol).value; }
inline double rrt_ell_limit(std::size_t ell, double tol = 1e-10) { return rrt_ell_limit_detailed(ell, tol).value; }

}  // namespace fringelab
