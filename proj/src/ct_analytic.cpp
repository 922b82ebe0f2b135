#include "fringelab/ct_analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fringelab/errors.hpp"

namespace fringelab {

std::size_t GridSpec::intervals() const {
  if (!(t_max > 0.0 && step > 0.0)) throw std::invalid_argument("grid needs positive t_max and step");
  const double ratio = t_max / step;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * rounded || rounded < 2.0)
    throw std::invalid_argument("grid t_max must be an integer multiple of the step");
  const auto n = static_cast<std::size_t>(rounded);
  if (n % 2 != 0) throw std::invalid_argument("grid must have an even number of intervals for Simpson's rule");
  return n;
}

GridFunction::GridFunction(GridSpec grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.intervals() + 1) throw std::invalid_argument("grid function has the wrong number of samples");
}

GridFunction discounted_cumulative_integral(const GridFunction& f, double decay) {
  const std::size_t n = f.grid().intervals();
  const double h = f.step();
  const double a = std::exp(-decay * h);
  const double a2 = a * a;
  std::vector<double> c(n + 1, 0.0);
  for (std::size_t i = 0; i + 2 <= n; i += 2) {
    const double f0 = f[i];
    const double f1 = f[i + 1];
    const double f2 = f[i + 2];
    c[i + 1] = a * c[i] + h / 12.0 * (5.0 * f0 * a + 8.0 * f1 - f2 / a);
    c[i + 2] = a2 * c[i] + h / 3.0 * (f0 * a2 + 4.0 * f1 * a + f2);
  }
  return GridFunction(f.grid(), std::move(c));
}

double exp_weighted_integral(const GridFunction& f) {
  const std::size_t n = f.grid().intervals();
  const double h = f.step();
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double g = f[i] * std::exp(-f.t(i));
    (i % 2 ? odd : even) += g;
  }
  const double ends = f[0] + f[n] * std::exp(-f.t(n));
  return h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
}

namespace {

std::vector<double> sample(const GridSpec& grid, auto&& fn) {
  const std::size_t n = grid.intervals();
  std::vector<double> v(n + 1);
  for (std::size_t i = 0; i <= n; ++i) v[i] = fn(static_cast<double>(i) * grid.step);
  return v;
}

}  // namespace

GridFunction bst_unprotected_curve(std::size_t ell, GridSpec grid) {
  if (ell < 1) throw std::invalid_argument("BST protection level must be >= 1");
  // q_1(t): the root is still a leaf, i.e. neither child slot has fired.
  const GridFunction leaf(grid, sample(grid, [](double t) { return std::exp(-2.0 * t); }));
  GridFunction q = leaf;
  for (std::size_t level = 2; level <= ell; ++level) {
    // r(t): a left child exists and is not (level-1)-protected.
    const GridFunction r = discounted_cumulative_integral(q, 1.0);
    std::vector<double> next(q.size());
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = leaf[i] + 2.0 * r[i] - r[i] * r[i];
    q = GridFunction(grid, std::move(next));
  }
  return q;
}

GridFunction rrt_protected_curve(std::size_t ell, GridSpec grid) {
  if (ell == 0) return GridFunction(grid, sample(grid, [](double) { return 1.0; }));
  GridFunction p(grid, sample(grid, [](double t) { return -std::expm1(-t); }));
  for (std::size_t level = 2; level <= ell; ++level) {
    // Children that are not (level-1)-protected arrive as a thinned Poisson
    // process; the root needs none of them and at least one child overall.
    const GridFunction mass = discounted_cumulative_integral(p, 0.0);
    std::vector<double> next(p.size());
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::exp(-p.t(i)) * std::expm1(mass[i]);
    p = GridFunction(grid, std::move(next));
  }
  return p;
}

double bst_ell_limit_on_grid(std::size_t ell, GridSpec grid) {
  return 1.0 - exp_weighted_integral(bst_unprotected_curve(ell, grid));
}

double rrt_ell_limit_on_grid(std::size_t ell, GridSpec grid) {
  return exp_weighted_integral(rrt_protected_curve(ell, grid));
}

namespace {

constexpr int kCoarsestExponent = 6;

template <class Eval>
QuadratureResult refine(Eval&& eval, double tol, int finest, const char* what, std::size_t ell) {
  if (!(tol >= 1e-10)) throw std::invalid_argument("quadrature tolerance must be >= 1e-10");
  GridSpec grid;
  grid.step = std::ldexp(1.0, -kCoarsestExponent);
  double previous = eval(grid);
  const double tail = std::exp(-grid.t_max);
  for (int e = kCoarsestExponent + 1; e <= finest; ++e) {
    grid.step = std::ldexp(1.0, -e);
    const double current = eval(grid);
    const double change = std::abs(current - previous);
    if (change < tol / 2.0) return {current, change + tail, grid.step};
    previous = current;
  }
  throw NoConvergence(std::string(what) + " limit for ell=" + std::to_string(ell) +
                      " did not converge within the refinement limit");
}

}  // namespace

QuadratureResult bst_ell_limit_detailed(std::size_t ell, double tol, int finest_exponent) {
  if (ell < 1) throw std::invalid_argument("BST protection level must be >= 1");
  return refine([ell](const GridSpec& g) { return bst_ell_limit_on_grid(ell, g); }, tol, finest_exponent, "BST", ell);
}

QuadratureResult rrt_ell_limit_detailed(std::size_t ell, double tol, int finest_exponent) {
  if (ell < 1) throw std::invalid_argument("RRT protection level must be >= 1");
  return refine([ell](const GridSpec& g) { return rrt_ell_limit_on_grid(ell, g); }, tol, finest_exponent, "RRT", ell);
}

}  // namespace fringelab
