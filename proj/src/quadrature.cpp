#include "gkx/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace gkx {
namespace {

// Scalar coefficient of the pulled-back top-degree form on the cube.
ScalarField pulled_density(const FormField& omega, const Cycle& cycle) {
  int d = cycle.dim();
  if (omega.degree != d)
    throw std::invalid_argument("form degree does not match cycle dimension");
  FormField pulled = pullback(cycle.map, omega);
  std::vector<int> all(d);
  for (int i = 0; i < d; ++i) all[i] = i;
  return pulled.coefficient(all);
}

cplx cube_sum(const ScalarField& f, const ChartPtr& cube, int points, int panels) {
  std::vector<double> nodes, weights;
  gauss_legendre(points, nodes, weights);
  int d = cube->nslots();
  double h = 1.0 / panels;

  // Odometers over panels^d cells and points^d nodes.
  std::vector<int> cell(d, 0);
  cplx acc = 0.0;
  for (;;) {
    std::vector<int> node(d, 0);
    for (;;) {
      std::vector<double> t(d);
      double w = 1.0;
      for (int a = 0; a < d; ++a) {
        t[a] = (cell[a] + nodes[node[a]]) * h;
        w *= weights[node[a]] * h;
      }
      acc += w * f.value(make_real_point(cube, t));
      int a = 0;
      while (a < d && ++node[a] == points) node[a++] = 0;
      if (a == d) break;
    }
    int a = 0;
    while (a < d && ++cell[a] == panels) cell[a++] = 0;
    if (a == d) break;
  }
  return acc;
}

}  // namespace

ChartPtr Cycle::cube(int d, const std::string& name) {
  std::vector<std::string> coords(d);
  for (int i = 0; i < d; ++i) coords[i] = "t" + std::to_string(i + 1);
  return Chart::real_chart(name, coords);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    // Newton iteration from the Chebyshev-angle initial guess, on [-1,1].
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    nodes[n - 1 - k] = 0.5 * (1.0 + x);
    weights[n - 1 - k] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

QuadratureResult integrate(const FormField& omega, const Cycle& cycle,
                           const QuadratureSpec& spec) {
  ScalarField f = pulled_density(omega, cycle);
  cplx coarse = cube_sum(f, cycle.map.source, spec.points, spec.panels);
  cplx fine = cube_sum(f, cycle.map.source, spec.points, 2 * spec.panels);
  double est = std::abs(fine - coarse);
  return {fine, est, est <= spec.tol};
}

QuadratureResult integrate_mc(const FormField& omega, const Cycle& cycle, int samples,
                              unsigned seed) {
  ScalarField f = pulled_density(omega, cycle);
  const ChartPtr& cube = cycle.map.source;
  int d = cube->nslots();
  int m = std::max(1, static_cast<int>(std::floor(std::pow(double(samples), 1.0 / d))));
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  cplx sum = 0.0;
  double sumsq = 0.0;
  long n = 0;
  std::vector<int> cell(d, 0);
  for (;;) {
    std::vector<double> t(d);
    for (int a = 0; a < d; ++a) t[a] = (cell[a] + unif(rng)) / m;
    cplx v = f.value(make_real_point(cube, t));
    sum += v;
    sumsq += std::norm(v);
    ++n;
    int a = 0;
    while (a < d && ++cell[a] == m) cell[a++] = 0;
    if (a == d) break;
  }
  cplx mean = sum / double(n);
  double var = std::max(0.0, sumsq / n - std::norm(mean));
  QuadratureResult r;
  r.value = mean;
  r.error_estimate = std::sqrt(var / n);
  r.converged = false;
  return r;
}

}  // namespace gkx
