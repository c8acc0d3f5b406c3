#pragma once

#include <string>
#include <vector>

#include "gkx/forms.hpp"

namespace gkx {

// Parametrized d-cycle: a chart map from the unit cube [0,1]^d (a real
// parameter chart) into the target chart, covering the cycle exactly once.
struct Cycle {
  ChartMap map;

  int dim() const { return map.source->nslots(); }
  // Parameter chart with slots t1..td.
  static ChartPtr cube(int d, const std::string& name = "cube");
};

struct QuadratureSpec {
  int points = 16;   // Gauss-Legendre nodes per axis and panel
  int panels = 2;    // uniform subdivisions per axis at the coarse level
  double tol = 1e-8; // requested absolute error
};

struct QuadratureResult {
  cplx value;
  double error_estimate = 0.0;
  bool converged = false;
};

// Nodes/weights of n-point Gauss-Legendre on [0,1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Integral of a d-form over a d-cycle.  Pulls the form back to the parameter
// cube and compares two refinement levels (panels and 2*panels per axis); the
// finer value is reported with |fine - coarse| as the error estimate.
QuadratureResult integrate(const FormField& omega, const Cycle& cycle,
                           const QuadratureSpec& spec = {});

// Stratified Monte Carlo corroboration; error_estimate is the standard error
// of the mean (converged is left false: corroboration only).
QuadratureResult integrate_mc(const FormField& omega, const Cycle& cycle, int samples,
                              unsigned seed);

}  // namespace gkx
