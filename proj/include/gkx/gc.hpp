#pragma once

#include <span>
#include <string>

#include "gkx/section.hpp"

namespace gkx {

// Generalized complex structure: an endomorphism field of T + T* together
// with the three-form twisting the bracket.
struct GCStructure {
  MatrixField j;    // 2n x 2n over a chart with n slots
  FormField twist;  // three-form
  std::string name;

  const ChartPtr& chart() const { return j.chart; }
};

// Sampled residuals of the three defining conditions.
struct GCReport {
  double square = 0.0;         // max |J^2 + 1|
  double orthogonality = 0.0;  // max |J^T q J - q| against the neutral pairing
  double involutivity = 0.0;   // max Courant-tensor component of the +i bundle
  double tol = 0.0;

  bool pass() const { return square < tol && orthogonality < tol && involutivity < tol; }
};

GCReport validate_gc(const GCStructure& s, std::span<const Point> samples, double tol = 1e-8);

// Symplectic-type structure [[0, -w^{-1}], [w, 0]] of a nondegenerate 2-form.
GCStructure jomega(const FormField& omega, FormField twist, std::string name);

// Complex-type structure diag(I, -I^T).
GCStructure jcomplex(const MatrixField& i_endo, std::string name);

// [[I, Im sigma], [0, -I^T]] for a complex structure I and a holomorphic
// Poisson bivector sigma given as a map T* -> T.  Checks that I is
// integrable, sigma is of type (2,0), and [sigma, sigma] = 0 on the samples.
GCStructure jsigma(const MatrixField& i_endo, const MatrixField& sigma, std::string name,
                   std::span<const Point> samples, double tol = 1e-8);

// Upper-right block of J: the map Q = pr_T . J|_{T*}.
MatrixField poisson_block(const GCStructure& s);
Eigen::MatrixXcd real_poisson(const GCStructure& s, const Point& p);

// Half the corank of the Poisson block at p.
int gc_type(const GCStructure& s, const Point& p);

// Fiber of the +i (sign = +1) or -i (sign = -1) eigenbundle at p; rank is
// half the fiber dimension of T + T*.
Subspace eigenframe(const GCStructure& s, const Point& p, int sign, double tol = kRankTol);

// Columns of the field-level eigenprojector (1 - i sign J)/2: 2n sections
// spanning the sign-eigenbundle pointwise.
std::vector<GSection> eigenbundle_span(const GCStructure& s, int sign);

// Conjugation permutation of the stacked fiber coordinates of T + T*.
std::vector<int> fiber_conj_perm(const ChartPtr& chart);

}  // namespace gkx
