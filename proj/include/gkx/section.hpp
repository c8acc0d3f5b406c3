#pragma once

#include <span>
#include <vector>

#include "gkx/forms.hpp"
#include "gkx/linalg.hpp"

namespace gkx {

// Section of T + T* over a chart: a vector field plus a 1-form.
struct GSection {
  VecField vec;
  FormField cov;

  static GSection zero(ChartPtr chart);
  static GSection from_vector(VecField x);
  static GSection from_form(FormField xi);
  static GSection make(VecField x, FormField xi);
  static GSection basis_vector(ChartPtr chart, int slot);
  static GSection basis_covector(ChartPtr chart, int slot);

  const ChartPtr& chart() const { return vec.chart; }
  // Stacked fiber value (vector components, then covector components).
  Eigen::VectorXcd value(const Point& p) const;
  Eigen::VectorXcd value(const Point& p, EvalContext& ctx) const;
  GSection conj() const;
};

GSection operator+(const GSection& a, const GSection& b);
GSection operator-(const GSection& a, const GSection& b);
GSection operator*(const ScalarField& f, const GSection& a);
GSection operator*(cplx s, const GSection& a);

// <X+xi, Y+eta> = (xi(Y) + eta(X)) / 2.
ScalarField pairing(const GSection& a, const GSection& b);
cplx pairing(const GSection& a, const GSection& b, const Point& p);

// Dorfman bracket [X,Y] + L_X eta - i_Y dxi + i_X i_Y H.
GSection courant_bracket(const GSection& a, const GSection& b, const FormField& h);

// X + xi -> X + xi + i_X B.
GSection b_transform(const FormField& b, const GSection& e);

// Torsion of the splitting X -> X + i_X b of the twist-H0 algebroid, computed
// from <s(e_i), [s(e_j), s(e_k)]> on the coordinate frame; equals H0 - db.
FormField splitting_torsion(const FormField& b, const FormField& h0);

// The canonical pairing on T + T* as a 2n x 2n matrix.
Eigen::MatrixXcd neutral_pairing(int n);

// Pointwise-independent isotropic frame with the twist used for involutivity.
struct DiracFrame {
  std::vector<GSection> sections;
  FormField twist;

  int rank() const { return static_cast<int>(sections.size()); }
  ChartPtr chart() const { return twist.chart; }
  // 2n x k matrix of section values.
  Eigen::MatrixXcd values(const Point& p, EvalContext& ctx) const;
  Subspace fiber(const Point& p) const;

  static DiracFrame tangent(ChartPtr chart, FormField h);
  static DiracFrame cotangent(ChartPtr chart, FormField h);
  // Graph of a 2-form over T: sections d_i + i_{d_i} b.
  static DiracFrame graph(const FormField& b, FormField h);
};

double isotropy_residual(const DiracFrame& f, std::span<const Point> samples);

// Least-squares membership of [e_a,e_b] in span{e_c}, max over pairs/samples.
double involutivity_residual(const DiracFrame& f, std::span<const Point> samples);
// Equivalent check for maximal isotropic frames: max |2 <[e_a,e_b], e_c>|.
double involutivity_residual_pairing(const DiracFrame& f, std::span<const Point> samples);

// Fiber of D1^T boxtimes D2 at p: classes X + (xi_2 - xi_1) over pairs with a
// common tangent part.  Requires the tangent projections to span T.
Subspace baer_sum(const DiracFrame& d1, const DiracFrame& d2, const Point& p);

// Bivector matrix beta: T* -> T whose graph {beta xi + xi} is s; throws when
// s is not a graph over T*.
Eigen::MatrixXcd graph_bivector(const Subspace& s);

// (L cap D^perp + D)/D at p, as representatives orthogonal to D.  When
// expected_rank >= 0, a differing result rank is an error.
Subspace dirac_reduce(const DiracFrame& l, const DiracFrame& d, const Point& p,
                      int expected_rank = -1);

// Connection on a trivialized rank-r module over the algebroid spanned by the
// frame: one r x r matrix of fields per frame section.
struct AlgebroidConnection {
  DiracFrame frame;
  std::vector<MatrixField> alpha;
};

// Max |F(e_a,e_b)| over samples, F = grad_a grad_b - grad_b grad_a -
// grad_{[a,b]}; zero iff the module is flat.
double algebroid_curvature(const AlgebroidConnection& conn, std::span<const Point> samples);

// Frame {a_i + eps_ij btilde^j} where btilde is the B-frame dual to A under
// 2<.,.>; eps is antisymmetric k x k.
DiracFrame graph_deformation(const DiracFrame& a, const DiracFrame& b, const MatrixField& eps);

// Residual of d_A eps + [eps,eps]_B / 2 on frame triples, assembled from the
// algebroid data of the transverse pair (A, B); vanishes exactly when the
// deformed graph is involutive.
double maurer_cartan_residual(const DiracFrame& a, const DiracFrame& b, const MatrixField& eps,
                              std::span<const Point> samples);

// Jacobian d(phi^t)/d(u^s) as a matrix of fields on phi's source chart.
MatrixField jacobian(const ChartMap& phi);

// Pullback along an invertible map: covectors by the Jacobian transpose,
// vectors by its inverse.
GSection pullback_section(const ChartMap& phi, const GSection& e);

}  // namespace gkx
