#pragma once

#include <array>
#include <map>
#include <vector>

#include "gkx/forms.hpp"
#include "gkx/quadrature.hpp"
#include "gkx/report.hpp"

namespace gkx {

// Overlap U_i ∩ U_j with the gluing in both directions and a fixed set of
// evaluation points, given in chart-i coordinates.
struct PairOverlap {
  int i = 0, j = 0;
  ChartMap to_j;  // chart-i coordinates -> chart-j coordinates
  ChartMap to_i;  // inverse
  std::vector<Point> samples;
};

struct TripleOverlap {
  std::array<int, 3> idx{};
  std::vector<Point> samples;  // in chart idx[0]
};

struct QuadOverlap {
  std::array<int, 4> idx{};
  std::vector<Point> samples;  // in chart idx[0]
};

struct CechCover {
  std::vector<ChartPtr> charts;
  std::vector<std::vector<Point>> chart_samples;  // interior points per chart
  std::vector<PairOverlap> pairs;                 // i < j
  std::vector<TripleOverlap> triples;             // strictly increasing
  std::vector<QuadOverlap> quads;

  const PairOverlap* find_pair(int i, int j) const;  // nullptr when absent
  // Transition chart-a coordinates -> chart-b coordinates; throws when the
  // pair {a, b} is not part of the cover.
  const ChartMap& transition(int a, int b) const;
};

// Mutual-inverse and cyclic-composition residuals of the transition maps
// over the stored overlap samples.
double cover_residual(const CechCover& cover);

// Gerbe with connective structure in Čech form: transition scalars g_ijk on
// triple overlaps (chart idx[0] coordinates, indices ascending), connection
// 1-forms A_ij on pair overlaps (chart-i coordinates, i < j), a curving
// 2-form B_i per chart, and optionally a lifting of the antiholomorphic
// tangent bundle given by forms theta_i of type (1,1)+(0,2).
struct GerbeCech {
  CechCover cover;
  std::map<std::array<int, 3>, ScalarField> g;
  std::map<std::array<int, 2>, FormField> a;
  std::vector<FormField> b;
  std::vector<FormField> theta;                    // empty when absent
  std::vector<MatrixField> tangent_complex;        // complex structure per chart
  bool hermitian = false;

  bool has_lifting() const { return !theta.empty(); }
  const FormField& connection(int i, int j) const;  // stored order i < j
};

// Constant relating the connection cochain to the transition scalars:
// A_ij + A_jk - A_ik = kappa * dlog g_ijk.  Unitary data (|g| = 1 with real
// connection forms and curvatures) forces kappa = -i; otherwise 1.
cplx dlog_constant(const GerbeCech& data);

// Verifies the cocycle and connective-structure identities: transitions
// mutually inverse and composable, delta(g) = 1 on quadruple overlaps,
// delta(A) = kappa dlog g on triples, B_j - B_i = dA_ij on pairs, dB_i
// global, H closed, and the unitary reality constraints when hermitian.
// Checks without data to range over are reported as explicit skips.
Report check_connection(const GerbeCech& data, double tol = 1e-8);

// Verifies the lifting forms: type (1,1)+(0,2), the gluing
// theta_j - theta_i = (dA_ij)^{(1,1)+(0,2)}, and chartwise involutivity
// (d theta_i)^{(1,2)+(0,3)} = 0.  Throws when the lifting or the complex
// structures are absent.
Report lifting_check(const GerbeCech& data, double tol = 1e-8);

// Gauge by a cochain of 1-forms, one per chart:
//   A_ij -> A_ij + alpha_i - alpha_j,  B_i -> B_i - d alpha_i,
//   theta_i -> theta_i - (d alpha_i)^{(1,1)+(0,2)}.
// g and the flux H = dB_i are unchanged.  The hermitian flag is carried
// over; it remains meaningful only for real alpha_i.
GerbeCech gauge_transform(const GerbeCech& data, const std::vector<FormField>& alpha);

// Applies the gauge, requires every connection (and lifting) identity to
// still hold and the gauged curvature dA_ij + d alpha_i - d alpha_j to be
// type (1,1), then returns the holomorphic curving cocycle per pair,
//   (B_j^{(2,0)} + del alpha_j^{(1,0)}) - (B_i^{(2,0)} + del alpha_i^{(1,0)}),
// in chart-i coordinates.  The cocycle accumulates the gauge with the
// opposite sign from the curving transport; the convention is frozen
// against the elliptically fibered instance below.  Throws on failure.
std::vector<FormField> holomorphic_cocycle(const GerbeCech& data,
                                           const std::vector<FormField>& alpha,
                                           double tol = 1e-8);

// Curving induced on the graph of theta over the antiholomorphic frame by
// the antisymmetric pairing 1/2(xi(Y) - eta(X)): entry (a,b) is the pairing
// of X_a + i_{X_a} theta with X_b + i_{X_b} theta, where X_a runs over the
// (0,1) projections of the coordinate frame.
MatrixField lifting_curving(const FormField& theta, const MatrixField& tangent_complex);

// Integral of a closed form over a cycle; throws when the quadrature fails
// to converge.
cplx period_integral(const FormField& omega, const Cycle& cycle, const QuadratureSpec& spec = {});

// ---- built-in instances --------------------------------------------------

// Elliptically fibered two-chart instance on base charts (z_i, w_i) glued by
// (z1, w1) = (1/z0, z0 w0): unitary transition data with curvature
// (-1/4pi)(dlog z ^ dlog w + conj), Fubini-Study curvings, and the standard
// lifting of the antiholomorphic tangent bundle.  Samples avoid the branch
// cuts of the multivalued connection potential.
GerbeCech hopf_gerbe(int overlap_samples = 12, unsigned seed = 1);

// The gauge (1/4pi) K_i dlog(w_i conj(w_i)) that renders the curvature of
// hopf_gerbe type (1,1).
std::vector<FormField> hopf_gerbe_gauge(const GerbeCech& data);

// Four identity-glued charts on C^2 with nontrivial transition scalars on
// every triple; exercises the quadruple and triple identities a two-chart
// cover cannot see.  The hermitian variant uses unimodular g, the other a
// holomorphic exponential.
GerbeCech quad_cover_gerbe(bool hermitian = true, int overlap_samples = 8, unsigned seed = 2);

// Two identity-glued charts with g = 1, A = 0, B = 0 and the zero lifting.
GerbeCech trivial_gerbe(int overlap_samples = 8, unsigned seed = 3);

// S^1 x S^1 at |z| = |w| = 1 in a two-coordinate complex chart.
Cycle clifford_torus(const ChartPtr& chart);

// Fundamental three-sphere |x1|^2 + |x2|^2 = R^2 of a two-coordinate complex
// chart, oriented so that the odd twist form of the diagonal Hopf surface
// has positive period.
Cycle fundamental_sphere(const ChartPtr& chart, double radius = 1.0);

}  // namespace gkx
