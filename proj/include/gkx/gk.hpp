#pragma once

#include <span>
#include <string>
#include <vector>

#include "gkx/gc.hpp"
#include "gkx/section.hpp"

namespace gkx {

// Bi-Hermitian data: a metric g with two compatible complex structures and a
// closed torsion 3-form h, presented in the splitting offset by the 2-form b
// (the metric subbundles are the graphs of b + g and b - g).
struct GKInstance {
  MatrixField g;
  MatrixField iplus;
  MatrixField iminus;
  FormField b;
  FormField h;
  std::string name;
  std::vector<ChartMap> symmetries;

  const ChartPtr& chart() const { return g.chart; }
  const MatrixField& endo(int side) const { return side > 0 ? iplus : iminus; }
  // Hermitian 2-form of one side, omega = g I.
  FormField omega(int side) const;
};

struct GKInstanceReport {
  double metric_symmetry = 0;  // max |g - g^T|
  double metric_min = 0;       // smallest eigenvalue of the metric
  double square = 0;           // max |I^2 + 1| over both sides
  double compatibility = 0;    // max |I^T g I - g| over both sides
  double torsion_closed = 0;   // max |dh|
  double tol = 0;

  bool pass() const;
};

GKInstanceReport check_instance(const GKInstance& data, std::span<const Point> samples,
                                double tol = 1e-8);

// A commuting pair of generalized complex structures with a common twist.
struct GKPair {
  GCStructure plus;
  GCStructure minus;
};

// Pair determined by bi-Hermitian data; throws when the data invariants fail
// on the samples.  The common twist is h + db.
GKPair reconstruct(const GKInstance& data, std::span<const Point> samples, double tol = 1e-8);

// Inverse of reconstruct: splits the +-1 eigenbundles of G = -J_+ J_- as
// graphs over the tangent bundle and reads off (g, I_pm, b, h).  Throws when
// G fails to be a positive-definite involution on the samples.
GKInstance extract_bihermitian(const GKPair& pair, std::span<const Point> samples,
                               double tol = 1e-8);

struct GKReport {
  double commutator = 0;  // max |[J_+, J_-]|
  double metric_min = 0;  // smallest eigenvalue of <G . , . >
  GCReport plus;
  GCReport minus;
  double tol = 0;

  bool pass() const;
};

GKReport validate_gk(const GKPair& pair, std::span<const Point> samples, double tol = 1e-8);

struct GKIntegrabilityReport {
  double nijenhuis_plus = 0;
  double nijenhuis_minus = 0;
  double torsion_plus = 0;   // max |d^c_+ omega_+ - h|
  double torsion_minus = 0;  // max |d^c_- omega_- + h|
  double tol = 0;

  bool pass() const;
};

GKIntegrabilityReport check_gk_integrability(const GKInstance& data,
                                             std::span<const Point> samples, double tol = 1e-8);

// The rank-n/2 isotropic frames ell_pm = {X + (b +- g) X : X in T^{1,0}_pm},
// with columns selected by pivoting at the anchor point; their twist is
// h + db.  L_+ = ell_+ (+) ell_-, L_- = ell_+ (+) conj(ell_-).
struct EllFrames {
  DiracFrame plus;
  DiracFrame minus;
};

EllFrames ell_frames(const GKInstance& data, const Point& anchor);

// Real Poisson structure of one side, Q_pm = (I_+ -+ I_-) g^{-1} / 2.
MatrixField gk_q_field(const GKInstance& data, int side);
// Holomorphic Poisson structure of one side: the bivector
// -+ g^{-1} Pbar_pm Pbar_-+ P_pm assembled from the covector projectors
// P = (1 - i I^T)/2; of type (2,0) with respect to I_pm.
MatrixField gk_sigma_field(const GKInstance& data, int side);

struct GKPoisson {
  Eigen::MatrixXcd qplus, qminus;
  Eigen::MatrixXcd sigma_plus, sigma_minus;
  // Disagreement between the two closed forms of Q_pm (endomorphism route
  // versus -(omega_+^{-1} -+ omega_-^{-1})/2).
  double q_cross = 0;
};

GKPoisson gk_poisson(const GKInstance& data, const Point& p);

struct HolCourantReport {
  Eigen::VectorXcd torsion;  // components of T = 2 h^{(2,1)} at p
  double dbar = 0;           // |(d T)^{(2,2)}| at p
  double cocycle = 0;        // |d(T + h^{(3,0)})| at p
};

HolCourantReport hol_courant_operator(const GKInstance& data, int side, const Point& p);

// Frames for the matched pair of Lie algebroids obtained by reducing the
// eigenbundles of J_pm modulo conj(ell_side): `a` collects the directions
// with degenerate anchor along the type-jump locus, `b` its transverse
// partner, and `reduced` is the frame of conj(ell_side) itself.  The
// representatives are orthogonal to `reduced`.
struct ABFrames {
  DiracFrame a;
  DiracFrame b;
  DiracFrame reduced;
};

ABFrames ab_frames(const GKInstance& data, int side, const Point& anchor);

// Membership of the brackets of f in span(f) + span(d) at each sample: the
// involutivity of f as a frame of the Courant reduction by d.
double reduced_involutivity_residual(const DiracFrame& f, const DiracFrame& d,
                                     std::span<const Point> samples);

struct MoritaReport {
  double a_plus = 0;   // distance of span(a_+) + conj(ell_+) to conj(ell_+) + conj(ell_-)
  double a_minus = 0;  // same for the minus side
  double b_conj = 0;   // distance of span(b_+) + conj(ell_+) to the conjugate minus-side span
  double tol = 0;

  bool pass() const;
};

MoritaReport morita_residual(const GKInstance& data, std::span<const Point> samples,
                             double tol = 1e-8);

}  // namespace gkx
