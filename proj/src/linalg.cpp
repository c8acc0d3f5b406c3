#include "gkx/linalg.hpp"

#include <string>

namespace gkx {

// Number of singular values kept at relative tolerance tol, with an explicit
// failure when any value lands inside the ambiguity band.
int singular_rank(const Eigen::VectorXd& sv, double tol, const char* what) {
  if (sv.size() == 0) return 0;
  double smax = sv[0];
  if (smax == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    double rel = sv[i] / smax;
    if (rel > tol / 10.0 && rel < tol * 10.0)
      throw RankAmbiguityError(std::string(what) + ": singular value " + std::to_string(sv[i]) +
                               " inside the ambiguity band of tolerance " + std::to_string(tol));
    if (rel >= tol * 10.0) ++rank;
  }
  return rank;
}

Subspace Subspace::from_columns(const Eigen::MatrixXcd& cols, double tol) {
  if (cols.cols() == 0) return Subspace{Eigen::MatrixXcd(cols.rows(), 0)};
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cols, Eigen::ComputeThinU);
  int rank = singular_rank(svd.singularValues(), tol, "from_columns");
  return Subspace{svd.matrixU().leftCols(rank)};
}

Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return Eigen::MatrixXcd::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  int rank = singular_rank(svd.singularValues(), tol, "nullspace");
  return svd.matrixV().rightCols(m.cols() - rank);
}

Subspace sum(const Subspace& a, const Subspace& b, double tol) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("sum: ambient mismatch");
  Eigen::MatrixXcd joined(a.ambient(), a.dim() + b.dim());
  joined << a.basis, b.basis;
  return Subspace::from_columns(joined, tol);
}

Subspace intersect(const Subspace& a, const Subspace& b, double tol) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("intersect: ambient mismatch");
  if (a.dim() == 0 || b.dim() == 0) return Subspace{Eigen::MatrixXcd(a.ambient(), 0)};
  Eigen::MatrixXcd joined(a.ambient(), a.dim() + b.dim());
  joined << a.basis, -b.basis;
  Eigen::MatrixXcd null = nullspace(joined, tol);
  // a x = b y for (x; y) in the null space; the common vector is a x.
  Eigen::MatrixXcd common = a.basis * null.topRows(a.dim());
  return Subspace::from_columns(common, tol);
}

Subspace quotient_project(const Subspace& a, const Subspace& b, double tol) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("quotient_project: ambient mismatch");
  Eigen::MatrixXcd proj = a.basis - b.basis * (b.basis.adjoint() * a.basis);
  return Subspace::from_columns(proj, tol);
}

double subspace_distance(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("subspace_distance: ambient mismatch");
  if (a.dim() != b.dim()) throw std::invalid_argument("subspace_distance: rank mismatch");
  if (a.dim() == 0) return 0.0;
  // sin of the largest principal angle, computed directly for accuracy.
  Eigen::MatrixXcd rest = a.basis - b.basis * (b.basis.adjoint() * a.basis);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rest);
  return std::min(1.0, svd.singularValues().maxCoeff());
}

double membership_residual(const Subspace& s, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd rest = v - s.basis * (s.basis.adjoint() * v);
  return rest.norm();
}

Subspace perp_pairing(const Subspace& d, const Eigen::MatrixXcd& pairing, double tol) {
  if (pairing.rows() != d.ambient() || pairing.cols() != d.ambient())
    throw std::invalid_argument("perp_pairing: pairing shape");
  Eigen::MatrixXcd constraints = d.basis.transpose() * pairing;  // bilinear, no conjugation
  return Subspace{nullspace(constraints, tol)};
}

Subspace conj_subspace(const Subspace& s, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != s.ambient())
    throw std::invalid_argument("conj_subspace: perm size");
  Eigen::MatrixXcd out(s.ambient(), s.dim());
  for (int i = 0; i < s.ambient(); ++i) out.row(perm[i]) = s.basis.row(i).conjugate();
  return Subspace{out};
}

}  // namespace gkx
