#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace gkx {

inline constexpr double kRankTol = 1e-9;

// Thrown when a singular value falls inside the (tol/10, 10 tol) band and the
// rank decision would be a coin flip.
class RankAmbiguityError : public std::runtime_error {
public:
  explicit RankAmbiguityError(const std::string& what) : std::runtime_error(what) {}
};

// Pointwise subspace given by an orthonormal column basis.
struct Subspace {
  Eigen::MatrixXcd basis;  // ambient x dim, orthonormal columns

  int ambient() const { return static_cast<int>(basis.rows()); }
  int dim() const { return static_cast<int>(basis.cols()); }

  // Rank-revealing construction from an arbitrary spanning set.
  static Subspace from_columns(const Eigen::MatrixXcd& cols, double tol = kRankTol);
};

// Rank at relative tolerance tol; throws RankAmbiguityError when a singular
// value lands inside the (tol/10, 10 tol) band.
int singular_rank(const Eigen::VectorXd& sv, double tol, const char* what);

// Columns spanning the null space of m.
Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& m, double tol = kRankTol);

Subspace sum(const Subspace& a, const Subspace& b, double tol = kRankTol);
Subspace intersect(const Subspace& a, const Subspace& b, double tol = kRankTol);
// Representatives of a modulo b (the projection of a onto b's orthogonal
// complement); dim = dim(a+b) - dim(b).
Subspace quotient_project(const Subspace& a, const Subspace& b, double tol = kRankTol);

// Largest principal-angle sine between equal-rank subspaces.
double subspace_distance(const Subspace& a, const Subspace& b);

// Distance of v from the span (norm of the orthogonal component, for unit v).
double membership_residual(const Subspace& s, const Eigen::VectorXcd& v);

// {v : d^T pairing v = 0 for all d in the subspace} for a bilinear pairing.
Subspace perp_pairing(const Subspace& d, const Eigen::MatrixXcd& pairing, double tol = kRankTol);

// Entrywise conjugate with ambient coordinates permuted by perm (an
// involution), e.g. the chart conjugation on fiber coordinates.
Subspace conj_subspace(const Subspace& s, const std::vector<int>& perm);

}  // namespace gkx
