#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>

#include "gkx/linalg.hpp"

using namespace gkx;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {
VectorXcd unit(int n, int i) {
  VectorXcd v = VectorXcd::Zero(n);
  v[i] = 1.0;
  return v;
}
}  // namespace

TEST_CASE("rank-revealing construction") {
  MatrixXcd cols(3, 3);
  cols.col(0) = unit(3, 0);
  cols.col(1) = unit(3, 1);
  cols.col(2) = unit(3, 0) + unit(3, 1);  // dependent
  Subspace s = Subspace::from_columns(cols);
  CHECK(s.dim() == 2);
  CHECK((s.basis.adjoint() * s.basis - MatrixXcd::Identity(2, 2)).norm() < 1e-12);

  Subspace empty = Subspace::from_columns(MatrixXcd(4, 0));
  CHECK(empty.dim() == 0);
  CHECK(empty.ambient() == 4);
}

TEST_CASE("ambiguous singular values are reported") {
  MatrixXcd cols = MatrixXcd::Zero(2, 2);
  cols(0, 0) = 1.0;
  cols(1, 1) = 3e-9;  // relative 3e-9 sits inside (1e-10, 1e-8)
  CHECK_THROWS_AS(Subspace::from_columns(cols, 1e-9), RankAmbiguityError);
  CHECK_NOTHROW(Subspace::from_columns(cols, 1e-4));
}

TEST_CASE("intersection, sum, quotient") {
  int n = 4;
  Subspace a = Subspace::from_columns((MatrixXcd(n, 2) << unit(n, 0), unit(n, 1)).finished());
  Subspace b = Subspace::from_columns((MatrixXcd(n, 2) << unit(n, 1), unit(n, 2)).finished());

  Subspace cap = intersect(a, b);
  CHECK(cap.dim() == 1);
  CHECK(membership_residual(cap, unit(n, 1)) < 1e-12);
  CHECK(std::abs(std::abs(cap.basis.col(0)[1]) - 1.0) < 1e-12);

  Subspace tot = sum(a, b);
  CHECK(tot.dim() == 3);
  CHECK(subspace_distance(tot, Subspace::from_columns((MatrixXcd(n, 3) << unit(n, 0), unit(n, 1),
                                                       unit(n, 2))
                                                          .finished())) < 1e-12);

  // a contained in b: sum equals b
  Subspace line = Subspace::from_columns(unit(n, 2));
  CHECK(subspace_distance(sum(line, b), b) < 1e-12);

  // span(e1+e2) mod span(e2) has representative e1
  Subspace diag = Subspace::from_columns(unit(n, 0) + unit(n, 1));
  Subspace e2 = Subspace::from_columns(unit(n, 1));
  Subspace q = quotient_project(diag, e2);
  CHECK(q.dim() == 1);
  CHECK(subspace_distance(q, Subspace::from_columns(unit(n, 0))) < 1e-12);
}

TEST_CASE("dimension law") {
  MatrixXcd ma(5, 2), mb(5, 3);
  ma << 1, 0, 2, 1, 0, 3, 1, 1, 0, 2;
  mb << 1, 0, 1, 0, 1, 1, 3, 0, 0, 0, 1, 2, 1, 1, 0;
  Subspace a = Subspace::from_columns(ma);
  Subspace b = Subspace::from_columns(mb);
  CHECK(intersect(a, b).dim() + sum(a, b).dim() == a.dim() + b.dim());
}

TEST_CASE("principal-angle distance") {
  Subspace e1 = Subspace::from_columns(unit(2, 0));
  CHECK(subspace_distance(e1, e1) == 0.0);
  CHECK(std::abs(subspace_distance(e1, Subspace::from_columns(unit(2, 1))) - 1.0) < 1e-12);

  double eps = 1e-3;
  VectorXcd tilted = unit(2, 0) + eps * unit(2, 1);
  double expect = eps / std::sqrt(1.0 + eps * eps);
  CHECK(std::abs(subspace_distance(e1, Subspace::from_columns(tilted)) - expect) < 1e-12);

  CHECK_THROWS_AS(subspace_distance(e1, Subspace::from_columns((MatrixXcd(2, 2) << 1, 0, 0, 1)
                                                                    .finished())),
                  std::invalid_argument);
}

TEST_CASE("null spaces and bilinear perps") {
  MatrixXcd m(2, 2);
  m << 1, 1, 1, 1;
  MatrixXcd nsp = nullspace(m);
  CHECK(nsp.cols() == 1);
  CHECK((m * nsp).norm() < 1e-12);

  // T + T* over a 2d chart, coordinates (X^1, X^2, xi_1, xi_2); the split
  // pairing is <X+xi, Y+eta> = (xi(Y) + eta(X))/2.
  MatrixXcd pm = MatrixXcd::Zero(4, 4);
  pm.block(0, 2, 2, 2) = 0.5 * MatrixXcd::Identity(2, 2);
  pm.block(2, 0, 2, 2) = 0.5 * MatrixXcd::Identity(2, 2);

  Subspace dx = Subspace::from_columns(unit(4, 0));  // the vector d/dx1
  Subspace perp = perp_pairing(dx, pm);
  CHECK(perp.dim() == 3);
  CHECK(membership_residual(perp, unit(4, 0)) < 1e-12);  // isotropic vector
  CHECK(membership_residual(perp, unit(4, 1)) < 1e-12);
  CHECK(membership_residual(perp, unit(4, 3)) < 1e-12);
  CHECK(membership_residual(perp, unit(4, 2)) > 0.9);  // dx1 pairs with d/dx1

  // the graph of an antisymmetric form is maximal isotropic: perp = itself
  MatrixXcd graph(4, 2);
  graph.setZero();
  graph(0, 0) = 1.0;
  graph(3, 0) = 1.0;  // e1 + dx2 = e1 + B(e1,.) for B = dx1^dx2
  graph(1, 1) = 1.0;
  graph(2, 1) = -1.0;  // e2 - dx1
  Subspace L = Subspace::from_columns(graph);
  CHECK(subspace_distance(perp_pairing(L, pm), L) < 1e-12);
}

TEST_CASE("conjugation with slot permutation") {
  std::vector<int> perm{1, 0, 3, 2};
  MatrixXcd cols(4, 1);
  cols << std::complex<double>(1, 2), 0, std::complex<double>(0, 1), 0;
  Subspace s = Subspace::from_columns(cols);
  Subspace sc = conj_subspace(s, perm);
  CHECK(std::abs(sc.basis(1, 0) - std::conj(s.basis(0, 0))) < 1e-12);
  CHECK(std::abs(sc.basis(3, 0) - std::conj(s.basis(2, 0))) < 1e-12);
  Subspace back = conj_subspace(sc, perm);
  CHECK(subspace_distance(back, s) < 1e-12);
}

TEST_CASE("membership residual") {
  Subspace s = Subspace::from_columns((MatrixXcd(3, 2) << 1, 0, 0, 1, 0, 0).finished());
  CHECK(membership_residual(s, unit(3, 0) + 2.0 * unit(3, 1)) < 1e-12);
  CHECK(std::abs(membership_residual(s, unit(3, 2)) - 1.0) < 1e-12);
}
