#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gkx/gc.hpp"

using namespace gkx;

namespace {
const cplx I_{0.0, 1.0};

ChartPtr r4() { return Chart::real_chart("R4", {"x", "y", "z", "w"}); }
ChartPtr c2() { return Chart::complex_chart("C2", {"x1", "x2"}); }

std::vector<Point> r4_samples() {
  return {make_real_point(r4(), {0.3, -0.7, 1.1, 0.4}),
          make_real_point(r4(), {1.2, 0.4, -0.6, -0.8}),
          make_real_point(r4(), {-0.9, 0.8, 0.2, 1.3})};
}

std::vector<Point> c2_samples() {
  auto ch = c2();
  return {make_point(ch, {cplx(0.6, 0.3), cplx(-0.4, 0.8)}),
          make_point(ch, {cplx(1.1, -0.2), cplx(0.5, 0.4)}),
          make_point(ch, {cplx(-0.7, 0.6), cplx(-0.9, -0.3)})};
}

// diag(i,...,i,-i,...,-i) on the slots of a complex chart.
MatrixField std_complex_structure(const ChartPtr& ch) {
  int n = ch->nslots();
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) d(k, k) = k < n / 2 ? I_ : -I_;
  return MatrixField::constant(ch, d);
}

FormField flat_omega(const ChartPtr& ch) {
  return FormField::basis(ch, {0, 1}) + FormField::basis(ch, {2, 3});
}

// Exact, nondegenerate, non-constant: d((x + x^3) dy + z dw).
FormField exact_omega(const ChartPtr& ch) {
  ScalarField x = ScalarField::coord(0);
  return (1.0 + 3.0 * x * x) * FormField::basis(ch, {0, 1}) + FormField::basis(ch, {2, 3});
}

// x dy^dz + dx^dw; nondegenerate away from x = 0, not closed.
FormField open_omega(const ChartPtr& ch) {
  return ScalarField::coord(0) * FormField::basis(ch, {1, 2}) + FormField::basis(ch, {0, 3});
}

// sigma = x1 x2 d_1 ^ d_2 as a map T* -> T (components beta^{ij} = m(j,i)).
MatrixField sigma_c2(const ChartPtr& ch) {
  ScalarField f = ScalarField::coord(0) * ScalarField::coord(1);
  MatrixField s = MatrixField::zero(ch, 4, 4);
  s.at(1, 0) = f;
  s.at(0, 1) = -f;
  return s;
}

GCStructure sigma_structure(const ChartPtr& ch) {
  auto pts = c2_samples();
  return jsigma(std_complex_structure(ch), sigma_c2(ch), "sigma", pts);
}

double maxabs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("symplectic and complex structures pass validation") {
  auto ch = r4();
  auto pts = r4_samples();
  for (const FormField& w : {flat_omega(ch), exact_omega(ch)}) {
    GCReport r = validate_gc(jomega(w, FormField::zero(ch, 3), "symp"), pts);
    CHECK(r.pass());
    CHECK(r.square < 1e-10);
    CHECK(r.orthogonality < 1e-10);
    CHECK(r.involutivity < 1e-10);
  }

  auto cch = c2();
  auto cpts = c2_samples();
  CHECK(validate_gc(jcomplex(std_complex_structure(cch), "cx"), cpts).pass());
  CHECK(validate_gc(sigma_structure(cch), cpts).pass());
}

TEST_CASE("non-closed form fails involutivity by the exterior-derivative defect") {
  auto ch = r4();
  auto pts = r4_samples();
  FormField w = open_omega(ch);
  GCReport r = validate_gc(jomega(w, FormField::zero(ch, 3), "open"), pts);
  CHECK(r.square < 1e-10);
  CHECK(r.orthogonality < 1e-10);
  CHECK(r.involutivity > 0.01);
  CHECK(!r.pass());

  // The +i eigenbundle is the graph {X - i w(X)}; on that frame the Courant
  // tensor is -i dw on coordinate triples, so the residual is the largest
  // component of dw.
  std::vector<GSection> secs;
  for (int a = 0; a < 4; ++a)
    secs.push_back(b_transform(cplx(0.0, -1.0) * w, GSection::basis_vector(ch, a)));
  DiracFrame graph{secs, FormField::zero(ch, 3)};
  CHECK(isotropy_residual(graph, pts) < 1e-12);
  double got = involutivity_residual_pairing(graph, pts);
  double expected = 0.0;
  FormField dw = ext_deriv(w);
  for (const Point& p : pts) expected = std::max(expected, dw.max_abs(p));
  CHECK(expected == doctest::Approx(1.0));
  CHECK(std::abs(got - expected) < 1e-9);
}

TEST_CASE("type is zero for symplectic, half-dimension for complex") {
  auto ch = r4();
  GCStructure symp = jomega(exact_omega(ch), FormField::zero(ch, 3), "symp");
  for (const Point& p : r4_samples()) CHECK(gc_type(symp, p) == 0);

  GCStructure cx = jcomplex(std_complex_structure(c2()), "cx");
  for (const Point& p : c2_samples()) CHECK(gc_type(cx, p) == 2);
}

TEST_CASE("poisson block of a symplectic structure is minus the inverse two-form") {
  auto ch = r4();
  FormField w = exact_omega(ch);
  GCStructure s = jomega(w, FormField::zero(ch, 3), "symp");
  MatrixField wmap = map_from_two_form(w);
  for (const Point& p : r4_samples()) {
    Eigen::MatrixXcd q = real_poisson(s, p);
    CHECK(maxabs(q + wmap.value(p).inverse()) < 1e-12);
    CHECK(maxabs(q + q.transpose()) < 1e-12);
  }
}

TEST_CASE("holomorphic poisson structure: construction, imaginary part, zero limit") {
  auto ch = c2();
  auto pts = c2_samples();
  GCStructure s = sigma_structure(ch);

  for (const Point& p : pts) {
    cplx f = p.coords[0] * p.coords[1];
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
    expected(1, 0) = -0.5 * I_ * f;
    expected(0, 1) = 0.5 * I_ * f;
    expected(3, 2) = 0.5 * I_ * std::conj(f);
    expected(2, 3) = -0.5 * I_ * std::conj(f);
    CHECK(maxabs(real_poisson(s, p) - expected) < 1e-12);
  }

  // sigma = 0 degenerates to the complex-type structure.
  GCStructure zero = jsigma(std_complex_structure(ch), MatrixField::zero(ch, 4, 4), "z", pts);
  GCStructure cx = jcomplex(std_complex_structure(ch), "cx");
  for (const Point& p : pts) CHECK(maxabs(zero.j.value(p) - cx.j.value(p)) < 1e-15);
}

TEST_CASE("b-field conjugation of a holomorphic poisson structure") {
  auto ch = c2();
  auto pts = c2_samples();
  GCStructure s = sigma_structure(ch);
  MatrixField iend = std_complex_structure(ch);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      b(i, j) = cplx(u(rng), u(rng));
      b(j, i) = -b(i, j);
    }
  MatrixField bf = MatrixField::constant(ch, b);
  MatrixField id = MatrixField::identity(ch, 4);
  MatrixField z = MatrixField::zero(ch, 4, 4);
  MatrixField conj = block2(id, z, bf, id) * s.j * block2(id, z, cplx(-1.0) * bf, id);

  for (const Point& p : pts) {
    Eigen::MatrixXcd c = conj.value(p);
    Eigen::MatrixXcd iv = iend.value(p);
    Eigen::MatrixXcd it = iv.transpose();
    Eigen::MatrixXcd q = real_poisson(s, p);
    CHECK(maxabs(c.block(0, 0, 4, 4) - (iv - q * b)) < 1e-12);
    CHECK(maxabs(c.block(0, 4, 4, 4) - q) < 1e-12);
    CHECK(maxabs(c.block(4, 0, 4, 4) - (it * b + b * iv - b * q * b)) < 1e-12);
    CHECK(maxabs(c.block(4, 4, 4, 4) - (b * q - it)) < 1e-12);
  }
}

TEST_CASE("eigenframes: rank, isotropy, conjugate pairing, and full-fiber sum") {
  auto rch = r4();
  auto cch = c2();
  std::vector<GCStructure> structures = {
      jomega(flat_omega(rch), FormField::zero(rch, 3), "flat"),
      jomega(exact_omega(rch), FormField::zero(rch, 3), "exact"),
      jcomplex(std_complex_structure(cch), "cx"), sigma_structure(cch)};

  for (const GCStructure& s : structures) {
    int n = s.chart()->nslots();
    Eigen::MatrixXcd q = neutral_pairing(n);
    auto pts = s.chart()->is_real() ? r4_samples() : c2_samples();
    for (const Point& p : pts) {
      Subspace plus = eigenframe(s, p, +1);
      Subspace minus = eigenframe(s, p, -1);
      CHECK(plus.dim() == n);
      CHECK(minus.dim() == n);
      CHECK(maxabs(plus.basis.transpose() * q * plus.basis) < 1e-10);
      CHECK(maxabs(minus.basis.transpose() * q * minus.basis) < 1e-10);

      Subspace conj = conj_subspace(plus, fiber_conj_perm(s.chart()));
      CHECK(subspace_distance(conj, minus) < 1e-9);
      CHECK(intersect(plus, minus).dim() == 0);
      CHECK(sum(plus, minus).dim() == 2 * n);

      // Direct eigen-decomposition oracle.
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(s.j.value(p));
      Eigen::MatrixXcd cols(2 * n, n);
      int c = 0;
      for (int k = 0; k < 2 * n; ++k)
        if (std::abs(es.eigenvalues()(k) - I_) < 1e-6) cols.col(c++) = es.eigenvectors().col(k);
      REQUIRE(c == n);
      CHECK(subspace_distance(Subspace::from_columns(cols), plus) < 1e-8);
    }
  }
}

TEST_CASE("complex-type and symplectic eigenframes are the expected graphs") {
  auto cch = c2();
  GCStructure cx = jcomplex(std_complex_structure(cch), "cx");
  Point pc = c2_samples()[0];
  Subspace l = eigenframe(cx, pc, +1);
  // T^{1,0} plus the conjugate covectors.
  for (int idx : {0, 1, 6, 7}) CHECK(membership_residual(l, Eigen::VectorXcd::Unit(8, idx)) < 1e-10);

  auto rch = r4();
  FormField w = exact_omega(rch);
  GCStructure symp = jomega(w, FormField::zero(rch, 3), "symp");
  MatrixField wmap = map_from_two_form(w);
  for (const Point& p : r4_samples()) {
    Subspace ls = eigenframe(symp, p, +1);
    Eigen::MatrixXcd wv = wmap.value(p);
    for (int a = 0; a < 4; ++a) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
      v(a) = 1.0;
      v.tail(4) = -I_ * wv.col(a);
      CHECK(membership_residual(ls, v.normalized()) < 1e-10);
    }
  }
}

TEST_CASE("type drops on the bivector vanishing locus with constant parity") {
  auto ch = c2();
  GCStructure s = sigma_structure(ch);
  std::vector<int> types;
  for (double t : {0.0, 0.3, 0.6, 1.0})
    types.push_back(gc_type(s, make_point(ch, {cplx(t, 0.0), cplx(0.9, 0.1)})));
  CHECK(types[0] == 2);
  CHECK(types[1] == 0);
  CHECK(types[2] == 0);
  CHECK(types[3] == 0);
  for (int t : types) CHECK(t % 2 == 0);

  // Along the same path the complex-type structure stays at full type.
  GCStructure cx = jcomplex(std_complex_structure(ch), "cx");
  for (double t : {0.0, 0.5, 1.0})
    CHECK(gc_type(cx, make_point(ch, {cplx(t, 0.2), cplx(0.9, 0.1)})) == 2);
}

TEST_CASE("validated structures have poisson blocks satisfying jacobi") {
  auto rch = r4();
  auto cch = c2();
  std::vector<GCStructure> structures = {
      jomega(flat_omega(rch), FormField::zero(rch, 3), "flat"),
      jomega(exact_omega(rch), FormField::zero(rch, 3), "exact"),
      jcomplex(std_complex_structure(cch), "cx"), sigma_structure(cch)};
  for (const GCStructure& s : structures) {
    MatrixField q = poisson_block(s);
    auto pts = s.chart()->is_real() ? r4_samples() : c2_samples();
    for (const Point& p : pts) {
      CHECK(maxabs(q.value(p) - real_poisson(s, p)) < 1e-14);
      CHECK(schouten_residual(q, p) < 1e-8);
    }
  }
}

TEST_CASE("defective structures: isolated residuals, ambiguous rank, merged clusters") {
  auto ch = c2();
  auto pts = c2_samples();
  MatrixField iend = std_complex_structure(ch);
  MatrixField z = MatrixField::zero(ch, 4, 4);
  FormField h0 = FormField::zero(ch, 3);

  GCStructure scaled{cplx(2.0) * jcomplex(iend, "cx").j, h0, "scaled"};
  GCReport rs = validate_gc(scaled, pts);
  CHECK(rs.square == doctest::Approx(3.0));
  CHECK(rs.orthogonality == doctest::Approx(1.5));
  CHECK(!rs.pass());

  // Wrong sign on the cotangent block: orthogonality alone breaks.
  GCStructure flipped{block2(iend, z, z, iend.transpose()), h0, "flipped"};
  GCReport rf = validate_gc(flipped, pts);
  CHECK(rf.square < 1e-12);
  CHECK(rf.involutivity < 1e-12);
  CHECK(rf.orthogonality == doctest::Approx(1.0));
  CHECK(!rf.pass());

  auto rch = r4();
  Point rp = r4_samples()[0];
  Eigen::MatrixXcd qa = Eigen::MatrixXcd::Zero(4, 4);
  qa(0, 1) = 1.0;
  qa(1, 0) = -1.0;
  qa(2, 3) = 1e-9;
  qa(3, 2) = -1e-9;
  MatrixField z4 = MatrixField::zero(rch, 4, 4);
  GCStructure amb{block2(z4, MatrixField::constant(rch, qa), z4, z4), FormField::zero(rch, 3),
                  "amb"};
  CHECK_THROWS_AS(gc_type(amb, rp), RankAmbiguityError);

  GCStructure far{MatrixField::constant(rch, 2.0 * I_ * Eigen::MatrixXcd::Identity(8, 8)),
                  FormField::zero(rch, 3), "far"};
  CHECK_THROWS_WITH_AS(eigenframe(far, rp, +1), doctest::Contains("not separated"),
                       std::runtime_error);
}

TEST_CASE("holomorphic poisson constructor rejects bad input") {
  auto rch = r4();
  auto rpts = r4_samples();

  // x-dependent conjugate of the standard structure is almost complex but
  // not integrable.
  Eigen::MatrixXcd j0 = Eigen::MatrixXcd::Zero(4, 4);
  j0(1, 0) = 1.0;
  j0(0, 1) = -1.0;
  j0(3, 2) = 1.0;
  j0(2, 3) = -1.0;
  MatrixField frame = MatrixField::identity(rch, 4);
  frame.at(2, 3) = ScalarField::coord(0);
  MatrixField twisted = frame * MatrixField::constant(rch, j0) * inverse(frame);
  CHECK(nijenhuis_residual(twisted, rpts[0]) > 0.01);
  for (const Point& p : rpts) CHECK(maxabs(twisted.value(p) * twisted.value(p) +
                                           Eigen::MatrixXcd::Identity(4, 4)) < 1e-12);
  CHECK_THROWS_WITH_AS(jsigma(twisted, MatrixField::zero(rch, 4, 4), "bad", rpts),
                       doctest::Contains("not integrable"), std::invalid_argument);

  auto ch = c2();
  auto pts = c2_samples();
  MatrixField iend = std_complex_structure(ch);
  MatrixField mixed = MatrixField::zero(ch, 4, 4);
  mixed.at(0, 2) = ScalarField::constant(1.0);
  mixed.at(2, 0) = ScalarField::constant(-1.0);
  CHECK_THROWS_WITH_AS(jsigma(iend, mixed, "bad", pts), doctest::Contains("type (2,0)"),
                       std::invalid_argument);

  // d_1^d_2 + u2 d_3^d_4 is (2,0) but fails Jacobi.
  auto c4 = Chart::complex_chart("C4", {"u1", "u2", "u3", "u4"});
  std::vector<Point> p4 = {make_point(
      c4, {cplx(0.4, 0.1), cplx(0.7, -0.3), cplx(-0.5, 0.6), cplx(0.8, 0.2)})};
  Eigen::MatrixXcd d8 = Eigen::MatrixXcd::Zero(8, 8);
  for (int k = 0; k < 8; ++k) d8(k, k) = k < 4 ? I_ : -I_;
  MatrixField s8 = MatrixField::zero(c4, 8, 8);
  s8.at(1, 0) = ScalarField::constant(1.0);
  s8.at(0, 1) = ScalarField::constant(-1.0);
  s8.at(3, 2) = ScalarField::coord(1);
  s8.at(2, 3) = -ScalarField::coord(1);
  CHECK_THROWS_WITH_AS(jsigma(MatrixField::constant(c4, d8), s8, "bad", p4),
                       doctest::Contains("Jacobi"), std::invalid_argument);
}
