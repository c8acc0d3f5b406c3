#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <vector>

#include "gkx/forms.hpp"

using namespace gkx;

namespace {
const cplx I_{0.0, 1.0};

ChartPtr r2() { return Chart::real_chart("R2", {"x", "y"}); }
ChartPtr r3() { return Chart::real_chart("R3", {"x", "y", "z"}); }
ChartPtr r4() { return Chart::real_chart("R4", {"x1", "x2", "x3", "x4"}); }
ChartPtr c1() { return Chart::complex_chart("C1", {"z"}); }
ChartPtr c2() { return Chart::complex_chart("C2", {"z", "w"}); }

double form_diff(const FormField& a, const FormField& b, const Point& p) {
  Eigen::VectorXcd va = a.value(p), vb = b.value(p);
  REQUIRE(va.size() == vb.size());
  return va.size() == 0 ? 0.0 : (va - vb).cwiseAbs().maxCoeff();
}
}  // namespace

TEST_CASE("combination tables rank their own tuples") {
  auto T = CombTable::get(6, 3);
  CHECK(T->size() == 20);
  for (int r = 0; r < T->size(); ++r) CHECK(T->rank(T->tuple(r)) == r);
  CHECK(CombTable::get(4, 0)->size() == 1);
  CHECK(CombTable::get(4, 5)->size() == 0);

  std::vector<int> v{3, 1, 2};
  CHECK(CombTable::sort_sign(v) == 1);  // two transpositions
  CHECK(v == std::vector<int>{1, 2, 3});
  std::vector<int> w{1, 0};
  CHECK(CombTable::sort_sign(w) == -1);
  std::vector<int> u{2, 2};
  CHECK(CombTable::sort_sign(u) == 0);
}

TEST_CASE("exterior derivative on coordinate forms") {
  auto C = r2();
  Point p = make_real_point(C, {0.7, -0.4});
  auto x = ScalarField::coord(0);
  auto y = ScalarField::coord(1);

  // d(x dy) = dx ^ dy
  FormField xdy = x * FormField::basis(C, {1});
  FormField d1 = ext_deriv(xdy);
  CHECK(form_diff(d1, FormField::basis(C, {0, 1}), p) < 1e-14);

  // d(dx) = 0
  CHECK(ext_deriv(FormField::basis(C, {0})).max_abs(p) < 1e-14);

  // d(y dx + x dy) = 0
  FormField exact = y * FormField::basis(C, {0}) + x * FormField::basis(C, {1});
  CHECK(ext_deriv(exact).max_abs(p) < 1e-14);
}

TEST_CASE("d squared vanishes") {
  auto C = r3();
  Point p = make_real_point(C, {0.3, 1.1, -0.6});
  auto x = ScalarField::coord(0);
  auto y = ScalarField::coord(1);
  auto z = ScalarField::coord(2);
  auto f = x * y * z + exp(x * y) + log(2.0 + z * z);

  FormField df = ext_deriv(FormField::scalar(C, f));
  CHECK(ext_deriv(df).max_abs(p) < 1e-12);

  FormField a = f * FormField::basis(C, {0}) + (x * x * z) * FormField::basis(C, {2});
  CHECK(ext_deriv(ext_deriv(a)).max_abs(p) < 1e-12);
}

TEST_CASE("wedge algebra") {
  auto C = r4();
  Point p = make_real_point(C, {0.5, -0.2, 0.9, 0.1});
  auto x1 = ScalarField::coord(0);
  auto x3 = ScalarField::coord(2);

  FormField a = x1 * FormField::basis(C, {0}) + FormField::basis(C, {1});
  FormField b = x3 * FormField::basis(C, {2}) + x1 * FormField::basis(C, {1});
  FormField c = FormField::basis(C, {3}) + x1 * FormField::basis(C, {2});

  CHECK(form_diff(wedge(a, b), -1.0 * wedge(b, a), p) < 1e-14);
  CHECK(wedge(a, a).max_abs(p) < 1e-14);
  CHECK(form_diff(wedge(wedge(a, b), c), wedge(a, wedge(b, c)), p) < 1e-13);
  // Leibniz: d(a ^ b) = da ^ b - a ^ db for 1-forms
  CHECK(form_diff(ext_deriv(wedge(a, b)),
                  wedge(ext_deriv(a), b) - wedge(a, ext_deriv(b)), p) < 1e-13);
  // (dx^dy)(dx-slot basis vectors) = 1 via contraction
  FormField dxdy = wedge(FormField::basis(C, {0}), FormField::basis(C, {1}));
  CHECK(form_diff(dxdy, FormField::basis(C, {0, 1}), p) < 1e-14);
}

TEST_CASE("interior product and contraction") {
  auto C = r3();
  Point p = make_real_point(C, {0.2, 0.8, -0.5});
  VecField ex = VecField::basis(C, 0);
  VecField ey = VecField::basis(C, 1);

  FormField dxdy = FormField::basis(C, {0, 1});
  CHECK(form_diff(interior(ex, dxdy), FormField::basis(C, {1}), p) < 1e-14);
  CHECK(form_diff(interior(ey, dxdy), -1.0 * FormField::basis(C, {0}), p) < 1e-14);

  // i_X i_X a = 0
  auto y = ScalarField::coord(1);
  VecField X = y * ex + ey;
  FormField H = FormField::basis(C, {0, 1, 2});
  CHECK(interior(X, interior(X, H)).max_abs(p) < 1e-14);

  // i_X(a^b) = a(X) b - b(X) a for 1-forms
  FormField a = y * FormField::basis(C, {0});
  FormField b = FormField::basis(C, {2});
  FormField lhs = interior(X, wedge(a, b));
  FormField rhs = contract(a, {X}) * b - contract(b, {X}) * a;
  CHECK(form_diff(lhs, rhs, p) < 1e-13);

  // slot order: i_ex i_ey (dx^dy^dz) = H(ey, ex, .) = -dz
  FormField tw = interior(ex, interior(ey, H));
  CHECK(form_diff(tw, -1.0 * FormField::basis(C, {2}), p) < 1e-14);
  CHECK(std::abs(contract(H, {ex, ey, VecField::basis(C, 2)}).value(p) - 1.0) < 1e-14);
}

TEST_CASE("vector field bracket") {
  auto C = r2();
  Point p = make_real_point(C, {1.3, 0.4});
  auto x = ScalarField::coord(0);
  VecField ex = VecField::basis(C, 0);
  VecField ey = VecField::basis(C, 1);

  VecField br = lie_bracket(ex, x * ey);
  CHECK((br.value(p) - ey.value(p)).cwiseAbs().maxCoeff() < 1e-14);

  auto y = ScalarField::coord(1);
  VecField X = (x * y) * ex + ey;
  VecField Y = x * ey;
  VecField Z = y * ex + (x * x) * ey;
  VecField jac = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) +
                 lie_bracket(Z, lie_bracket(X, Y));
  CHECK(jac.value(p).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Lie derivative via Cartan") {
  auto C = r3();
  Point p = make_real_point(C, {0.4, -0.7, 0.2});
  auto x = ScalarField::coord(0);
  auto z = ScalarField::coord(2);
  VecField X = z * VecField::basis(C, 0) + (x * x) * VecField::basis(C, 2);
  FormField a = (x * z) * FormField::basis(C, {1}) + FormField::basis(C, {0});

  CHECK(form_diff(lie_derivative(X, ext_deriv(a)), ext_deriv(lie_derivative(X, a)), p) < 1e-12);

  VecField Y = x * VecField::basis(C, 1);
  FormField lhs = lie_derivative(lie_bracket(X, Y), a);
  FormField rhs = lie_derivative(X, lie_derivative(Y, a)) -
                  lie_derivative(Y, lie_derivative(X, a));
  CHECK(form_diff(lhs, rhs, p) < 1e-12);
}

TEST_CASE("form pullback") {
  auto S = Chart::real_chart("UV", {"u", "v"});
  auto T = r2();
  auto u = ScalarField::coord(0);
  auto v = ScalarField::coord(1);
  ChartMap phi{S, T, {u * u, v + u}};

  Point ps = make_real_point(S, {0.8, 0.3});
  FormField vol = FormField::basis(T, {0, 1});
  FormField pb = pullback(phi, vol);
  // det Jacobian of (u^2, v+u) is 2u
  CHECK(std::abs(pb.value(ps)[0] - 1.6) < 1e-13);

  auto x = ScalarField::coord(0);
  FormField a = x * FormField::basis(T, {1});
  CHECK(form_diff(pullback(phi, ext_deriv(a)), ext_deriv(pullback(phi, a)), ps) < 1e-12);
  FormField b = FormField::basis(T, {0});
  CHECK(form_diff(pullback(phi, wedge(a, b)), wedge(pullback(phi, a), pullback(phi, b)), ps) <
        1e-12);
}

TEST_CASE("matrix fields multiply, invert, and block") {
  auto C = r2();
  Point p = make_real_point(C, {0.6, 1.2});
  auto x = ScalarField::coord(0);
  auto y = ScalarField::coord(1);

  MatrixField M = MatrixField::identity(C, 2);
  M.at(0, 0) = 1.0 + x * x;
  M.at(0, 1) = y;
  M.at(1, 0) = ScalarField::constant(0.5);
  MatrixField Minv = inverse(M);
  MatrixField prod = M * Minv;

  Eigen::MatrixXcd idv = prod.value(p);
  CHECK((idv - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-13);
  // derivative of M M^-1 is zero too (jet-level correctness of the inverse)
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(prod.at(i, j).partial(0).value(p)) < 1e-12);
      CHECK(std::abs(prod.at(i, j).partial(1).value(p)) < 1e-12);
    }

  VecField w = apply(M, VecField::basis(C, 1));
  CHECK(std::abs(w.value(p)[0] - 1.2) < 1e-14);

  MatrixField B = block2(M, MatrixField::zero(C, 2, 2), MatrixField::zero(C, 2, 2),
                         MatrixField::identity(C, 2));
  CHECK(B.rows == 4);
  CHECK(std::abs(B.value(p)(0, 1) - 1.2) < 1e-14);
  CHECK(std::abs(B.value(p)(3, 3) - 1.0) < 1e-14);
}

TEST_CASE("two-form map conversions") {
  auto C = r3();
  Point p = make_real_point(C, {0.9, 0.1, -0.3});
  auto x = ScalarField::coord(0);

  FormField w = x * FormField::basis(C, {0, 1}) + FormField::basis(C, {1, 2});
  MatrixField m = map_from_two_form(w);
  CHECK(form_diff(two_form_from_map(m), w, p) < 1e-14);
  // (map X)(Y) = w(X, Y)
  VecField ex = VecField::basis(C, 0);
  VecField ey = VecField::basis(C, 1);
  Eigen::VectorXcd mx = apply(m, ex).value(p);
  CHECK(std::abs(mx[1] - contract(w, {ex, ey}).value(p)) < 1e-14);
}

TEST_CASE("type projection with the standard complex structure") {
  auto C = c2();  // slots z, w, conj z, conj w
  Point p = make_point(C, {cplx{0.4, 0.7}, cplx{-0.6, 0.2}});
  Eigen::MatrixXcd Iv = Eigen::MatrixXcd::Zero(4, 4);
  Iv(0, 0) = Iv(1, 1) = I_;
  Iv(2, 2) = Iv(3, 3) = -I_;
  MatrixField I = MatrixField::constant(C, Iv);

  FormField a11 = FormField::basis(C, {0, 2});  // dz ^ dzbar
  CHECK(form_diff(type_project(a11, I, 1, 1), a11, p) < 1e-13);
  CHECK(type_project(a11, I, 2, 0).max_abs(p) < 1e-13);

  FormField mix = FormField::basis(C, {0, 1}) + FormField::basis(C, {0, 3});
  CHECK(form_diff(type_project(mix, I, 2, 0), FormField::basis(C, {0, 1}), p) < 1e-13);
  CHECK(form_diff(type_project(mix, I, 1, 1), FormField::basis(C, {0, 3}), p) < 1e-13);
}

TEST_CASE("type projection resolves the identity for non-standard structures") {
  auto C = c2();
  Point p = make_point(C, {cplx{0.5, 0.1}, cplx{0.3, -0.8}});
  Eigen::MatrixXcd Iv = Eigen::MatrixXcd::Zero(4, 4);
  Iv(0, 0) = Iv(1, 1) = I_;
  Iv(2, 2) = Iv(3, 3) = -I_;
  Eigen::MatrixXcd S(4, 4);
  S << 1, 0.3, 0, cplx(0, 0.2), 0, 1, 0.1, 0, 0.2, 0, 1, 0, 0, cplx(0.1, 0.1), 0, 1;
  Eigen::MatrixXcd Icv = S * Iv * S.inverse();
  MatrixField I = MatrixField::constant(C, Icv);

  auto z = ScalarField::coord(0);
  auto wb = ScalarField::coord(3);
  FormField a = z * FormField::basis(C, {0, 1}) + wb * FormField::basis(C, {1, 2}) +
                FormField::basis(C, {2, 3});
  FormField sum = FormField::zero(C, 2);
  for (int pp = 0; pp <= 2; ++pp) sum = sum + type_project(a, I, pp, 2 - pp);
  CHECK(form_diff(sum, a, p) < 1e-12);

  FormField a3 = z * FormField::basis(C, {0, 1, 2}) + FormField::basis(C, {1, 2, 3});
  FormField sum3 = FormField::zero(C, 3);
  for (int pp = 0; pp <= 3; ++pp) sum3 = sum3 + type_project(a3, I, pp, 3 - pp);
  CHECK(form_diff(sum3, a3, p) < 1e-12);

  // projections are idempotent
  FormField pr = type_project(a, I, 1, 1);
  CHECK(form_diff(type_project(pr, I, 1, 1), pr, p) < 1e-12);
  CHECK(type_project(pr, I, 2, 0).max_abs(p) < 1e-12);
}

TEST_CASE("dc operator on the standard structure") {
  auto C = c1();
  Point p = make_point(C, {cplx{0.6, -0.3}});
  cplx z0 = p.coords[0];
  Eigen::MatrixXcd Iv(2, 2);
  Iv << I_, 0, 0, -I_;
  MatrixField I = MatrixField::constant(C, Iv);

  auto z = ScalarField::coord(0);
  auto zb = ScalarField::coord(1);
  // d^c(z zbar) = i(z dzbar - zbar dz)
  FormField dcf = dc(FormField::scalar(C, z * zb), I);
  CHECK(std::abs(dcf.value(p)[0] - (-I_ * std::conj(z0))) < 1e-13);
  CHECK(std::abs(dcf.value(p)[1] - (I_ * z0)) < 1e-13);

  // dd^c = -d^c d on functions
  auto f = z * z * zb + zb * zb;
  FormField lhs = ext_deriv(dc(FormField::scalar(C, f), I));
  FormField rhs = dc(ext_deriv(FormField::scalar(C, f)), I);
  CHECK(form_diff(lhs, -1.0 * rhs, p) < 1e-12);
}

TEST_CASE("dc of a real (1,1) form is real") {
  auto C = c2();
  Point p = make_point(C, {cplx{0.9, 0.2}, cplx{-0.4, 0.5}});
  Eigen::MatrixXcd Iv = Eigen::MatrixXcd::Zero(4, 4);
  Iv(0, 0) = Iv(1, 1) = I_;
  Iv(2, 2) = Iv(3, 3) = -I_;
  MatrixField I = MatrixField::constant(C, Iv);

  auto z = ScalarField::coord(0);
  auto zb = ScalarField::coord(2);
  FormField w = (I_ * (1.0 + z * zb)) * FormField::basis(C, {0, 2}) +
                I_ * FormField::basis(C, {1, 3});
  CHECK(form_diff(w.conj(), w, p) < 1e-13);  // w is real

  FormField dcw = dc(w, I);
  CHECK(form_diff(dcw.conj(), dcw, p) < 1e-12);

  // dd^c = -d^c d on 2-forms too
  CHECK(form_diff(ext_deriv(dcw), -1.0 * dc(ext_deriv(w), I), p) < 1e-11);
}

TEST_CASE("Nijenhuis tensor detects non-integrability") {
  auto C = r4();
  Point p = make_real_point(C, {0.3, 1.0, 0.2, -0.5});

  Eigen::MatrixXcd Jv = Eigen::MatrixXcd::Zero(4, 4);
  Jv(0, 1) = -1;
  Jv(1, 0) = 1;
  Jv(2, 3) = -1;
  Jv(3, 2) = 1;
  CHECK(nijenhuis_residual(MatrixField::constant(C, Jv), p) < 1e-14);

  auto x2 = ScalarField::coord(1);
  auto f = 1.0 + x2 * x2;
  MatrixField I = MatrixField::zero(C, 4, 4);
  I.at(0, 1) = ScalarField::constant(-1.0);
  I.at(1, 0) = ScalarField::constant(1.0);
  I.at(2, 3) = -f;
  I.at(3, 2) = 1.0 / f;
  // I^2 = -1 but dependence of f on x2 obstructs integrability
  CHECK(nijenhuis_residual(I, p) > 0.1);
}

TEST_CASE("Schouten residual distinguishes Poisson bivectors") {
  auto C3 = r3();
  Point p3 = make_real_point(C3, {0.7, -0.2, 0.4});
  auto x = ScalarField::coord(0);
  auto y = ScalarField::coord(1);
  auto z = ScalarField::coord(2);
  // so(3)-type bivector: b^{yz} = x, b^{zx} = y, b^{xy} = z
  MatrixField so3 = MatrixField::zero(C3, 3, 3);
  so3.at(2, 1) = x;
  so3.at(1, 2) = -x;
  so3.at(0, 2) = y;
  so3.at(2, 0) = -y;
  so3.at(1, 0) = z;
  so3.at(0, 1) = -z;
  CHECK(schouten_residual(so3, p3) < 1e-13);

  auto C4 = r4();
  Point p4 = make_real_point(C4, {0.1, 0.9, -0.4, 0.6});
  auto t2 = ScalarField::coord(1);
  MatrixField bad = MatrixField::zero(C4, 4, 4);
  bad.at(1, 0) = ScalarField::constant(1.0);
  bad.at(0, 1) = ScalarField::constant(-1.0);
  bad.at(3, 2) = t2;
  bad.at(2, 3) = -t2;
  CHECK(std::abs(schouten_residual(bad, p4) - 1.0) < 1e-13);
}

TEST_CASE("form and vector conjugation on complex charts") {
  auto C = c2();
  Point p = make_point(C, {cplx{0.3, 0.9}, cplx{0.7, -0.1}});
  auto z = ScalarField::coord(0);

  FormField holo = z * FormField::basis(C, {0, 1});  // z dz^dw
  FormField anti = z.conj() * FormField::basis(C, {2, 3});
  CHECK(form_diff(holo.conj(), anti, p) < 1e-14);

  FormField real11 = (I_ * z * z.conj()) * FormField::basis(C, {0, 2});
  CHECK(form_diff(real11.conj(), real11, p) < 1e-14);

  VecField v = z * VecField::basis(C, 0);
  Eigen::VectorXcd vc = v.conj().value(p);
  CHECK(std::abs(vc[2] - std::conj(p.coords[0])) < 1e-14);
  CHECK(std::abs(vc[0]) < 1e-14);
}
