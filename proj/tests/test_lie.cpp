#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "gkx/lie.hpp"

using namespace gkx;

namespace {

using doctest::Contains;

using RForm = AlgForm<Rational>;
using RLie = LieAlgebra<Rational>;

RForm random_form(int dim, int degree, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  RForm w = RForm::zero(dim, degree);
  for (Rational& v : w.comp) v = Rational(num(rng), den(rng));
  return w;
}

// Orthogonal pairing of the two su(2) factors slot-by-slot.  Squares to -1
// and preserves the inner product but its +i eigenspace is not a subalgebra.
std::vector<Rational> cross_factor_j() {
  std::vector<Rational> j(36, Rational(0));
  for (int k = 0; k < 3; ++k) {
    j[static_cast<size_t>(k) * 6 + (k + 3)] = Rational(-1);
    j[static_cast<size_t>(k + 3) * 6 + k] = Rational(1);
  }
  return j;
}

std::vector<double> to_double_vec(const std::vector<Rational>& v) {
  std::vector<double> out(v.size());
  for (size_t r = 0; r < v.size(); ++r) out[r] = v[r].to_double();
  return out;
}

}  // namespace

TEST_CASE("rational arithmetic normalizes and compares") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) / Rational(3, 2) == Rational(1, 3));
  CHECK(-Rational(1, 2) == Rational(-1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(abs_value(Rational(-3, 7)) == Rational(3, 7));
  CHECK(Rational(1, 4).to_double() == doctest::Approx(0.25));
  CHECK(Rational(5) == Rational(10, 2));
}

TEST_CASE("forms evaluate antisymmetrically") {
  RForm w = RForm::zero(4, 2);
  std::vector<int> idx{0, 1};
  w.at(idx) = Rational(3, 2);
  CHECK(w.value({0, 1}) == Rational(3, 2));
  CHECK(w.value({1, 0}) == Rational(-3, 2));
  CHECK(w.value({1, 1}) == Rational(0));
  std::vector<Rational> x{Rational(2), Rational(0), Rational(0), Rational(0)};
  CHECK(w.value_linear(x, {1}) == Rational(3));
  CHECK(w.value_linear(x, {0}) == Rational(0));
}

TEST_CASE("fixture algebras validate exactly") {
  validate_lie_algebra(lie_su2_u1<Rational>());
  validate_lie_algebra(lie_su2_su2<Rational>());
  validate_lie_algebra(lie_abelian<Rational>(4));
  validate_lie_algebra(lie_su2_u1<double>());
  validate_lie_algebra(lie_su2_su2<double>());
  CHECK(jacobi_residual(lie_su2_su2<Rational>()) == Rational(0));
  CHECK(ad_invariance_residual(lie_su2_u1<Rational>()) == Rational(0));
}

TEST_CASE("validation rejects malformed data") {
  RLie g = lie_su2_u1<Rational>();
  SUBCASE("size mismatch") {
    g.c.pop_back();
    CHECK_THROWS_WITH_AS(validate_lie_algebra(g), Contains("sizes"), std::invalid_argument);
  }
  SUBCASE("asymmetric structure constants") {
    g.cc(0, 1, 2) = Rational(1, 2);
    CHECK_THROWS_WITH_AS(validate_lie_algebra(g), Contains("antisymmetric"),
                         std::invalid_argument);
  }
  SUBCASE("jacobi violation") {
    RLie bad = RLie::zero(4);
    bad.b = g.b;
    bad.jl = g.jl;
    bad.jr = g.jr;
    bad.set_bracket(0, 1, 2, Rational(1));
    bad.set_bracket(0, 2, 1, Rational(1));
    bad.set_bracket(1, 2, 1, Rational(1));
    CHECK_THROWS_WITH_AS(validate_lie_algebra(bad), Contains("Jacobi"), std::invalid_argument);
  }
  SUBCASE("asymmetric inner product") {
    g.b[1] = Rational(1, 3);
    CHECK_THROWS_WITH_AS(validate_lie_algebra(g), Contains("symmetric"), std::invalid_argument);
  }
  SUBCASE("indefinite inner product") {
    g.b[0] = Rational(-1);
    CHECK_THROWS_WITH_AS(validate_lie_algebra(g), Contains("positive definite"),
                         std::invalid_argument);
  }
  SUBCASE("non-invariant inner product") {
    g.b[0] = Rational(2);
    CHECK_THROWS_WITH_AS(validate_lie_algebra(g), Contains("ad-invariant"),
                         std::invalid_argument);
  }
  SUBCASE("degenerate complex structure") {
    for (Rational& v : g.jl) v = Rational(0);
    CHECK_THROWS_WITH_AS(validate_lie_algebra(g), Contains("minus one"), std::invalid_argument);
  }
  SUBCASE("non-hermitian inner product") {
    // Scaling only the central direction breaks b(J.,J.) = b because the
    // complex structure rotates a su(2) direction into the center.
    RLie h = lie_su2_u1<Rational>();
    for (int i = 0; i < 3; ++i) h.b[static_cast<size_t>(i) * 4 + i] = Rational(2);
    CHECK_THROWS_WITH_AS(validate_lie_algebra(h), Contains("hermitian"), std::invalid_argument);
  }
}

TEST_CASE("chevalley-eilenberg differential squares to zero exactly") {
  std::mt19937 rng(7);
  for (const RLie& g : {lie_su2_u1<Rational>(), lie_su2_su2<Rational>()}) {
    for (int degree = 1; degree <= 3; ++degree) {
      for (int trial = 0; trial < 5; ++trial) {
        RForm w = random_form(g.dim, degree, rng);
        CHECK(max_abs(ce_differential(ce_differential(w, g), g)) == Rational(0));
      }
    }
  }
  RLie ab = lie_abelian<Rational>(6);
  RForm w = random_form(6, 2, rng);
  CHECK(max_abs(ce_differential(w, ab)) == Rational(0));
  RForm one = random_form(4, 1, rng);
  CHECK_THROWS_AS(ce_differential(one, RLie::zero(6)), std::invalid_argument);
}

TEST_CASE("differential of an invariant two-form matches the bracket expansion") {
  RLie g = lie_su2_u1<Rational>();
  RForm w = hermitian_form(g, g.jl);
  RForm dw = ce_differential(w, g);
  auto table = CombTable::get(4, 3);
  for (int r = 0; r < table->size(); ++r) {
    auto t = table->tuple(r);
    auto ex = basis_vector<Rational>(4, t[0]);
    auto ey = basis_vector<Rational>(4, t[1]);
    auto ez = basis_vector<Rational>(4, t[2]);
    Rational hand = -(w.value_linear(g.bracket(ex, ey), {t[2]}) +
                      w.value_linear(g.bracket(ez, ex), {t[1]}) +
                      w.value_linear(g.bracket(ey, ez), {t[0]}));
    CHECK(dw.comp[r] == hand);
  }

  // The substituted torsion equals the cyclic bracket expansion through the
  // complex structure...
  RForm a = substitute(dw, g.jl);
  bool differs = false;
  for (int r = 0; r < table->size(); ++r) {
    auto t = table->tuple(r);
    auto jx = apply_matrix(g.jl, basis_vector<Rational>(4, t[0]));
    auto jy = apply_matrix(g.jl, basis_vector<Rational>(4, t[1]));
    auto jz = apply_matrix(g.jl, basis_vector<Rational>(4, t[2]));
    auto ex = basis_vector<Rational>(4, t[0]);
    auto ey = basis_vector<Rational>(4, t[1]);
    auto ez = basis_vector<Rational>(4, t[2]);
    Rational hand = -(g.inner(g.bracket(jx, jy), ez) + g.inner(g.bracket(jz, jx), ey) +
                      g.inner(g.bracket(jy, jz), ex));
    CHECK(a.comp[r] == hand);
    // ...and is a genuinely different form from the plain differential.
    if (a.comp[r] != dw.comp[r]) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("cartan three-form is closed and scales with the inner product") {
  for (const RLie& g : {lie_su2_u1<Rational>(), lie_su2_su2<Rational>()}) {
    RForm h = cartan_three_form(g);
    CHECK(max_abs(ce_differential(h, g)) == Rational(0));
    RLie scaled = g;
    for (Rational& v : scaled.b) v = Rational(3, 2) * v;
    RForm hs = cartan_three_form(scaled);
    CHECK(max_abs(hs - Rational(3, 2) * h) == Rational(0));
  }
  RForm h = cartan_three_form(lie_su2_u1<Rational>());
  // Only the su(2) triple survives: H(e1,e2,e3) = b([e1,e2],e3) = 1.
  CHECK(h.value({0, 1, 2}) == Rational(1));
  CHECK(h.value({0, 1, 3}) == Rational(0));
  CHECK(h.value({0, 2, 3}) == Rational(0));
  CHECK(h.value({1, 2, 3}) == Rational(0));
}

TEST_CASE("bi-invariant torsion identities hold exactly") {
  for (const RLie& g :
       {lie_su2_u1<Rational>(), lie_su2_su2<Rational>(), lie_abelian<Rational>(4)}) {
    GroupGKReport<Rational> rep = verify_group_gk(g);
    CHECK(rep.intermediate == Rational(0));
    CHECK(rep.left == Rational(0));
    CHECK(rep.right == Rational(0));
  }
  RLie scaled = lie_su2_u1<Rational>();
  for (Rational& v : scaled.b) v = Rational(5, 3) * v;
  GroupGKReport<Rational> rep = verify_group_gk(scaled);
  CHECK(rep.left == Rational(0));
  CHECK(rep.right == Rational(0));

  GroupGKReport<double> repd = verify_group_gk(lie_su2_su2<double>());
  CHECK(repd.intermediate < 1e-12);
  CHECK(repd.left < 1e-12);
  CHECK(repd.right < 1e-12);
}

TEST_CASE("left and right torsions have opposite sign") {
  RLie g = lie_su2_u1<Rational>();
  RForm h = cartan_three_form(g);
  RForm al = substitute(ce_differential(hermitian_form(g, g.jl), g), g.jl);
  CHECK(max_abs(al + h) == Rational(0));
  // Same structure through the left bracket lands on -H, not +H; the sign
  // flip of the right identity comes entirely from the opposite bracket.
  RForm ar_same = substitute(ce_differential(hermitian_form(g, g.jr), g), g.jr);
  CHECK(max_abs(ar_same - h) == Rational(2));
  RLie op = g.opposite();
  RForm ar = substitute(ce_differential(hermitian_form(op, op.jr), op), op.jr);
  CHECK(max_abs(ar - h) == Rational(0));
}

TEST_CASE("non-integrable structures are detected") {
  RLie g = lie_su2_su2<Rational>();
  std::vector<Rational> jd = cross_factor_j();
  CHECK(square_residual(g, jd) == Rational(0));
  CHECK(hermiticity_residual(g, jd) == Rational(0));
  CHECK(nijenhuis_residual(g, jd) == Rational(1));
  CHECK(nijenhuis_residual(g, g.jl) == Rational(0));

  SUBCASE("left slot") {
    g.jl = jd;
    CHECK_THROWS_WITH_AS(verify_group_gk(g), Contains("left"), std::runtime_error);
  }
  SUBCASE("right slot") {
    g.jr = jd;
    CHECK_THROWS_WITH_AS(verify_group_gk(g), Contains("right"), std::runtime_error);
  }
}

TEST_CASE("eigenspace closure agrees with the nijenhuis tensor") {
  LieAlgebra<double> g4 = lie_su2_u1<double>();
  CHECK(eigenspace_closure(g4, g4.jl) < 1e-14);
  CHECK(eigenspace_closure(g4, g4.jr) < 1e-14);
  LieAlgebra<double> g6 = lie_su2_su2<double>();
  CHECK(eigenspace_closure(g6, g6.jl) < 1e-14);
  LieAlgebra<double> ab = lie_abelian<double>(6);
  CHECK(eigenspace_closure(ab, ab.jl) < 1e-14);

  // Conjugating by a shear keeps the square but destroys both closure and
  // the vanishing of the torsion tensor.
  std::vector<double> sheared(16, 0.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double acc = 0;
      for (int k = 0; k < 4; ++k) {
        double s_ik = (i == k ? 1.0 : 0.0) + (i == 0 && k == 2 ? 0.5 : 0.0);
        for (int l = 0; l < 4; ++l) {
          double si_lj = (l == j ? 1.0 : 0.0) - (l == 0 && j == 2 ? 0.5 : 0.0);
          acc += s_ik * g4.jl[static_cast<size_t>(k) * 4 + l] * si_lj;
        }
      }
      sheared[static_cast<size_t>(i) * 4 + j] = acc;
    }
  CHECK(square_residual(g4, sheared) < 1e-14);
  CHECK(eigenspace_closure(g4, sheared) > 0.1);
  CHECK(nijenhuis_residual(g4, sheared) > 0.4);

  std::vector<double> jd = to_double_vec(cross_factor_j());
  CHECK(eigenspace_closure(g6, jd) > 0.3);
  CHECK(nijenhuis_residual(g6, jd) == doctest::Approx(1.0));
}

TEST_CASE("substituted differential matches the dolbeault operator") {
  // i(dbar - d) of the hermitian two-form, computed from type projections,
  // equals minus the substituted form dw(J., J., J.).  The sign is a global
  // convention constant: fixed here on dimension four, re-checked on six.
  LieAlgebra<double> g4 = lie_su2_u1<double>();
  AlgForm<double> w4 = hermitian_form(g4, g4.jl);
  AlgForm<double> a4 = substitute(ce_differential(w4, g4), g4.jl);
  AlgForm<double> dc4 = dolbeault_dc(w4, g4.jl, g4);
  CHECK(max_abs(a4 + dc4) < 1e-14);
  CHECK(max_abs(a4) == doctest::Approx(1.0));

  LieAlgebra<double> g6 = lie_su2_su2<double>();
  AlgForm<double> w6 = hermitian_form(g6, g6.jl);
  AlgForm<double> a6 = substitute(ce_differential(w6, g6), g6.jl);
  AlgForm<double> dc6 = dolbeault_dc(w6, g6.jl, g6);
  CHECK(max_abs(a6 + dc6) < 1e-14);
  CHECK(max_abs(a6) == doctest::Approx(1.0));

  // With the opposite orientation of the structure the constant is unchanged.
  std::vector<double> neg(16);
  for (int r = 0; r < 16; ++r) neg[r] = -g4.jl[r];
  AlgForm<double> wneg = hermitian_form(g4, neg);
  CHECK(max_abs(substitute(ce_differential(wneg, g4), neg) + dolbeault_dc(wneg, neg, g4)) <
        1e-14);
}

TEST_CASE("torsion equals minus the cartan form on the four-dimensional group") {
  RLie g = lie_su2_u1<Rational>();
  RForm w = hermitian_form(g, g.jl);
  // w = e^12 + e^34 for the standard rotation pairs.
  CHECK(w.value({0, 1}) == Rational(1));
  CHECK(w.value({2, 3}) == Rational(1));
  CHECK(w.value({0, 2}) == Rational(0));
  CHECK(w.value({0, 3}) == Rational(0));
  CHECK(w.value({1, 2}) == Rational(0));
  CHECK(w.value({1, 3}) == Rational(0));
  RForm dw = ce_differential(w, g);
  CHECK(dw.value({0, 1, 3}) == Rational(-1));
  CHECK(dw.value({0, 1, 2}) == Rational(0));
  RForm a = substitute(dw, g.jl);
  CHECK(a.value({0, 1, 2}) == Rational(-1));
  CHECK(a.value({0, 1, 3}) == Rational(0));
}
