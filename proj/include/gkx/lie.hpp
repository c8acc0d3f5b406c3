#pragma once

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "gkx/forms.hpp"

namespace gkx {

// Exact scalar for structure-constant computations.  Keeps long long
// numerator/denominator in lowest terms with a positive denominator.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rational operator+(Rational a, Rational b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend Rational operator-(Rational a, Rational b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend Rational operator/(Rational a, Rational b) {
    if (b.num == 0) throw std::invalid_argument("rational division by zero");
    return {a.num * b.den, a.den * b.num};
  }
  Rational operator-() const { return {-num, den}; }
  friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(Rational a, Rational b) { return !(a == b); }
  friend bool operator<(Rational a, Rational b) { return a.num * b.den < b.num * a.den; }
  friend bool operator>(Rational a, Rational b) { return b < a; }
};

inline Rational abs_value(Rational a) { return a.num < 0 ? -a : a; }
inline double abs_value(double a) { return std::abs(a); }

// Exact scalars validate exactly; floating point gets a rounding allowance.
inline Rational validation_tolerance(Rational) { return Rational(0); }
inline double validation_tolerance(double) { return 1e-10; }

// Finite-dimensional real Lie algebra with a chosen inner product and a pair
// of complex-structure matrices (left- and right-invariant models share the
// same underlying bracket; the right side enters computations through the
// opposite algebra).
template <typename S>
struct LieAlgebra {
  int dim = 0;
  std::vector<S> c;   // [e_i, e_j] = sum_k c[(i*dim + j)*dim + k] e_k
  std::vector<S> b;   // inner product, row-major dim x dim
  std::vector<S> jl;  // row-major dim x dim, (J x)_i = sum_j jl[i*dim+j] x_j
  std::vector<S> jr;

  static LieAlgebra zero(int dim) {
    LieAlgebra g;
    g.dim = dim;
    g.c.assign(static_cast<size_t>(dim) * dim * dim, S(0));
    g.b.assign(static_cast<size_t>(dim) * dim, S(0));
    g.jl.assign(static_cast<size_t>(dim) * dim, S(0));
    g.jr.assign(static_cast<size_t>(dim) * dim, S(0));
    return g;
  }

  S& cc(int i, int j, int k) { return c[(static_cast<size_t>(i) * dim + j) * dim + k]; }
  const S& cc(int i, int j, int k) const {
    return c[(static_cast<size_t>(i) * dim + j) * dim + k];
  }

  // Fills both orientations of [e_i, e_j] = sum_k coef_k e_k.
  void set_bracket(int i, int j, int k, S coef) {
    cc(i, j, k) = coef;
    cc(j, i, k) = -coef;
  }

  std::vector<S> bracket(const std::vector<S>& x, const std::vector<S>& y) const {
    std::vector<S> out(dim, S(0));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        S f = x[i] * y[j];
        if (f == S(0)) continue;
        for (int k = 0; k < dim; ++k) out[k] = out[k] + f * cc(i, j, k);
      }
    return out;
  }

  S inner(const std::vector<S>& x, const std::vector<S>& y) const {
    S acc(0);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) acc = acc + x[i] * b[static_cast<size_t>(i) * dim + j] * y[j];
    return acc;
  }

  LieAlgebra opposite() const {
    LieAlgebra g = *this;
    for (S& v : g.c) v = -v;
    return g;
  }
};

template <typename S>
std::vector<S> apply_matrix(const std::vector<S>& m, const std::vector<S>& x) {
  int dim = static_cast<int>(x.size());
  std::vector<S> out(dim, S(0));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) out[i] = out[i] + m[static_cast<size_t>(i) * dim + j] * x[j];
  return out;
}

template <typename S>
std::vector<S> basis_vector(int dim, int slot) {
  std::vector<S> e(dim, S(0));
  e[slot] = S(1);
  return e;
}

// Antisymmetric multilinear form on the algebra, stored over strictly
// increasing index tuples.
template <typename S>
struct AlgForm {
  int dim = 0;
  int degree = 0;
  std::vector<S> comp;

  static AlgForm zero(int dim, int degree) {
    AlgForm w;
    w.dim = dim;
    w.degree = degree;
    w.comp.assign(CombTable::get(dim, degree)->size(), S(0));
    return w;
  }

  S& at(std::span<const int> increasing) {
    return comp[CombTable::get(dim, degree)->rank(increasing)];
  }

  S value(std::vector<int> idx) const {
    int sign = CombTable::sort_sign(idx);
    if (sign == 0) return S(0);
    const S& v = comp[CombTable::get(dim, degree)->rank(idx)];
    return sign < 0 ? -v : v;
  }

  // Multilinear evaluation with a vector in one slot and basis indices in the
  // others.
  S value_linear(const std::vector<S>& head, std::vector<int> rest) const {
    S acc(0);
    std::vector<int> idx(degree);
    for (int m = 0; m < dim; ++m) {
      if (head[m] == S(0)) continue;
      idx[0] = m;
      for (int r = 0; r + 1 < degree; ++r) idx[r + 1] = rest[r];
      acc = acc + head[m] * value(idx);
    }
    return acc;
  }

  friend AlgForm operator+(const AlgForm& a, const AlgForm& b) {
    AlgForm out = a;
    for (size_t r = 0; r < out.comp.size(); ++r) out.comp[r] = out.comp[r] + b.comp[r];
    return out;
  }
  friend AlgForm operator-(const AlgForm& a, const AlgForm& b) {
    AlgForm out = a;
    for (size_t r = 0; r < out.comp.size(); ++r) out.comp[r] = out.comp[r] - b.comp[r];
    return out;
  }
  friend AlgForm operator*(S s, const AlgForm& a) {
    AlgForm out = a;
    for (S& v : out.comp) v = s * v;
    return out;
  }
};

template <typename S>
S max_abs(const AlgForm<S>& w) {
  S worst(0);
  for (const S& v : w.comp)
    if (abs_value(v) > worst) worst = abs_value(v);
  return worst;
}

template <typename S>
S jacobi_residual(const LieAlgebra<S>& g) {
  S worst(0);
  for (int i = 0; i < g.dim; ++i)
    for (int j = i + 1; j < g.dim; ++j)
      for (int k = j + 1; k < g.dim; ++k) {
        auto ei = basis_vector<S>(g.dim, i);
        auto ej = basis_vector<S>(g.dim, j);
        auto ek = basis_vector<S>(g.dim, k);
        auto t1 = g.bracket(g.bracket(ei, ej), ek);
        auto t2 = g.bracket(g.bracket(ej, ek), ei);
        auto t3 = g.bracket(g.bracket(ek, ei), ej);
        for (int m = 0; m < g.dim; ++m) {
          S v = abs_value(t1[m] + t2[m] + t3[m]);
          if (v > worst) worst = v;
        }
      }
  return worst;
}

template <typename S>
S ad_invariance_residual(const LieAlgebra<S>& g) {
  S worst(0);
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j)
      for (int k = 0; k < g.dim; ++k) {
        auto ei = basis_vector<S>(g.dim, i);
        auto ej = basis_vector<S>(g.dim, j);
        auto ek = basis_vector<S>(g.dim, k);
        S v = abs_value(g.inner(g.bracket(ei, ej), ek) + g.inner(ej, g.bracket(ei, ek)));
        if (v > worst) worst = v;
      }
  return worst;
}

// Residual of J^2 = -1.
template <typename S>
S square_residual(const LieAlgebra<S>& g, const std::vector<S>& j) {
  S worst(0);
  for (int s = 0; s < g.dim; ++s) {
    auto twice = apply_matrix(j, apply_matrix(j, basis_vector<S>(g.dim, s)));
    for (int m = 0; m < g.dim; ++m) {
      S v = abs_value(twice[m] + S(m == s ? 1 : 0));
      if (v > worst) worst = v;
    }
  }
  return worst;
}

// Residual of b(J., J.) = b.
template <typename S>
S hermiticity_residual(const LieAlgebra<S>& g, const std::vector<S>& j) {
  S worst(0);
  for (int p = 0; p < g.dim; ++p)
    for (int q = 0; q < g.dim; ++q) {
      auto jp = apply_matrix(j, basis_vector<S>(g.dim, p));
      auto jq = apply_matrix(j, basis_vector<S>(g.dim, q));
      S v = abs_value(g.inner(jp, jq) - g.b[static_cast<size_t>(p) * g.dim + q]);
      if (v > worst) worst = v;
    }
  return worst;
}

// Nijenhuis tensor residual: [Jx,Jy] - J[Jx,y] - J[x,Jy] - [x,y] over basis
// pairs.  Vanishes exactly when the +i eigenspace closes under the bracket.
template <typename S>
S nijenhuis_residual(const LieAlgebra<S>& g, const std::vector<S>& j) {
  S worst(0);
  for (int p = 0; p < g.dim; ++p)
    for (int q = p + 1; q < g.dim; ++q) {
      auto x = basis_vector<S>(g.dim, p);
      auto y = basis_vector<S>(g.dim, q);
      auto jx = apply_matrix(j, x);
      auto jy = apply_matrix(j, y);
      auto t1 = g.bracket(jx, jy);
      auto t2 = apply_matrix(j, g.bracket(jx, y));
      auto t3 = apply_matrix(j, g.bracket(x, jy));
      auto t4 = g.bracket(x, y);
      for (int m = 0; m < g.dim; ++m) {
        S v = abs_value(t1[m] - t2[m] - t3[m] - t4[m]);
        if (v > worst) worst = v;
      }
    }
  return worst;
}

// Determinant by cofactor expansion; the matrices are at most 8x8.
template <typename S>
S exact_determinant(const std::vector<S>& m, int dim) {
  if (dim == 1) return m[0];
  S acc(0);
  std::vector<S> minor(static_cast<size_t>(dim - 1) * (dim - 1));
  for (int col = 0; col < dim; ++col) {
    if (m[col] == S(0)) continue;
    int r = 0;
    for (int i = 1; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (j != col) minor[r++] = m[static_cast<size_t>(i) * dim + j];
    S term = m[col] * exact_determinant(minor, dim - 1);
    acc = col % 2 == 0 ? acc + term : acc - term;
  }
  return acc;
}

template <typename S>
void validate_lie_algebra(const LieAlgebra<S>& g) {
  size_t d = static_cast<size_t>(g.dim);
  if (g.c.size() != d * d * d || g.b.size() != d * d || g.jl.size() != d * d ||
      g.jr.size() != d * d)
    throw std::invalid_argument("lie algebra field sizes do not match the dimension");
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j)
      for (int k = 0; k < g.dim; ++k)
        if (g.cc(i, j, k) != -g.cc(j, i, k))
          throw std::invalid_argument("structure constants are not antisymmetric");
  if (jacobi_residual(g) > validation_tolerance(S(0)))
    throw std::invalid_argument("structure constants violate the Jacobi identity");
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j)
      if (g.b[d * i + j] != g.b[d * j + i])
        throw std::invalid_argument("inner product is not symmetric");
  for (int lead = 1; lead <= g.dim; ++lead) {
    std::vector<S> minor(static_cast<size_t>(lead) * lead);
    for (int i = 0; i < lead; ++i)
      for (int j = 0; j < lead; ++j) minor[static_cast<size_t>(i) * lead + j] = g.b[d * i + j];
    if (!(exact_determinant(minor, lead) > S(0)))
      throw std::invalid_argument("inner product is not positive definite");
  }
  if (ad_invariance_residual(g) > validation_tolerance(S(0)))
    throw std::invalid_argument("inner product is not ad-invariant");
  if (square_residual(g, g.jl) > validation_tolerance(S(0)) ||
      square_residual(g, g.jr) > validation_tolerance(S(0)))
    throw std::invalid_argument("complex structure does not square to minus one");
  if (hermiticity_residual(g, g.jl) > validation_tolerance(S(0)) ||
      hermiticity_residual(g, g.jr) > validation_tolerance(S(0)))
    throw std::invalid_argument("inner product is not hermitian for the complex structures");
}

// Chevalley-Eilenberg differential of a left-invariant form:
// dw(x_0,...,x_k) = sum_{i<j} (-1)^{i+j} w([x_i,x_j], ..., no x_i, x_j).
template <typename S>
AlgForm<S> ce_differential(const AlgForm<S>& w, const LieAlgebra<S>& g) {
  if (w.dim != g.dim) throw std::invalid_argument("form dimension does not match the algebra");
  if (jacobi_residual(g) > validation_tolerance(S(0)))
    throw std::invalid_argument("structure constants violate the Jacobi identity");
  AlgForm<S> out = AlgForm<S>::zero(g.dim, w.degree + 1);
  auto table = CombTable::get(g.dim, w.degree + 1);
  for (int r = 0; r < table->size(); ++r) {
    auto t = table->tuple(r);
    S acc(0);
    for (int a = 0; a < w.degree + 1; ++a)
      for (int bpos = a + 1; bpos < w.degree + 1; ++bpos) {
        auto ea = basis_vector<S>(g.dim, t[a]);
        auto eb = basis_vector<S>(g.dim, t[bpos]);
        auto br = g.bracket(ea, eb);
        std::vector<int> rest;
        rest.reserve(w.degree - 1);
        for (int s = 0; s < w.degree + 1; ++s)
          if (s != a && s != bpos) rest.push_back(t[s]);
        S term = w.value_linear(br, rest);
        acc = (a + bpos) % 2 == 0 ? acc + term : acc - term;
      }
    out.comp[r] = acc;
  }
  return out;
}

// H(x,y,z) = b([x,y],z).
template <typename S>
AlgForm<S> cartan_three_form(const LieAlgebra<S>& g) {
  AlgForm<S> h = AlgForm<S>::zero(g.dim, 3);
  auto table = CombTable::get(g.dim, 3);
  for (int r = 0; r < table->size(); ++r) {
    auto t = table->tuple(r);
    auto ei = basis_vector<S>(g.dim, t[0]);
    auto ej = basis_vector<S>(g.dim, t[1]);
    auto ek = basis_vector<S>(g.dim, t[2]);
    h.comp[r] = g.inner(g.bracket(ei, ej), ek);
  }
  return h;
}

// w(x,y) = b(Jx, y).
template <typename S>
AlgForm<S> hermitian_form(const LieAlgebra<S>& g, const std::vector<S>& j) {
  AlgForm<S> w = AlgForm<S>::zero(g.dim, 2);
  auto table = CombTable::get(g.dim, 2);
  for (int r = 0; r < table->size(); ++r) {
    auto t = table->tuple(r);
    auto jx = apply_matrix(j, basis_vector<S>(g.dim, t[0]));
    w.comp[r] = g.inner(jx, basis_vector<S>(g.dim, t[1]));
  }
  return w;
}

// w(M x_0, ..., M x_k) as a form.
template <typename S>
AlgForm<S> substitute(const AlgForm<S>& w, const std::vector<S>& m) {
  AlgForm<S> out = AlgForm<S>::zero(w.dim, w.degree);
  auto table = CombTable::get(w.dim, w.degree);
  std::vector<std::vector<S>> cols(w.dim);
  for (int s = 0; s < w.dim; ++s)
    cols[s] = apply_matrix(m, basis_vector<S>(w.dim, s));
  std::vector<int> idx(w.degree);
  for (int r = 0; r < table->size(); ++r) {
    auto t = table->tuple(r);
    S acc(0);
    // Expand multilinearly over the matrix columns.
    std::vector<int> counter(w.degree, 0);
    while (true) {
      S f(1);
      for (int s = 0; s < w.degree; ++s) {
        f = f * cols[t[s]][counter[s]];
        idx[s] = counter[s];
      }
      if (f != S(0)) acc = acc + f * w.value(idx);
      int pos = w.degree - 1;
      while (pos >= 0 && ++counter[pos] == w.dim) counter[pos--] = 0;
      if (pos < 0) break;
    }
    out.comp[r] = acc;
  }
  return out;
}

// Torsion identities of the bi-invariant construction.  `left`/`right` are
// the residuals of -d^c_{JL} w_{JL} = H and d^c_{JR} w_{JR} = H, where d^c is
// the substituted form dw(J., J., J.) and the right side runs through the
// opposite algebra.  `intermediate` is the residual of the expansion
// A = -2A - 3H satisfied by the left torsion.
template <typename S>
struct GroupGKReport {
  S intermediate{0};
  S left{0};
  S right{0};
};

template <typename S>
GroupGKReport<S> verify_group_gk(const LieAlgebra<S>& g) {
  validate_lie_algebra(g);
  if (nijenhuis_residual(g, g.jl) > validation_tolerance(S(0)))
    throw std::runtime_error("left complex structure is not integrable");
  if (nijenhuis_residual(g, g.jr) > validation_tolerance(S(0)))
    throw std::runtime_error("right complex structure is not integrable");

  AlgForm<S> h = cartan_three_form(g);
  AlgForm<S> al = substitute(ce_differential(hermitian_form(g, g.jl), g), g.jl);
  LieAlgebra<S> op = g.opposite();
  AlgForm<S> ar = substitute(ce_differential(hermitian_form(op, op.jr), op), op.jr);

  GroupGKReport<S> rep;
  rep.intermediate = max_abs(S(3) * al + S(3) * h);
  rep.left = max_abs(al + h);
  rep.right = max_abs(ar - h);
  return rep;
}

// Abelian algebra with the standard inner product and the block rotation
// J e_{2m} = e_{2m+1}.
template <typename S>
LieAlgebra<S> lie_abelian(int dim) {
  if (dim % 2 != 0) throw std::invalid_argument("complex structures need even dimension");
  LieAlgebra<S> g = LieAlgebra<S>::zero(dim);
  size_t d = static_cast<size_t>(dim);
  for (int i = 0; i < dim; ++i) g.b[d * i + i] = S(1);
  for (int m = 0; m < dim / 2; ++m) {
    g.jl[d * (2 * m + 1) + 2 * m] = S(1);
    g.jl[d * 2 * m + 2 * m + 1] = S(-1);
  }
  g.jr = g.jl;
  return g;
}

// su(2) (+) u(1) with [e1,e2] = e3 cyclic, e4 central; the inner product is
// the matched positive multiple of negative-Killing on both summands, and the
// complex structure pairs the Cartan direction with the center.
template <typename S>
LieAlgebra<S> lie_su2_u1() {
  LieAlgebra<S> g = LieAlgebra<S>::zero(4);
  g.set_bracket(0, 1, 2, S(1));
  g.set_bracket(1, 2, 0, S(1));
  g.set_bracket(2, 0, 1, S(1));
  for (int i = 0; i < 4; ++i) g.b[4 * i + i] = S(1);
  // e1 -> e2, e2 -> -e1, e3 -> e4, e4 -> -e3
  g.jl[4 * 1 + 0] = S(1);
  g.jl[4 * 0 + 1] = S(-1);
  g.jl[4 * 3 + 2] = S(1);
  g.jl[4 * 2 + 3] = S(-1);
  g.jr = g.jl;
  return g;
}

// su(2) (+) su(2) with the complex structure rotating (e1,e2) and (e4,e5)
// and pairing the two Cartan directions e3 -> e6.
template <typename S>
LieAlgebra<S> lie_su2_su2() {
  LieAlgebra<S> g = LieAlgebra<S>::zero(6);
  for (int base : {0, 3}) {
    g.set_bracket(base + 0, base + 1, base + 2, S(1));
    g.set_bracket(base + 1, base + 2, base + 0, S(1));
    g.set_bracket(base + 2, base + 0, base + 1, S(1));
  }
  for (int i = 0; i < 6; ++i) g.b[6 * i + i] = S(1);
  g.jl[6 * 1 + 0] = S(1);
  g.jl[6 * 0 + 1] = S(-1);
  g.jl[6 * 4 + 3] = S(1);
  g.jl[6 * 3 + 4] = S(-1);
  g.jl[6 * 5 + 2] = S(1);
  g.jl[6 * 2 + 5] = S(-1);
  g.jr = g.jl;
  return g;
}

template <typename S>
LieAlgebra<double> to_double(const LieAlgebra<S>& g) {
  LieAlgebra<double> out = LieAlgebra<double>::zero(g.dim);
  for (size_t r = 0; r < g.c.size(); ++r) out.c[r] = g.c[r].to_double();
  for (size_t r = 0; r < g.b.size(); ++r) out.b[r] = g.b[r].to_double();
  for (size_t r = 0; r < g.jl.size(); ++r) out.jl[r] = g.jl[r].to_double();
  for (size_t r = 0; r < g.jr.size(); ++r) out.jr[r] = g.jr[r].to_double();
  return out;
}

// Max norm of the projection of [v,w] onto the -i eigenspace of J, over v, w
// in the +i eigenspace.
double eigenspace_closure(const LieAlgebra<double>& g, const std::vector<double>& j);

// i(dbar - d) of an invariant form, through the type decomposition of the
// complexified Chevalley-Eilenberg differential.  Real-valued on real
// arguments for forms of pure (1,1) type.
AlgForm<double> dolbeault_dc(const AlgForm<double>& w, const std::vector<double>& j,
                             const LieAlgebra<double>& g);

}  // namespace gkx
