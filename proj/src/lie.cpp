#include "gkx/lie.hpp"

#include <Eigen/Dense>
#include <complex>

#include "gkx/linalg.hpp"

namespace gkx {

namespace {

Eigen::MatrixXcd complex_matrix(const std::vector<double>& m, int dim) {
  Eigen::MatrixXcd out(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) out(i, j) = m[static_cast<size_t>(i) * dim + j];
  return out;
}

Eigen::VectorXcd complex_bracket(const LieAlgebra<double>& g, const Eigen::VectorXcd& x,
                                 const Eigen::VectorXcd& y) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(g.dim);
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) {
      cplx f = x(i) * y(j);
      if (f == cplx(0)) continue;
      for (int k = 0; k < g.dim; ++k) out(k) += f * g.cc(i, j, k);
    }
  return out;
}

}  // namespace

double eigenspace_closure(const LieAlgebra<double>& g, const std::vector<double>& j) {
  if (square_residual(g, j) > validation_tolerance(0.0))
    throw std::invalid_argument("matrix does not square to minus one");
  Eigen::MatrixXcd jm = complex_matrix(j, g.dim);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(g.dim, g.dim);
  Eigen::MatrixXcd plus = 0.5 * (id - cplx(0, 1) * jm);
  Eigen::MatrixXcd minus = 0.5 * (id + cplx(0, 1) * jm);

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(plus);
  int rank = static_cast<int>(cod.rank());
  Eigen::MatrixXcd basis =
      Eigen::MatrixXcd(cod.householderQ()).leftCols(rank);

  double worst = 0.0;
  for (int p = 0; p < rank; ++p)
    for (int q = p + 1; q < rank; ++q) {
      Eigen::VectorXcd br = complex_bracket(g, basis.col(p), basis.col(q));
      worst = std::max(worst, (minus * br).lpNorm<Eigen::Infinity>());
    }
  return worst;
}

AlgForm<double> dolbeault_dc(const AlgForm<double>& w, const std::vector<double>& j,
                             const LieAlgebra<double>& g) {
  AlgForm<double> t = ce_differential(w, g);
  Eigen::MatrixXcd jm = complex_matrix(j, g.dim);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(g.dim, g.dim);
  Eigen::MatrixXcd proj[2] = {0.5 * (id - cplx(0, 1) * jm), 0.5 * (id + cplx(0, 1) * jm)};

  int deg = t.degree;
  auto eval = [&](const std::vector<Eigen::VectorXcd>& args) {
    cplx acc = 0.0;
    std::vector<int> idx(deg);
    std::vector<int> counter(deg, 0);
    while (true) {
      cplx f = 1.0;
      for (int s = 0; s < deg; ++s) {
        f *= args[s](counter[s]);
        idx[s] = counter[s];
      }
      if (f != cplx(0)) acc += f * t.value(idx);
      int pos = deg - 1;
      while (pos >= 0 && ++counter[pos] == g.dim) counter[pos--] = 0;
      if (pos < 0) break;
    }
    return acc;
  };

  // i(dbar - d)w picks the components of dw with exactly one, respectively
  // two, antiholomorphic slots.
  AlgForm<double> out = AlgForm<double>::zero(g.dim, deg);
  auto table = CombTable::get(g.dim, deg);
  for (int r = 0; r < table->size(); ++r) {
    auto tup = table->tuple(r);
    cplx t21 = 0.0, t12 = 0.0;
    std::vector<Eigen::VectorXcd> args(deg);
    for (int mask = 0; mask < (1 << deg); ++mask) {
      int bars = 0;
      for (int s = 0; s < deg; ++s) bars += (mask >> s) & 1;
      if (bars != 1 && bars != 2) continue;
      for (int s = 0; s < deg; ++s)
        args[s] = proj[(mask >> s) & 1].col(tup[s]);
      if (bars == 1)
        t21 += eval(args);
      else
        t12 += eval(args);
    }
    out.comp[r] = (cplx(0, 1) * (t12 - t21)).real();
  }
  return out;
}

}  // namespace gkx
