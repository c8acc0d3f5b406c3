#include "gkx/gc.hpp"

#include <stdexcept>
#include <string>

namespace gkx {

namespace {

// Conjugate of a (1,1)-tensor on slot indices: conj . m . conj.
MatrixField tensor_conj(const MatrixField& m) {
  MatrixField out = MatrixField::zero(m.chart, m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      out.at(i, j) = m.at(m.chart->conj_slot(i), m.chart->conj_slot(j)).conj();
  return out;
}

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_square(const GCStructure& s, const char* who) {
  int n2 = 2 * s.j.chart->nslots();
  if (s.j.rows != n2 || s.j.cols != n2)
    throw std::invalid_argument(std::string(who) + ": endomorphism must be " +
                                std::to_string(n2) + "x" + std::to_string(n2));
}

// Eigenvalues of a valid structure sit on +-i; anything further away than
// this means the clusters cannot be told apart and eigenframe refuses.
constexpr double kClusterRadius = 1e-4;

}  // namespace

GCReport validate_gc(const GCStructure& s, std::span<const Point> samples, double tol) {
  require_square(s, "validate_gc");
  int n = s.j.chart->nslots();
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2 * n, 2 * n);
  Eigen::MatrixXcd q = neutral_pairing(n);

  GCReport report;
  report.tol = tol;
  EvalContext ctx;
  for (const Point& p : samples) {
    Eigen::MatrixXcd m = s.j.value(p, ctx);
    report.square = std::max(report.square, max_abs(m * m + id));
    report.orthogonality = std::max(report.orthogonality, max_abs(m.transpose() * q * m - q));
  }
  DiracFrame plus{eigenbundle_span(s, +1), s.twist};
  report.involutivity = involutivity_residual_pairing(plus, samples);
  return report;
}

GCStructure jomega(const FormField& omega, FormField twist, std::string name) {
  if (omega.degree != 2) throw std::invalid_argument("jomega: omega must be a 2-form");
  MatrixField w = map_from_two_form(omega);
  MatrixField winv = inverse(w);
  MatrixField z = MatrixField::zero(omega.chart, omega.chart->nslots(), omega.chart->nslots());
  return GCStructure{block2(z, cplx(-1.0) * winv, w, z), std::move(twist), std::move(name)};
}

GCStructure jcomplex(const MatrixField& i_endo, std::string name) {
  MatrixField z = MatrixField::zero(i_endo.chart, i_endo.rows, i_endo.cols);
  return GCStructure{block2(i_endo, z, z, cplx(-1.0) * i_endo.transpose()),
                     FormField::zero(i_endo.chart, 3), std::move(name)};
}

GCStructure jsigma(const MatrixField& i_endo, const MatrixField& sigma, std::string name,
                   std::span<const Point> samples, double tol) {
  const ChartPtr& ch = i_endo.chart;
  int n = ch->nslots();
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  EvalContext ctx;
  for (const Point& p : samples) {
    double nij = nijenhuis_residual(i_endo, p);
    if (nij > tol)
      throw std::invalid_argument("jsigma: complex structure is not integrable (Nijenhuis " +
                                  std::to_string(nij) + ")");
    // sigma is (2,0) iff its image lies in T^{1,0} and (0,1)-covectors are
    // in its kernel; both projectors are (1 + iI)/2 on the matching factor.
    Eigen::MatrixXcd iv = i_endo.value(p, ctx);
    Eigen::MatrixXcd sv = sigma.value(p, ctx);
    cplx half_i(0.0, 0.5);
    double type_res = std::max(max_abs((0.5 * id + half_i * iv) * sv),
                               max_abs(sv * (0.5 * id + half_i * iv.transpose())));
    if (type_res > tol)
      throw std::invalid_argument("jsigma: bivector is not of type (2,0) (residual " +
                                  std::to_string(type_res) + ")");
    double jac = schouten_residual(sigma, p);
    if (jac > tol)
      throw std::invalid_argument("jsigma: bivector fails the Jacobi identity (Schouten " +
                                  std::to_string(jac) + ")");
  }
  MatrixField q = cplx(0.0, -0.5) * (sigma - tensor_conj(sigma));
  MatrixField z = MatrixField::zero(ch, n, n);
  return GCStructure{block2(i_endo, q, z, cplx(-1.0) * i_endo.transpose()),
                     FormField::zero(ch, 3), std::move(name)};
}

MatrixField poisson_block(const GCStructure& s) {
  require_square(s, "poisson_block");
  int n = s.j.chart->nslots();
  MatrixField q = MatrixField::zero(s.j.chart, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q.at(i, j) = s.j.at(i, n + j);
  return q;
}

Eigen::MatrixXcd real_poisson(const GCStructure& s, const Point& p) {
  require_square(s, "real_poisson");
  int n = s.j.chart->nslots();
  return s.j.value(p).block(0, n, n, n);
}

int gc_type(const GCStructure& s, const Point& p) {
  int n = s.j.chart->nslots();
  Eigen::MatrixXcd jv = s.j.value(p);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jv.block(0, n, n, n));
  // Singular values are measured against the scale of the whole endomorphism:
  // on a type-change locus the block is exactly degenerate, and its own
  // rounding noise must not promote it back to full rank.
  double scale = std::max(1.0, jv.cwiseAbs().maxCoeff());
  const Eigen::VectorXd& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    double rel = sv[i] / scale;
    if (rel > kRankTol / 10.0 && rel < kRankTol * 10.0)
      throw RankAmbiguityError("gc_type: singular value " + std::to_string(sv[i]) +
                               " inside the ambiguity band of tolerance " +
                               std::to_string(kRankTol));
    if (rel >= kRankTol * 10.0) ++rank;
  }
  int corank = n - rank;
  if (corank % 2 != 0)
    throw RankAmbiguityError("gc_type: odd corank " + std::to_string(corank) +
                             " of the Poisson block");
  return corank / 2;
}

Subspace eigenframe(const GCStructure& s, const Point& p, int sign, double tol) {
  require_square(s, "eigenframe");
  if (sign != 1 && sign != -1) throw std::invalid_argument("eigenframe: sign must be +-1");
  int n = s.j.chart->nslots();
  Eigen::MatrixXcd m = s.j.value(p);

  cplx target(0.0, static_cast<double>(sign));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  int near = 0;
  for (int k = 0; k < 2 * n; ++k) {
    cplx lam = es.eigenvalues()(k);
    double dplus = std::abs(lam - target), dminus = std::abs(lam + target);
    if (std::min(dplus, dminus) > kClusterRadius)
      throw std::runtime_error("eigenframe: eigenvalue cluster not separated (eigenvalue " +
                               std::to_string(lam.real()) + "+" + std::to_string(lam.imag()) +
                               "i)");
    if (dplus < dminus) ++near;
  }
  if (near != n)
    throw std::runtime_error("eigenframe: eigenvalue cluster not separated (multiplicity " +
                             std::to_string(near) + ")");

  Eigen::MatrixXcd proj =
      0.5 * (Eigen::MatrixXcd::Identity(2 * n, 2 * n) - target * m);
  Subspace sub = Subspace::from_columns(proj, tol);
  if (sub.dim() != n)
    throw std::runtime_error("eigenframe: eigenvalue cluster not separated (projector rank " +
                             std::to_string(sub.dim()) + ")");
  return sub;
}

std::vector<GSection> eigenbundle_span(const GCStructure& s, int sign) {
  require_square(s, "eigenbundle_span");
  if (sign != 1 && sign != -1) throw std::invalid_argument("eigenbundle_span: sign must be +-1");
  const ChartPtr& ch = s.j.chart;
  int n = ch->nslots();
  MatrixField proj = cplx(0.5) * (MatrixField::identity(ch, 2 * n) -
                                  cplx(0.0, static_cast<double>(sign)) * s.j);
  std::vector<GSection> out;
  out.reserve(2 * n);
  for (int a = 0; a < 2 * n; ++a) {
    VecField x = VecField::zero(ch);
    FormField xi = FormField::zero(ch, 1);
    for (int r = 0; r < n; ++r) {
      x.comp[r] = proj.at(r, a);
      xi.comp[r] = proj.at(n + r, a);
    }
    out.push_back(GSection::make(std::move(x), std::move(xi)));
  }
  return out;
}

std::vector<int> fiber_conj_perm(const ChartPtr& chart) {
  int n = chart->nslots();
  std::vector<int> perm(2 * n);
  for (int i = 0; i < n; ++i) {
    perm[i] = chart->conj_slot(i);
    perm[n + i] = n + chart->conj_slot(i);
  }
  return perm;
}

}  // namespace gkx
