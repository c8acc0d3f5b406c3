#include "gkx/section.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>
#include <string>

namespace gkx {
namespace {

Eigen::MatrixXcd lsq_solve(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& rhs) {
  return m.completeOrthogonalDecomposition().solve(rhs);
}

int numeric_rank(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  if (svd.singularValues().size() == 0) return 0;
  double top = svd.singularValues()(0);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > kRankTol * std::max(1.0, top)) ++r;
  return r;
}

}  // namespace

GSection GSection::zero(ChartPtr chart) {
  return {VecField::zero(chart), FormField::zero(chart, 1)};
}

GSection GSection::from_vector(VecField x) {
  FormField xi = FormField::zero(x.chart, 1);
  return {std::move(x), std::move(xi)};
}

GSection GSection::from_form(FormField xi) {
  if (xi.degree != 1) throw std::invalid_argument("covector part must be a 1-form");
  VecField x = VecField::zero(xi.chart);
  return {std::move(x), std::move(xi)};
}

GSection GSection::make(VecField x, FormField xi) {
  if (xi.degree != 1) throw std::invalid_argument("covector part must be a 1-form");
  if (x.chart != xi.chart) throw std::invalid_argument("chart mismatch");
  return {std::move(x), std::move(xi)};
}

GSection GSection::basis_vector(ChartPtr chart, int slot) {
  return from_vector(VecField::basis(chart, slot));
}

GSection GSection::basis_covector(ChartPtr chart, int slot) {
  return from_form(FormField::basis(chart, {slot}));
}

Eigen::VectorXcd GSection::value(const Point& p) const {
  EvalContext ctx;
  return value(p, ctx);
}

Eigen::VectorXcd GSection::value(const Point& p, EvalContext& ctx) const {
  int n = chart()->nslots();
  Eigen::VectorXcd out(2 * n);
  out.head(n) = vec.value(p, ctx);
  out.tail(n) = cov.value(p, ctx);
  return out;
}

GSection GSection::conj() const { return {vec.conj(), cov.conj()}; }

GSection operator+(const GSection& a, const GSection& b) {
  return {a.vec + b.vec, a.cov + b.cov};
}

GSection operator-(const GSection& a, const GSection& b) {
  return {a.vec - b.vec, a.cov - b.cov};
}

GSection operator*(const ScalarField& f, const GSection& a) {
  return {f * a.vec, f * a.cov};
}

GSection operator*(cplx s, const GSection& a) { return ScalarField::constant(s) * a; }

ScalarField pairing(const GSection& a, const GSection& b) {
  int n = a.chart()->nslots();
  ScalarField acc = ScalarField::constant(0.0);
  for (int i = 0; i < n; ++i)
    acc = acc + a.cov.comp[i] * b.vec.comp[i] + b.cov.comp[i] * a.vec.comp[i];
  return 0.5 * acc;
}

cplx pairing(const GSection& a, const GSection& b, const Point& p) {
  return pairing(a, b).value(p);
}

GSection courant_bracket(const GSection& a, const GSection& b, const FormField& h) {
  VecField x = lie_bracket(a.vec, b.vec);
  FormField xi = lie_derivative(a.vec, b.cov) - interior(b.vec, ext_deriv(a.cov)) +
                 interior(a.vec, interior(b.vec, h));
  return {std::move(x), std::move(xi)};
}

GSection b_transform(const FormField& b, const GSection& e) {
  return {e.vec, e.cov + interior(e.vec, b)};
}

FormField splitting_torsion(const FormField& b, const FormField& h0) {
  const ChartPtr& chart = b.chart;
  int n = chart->nslots();
  std::vector<GSection> s;
  s.reserve(n);
  for (int i = 0; i < n; ++i) {
    VecField di = VecField::basis(chart, i);
    FormField lift = interior(di, b);
    s.push_back(GSection::make(std::move(di), std::move(lift)));
  }
  FormField torsion = FormField::zero(chart, 3);
  auto table = CombTable::get(n, 3);
  for (int r = 0; r < table->size(); ++r) {
    auto idx = table->tuple(r);
    GSection br = courant_bracket(s[idx[1]], s[idx[2]], h0);
    torsion.comp[r] = -2.0 * pairing(s[idx[0]], br);
  }
  return torsion;
}

Eigen::MatrixXcd neutral_pairing(int n) {
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    q(i, n + i) = 0.5;
    q(n + i, i) = 0.5;
  }
  return q;
}

Eigen::MatrixXcd DiracFrame::values(const Point& p, EvalContext& ctx) const {
  int n = chart()->nslots();
  Eigen::MatrixXcd m(2 * n, rank());
  for (int a = 0; a < rank(); ++a) m.col(a) = sections[a].value(p, ctx);
  return m;
}

Subspace DiracFrame::fiber(const Point& p) const {
  EvalContext ctx;
  return Subspace::from_columns(values(p, ctx));
}

DiracFrame DiracFrame::tangent(ChartPtr chart, FormField h) {
  DiracFrame f{{}, std::move(h)};
  for (int i = 0; i < chart->nslots(); ++i) f.sections.push_back(GSection::basis_vector(chart, i));
  return f;
}

DiracFrame DiracFrame::cotangent(ChartPtr chart, FormField h) {
  DiracFrame f{{}, std::move(h)};
  for (int i = 0; i < chart->nslots(); ++i)
    f.sections.push_back(GSection::basis_covector(chart, i));
  return f;
}

DiracFrame DiracFrame::graph(const FormField& b, FormField h) {
  const ChartPtr& chart = b.chart;
  DiracFrame f{{}, std::move(h)};
  for (int i = 0; i < chart->nslots(); ++i) {
    VecField di = VecField::basis(chart, i);
    FormField lift = interior(di, b);
    f.sections.push_back(GSection::make(std::move(di), std::move(lift)));
  }
  return f;
}

double isotropy_residual(const DiracFrame& f, std::span<const Point> samples) {
  int k = f.rank();
  std::vector<ScalarField> pair_fields;
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) pair_fields.push_back(pairing(f.sections[a], f.sections[b]));
  double worst = 0.0;
  for (const Point& p : samples) {
    EvalContext ctx;
    for (const ScalarField& g : pair_fields)
      worst = std::max(worst, std::abs(g.eval(p, 0, ctx).value()));
  }
  return worst;
}

double involutivity_residual(const DiracFrame& f, std::span<const Point> samples) {
  int k = f.rank();
  std::vector<GSection> brackets;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      brackets.push_back(courant_bracket(f.sections[a], f.sections[b], f.twist));
  double worst = 0.0;
  for (const Point& p : samples) {
    EvalContext ctx;
    Eigen::MatrixXcd m = f.values(p, ctx);
    if (numeric_rank(m) < k)
      throw std::runtime_error("frame is rank-deficient at a sample point");
    for (const GSection& br : brackets) {
      Eigen::VectorXcd v = br.value(p, ctx);
      Eigen::VectorXcd res = v - m * lsq_solve(m, v);
      worst = std::max(worst, res.norm());
    }
  }
  return worst;
}

double involutivity_residual_pairing(const DiracFrame& f, std::span<const Point> samples) {
  int k = f.rank();
  std::vector<ScalarField> fields;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      GSection br = courant_bracket(f.sections[a], f.sections[b], f.twist);
      for (int c = 0; c < k; ++c) fields.push_back(2.0 * pairing(br, f.sections[c]));
    }
  double worst = 0.0;
  for (const Point& p : samples) {
    EvalContext ctx;
    for (const ScalarField& g : fields)
      worst = std::max(worst, std::abs(g.eval(p, 0, ctx).value()));
  }
  return worst;
}

Subspace baer_sum(const DiracFrame& d1, const DiracFrame& d2, const Point& p) {
  int n = d1.chart()->nslots();
  EvalContext ctx;
  Eigen::MatrixXcd m1 = d1.values(p, ctx);
  Eigen::MatrixXcd m2 = d2.values(p, ctx);
  Eigen::MatrixXcd t1 = m1.topRows(n), c1 = m1.bottomRows(n);
  Eigen::MatrixXcd t2 = m2.topRows(n), c2 = m2.bottomRows(n);

  Eigen::MatrixXcd anchors(n, m1.cols() + m2.cols());
  anchors << t1, t2;
  if (numeric_rank(anchors) < n)
    throw std::runtime_error("frames are not transverse over the tangent projection");

  Eigen::MatrixXcd fp(n, m1.cols() + m2.cols());
  fp << t1, -t2;
  Eigen::MatrixXcd ns = nullspace(fp);
  Eigen::MatrixXcd cols(2 * n, ns.cols());
  for (int j = 0; j < ns.cols(); ++j) {
    Eigen::VectorXcd u = ns.col(j).head(m1.cols());
    Eigen::VectorXcd v = ns.col(j).tail(m2.cols());
    cols.col(j).head(n) = t1 * u;
    cols.col(j).tail(n) = c2 * v - c1 * u;  // transpose algebroid negates the first covector
  }
  return Subspace::from_columns(cols);
}

Eigen::MatrixXcd graph_bivector(const Subspace& s) {
  int n = s.ambient() / 2;
  if (s.dim() != n) throw std::runtime_error("subspace rank differs from a graph over T*");
  Eigen::MatrixXcd v = s.basis.topRows(n);
  Eigen::MatrixXcd c = s.basis.bottomRows(n);
  if (numeric_rank(c) < n) throw std::runtime_error("subspace is not a graph over T*");
  return v * c.inverse();
}

Subspace dirac_reduce(const DiracFrame& l, const DiracFrame& d, const Point& p,
                      int expected_rank) {
  int n = l.chart()->nslots();
  Subspace lf = l.fiber(p);
  Subspace df = d.fiber(p);
  Subspace dperp = perp_pairing(df, neutral_pairing(n));
  for (int j = 0; j < df.dim(); ++j)
    if (membership_residual(dperp, df.basis.col(j)) > 1e-8)
      throw std::runtime_error("reduction frame is not isotropic");
  Subspace reduced = quotient_project(sum(intersect(lf, dperp), df), df);
  if (expected_rank >= 0 && reduced.dim() != expected_rank)
    throw std::runtime_error("reduced rank " + std::to_string(reduced.dim()) +
                             " differs from declared rank " + std::to_string(expected_rank));
  return reduced;
}

double algebroid_curvature(const AlgebroidConnection& conn, std::span<const Point> samples) {
  const DiracFrame& f = conn.frame;
  int k = f.rank();
  int n = f.chart()->nslots();
  if (static_cast<int>(conn.alpha.size()) != k)
    throw std::invalid_argument("one connection matrix per frame section required");
  int r = conn.alpha.empty() ? 0 : conn.alpha[0].rows;
  if (involutivity_residual(f, samples) > 1e-8)
    throw std::runtime_error("frame is not involutive on the samples");

  std::vector<std::vector<GSection>> brackets(k, std::vector<GSection>());
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      brackets[a].push_back(courant_bracket(f.sections[a], f.sections[b], f.twist));

  double worst = 0.0;
  for (const Point& p : samples) {
    EvalContext ctx;
    Eigen::MatrixXcd m = f.values(p, ctx);
    if (numeric_rank(m) < k)
      throw std::runtime_error("frame is rank-deficient at a sample point");
    // Connection values, their first derivatives, and anchor vectors.
    std::vector<Eigen::MatrixXcd> av(k, Eigen::MatrixXcd(r, r));
    std::vector<std::vector<Eigen::MatrixXcd>> ad(
        k, std::vector<Eigen::MatrixXcd>(n, Eigen::MatrixXcd(r, r)));
    for (int a = 0; a < k; ++a)
      for (int u = 0; u < r; ++u)
        for (int v = 0; v < r; ++v) {
          Jet j = conn.alpha[a].at(u, v).eval(p, 1, ctx);
          av[a](u, v) = j.value();
          for (int s = 0; s < n; ++s) ad[a][s](u, v) = j.d(s);
        }
    for (int a = 0; a < k; ++a) {
      Eigen::VectorXcd xa = m.col(a).head(n);
      for (int b = a + 1; b < k; ++b) {
        Eigen::VectorXcd xb = m.col(b).head(n);
        Eigen::VectorXcd w = brackets[a][b - a - 1].value(p, ctx);
        Eigen::VectorXcd gamma = lsq_solve(m, w);
        Eigen::MatrixXcd fcurv = Eigen::MatrixXcd::Zero(r, r);
        for (int s = 0; s < n; ++s) fcurv += xa(s) * ad[b][s] - xb(s) * ad[a][s];
        fcurv += av[a] * av[b] - av[b] * av[a];
        for (int c = 0; c < k; ++c) fcurv -= gamma(c) * av[c];
        worst = std::max(worst, fcurv.norm());
      }
    }
  }
  return worst;
}

namespace {

MatrixField pairing_matrix(const DiracFrame& a, const DiracFrame& b) {
  int k = a.rank();
  if (b.rank() != k) throw std::invalid_argument("frames must have equal rank");
  MatrixField pm = MatrixField::zero(a.chart(), k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) pm.at(i, j) = 2.0 * pairing(a.sections[i], b.sections[j]);
  return pm;
}

// B-frame sections dual to A under 2<.,.>, as field-level combinations.
std::vector<GSection> dual_frame(const DiracFrame& a, const DiracFrame& b) {
  int k = a.rank();
  MatrixField c = inverse(pairing_matrix(a, b));
  std::vector<GSection> dual;
  dual.reserve(k);
  for (int j = 0; j < k; ++j) {
    GSection acc = GSection::zero(a.chart());
    for (int m = 0; m < k; ++m) acc = acc + c.at(m, j) * b.sections[m];
    dual.push_back(std::move(acc));
  }
  return dual;
}

std::vector<GSection> deformation_legs(const DiracFrame& a, const DiracFrame& b,
                                       const MatrixField& eps) {
  std::vector<GSection> dual = dual_frame(a, b);
  int k = a.rank();
  std::vector<GSection> legs;
  legs.reserve(k);
  for (int i = 0; i < k; ++i) {
    GSection acc = GSection::zero(a.chart());
    for (int j = 0; j < k; ++j) acc = acc + eps.at(i, j) * dual[j];
    legs.push_back(std::move(acc));
  }
  return legs;
}

}  // namespace

DiracFrame graph_deformation(const DiracFrame& a, const DiracFrame& b, const MatrixField& eps) {
  std::vector<GSection> legs = deformation_legs(a, b, eps);
  DiracFrame out{{}, a.twist};
  for (int i = 0; i < a.rank(); ++i) out.sections.push_back(a.sections[i] + legs[i]);
  return out;
}

double maurer_cartan_residual(const DiracFrame& a, const DiracFrame& b, const MatrixField& eps,
                              std::span<const Point> samples) {
  int k = a.rank();
  int n = a.chart()->nslots();
  MatrixField pm = pairing_matrix(a, b);
  std::vector<GSection> legs = deformation_legs(a, b, eps);

  // Structure data: A-brackets for the Lie algebroid differential, and the
  // quadratic pairing fields for [eps,eps]_B.
  std::vector<std::vector<GSection>> abr(k, std::vector<GSection>());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      abr[i].push_back(courant_bracket(a.sections[i], a.sections[j], a.twist));

  auto quad = [&](int i, int j, int c) {
    return 2.0 * (pairing(courant_bracket(legs[i], legs[j], a.twist), a.sections[c]) +
                  pairing(courant_bracket(legs[i], a.sections[j], a.twist), legs[c]) +
                  pairing(courant_bracket(a.sections[i], legs[j], a.twist), legs[c]));
  };
  std::vector<ScalarField> qfields;
  auto table = CombTable::get(k, 3);
  for (int r = 0; r < table->size(); ++r) {
    auto t = table->tuple(r);
    qfields.push_back(quad(t[0], t[1], t[2]));
  }

  double worst = 0.0;
  for (const Point& p : samples) {
    EvalContext ctx;
    Eigen::MatrixXcd ma = a.values(p, ctx);
    Eigen::MatrixXcd mb = b.values(p, ctx);
    Eigen::MatrixXcd span(2 * n, 2 * k);
    span << ma, mb;
    if (numeric_rank(span) < 2 * k)
      throw std::runtime_error("frame sections are dependent at a sample point");
    if (numeric_rank(pm.value(p, ctx)) < k)
      throw std::runtime_error("frames are not transverse under the pairing at a sample point");

    // eps values and first derivatives.
    Eigen::MatrixXcd ev(k, k);
    std::vector<Eigen::MatrixXcd> ed(n, Eigen::MatrixXcd(k, k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        Jet jet = eps.at(i, j).eval(p, 1, ctx);
        ev(i, j) = jet.value();
        for (int s = 0; s < n; ++s) ed[s](i, j) = jet.d(s);
      }
    // Structure constants of A at p.
    std::vector<std::vector<Eigen::VectorXcd>> gamma(k, std::vector<Eigen::VectorXcd>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        gamma[i][j] = lsq_solve(ma, abr[i][j].value(p, ctx));

    auto deriv_along = [&](int i, int r_, int c_) {
      cplx acc = 0.0;
      for (int s = 0; s < n; ++s) acc += ma(s, i) * ed[s](r_, c_);
      return acc;
    };

    for (int r = 0; r < table->size(); ++r) {
      auto t = table->tuple(r);
      int i = t[0], j = t[1], c = t[2];
      cplx lie = deriv_along(i, j, c) - deriv_along(j, i, c) + deriv_along(c, i, j);
      cplx conn = 0.0;
      for (int m = 0; m < k; ++m)
        conn += -gamma[i][j](m) * ev(m, c) + gamma[i][c](m) * ev(m, j) - gamma[j][c](m) * ev(m, i);
      cplx q = qfields[r].eval(p, 0, ctx).value();
      worst = std::max(worst, std::abs(lie + conn + q));
    }
  }
  return worst;
}

MatrixField jacobian(const ChartMap& phi) {
  int rows = phi.target->nslots();
  int cols = phi.source->nslots();
  MatrixField j = MatrixField::zero(phi.source, rows, cols);
  for (int t = 0; t < rows; ++t)
    for (int s = 0; s < cols; ++s) j.at(t, s) = phi.components[t].partial(s);
  return j;
}

GSection pullback_section(const ChartMap& phi, const GSection& e) {
  if (phi.source->nslots() != phi.target->nslots())
    throw std::invalid_argument("section pullback requires equal chart dimensions");
  int n = phi.source->nslots();
  MatrixField jinv = inverse(jacobian(phi));
  VecField x = VecField::zero(phi.source);
  for (int s = 0; s < n; ++s) {
    ScalarField acc = ScalarField::constant(0.0);
    for (int t = 0; t < n; ++t) acc = acc + jinv.at(s, t) * pullback(phi, e.vec.comp[t]);
    x.comp[s] = acc;
  }
  return GSection::make(std::move(x), pullback(phi, e.cov));
}

}  // namespace gkx
