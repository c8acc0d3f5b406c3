#include "gkx/gk.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace gkx {

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Permutation matrix of the slot conjugation, P v = v composed with conj.
Eigen::MatrixXcd conj_perm_matrix(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) p(i, perm[i]) = 1.0;
  return p;
}

// Smallest eigenvalue of the quadratic form v^T S v over real-type vectors
// (v composed with conj equals conj(v)); S P is Hermitian for such forms.
double real_form_min_eig(const Eigen::MatrixXcd& s, const Eigen::MatrixXcd& p) {
  Eigen::MatrixXcd m = s * p;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (m + m.adjoint()));
  return eig.eigenvalues().minCoeff();
}

MatrixField sub_block(const MatrixField& m, int r0, int c0, int rows, int cols) {
  MatrixField out = MatrixField::zero(m.chart, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out.at(i, j) = m.at(r0 + i, c0 + j);
  return out;
}

std::vector<int> pivot_columns(const Eigen::MatrixXcd& m, int k, const char* what) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
  if (qr.rank() < k)
    throw std::runtime_error(std::string(what) + ": rank below " + std::to_string(k) +
                             " at the anchor point");
  const auto& idx = qr.colsPermutation().indices();
  std::vector<int> cols(idx.data(), idx.data() + k);
  std::sort(cols.begin(), cols.end());
  return cols;
}

VecField matrix_column(const MatrixField& m, int col) {
  VecField v = VecField::zero(m.chart);
  for (int r = 0; r < m.rows; ++r) v.comp[r] = m.at(r, col);
  return v;
}

FormField one_form(const MatrixField& m, const VecField& v) {
  FormField xi = FormField::zero(m.chart, 1);
  for (int r = 0; r < m.rows; ++r) {
    ScalarField acc = ScalarField::constant(0.0);
    for (int s = 0; s < m.cols; ++s) acc = acc + m.at(r, s) * v.comp[s];
    xi.comp[r] = acc;
  }
  return xi;
}

void require_samples(std::span<const Point> samples, const char* what) {
  if (samples.empty()) throw std::invalid_argument(std::string(what) + ": empty sample set");
}

}  // namespace

FormField GKInstance::omega(int side) const { return two_form_from_map(g * endo(side)); }

bool GKInstanceReport::pass() const {
  return metric_symmetry < tol && square < tol && compatibility < tol && torsion_closed < tol &&
         metric_min > 0;
}

GKInstanceReport check_instance(const GKInstance& data, std::span<const Point> samples,
                                double tol) {
  require_samples(samples, "check_instance");
  if (data.b.degree != 2 || data.h.degree != 3)
    throw std::invalid_argument("check_instance: b must be a 2-form and h a 3-form");
  const ChartPtr& ch = data.chart();
  const int n = ch->nslots();
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd cp = conj_perm_matrix(ch->conj_map());
  FormField dh = ext_deriv(data.h);

  GKInstanceReport rep;
  rep.tol = tol;
  rep.metric_min = std::numeric_limits<double>::infinity();
  for (const Point& p : samples) {
    EvalContext ctx;
    Eigen::MatrixXcd gv = data.g.value(p, ctx);
    rep.metric_symmetry = std::max(rep.metric_symmetry, max_abs(gv - gv.transpose()));
    rep.metric_min = std::min(rep.metric_min, real_form_min_eig(gv, cp));
    for (int side : {+1, -1}) {
      Eigen::MatrixXcd iv = data.endo(side).value(p, ctx);
      rep.square = std::max(rep.square, max_abs(iv * iv + id));
      rep.compatibility = std::max(rep.compatibility, max_abs(iv.transpose() * gv * iv - gv));
    }
    rep.torsion_closed =
        std::max(rep.torsion_closed, dh.value(p, ctx).lpNorm<Eigen::Infinity>());
  }
  return rep;
}

GKPair reconstruct(const GKInstance& data, std::span<const Point> samples, double tol) {
  GKInstanceReport rep = check_instance(data, samples, tol);
  if (!rep.pass())
    throw std::invalid_argument("reconstruct: bi-Hermitian data fails its invariants (" +
                                data.name + ")");
  const ChartPtr& ch = data.chart();
  const int n = ch->nslots();
  MatrixField id = MatrixField::identity(ch, n);
  MatrixField z = MatrixField::zero(ch, n, n);
  MatrixField wp = data.g * data.iplus;
  MatrixField wm = data.g * data.iminus;
  MatrixField wpi = inverse(wp);
  MatrixField wmi = inverse(wm);
  MatrixField ipt = data.iplus.transpose();
  MatrixField imt = data.iminus.transpose();
  MatrixField bm = map_from_two_form(data.b);
  MatrixField eb = block2(id, z, bm, id);
  MatrixField ebi = block2(id, z, cplx(-1.0) * bm, id);
  FormField twist = data.h + ext_deriv(data.b);

  auto make = [&](int s) {
    const cplx cs(s, 0.0);
    MatrixField j = cplx(0.5) * block2(data.iplus + cs * data.iminus,        //
                                       cplx(-1.0) * (wpi - cs * wmi),        //
                                       wp - cs * wm,                         //
                                       cplx(-1.0) * (ipt + cs * imt));
    return eb * j * ebi;
  };
  return {GCStructure{make(+1), twist, data.name + "[+]"},
          GCStructure{make(-1), twist, data.name + "[-]"}};
}

bool GKReport::pass() const {
  return commutator < tol && metric_min > 0 && plus.pass() && minus.pass();
}

GKReport validate_gk(const GKPair& pair, std::span<const Point> samples, double tol) {
  require_samples(samples, "validate_gk");
  const ChartPtr& ch = pair.plus.chart();
  const int n = ch->nslots();
  Eigen::MatrixXcd q = neutral_pairing(n);
  Eigen::MatrixXcd cp = conj_perm_matrix(fiber_conj_perm(ch));

  GKReport rep;
  rep.tol = tol;
  rep.metric_min = std::numeric_limits<double>::infinity();
  for (const Point& p : samples) {
    EvalContext ctx;
    Eigen::MatrixXcd jp = pair.plus.j.value(p, ctx);
    Eigen::MatrixXcd jm = pair.minus.j.value(p, ctx);
    rep.commutator = std::max(rep.commutator, max_abs(jp * jm - jm * jp));
    Eigen::MatrixXcd gm = -(jp * jm);
    rep.metric_min = std::min(rep.metric_min, real_form_min_eig(gm.transpose() * q, cp));
  }
  rep.plus = validate_gc(pair.plus, samples, tol);
  rep.minus = validate_gc(pair.minus, samples, tol);
  return rep;
}

GKInstance extract_bihermitian(const GKPair& pair, std::span<const Point> samples, double tol) {
  require_samples(samples, "extract_bihermitian");
  const ChartPtr& ch = pair.plus.chart();
  const int n = ch->nslots();
  Eigen::MatrixXcd q = neutral_pairing(n);
  Eigen::MatrixXcd cp = conj_perm_matrix(fiber_conj_perm(ch));
  Eigen::MatrixXcd id2 = Eigen::MatrixXcd::Identity(2 * n, 2 * n);
  for (const Point& p : samples) {
    EvalContext ctx;
    Eigen::MatrixXcd gm = -(pair.plus.j.value(p, ctx) * pair.minus.j.value(p, ctx));
    if (max_abs(gm * gm - id2) > tol)
      throw std::invalid_argument("extract_bihermitian: -J+ J- is not an involution");
    if (real_form_min_eig(gm.transpose() * q, cp) <= 0)
      throw std::invalid_argument("extract_bihermitian: the generalized metric is not positive");
  }

  MatrixField gm = cplx(-1.0) * (pair.plus.j * pair.minus.j);
  MatrixField id = MatrixField::identity(ch, 2 * n);
  MatrixField j11 = sub_block(pair.plus.j, 0, 0, n, n);
  MatrixField j12 = sub_block(pair.plus.j, 0, n, n, n);
  auto tau = [&](int s) {
    MatrixField proj = cplx(0.5) * (id + cplx(s, 0.0) * gm);
    return sub_block(proj, n, 0, n, n) * inverse(sub_block(proj, 0, 0, n, n));
  };
  MatrixField tp = tau(+1);
  MatrixField tm = tau(-1);

  std::string base = pair.plus.name;
  if (base.size() >= 3 && base.compare(base.size() - 3, 3, "[+]") == 0)
    base.resize(base.size() - 3);
  GKInstance data{cplx(0.5) * (tp - tm),
                  j11 + j12 * tp,
                  j11 + j12 * tm,
                  two_form_from_map(cplx(0.5) * (tp + tm)),
                  FormField::zero(ch, 3),
                  base,
                  {}};
  data.h = pair.plus.twist - ext_deriv(data.b);
  return data;
}

bool GKIntegrabilityReport::pass() const {
  return nijenhuis_plus < tol && nijenhuis_minus < tol && torsion_plus < tol &&
         torsion_minus < tol;
}

GKIntegrabilityReport check_gk_integrability(const GKInstance& data,
                                             std::span<const Point> samples, double tol) {
  require_samples(samples, "check_gk_integrability");
  FormField fp = dc(data.omega(+1), data.iplus) - data.h;
  FormField fm = dc(data.omega(-1), data.iminus) + data.h;

  GKIntegrabilityReport rep;
  rep.tol = tol;
  for (const Point& p : samples) {
    EvalContext ctx;
    rep.nijenhuis_plus = std::max(rep.nijenhuis_plus, nijenhuis_residual(data.iplus, p));
    rep.nijenhuis_minus = std::max(rep.nijenhuis_minus, nijenhuis_residual(data.iminus, p));
    rep.torsion_plus = std::max(rep.torsion_plus, fp.value(p, ctx).lpNorm<Eigen::Infinity>());
    rep.torsion_minus = std::max(rep.torsion_minus, fm.value(p, ctx).lpNorm<Eigen::Infinity>());
  }
  return rep;
}

EllFrames ell_frames(const GKInstance& data, const Point& anchor) {
  const ChartPtr& ch = data.chart();
  const int n = ch->nslots();
  const int k = n / 2;
  MatrixField id = MatrixField::identity(ch, n);
  MatrixField bm = map_from_two_form(data.b);
  FormField twist = data.h + ext_deriv(data.b);

  auto build = [&](int side) {
    MatrixField proj = cplx(0.5) * (id - cplx(0.0, 1.0) * data.endo(side));
    MatrixField tau = bm + cplx(side, 0.0) * data.g;
    DiracFrame f{{}, twist};
    for (int c : pivot_columns(proj.value(anchor), k, "ell_frames")) {
      VecField x = matrix_column(proj, c);
      f.sections.push_back(GSection::make(x, one_form(tau, x)));
    }
    return f;
  };
  return {build(+1), build(-1)};
}

MatrixField gk_q_field(const GKInstance& data, int side) {
  return cplx(0.5) * ((data.iplus - cplx(side, 0.0) * data.iminus) * inverse(data.g));
}

MatrixField gk_sigma_field(const GKInstance& data, int side) {
  const ChartPtr& ch = data.chart();
  MatrixField id = MatrixField::identity(ch, ch->nslots());
  const cplx i1(0.0, 1.0);
  MatrixField st = data.endo(side).transpose();
  MatrixField ot = data.endo(-side).transpose();
  MatrixField m = inverse(data.g) * (cplx(0.5) * (id + i1 * st)) *
                  (cplx(0.5) * (id + i1 * ot)) * (cplx(0.5) * (id - i1 * st));
  return cplx(-side, 0.0) * m;
}

GKPoisson gk_poisson(const GKInstance& data, const Point& p) {
  EvalContext ctx;
  Eigen::MatrixXcd gv = data.g.value(p, ctx);
  Eigen::MatrixXcd ip = data.iplus.value(p, ctx);
  Eigen::MatrixXcd im = data.iminus.value(p, ctx);
  Eigen::MatrixXcd gi = gv.inverse();

  GKPoisson out;
  out.qplus = 0.5 * (ip - im) * gi;
  out.qminus = 0.5 * (ip + im) * gi;
  Eigen::MatrixXcd wpi = (gv * ip).inverse();
  Eigen::MatrixXcd wmi = (gv * im).inverse();
  out.q_cross = std::max(max_abs(out.qplus + 0.5 * (wpi - wmi)),
                         max_abs(out.qminus + 0.5 * (wpi + wmi)));

  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(gv.rows(), gv.cols());
  const cplx i1(0.0, 1.0);
  auto sigma = [&](int side) -> Eigen::MatrixXcd {
    Eigen::MatrixXcd st = (side > 0 ? ip : im).transpose();
    Eigen::MatrixXcd ot = (side > 0 ? im : ip).transpose();
    Eigen::MatrixXcd m =
        gi * (0.5 * (id + i1 * st)) * (0.5 * (id + i1 * ot)) * (0.5 * (id - i1 * st));
    return -double(side) * m;
  };
  out.sigma_plus = sigma(+1);
  out.sigma_minus = sigma(-1);
  return out;
}

HolCourantReport hol_courant_operator(const GKInstance& data, int side, const Point& p) {
  const MatrixField& endo = data.endo(side);
  FormField t = cplx(2.0) * type_project(data.h, endo, 2, 1);
  FormField dbar = type_project(ext_deriv(t), endo, 2, 2);
  FormField cocycle = ext_deriv(t + type_project(data.h, endo, 3, 0));

  EvalContext ctx;
  HolCourantReport rep;
  rep.torsion = t.value(p, ctx);
  rep.dbar = dbar.value(p, ctx).lpNorm<Eigen::Infinity>();
  rep.cocycle = cocycle.value(p, ctx).lpNorm<Eigen::Infinity>();
  return rep;
}

ABFrames ab_frames(const GKInstance& data, int side, const Point& anchor) {
  const ChartPtr& ch = data.chart();
  const int n = ch->nslots();
  const int k = n / 2;
  MatrixField id = MatrixField::identity(ch, n);
  const cplx i1(0.0, 1.0);
  const MatrixField& is = data.endo(side);
  const MatrixField& io = data.endo(-side);
  MatrixField ps = cplx(0.5) * (id - i1 * is);
  MatrixField pbs = cplx(0.5) * (id + i1 * is);
  MatrixField po = cplx(0.5) * (id - i1 * io);
  MatrixField pbo = cplx(0.5) * (id + i1 * io);
  MatrixField bm = map_from_two_form(data.b);
  FormField twist = data.h + ext_deriv(data.b);

  // Representative of the class of v, orthogonal to conj(ell_side):
  // P v + b(P v) -+ g(v + Pbar v).
  const cplx sgn(-side, 0.0);
  auto build = [&](const MatrixField& domain, const char* what) {
    DiracFrame f{{}, twist};
    for (int c : pivot_columns(domain.value(anchor), k, what)) {
      VecField v = matrix_column(domain, c);
      VecField x = apply(ps, v);
      VecField w = v + apply(pbs, v);
      f.sections.push_back(GSection::make(x, one_form(bm, x) + sgn * one_form(data.g, w)));
    }
    return f;
  };

  ABFrames out{build(pbo, "ab_frames(a)"), build(po, "ab_frames(b)"), DiracFrame{{}, twist}};
  MatrixField tau = bm + cplx(side, 0.0) * data.g;
  for (int c : pivot_columns(pbs.value(anchor), k, "ab_frames(reduced)")) {
    VecField u = matrix_column(pbs, c);
    out.reduced.sections.push_back(GSection::make(u, one_form(tau, u)));
  }
  return out;
}

double reduced_involutivity_residual(const DiracFrame& f, const DiracFrame& d,
                                     std::span<const Point> samples) {
  const int k = f.rank();
  std::vector<GSection> brackets;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      brackets.push_back(courant_bracket(f.sections[a], f.sections[b], f.twist));

  double res = 0;
  for (const Point& p : samples) {
    EvalContext ctx;
    Eigen::MatrixXcd fv = f.values(p, ctx);
    Eigen::MatrixXcd dv = d.values(p, ctx);
    Eigen::MatrixXcd joint(fv.rows(), fv.cols() + dv.cols());
    joint << fv, dv;
    Subspace s = Subspace::from_columns(joint);
    for (const GSection& br : brackets)
      res = std::max(res, membership_residual(s, br.value(p, ctx)));
  }
  return res;
}

bool MoritaReport::pass() const { return a_plus < tol && a_minus < tol && b_conj < tol; }

MoritaReport morita_residual(const GKInstance& data, std::span<const Point> samples,
                             double tol) {
  require_samples(samples, "morita_residual");
  ABFrames ep = ab_frames(data, +1, samples.front());
  ABFrames em = ab_frames(data, -1, samples.front());
  std::vector<int> perm = fiber_conj_perm(data.chart());

  MoritaReport rep;
  rep.tol = tol;
  for (const Point& p : samples) {
    Subspace lbp = ep.reduced.fiber(p);
    Subspace lbm = em.reduced.fiber(p);
    Subspace target = sum(lbp, lbm);
    rep.a_plus = std::max(rep.a_plus, subspace_distance(sum(ep.a.fiber(p), lbp), target));
    rep.a_minus = std::max(rep.a_minus, subspace_distance(sum(em.a.fiber(p), lbm), target));
    Subspace bp = sum(ep.b.fiber(p), lbp);
    Subspace bm = sum(em.b.fiber(p), lbm);
    rep.b_conj = std::max(rep.b_conj, subspace_distance(bp, conj_subspace(bm, perm)));
  }
  return rep;
}

}  // namespace gkx
