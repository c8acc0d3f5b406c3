#include "gkx/cech.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace gkx {

namespace {

constexpr double kPi = std::numbers::pi;

double form_max(const FormField& a, const std::vector<Point>& pts) {
  double m = 0.0;
  for (const auto& p : pts) {
    EvalContext ctx;
    Eigen::VectorXcd v = a.value(p, ctx);
    for (Eigen::Index t = 0; t < v.size(); ++t) m = std::max(m, std::abs(v[t]));
  }
  return m;
}

std::vector<Point> annulus_samples(const ChartPtr& ch, int count, std::mt19937& rng) {
  std::uniform_real_distribution<double> rad(0.55, 1.45);
  std::uniform_real_distribution<double> ang(-2.2, 2.2);
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(count));
  for (int s = 0; s < count; ++s) {
    std::vector<cplx> holo;
    for (int c = 0; c < ch->ncomplex(); ++c) holo.push_back(std::polar(rad(rng), ang(rng)));
    pts.push_back(make_point(ch, std::move(holo)));
  }
  return pts;
}

std::string first_failure(const Report& rep) {
  for (const auto& c : rep.checks)
    if (!c.skipped && !c.pass) return c.id;
  return {};
}

FormField projected(const FormField& a, const MatrixField& I, int p, int q) {
  return type_project(a, I, p, q);
}

}  // namespace

const PairOverlap* CechCover::find_pair(int i, int j) const {
  for (const auto& pr : pairs)
    if (pr.i == i && pr.j == j) return &pr;
  return nullptr;
}

const ChartMap& CechCover::transition(int a, int b) const {
  const PairOverlap* pr = find_pair(std::min(a, b), std::max(a, b));
  if (pr == nullptr) throw std::invalid_argument("no overlap between the requested charts");
  return a < b ? pr->to_j : pr->to_i;
}

double cover_residual(const CechCover& cover) {
  double m = 0.0;
  for (const auto& pr : cover.pairs) {
    for (const auto& p : pr.samples) {
      Point back = pr.to_i.apply(pr.to_j.apply(p));
      for (size_t s = 0; s < back.coords.size(); ++s)
        m = std::max(m, std::abs(back.coords[s] - p.coords[s]));
    }
  }
  for (const auto& tr : cover.triples) {
    const ChartMap& ij = cover.transition(tr.idx[0], tr.idx[1]);
    const ChartMap& jk = cover.transition(tr.idx[1], tr.idx[2]);
    const ChartMap& ik = cover.transition(tr.idx[0], tr.idx[2]);
    for (const auto& p : tr.samples) {
      Point via = jk.apply(ij.apply(p));
      Point direct = ik.apply(p);
      for (size_t s = 0; s < via.coords.size(); ++s)
        m = std::max(m, std::abs(via.coords[s] - direct.coords[s]));
    }
  }
  return m;
}

const FormField& GerbeCech::connection(int i, int j) const {
  auto it = a.find({i, j});
  if (i >= j || it == a.end())
    throw std::invalid_argument("connection forms are stored for ascending pairs only");
  return it->second;
}

cplx dlog_constant(const GerbeCech& data) {
  return data.hermitian ? cplx(0.0, -1.0) : cplx(1.0, 0.0);
}

Report check_connection(const GerbeCech& data, double tol) {
  const CechCover& cov = data.cover;
  if (cov.chart_samples.size() != cov.charts.size())
    throw std::invalid_argument("one sample set per chart is required");
  if (data.b.size() != cov.charts.size())
    throw std::invalid_argument("one curving form per chart is required");

  Report rep;

  {
    int n = 0;
    for (const auto& pr : cov.pairs) n += static_cast<int>(pr.samples.size());
    for (const auto& tr : cov.triples) n += static_cast<int>(tr.samples.size());
    rep.record("cover_transitions", "gluing maps invert and compose", cover_residual(cov), tol,
               n);
  }

  if (cov.quads.empty()) {
    rep.skip("transition_cocycle", "no quadruple overlaps in the cover");
  } else {
    double m = 0.0;
    int n = 0;
    for (const auto& q : cov.quads) {
      auto [i, j, k, l] = q.idx;
      ScalarField gjkl = pullback(cov.transition(i, j), data.g.at({j, k, l}));
      const ScalarField& gikl = data.g.at({i, k, l});
      const ScalarField& gijl = data.g.at({i, j, l});
      const ScalarField& gijk = data.g.at({i, j, k});
      for (const auto& p : q.samples) {
        EvalContext ctx;
        cplx v = gjkl.eval(p, 0, ctx).value() * gijl.eval(p, 0, ctx).value() /
                 (gikl.eval(p, 0, ctx).value() * gijk.eval(p, 0, ctx).value());
        m = std::max(m, std::abs(v - 1.0));
        ++n;
      }
    }
    rep.record("transition_cocycle", "delta g = 1 on quadruple overlaps", m, tol, n);
  }

  const cplx kappa = dlog_constant(data);
  if (cov.triples.empty()) {
    rep.skip("connection_dlog", "no triple overlaps in the cover");
  } else {
    double m = 0.0;
    int n = 0;
    for (const auto& tr : cov.triples) {
      auto [i, j, k] = tr.idx;
      FormField ajk = pullback(cov.transition(i, j), data.connection(j, k));
      const ScalarField& gf = data.g.at({i, j, k});
      FormField dlog =
          (1.0 / gf) * ext_deriv(FormField::scalar(cov.charts[static_cast<size_t>(i)], gf));
      FormField res = data.connection(i, j) + ajk - data.connection(i, k) - kappa * dlog;
      m = std::max(m, form_max(res, tr.samples));
      n += static_cast<int>(tr.samples.size());
    }
    std::string detail =
        kappa == cplx(0.0, -1.0) ? "delta A = -i dlog g (unitary)" : "delta A = dlog g";
    rep.record("connection_dlog", detail, m, tol, n);
  }

  {
    double step = 0.0, global = 0.0;
    int n = 0;
    for (const auto& pr : cov.pairs) {
      const FormField& bi = data.b[static_cast<size_t>(pr.i)];
      const FormField& bj = data.b[static_cast<size_t>(pr.j)];
      FormField sres = pullback(pr.to_j, bj) - bi - ext_deriv(data.connection(pr.i, pr.j));
      FormField gres = pullback(pr.to_j, ext_deriv(bj)) - ext_deriv(bi);
      step = std::max(step, form_max(sres, pr.samples));
      global = std::max(global, form_max(gres, pr.samples));
      n += static_cast<int>(pr.samples.size());
    }
    rep.record("curving_step", "B_j - B_i = dA_ij on overlaps", step, tol, n);
    rep.record("curving_global", "dB agrees across overlaps", global, tol, n);
  }

  {
    double m = 0.0;
    int n = 0;
    for (size_t i = 0; i < data.b.size(); ++i) {
      FormField ddb = ext_deriv(ext_deriv(data.b[i]));
      m = std::max(m, form_max(ddb, cov.chart_samples[i]));
      n += static_cast<int>(cov.chart_samples[i].size());
    }
    rep.record("flux_closed", "dH = 0 on every chart", m, tol, n);
  }

  if (data.hermitian) {
    if (cov.triples.empty()) {
      rep.skip("unitary_transition", "no triple overlaps in the cover");
    } else {
      double m = 0.0;
      int n = 0;
      for (const auto& tr : cov.triples) {
        const ScalarField& gf = data.g.at(tr.idx);
        for (const auto& p : tr.samples) {
          m = std::max(m, std::abs(std::abs(gf.value(p)) - 1.0));
          ++n;
        }
      }
      rep.record("unitary_transition", "transition scalars unimodular", m, tol, n);
    }

    double ares = 0.0;
    int an = 0;
    for (const auto& pr : cov.pairs) {
      const FormField& aij = data.connection(pr.i, pr.j);
      ares = std::max(ares, form_max(aij - aij.conj(), pr.samples));
      an += static_cast<int>(pr.samples.size());
    }
    rep.record("real_connection", "connection forms real", ares, tol, an);

    double bres = 0.0, hres = 0.0;
    int bn = 0;
    for (size_t i = 0; i < data.b.size(); ++i) {
      const FormField& bi = data.b[i];
      FormField h = ext_deriv(bi);
      bres = std::max(bres, form_max(bi - bi.conj(), cov.chart_samples[i]));
      hres = std::max(hres, form_max(h - h.conj(), cov.chart_samples[i]));
      bn += static_cast<int>(cov.chart_samples[i].size());
    }
    rep.record("real_curving", "curving forms real", bres, tol, bn);
    rep.record("real_flux", "flux real", hres, tol, bn);
  }

  return rep;
}

Report lifting_check(const GerbeCech& data, double tol) {
  const CechCover& cov = data.cover;
  if (!data.has_lifting() || data.theta.size() != cov.charts.size())
    throw std::invalid_argument("lifting forms are absent");
  if (data.tangent_complex.size() != cov.charts.size())
    throw std::invalid_argument("complex structures are absent");
  if (cov.chart_samples.size() != cov.charts.size())
    throw std::invalid_argument("one sample set per chart is required");

  Report rep;

  {
    double m = 0.0;
    int n = 0;
    for (size_t i = 0; i < data.theta.size(); ++i) {
      const FormField& th = data.theta[i];
      const MatrixField& I = data.tangent_complex[i];
      FormField res = th - projected(th, I, 1, 1) - projected(th, I, 0, 2);
      m = std::max(m, form_max(res, cov.chart_samples[i]));
      n += static_cast<int>(cov.chart_samples[i].size());
    }
    rep.record("lifting_type", "theta of type (1,1)+(0,2)", m, tol, n);
  }

  {
    double m = 0.0;
    int n = 0;
    for (const auto& pr : cov.pairs) {
      const MatrixField& I = data.tangent_complex[static_cast<size_t>(pr.i)];
      FormField f = ext_deriv(data.connection(pr.i, pr.j));
      FormField res = pullback(pr.to_j, data.theta[static_cast<size_t>(pr.j)]) -
                      data.theta[static_cast<size_t>(pr.i)] - projected(f, I, 1, 1) -
                      projected(f, I, 0, 2);
      m = std::max(m, form_max(res, pr.samples));
      n += static_cast<int>(pr.samples.size());
    }
    rep.record("lifting_step", "theta_j - theta_i matches the curvature on overlaps", m, tol, n);
  }

  {
    double m = 0.0;
    int n = 0;
    for (size_t i = 0; i < data.theta.size(); ++i) {
      const MatrixField& I = data.tangent_complex[i];
      FormField dth = ext_deriv(data.theta[i]);
      FormField res = projected(dth, I, 1, 2) + projected(dth, I, 0, 3);
      m = std::max(m, form_max(res, cov.chart_samples[i]));
      n += static_cast<int>(cov.chart_samples[i].size());
    }
    rep.record("lifting_involutive", "(d theta)^{(1,2)+(0,3)} = 0 on every chart", m, tol, n);
  }

  return rep;
}

GerbeCech gauge_transform(const GerbeCech& data, const std::vector<FormField>& alpha) {
  if (alpha.size() != data.cover.charts.size())
    throw std::invalid_argument("one gauge form per chart is required");
  GerbeCech out = data;
  for (const auto& pr : out.cover.pairs) {
    std::array<int, 2> key{pr.i, pr.j};
    FormField aj = pullback(pr.to_j, alpha[static_cast<size_t>(pr.j)]);
    out.a.at(key) = data.a.at(key) + alpha[static_cast<size_t>(pr.i)] - aj;
  }
  for (size_t i = 0; i < out.b.size(); ++i) out.b[i] = data.b[i] - ext_deriv(alpha[i]);
  if (data.has_lifting()) {
    if (data.tangent_complex.size() != data.cover.charts.size())
      throw std::invalid_argument("complex structures are absent");
    for (size_t i = 0; i < out.theta.size(); ++i) {
      FormField da = ext_deriv(alpha[i]);
      const MatrixField& I = data.tangent_complex[i];
      out.theta[i] = data.theta[i] - projected(da, I, 1, 1) - projected(da, I, 0, 2);
    }
  }
  return out;
}

std::vector<FormField> holomorphic_cocycle(const GerbeCech& data,
                                           const std::vector<FormField>& alpha, double tol) {
  if (data.tangent_complex.size() != data.cover.charts.size())
    throw std::invalid_argument("complex structures are absent");

  GerbeCech gauged = gauge_transform(data, alpha);
  Report conn = check_connection(gauged, tol);
  if (!conn.pass())
    throw std::runtime_error("gauged connection data fails: " + first_failure(conn));
  if (data.has_lifting()) {
    Report lift = lifting_check(gauged, tol);
    if (!lift.pass())
      throw std::runtime_error("gauged lifting fails: " + first_failure(lift));
  }

  std::vector<FormField> out;
  for (const auto& pr : data.cover.pairs) {
    const MatrixField& ii = data.tangent_complex[static_cast<size_t>(pr.i)];
    const MatrixField& ij = data.tangent_complex[static_cast<size_t>(pr.j)];

    FormField fg = ext_deriv(gauged.connection(pr.i, pr.j));
    FormField off = projected(fg, ii, 2, 0) + projected(fg, ii, 0, 2);
    if (form_max(off, pr.samples) > tol)
      throw std::runtime_error("gauged curvature is not of type (1,1)");

    auto part = [&](int idx, const MatrixField& I) {
      const auto k = static_cast<size_t>(idx);
      FormField del_alpha = ext_deriv(projected(alpha[k], I, 1, 0));
      return projected(data.b[k], I, 2, 0) + projected(del_alpha, I, 2, 0);
    };
    out.push_back(pullback(pr.to_j, part(pr.j, ij)) - part(pr.i, ii));
  }
  return out;
}

MatrixField lifting_curving(const FormField& theta, const MatrixField& tangent_complex) {
  const ChartPtr& ch = theta.chart;
  const int n = ch->ncomplex();
  if (theta.degree != 2) throw std::invalid_argument("lifting forms have degree 2");

  MatrixField proj = 0.5 * (MatrixField::identity(ch, ch->nslots()) +
                            cplx(0.0, 1.0) * tangent_complex);
  std::vector<VecField> frame;
  frame.reserve(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a)
    frame.push_back(apply(proj, VecField::basis(ch, ch->conj_slot(a))));

  std::vector<FormField> xi;
  xi.reserve(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) xi.push_back(interior(frame[static_cast<size_t>(a)], theta));

  MatrixField out = MatrixField::zero(ch, n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      out.at(r, c) = 0.5 * (contract(xi[static_cast<size_t>(r)], {frame[static_cast<size_t>(c)]}) -
                            contract(xi[static_cast<size_t>(c)], {frame[static_cast<size_t>(r)]}));
  return out;
}

cplx period_integral(const FormField& omega, const Cycle& cycle, const QuadratureSpec& spec) {
  QuadratureResult res = integrate(omega, cycle, spec);
  if (!res.converged)
    throw std::runtime_error("period quadrature did not converge (error estimate " +
                             std::to_string(res.error_estimate) + ")");
  return res.value;
}

// ---- built-in instances ----------------------------------------------------

namespace {

MatrixField standard_complex_structure(const ChartPtr& ch) {
  const int n = ch->ncomplex();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    m(a, a) = cplx(0.0, 1.0);
    m(n + a, n + a) = cplx(0.0, -1.0);
  }
  return MatrixField::constant(ch, m);
}

struct HopfChartFields {
  FormField curving;  // (1/4pi)(dK ^ dlog w + conj)
  FormField gauge;    // (1/4pi) K dlog(w conj(w))
  FormField b02;      // (0,2) part of the curving
};

HopfChartFields hopf_chart_fields(const ChartPtr& ch) {
  ScalarField z = ScalarField::coord(0), w = ScalarField::coord(1);
  ScalarField zb = ScalarField::coord(2), wb = ScalarField::coord(3);
  ScalarField den = 1.0 + z * zb;
  FormField dz = FormField::basis(ch, {0}), dw = FormField::basis(ch, {1});
  FormField dzb = FormField::basis(ch, {2}), dwb = FormField::basis(ch, {3});

  FormField holo = (1.0 / (4.0 * kPi)) * (zb / (den * w)) * wedge(dz, dw);
  FormField b02 = (1.0 / (4.0 * kPi)) * (z / (den * wb)) * wedge(dzb, dwb);

  HopfChartFields out{holo + b02, FormField::zero(ch, 1), b02};
  ScalarField k = log(den);
  out.gauge = (1.0 / (4.0 * kPi)) * (k / w) * dw + (1.0 / (4.0 * kPi)) * (k / wb) * dwb;
  return out;
}

// Primitive (1,1)-form on the base chart whose i(dbar - del) derivative is
// the flux: (-i/4pi)(dbar K ^ dlog w - del K ^ dlog conj(w)).
FormField hopf_omega(const ChartPtr& ch) {
  ScalarField z = ScalarField::coord(0), w = ScalarField::coord(1);
  ScalarField zb = ScalarField::coord(2), wb = ScalarField::coord(3);
  ScalarField den = 1.0 + z * zb;
  FormField dz = FormField::basis(ch, {0}), dw = FormField::basis(ch, {1});
  FormField dzb = FormField::basis(ch, {2}), dwb = FormField::basis(ch, {3});
  return (cplx(0.0, -1.0) / (4.0 * kPi)) *
         ((z / (den * w)) * wedge(dzb, dw) - (zb / (den * wb)) * wedge(dz, dwb));
}

}  // namespace

GerbeCech hopf_gerbe(int overlap_samples, unsigned seed) {
  auto u0 = Chart::complex_chart("U0", {"z0", "w0"});
  auto u1 = Chart::complex_chart("U1", {"z1", "w1"});
  std::mt19937 rng(seed);

  GerbeCech data;
  data.cover.charts = {u0, u1};

  PairOverlap pr;
  pr.i = 0;
  pr.j = 1;
  {
    ScalarField z = ScalarField::coord(0), w = ScalarField::coord(1);
    pr.to_j = make_chart_map(u0, u1, {1.0 / z, z * w});
  }
  {
    ScalarField z = ScalarField::coord(0), w = ScalarField::coord(1);
    pr.to_i = make_chart_map(u1, u0, {1.0 / z, z * w});
  }
  pr.samples = annulus_samples(u0, overlap_samples, rng);
  data.cover.pairs.push_back(std::move(pr));
  data.cover.chart_samples = {annulus_samples(u0, overlap_samples, rng),
                              annulus_samples(u1, overlap_samples, rng)};

  HopfChartFields f0 = hopf_chart_fields(u0);
  HopfChartFields f1 = hopf_chart_fields(u1);
  data.b = {f0.curving, f1.curving};

  {
    ScalarField z = ScalarField::coord(0), w = ScalarField::coord(1);
    ScalarField zb = ScalarField::coord(2), wb = ScalarField::coord(3);
    FormField dz = FormField::basis(u0, {0}), dw = FormField::basis(u0, {1});
    FormField half =
        (-1.0 / (8.0 * kPi)) * (log(z) / w) * dw + (1.0 / (8.0 * kPi)) * (log(w) / z) * dz;
    data.a[{0, 1}] = half + half.conj();
  }

  FormField omega = hopf_omega(u0);
  data.theta = {f0.b02 - cplx(0.0, 1.0) * omega,
                f1.b02 - cplx(0.0, 1.0) * pullback(data.cover.pairs[0].to_i, omega)};
  data.tangent_complex = {standard_complex_structure(u0), standard_complex_structure(u1)};
  data.hermitian = true;
  return data;
}

std::vector<FormField> hopf_gerbe_gauge(const GerbeCech& data) {
  std::vector<FormField> alpha;
  for (const auto& ch : data.cover.charts) alpha.push_back(hopf_chart_fields(ch).gauge);
  return alpha;
}

GerbeCech quad_cover_gerbe(bool hermitian, int overlap_samples, unsigned seed) {
  std::mt19937 rng(seed);
  GerbeCech data;
  for (int i = 0; i < 4; ++i)
    data.cover.charts.push_back(
        Chart::complex_chart("Q" + std::to_string(i), {"z", "w"}));

  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      PairOverlap pr;
      pr.i = i;
      pr.j = j;
      {
        ScalarField z = ScalarField::coord(0), w = ScalarField::coord(1);
        pr.to_j = make_chart_map(data.cover.charts[static_cast<size_t>(i)],
                                 data.cover.charts[static_cast<size_t>(j)], {z, w});
      }
      {
        ScalarField z = ScalarField::coord(0), w = ScalarField::coord(1);
        pr.to_i = make_chart_map(data.cover.charts[static_cast<size_t>(j)],
                                 data.cover.charts[static_cast<size_t>(i)], {z, w});
      }
      pr.samples =
          annulus_samples(data.cover.charts[static_cast<size_t>(i)], overlap_samples, rng);
      data.cover.pairs.push_back(std::move(pr));
    }
  for (int i = 0; i < 4; ++i)
    data.cover.chart_samples.push_back(
        annulus_samples(data.cover.charts[static_cast<size_t>(i)], overlap_samples, rng));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) {
        TripleOverlap tr;
        tr.idx = {i, j, k};
        tr.samples =
            annulus_samples(data.cover.charts[static_cast<size_t>(i)], overlap_samples, rng);
        data.cover.triples.push_back(std::move(tr));
      }
  {
    QuadOverlap q;
    q.idx = {0, 1, 2, 3};
    q.samples = annulus_samples(data.cover.charts[0], overlap_samples, rng);
    data.cover.quads.push_back(std::move(q));
  }

  // The phase satisfies c_jkl - c_ikl + c_ijl - c_ijk = 0 on the quadruple.
  const std::map<std::array<int, 3>, double> level = {
      {{0, 1, 2}, 1.0}, {{0, 1, 3}, 2.0}, {{0, 2, 3}, 3.0}, {{1, 2, 3}, 2.0}};
  auto phase = [&]() {
    ScalarField z = ScalarField::coord(0), zb = ScalarField::coord(2);
    ScalarField w = ScalarField::coord(1);
    return hermitian ? 0.5 * (z + zb) : z * w;
  };
  for (const auto& [idx, c] : level) {
    ScalarField ph = phase();
    data.g[idx] = hermitian ? exp(cplx(0.0, 1.0) * (c * ph)) : exp(c * ph);
  }

  auto dphase = [&](const ChartPtr& ch) {
    FormField dz = FormField::basis(ch, {0}), dzb = FormField::basis(ch, {2});
    FormField dw = FormField::basis(ch, {1});
    ScalarField z = ScalarField::coord(0), w = ScalarField::coord(1);
    return hermitian ? 0.5 * cplx(1.0, 0.0) * (dz + dzb) : w * dz + z * dw;
  };
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const ChartPtr& ch = data.cover.charts[static_cast<size_t>(i)];
      double c = 0.0;
      if (i >= 1) c = level.at({0, i, j});  // A_ij = c_{0ij} dphi solves every triple
      data.a[{i, j}] = c * dphase(ch);
    }

  for (int i = 0; i < 4; ++i) {
    const ChartPtr& ch = data.cover.charts[static_cast<size_t>(i)];
    ScalarField z = ScalarField::coord(0), zb = ScalarField::coord(2);
    FormField dw = FormField::basis(ch, {1}), dwb = FormField::basis(ch, {3});
    data.b.push_back((z + zb) * (cplx(0.0, 0.5) * wedge(dw, dwb)));
    data.tangent_complex.push_back(standard_complex_structure(ch));
  }
  data.hermitian = hermitian;

  // Shear by a chart-dependent real gauge so the pair identities are
  // exercised with distinct curvings.
  std::vector<FormField> eta;
  const double weight[4] = {0.0, 1.0, -1.0, 2.0};
  for (int i = 0; i < 4; ++i) {
    const ChartPtr& ch = data.cover.charts[static_cast<size_t>(i)];
    ScalarField w = ScalarField::coord(1), wb = ScalarField::coord(3);
    FormField dz = FormField::basis(ch, {0}), dzb = FormField::basis(ch, {2});
    eta.push_back(weight[i] * ((w * wb) * (dz + dzb)));
  }
  return gauge_transform(data, eta);
}

GerbeCech trivial_gerbe(int overlap_samples, unsigned seed) {
  std::mt19937 rng(seed);
  GerbeCech data;
  for (int i = 0; i < 2; ++i)
    data.cover.charts.push_back(
        Chart::complex_chart("T" + std::to_string(i), {"z", "w"}));
  PairOverlap pr;
  pr.i = 0;
  pr.j = 1;
  {
    ScalarField z = ScalarField::coord(0), w = ScalarField::coord(1);
    pr.to_j = make_chart_map(data.cover.charts[0], data.cover.charts[1], {z, w});
  }
  {
    ScalarField z = ScalarField::coord(0), w = ScalarField::coord(1);
    pr.to_i = make_chart_map(data.cover.charts[1], data.cover.charts[0], {z, w});
  }
  pr.samples = annulus_samples(data.cover.charts[0], overlap_samples, rng);
  data.cover.pairs.push_back(std::move(pr));
  data.cover.chart_samples = {annulus_samples(data.cover.charts[0], overlap_samples, rng),
                              annulus_samples(data.cover.charts[1], overlap_samples, rng)};
  data.a[{0, 1}] = FormField::zero(data.cover.charts[0], 1);
  data.b = {FormField::zero(data.cover.charts[0], 2), FormField::zero(data.cover.charts[1], 2)};
  data.theta = {FormField::zero(data.cover.charts[0], 2),
                FormField::zero(data.cover.charts[1], 2)};
  data.tangent_complex = {standard_complex_structure(data.cover.charts[0]),
                          standard_complex_structure(data.cover.charts[1])};
  data.hermitian = true;
  return data;
}

Cycle clifford_torus(const ChartPtr& chart) {
  ChartPtr cube = Cycle::cube(2, "t2");
  ScalarField t1 = ScalarField::coord(0), t2 = ScalarField::coord(1);
  const cplx tau(0.0, 2.0 * kPi);
  return {make_chart_map(cube, chart, {exp(tau * t1), exp(tau * t2)})};
}

Cycle fundamental_sphere(const ChartPtr& chart, double radius) {
  ChartPtr cube = Cycle::cube(3, "s3");
  ScalarField t1 = ScalarField::coord(0), t2 = ScalarField::coord(1),
              t3 = ScalarField::coord(2);
  const cplx tau(0.0, 2.0 * kPi);
  ScalarField x1 = radius * cos((kPi / 2.0) * t1) * exp(tau * t3);
  ScalarField x2 = radius * sin((kPi / 2.0) * t1) * exp(tau * t2);
  return {make_chart_map(cube, chart, {x1, x2})};
}

}  // namespace gkx
