#include "gkx/forms.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace gkx {

namespace {

std::mutex comb_mutex;
std::map<std::pair<int, int>, std::shared_ptr<const CombTable>> comb_cache;

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

void check_same_chart(const ChartPtr& a, const ChartPtr& b, const char* what) {
  if (a.get() != b.get()) throw std::invalid_argument(std::string(what) + ": chart mismatch");
}

// Determinant of a k x k jet matrix (row-major), by minor expansion.
Jet jet_det(const std::vector<Jet>& m, int k) {
  if (k == 1) return m[0];
  std::vector<int> rows(k);
  for (int i = 0; i < k; ++i) rows[i] = i;
  // recursive lambda over remaining rows, expanding along columns
  std::function<Jet(std::vector<int>&, int)> expand = [&](std::vector<int>& rem, int col) -> Jet {
    if (rem.size() == 1) return m[static_cast<size_t>(rem[0]) * k + col];
    Jet acc;
    double sign = 1.0;
    for (size_t t = 0; t < rem.size(); ++t) {
      int r = rem[t];
      std::vector<int> next = rem;
      next.erase(next.begin() + static_cast<long>(t));
      Jet minor = expand(next, col + 1);
      Jet term = m[static_cast<size_t>(r) * k + col] * minor * cplx{sign, 0.0};
      acc = acc.valid() ? acc + term : term;
      sign = -sign;
    }
    return acc;
  };
  return expand(rows, 0);
}

}  // namespace

// ---------------------------------------------------------------------------
// CombTable

CombTable::CombTable(int n, int k) : n_(n), k_(k) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    count_ = 1;
    return;
  }
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    tuples_.insert(tuples_.end(), cur.begin(), cur.end());
    ++count_;
    int t = k - 1;
    while (t >= 0 && cur[t] == n - k + t) --t;
    if (t < 0) break;
    ++cur[t];
    for (int s = t + 1; s < k; ++s) cur[s] = cur[s - 1] + 1;
  }
}

std::shared_ptr<const CombTable> CombTable::get(int n, int k) {
  std::lock_guard<std::mutex> lock(comb_mutex);
  auto& slot = comb_cache[{n, k}];
  if (!slot) slot = std::shared_ptr<const CombTable>(new CombTable(n, k));
  return slot;
}

int CombTable::rank(std::span<const int> inc) const {
  long long r = 0;
  int prev = -1;
  for (int t = 0; t < k_; ++t) {
    for (int v = prev + 1; v < inc[t]; ++v) r += binom(n_ - 1 - v, k_ - 1 - t);
    prev = inc[t];
  }
  return static_cast<int>(r);
}

int CombTable::sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i) {
    int v = idx[i];
    size_t j = i;
    while (j > 0 && idx[j - 1] > v) {
      idx[j] = idx[j - 1];
      --j;
      sign = -sign;
    }
    idx[j] = v;
  }
  for (size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

// ---------------------------------------------------------------------------
// VecField

VecField VecField::zero(ChartPtr chart) {
  VecField v{chart, std::vector<ScalarField>(chart->nslots(), ScalarField::constant(0.0))};
  return v;
}

VecField VecField::basis(ChartPtr chart, int slot) {
  VecField v = zero(chart);
  v.comp[slot] = ScalarField::constant(1.0);
  return v;
}

Eigen::VectorXcd VecField::value(const Point& p) const {
  EvalContext ctx;
  return value(p, ctx);
}

Eigen::VectorXcd VecField::value(const Point& p, EvalContext& ctx) const {
  Eigen::VectorXcd v(comp.size());
  for (size_t i = 0; i < comp.size(); ++i) v[static_cast<long>(i)] = comp[i].eval(p, 0, ctx).value();
  return v;
}

VecField VecField::conj() const {
  VecField v{chart, {}};
  v.comp.reserve(comp.size());
  for (int i = 0; i < chart->nslots(); ++i) v.comp.push_back(comp[chart->conj_slot(i)].conj());
  return v;
}

VecField operator+(const VecField& a, const VecField& b) {
  check_same_chart(a.chart, b.chart, "VecField+");
  VecField r{a.chart, {}};
  for (size_t i = 0; i < a.comp.size(); ++i) r.comp.push_back(a.comp[i] + b.comp[i]);
  return r;
}

VecField operator-(const VecField& a, const VecField& b) {
  check_same_chart(a.chart, b.chart, "VecField-");
  VecField r{a.chart, {}};
  for (size_t i = 0; i < a.comp.size(); ++i) r.comp.push_back(a.comp[i] - b.comp[i]);
  return r;
}

VecField operator*(const ScalarField& f, const VecField& a) {
  VecField r{a.chart, {}};
  for (const auto& c : a.comp) r.comp.push_back(f * c);
  return r;
}

VecField operator*(cplx s, const VecField& a) {
  VecField r{a.chart, {}};
  for (const auto& c : a.comp) r.comp.push_back(s * c);
  return r;
}

// ---------------------------------------------------------------------------
// FormField

FormField FormField::zero(ChartPtr chart, int degree) {
  auto T = CombTable::get(chart->nslots(), degree);
  FormField f{chart, degree, std::vector<ScalarField>(T->size(), ScalarField::constant(0.0))};
  return f;
}

FormField FormField::scalar(ChartPtr chart, ScalarField f) {
  return FormField{chart, 0, {std::move(f)}};
}

FormField FormField::basis(ChartPtr chart, std::vector<int> idx) {
  int k = static_cast<int>(idx.size());
  int s = CombTable::sort_sign(idx);
  FormField f = zero(chart, k);
  if (s != 0) {
    auto T = CombTable::get(chart->nslots(), k);
    f.comp[T->rank(idx)] = ScalarField::constant(cplx(s, 0.0));
  }
  return f;
}

ScalarField FormField::coefficient(std::vector<int> idx) const {
  int s = CombTable::sort_sign(idx);
  if (s == 0) return ScalarField::constant(0.0);
  auto T = CombTable::get(chart->nslots(), degree);
  const ScalarField& c = comp[T->rank(idx)];
  return s == 1 ? c : -c;
}

Eigen::VectorXcd FormField::value(const Point& p) const {
  EvalContext ctx;
  return value(p, ctx);
}

Eigen::VectorXcd FormField::value(const Point& p, EvalContext& ctx) const {
  Eigen::VectorXcd v(comp.size());
  for (size_t i = 0; i < comp.size(); ++i) v[static_cast<long>(i)] = comp[i].eval(p, 0, ctx).value();
  return v;
}

double FormField::max_abs(const Point& p) const {
  Eigen::VectorXcd v = value(p);
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

FormField FormField::conj() const {
  auto T = CombTable::get(chart->nslots(), degree);
  FormField f = zero(chart, degree);
  for (int r = 0; r < T->size(); ++r) {
    auto K = T->tuple(r);
    std::vector<int> mapped(K.begin(), K.end());
    for (auto& i : mapped) i = chart->conj_slot(i);
    int s = CombTable::sort_sign(mapped);
    ScalarField c = comp[T->rank(mapped)].conj();
    f.comp[r] = (s == 1) ? c : -c;
  }
  return f;
}

FormField operator+(const FormField& a, const FormField& b) {
  check_same_chart(a.chart, b.chart, "FormField+");
  if (a.degree != b.degree) throw std::invalid_argument("FormField+: degree mismatch");
  FormField r{a.chart, a.degree, {}};
  for (size_t i = 0; i < a.comp.size(); ++i) r.comp.push_back(a.comp[i] + b.comp[i]);
  return r;
}

FormField operator-(const FormField& a, const FormField& b) {
  check_same_chart(a.chart, b.chart, "FormField-");
  if (a.degree != b.degree) throw std::invalid_argument("FormField-: degree mismatch");
  FormField r{a.chart, a.degree, {}};
  for (size_t i = 0; i < a.comp.size(); ++i) r.comp.push_back(a.comp[i] - b.comp[i]);
  return r;
}

FormField operator-(const FormField& a) {
  FormField r{a.chart, a.degree, {}};
  for (const auto& c : a.comp) r.comp.push_back(-c);
  return r;
}

FormField operator*(const ScalarField& f, const FormField& a) {
  FormField r{a.chart, a.degree, {}};
  for (const auto& c : a.comp) r.comp.push_back(f * c);
  return r;
}

FormField operator*(cplx s, const FormField& a) {
  FormField r{a.chart, a.degree, {}};
  for (const auto& c : a.comp) r.comp.push_back(s * c);
  return r;
}

FormField wedge(const FormField& a, const FormField& b) {
  check_same_chart(a.chart, b.chart, "wedge");
  int n = a.chart->nslots();
  int ka = a.degree, kb = b.degree, k = ka + kb;
  if (k > n) return FormField{a.chart, k, {}};
  auto TK = CombTable::get(n, k);
  auto TA = CombTable::get(n, ka);
  auto TB = CombTable::get(n, kb);
  auto TS = CombTable::get(k, ka);  // position subsets
  FormField r{a.chart, k, {}};
  r.comp.reserve(TK->size());
  for (int rk = 0; rk < TK->size(); ++rk) {
    auto K = TK->tuple(rk);
    ScalarField acc;
    for (int rs = 0; rs < TS->size(); ++rs) {
      auto S = TS->tuple(rs);
      std::vector<int> idxA(ka), idxB(kb);
      std::vector<bool> in_a(k, false);
      int shift = 0;
      for (int t = 0; t < ka; ++t) {
        idxA[t] = K[S[t]];
        in_a[S[t]] = true;
        shift += S[t] - t;  // inversions of the (S, complement) shuffle
      }
      for (int pos = 0, t = 0; pos < k; ++pos)
        if (!in_a[pos]) idxB[t++] = K[pos];
      cplx sign{(shift % 2 == 0) ? 1.0 : -1.0, 0.0};
      ScalarField term = sign * (a.comp[TA->rank(idxA)] * b.comp[TB->rank(idxB)]);
      acc = acc.valid() ? acc + term : term;
    }
    r.comp.push_back(acc.valid() ? acc : ScalarField::constant(0.0));
  }
  return r;
}

FormField ext_deriv(const FormField& a) {
  int n = a.chart->nslots();
  int k = a.degree;
  if (k + 1 > n) return FormField{a.chart, k + 1, {}};
  auto TK = CombTable::get(n, k + 1);
  auto TA = CombTable::get(n, k);
  FormField r{a.chart, k + 1, {}};
  r.comp.reserve(TK->size());
  for (int rk = 0; rk < TK->size(); ++rk) {
    auto K = TK->tuple(rk);
    ScalarField acc;
    for (int t = 0; t <= k; ++t) {
      std::vector<int> rest;
      rest.reserve(k);
      for (int s = 0; s <= k; ++s)
        if (s != t) rest.push_back(K[s]);
      ScalarField term = a.comp[TA->rank(rest)].partial(K[t]);
      if (t % 2 == 1) term = -term;
      acc = acc.valid() ? acc + term : term;
    }
    r.comp.push_back(acc);
  }
  return r;
}

FormField interior(const VecField& X, const FormField& a) {
  check_same_chart(X.chart, a.chart, "interior");
  int n = a.chart->nslots();
  int k = a.degree;
  if (k < 1) throw std::invalid_argument("interior: degree 0 form");
  if (static_cast<int>(a.comp.size()) == 0) return FormField::zero(a.chart, k - 1);
  auto TJ = CombTable::get(n, k - 1);
  auto TA = CombTable::get(n, k);
  FormField r{a.chart, k - 1, {}};
  r.comp.reserve(TJ->size());
  for (int rj = 0; rj < TJ->size(); ++rj) {
    auto J = TJ->tuple(rj);
    ScalarField acc;
    for (int m = 0; m < n; ++m) {
      std::vector<int> idx{m};
      idx.insert(idx.end(), J.begin(), J.end());
      int s = CombTable::sort_sign(idx);
      if (s == 0) continue;
      ScalarField term = X.comp[m] * a.comp[TA->rank(idx)];
      if (s == -1) term = -term;
      acc = acc.valid() ? acc + term : term;
    }
    r.comp.push_back(acc.valid() ? acc : ScalarField::constant(0.0));
  }
  return r;
}

ScalarField contract(const FormField& a, const std::vector<VecField>& Xs) {
  if (static_cast<int>(Xs.size()) != a.degree)
    throw std::invalid_argument("contract: arity mismatch");
  FormField cur = a;
  for (const auto& X : Xs) cur = interior(X, cur);
  return cur.comp.at(0);
}

VecField lie_bracket(const VecField& X, const VecField& Y) {
  check_same_chart(X.chart, Y.chart, "lie_bracket");
  int n = X.chart->nslots();
  VecField r{X.chart, {}};
  r.comp.reserve(n);
  for (int i = 0; i < n; ++i) {
    ScalarField acc;
    for (int j = 0; j < n; ++j) {
      ScalarField term = X.comp[j] * Y.comp[i].partial(j) - Y.comp[j] * X.comp[i].partial(j);
      acc = acc.valid() ? acc + term : term;
    }
    r.comp.push_back(acc);
  }
  return r;
}

FormField lie_derivative(const VecField& X, const FormField& a) {
  if (a.degree == 0) {
    ScalarField acc;
    for (int j = 0; j < a.chart->nslots(); ++j) {
      ScalarField term = X.comp[j] * a.comp[0].partial(j);
      acc = acc.valid() ? acc + term : term;
    }
    return FormField::scalar(a.chart, acc);
  }
  return interior(X, ext_deriv(a)) + ext_deriv(interior(X, a));
}

FormField pullback(const ChartMap& phi, const FormField& a) {
  int ns = phi.source->nslots();
  int nt = phi.target->nslots();
  int k = a.degree;
  if (k == 0) return FormField::scalar(phi.source, pullback(phi, a.comp[0]));
  if (k > ns) return FormField{phi.source, k, {}};
  auto TI = CombTable::get(nt, k);
  auto TJ = CombTable::get(ns, k);

  std::vector<ScalarField> deps;
  deps.reserve(TI->size() + static_cast<size_t>(nt) * ns);
  for (const auto& c : a.comp) deps.push_back(pullback(phi, c));
  for (int ti = 0; ti < nt; ++ti)
    for (int sj = 0; sj < ns; ++sj) deps.push_back(phi.components[ti].partial(sj));

  int ncomp = TI->size();
  FormField r{phi.source, k, {}};
  r.comp.reserve(TJ->size());
  for (int rj = 0; rj < TJ->size(); ++rj) {
    std::vector<int> J(TJ->tuple(rj).begin(), TJ->tuple(rj).end());
    r.comp.push_back(ScalarField::computed(deps, [TI, J, k, ns, ncomp](std::span<const Jet> d) {
      Jet acc;
      std::vector<Jet> minor(static_cast<size_t>(k) * k);
      for (int ri = 0; ri < TI->size(); ++ri) {
        auto I = TI->tuple(ri);
        for (int t = 0; t < k; ++t)
          for (int s = 0; s < k; ++s)
            minor[static_cast<size_t>(t) * k + s] = d[ncomp + I[t] * ns + J[s]];
        Jet term = d[ri] * jet_det(minor, k);
        acc = acc.valid() ? acc + term : term;
      }
      return acc;
    }));
  }
  return r;
}

// ---------------------------------------------------------------------------
// MatrixField

MatrixField MatrixField::zero(ChartPtr chart, int rows, int cols) {
  return MatrixField{chart, rows, cols,
                     std::vector<ScalarField>(static_cast<size_t>(rows) * cols,
                                              ScalarField::constant(0.0))};
}

MatrixField MatrixField::identity(ChartPtr chart, int n) {
  MatrixField m = zero(chart, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = ScalarField::constant(1.0);
  return m;
}

MatrixField MatrixField::constant(ChartPtr chart, const Eigen::MatrixXcd& v) {
  MatrixField m = zero(chart, static_cast<int>(v.rows()), static_cast<int>(v.cols()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = ScalarField::constant(v(i, j));
  return m;
}

Eigen::MatrixXcd MatrixField::value(const Point& p) const {
  EvalContext ctx;
  return value(p, ctx);
}

Eigen::MatrixXcd MatrixField::value(const Point& p, EvalContext& ctx) const {
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = at(i, j).eval(p, 0, ctx).value();
  return m;
}

MatrixField MatrixField::transpose() const {
  MatrixField m = zero(chart, cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
  return m;
}

MatrixField operator+(const MatrixField& a, const MatrixField& b) {
  check_same_chart(a.chart, b.chart, "MatrixField+");
  if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("MatrixField+: shape");
  MatrixField r{a.chart, a.rows, a.cols, {}};
  for (size_t i = 0; i < a.e.size(); ++i) r.e.push_back(a.e[i] + b.e[i]);
  return r;
}

MatrixField operator-(const MatrixField& a, const MatrixField& b) {
  check_same_chart(a.chart, b.chart, "MatrixField-");
  if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("MatrixField-: shape");
  MatrixField r{a.chart, a.rows, a.cols, {}};
  for (size_t i = 0; i < a.e.size(); ++i) r.e.push_back(a.e[i] - b.e[i]);
  return r;
}

MatrixField operator*(const MatrixField& a, const MatrixField& b) {
  check_same_chart(a.chart, b.chart, "MatrixField*");
  if (a.cols != b.rows) throw std::invalid_argument("MatrixField*: shape");
  MatrixField r{a.chart, a.rows, b.cols, {}};
  r.e.reserve(static_cast<size_t>(a.rows) * b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j) {
      ScalarField acc;
      for (int t = 0; t < a.cols; ++t) {
        ScalarField term = a.at(i, t) * b.at(t, j);
        acc = acc.valid() ? acc + term : term;
      }
      r.e.push_back(acc);
    }
  return r;
}

MatrixField operator*(cplx s, const MatrixField& a) {
  MatrixField r{a.chart, a.rows, a.cols, {}};
  for (const auto& c : a.e) r.e.push_back(s * c);
  return r;
}

MatrixField operator*(const ScalarField& f, const MatrixField& a) {
  MatrixField r{a.chart, a.rows, a.cols, {}};
  for (const auto& c : a.e) r.e.push_back(f * c);
  return r;
}

MatrixField inverse(const MatrixField& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse: not square");
  int n = m.rows;
  MatrixField r{m.chart, n, n, {}};
  r.e.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r.e.push_back(ScalarField::computed(m.e, [n, i, j](std::span<const Jet> d) {
        // Gauss-Jordan on jets with value pivoting; returns entry (i,j) of the
        // inverse, i.e. component i of the solution of M x = e_j.
        std::vector<Jet> a(d.begin(), d.end());
        auto layout = d[0].layout_ptr();
        std::vector<Jet> x(n);
        for (int t = 0; t < n; ++t) x[t] = Jet::constant(layout, t == j ? 1.0 : 0.0);
        std::vector<int> perm(n);
        for (int t = 0; t < n; ++t) perm[t] = t;
        for (int col = 0; col < n; ++col) {
          int piv = col;
          double best = std::abs(a[static_cast<size_t>(perm[col]) * n + col].value());
          for (int t = col + 1; t < n; ++t) {
            double v = std::abs(a[static_cast<size_t>(perm[t]) * n + col].value());
            if (v > best) {
              best = v;
              piv = t;
            }
          }
          if (best == 0.0) throw std::domain_error("inverse: singular matrix field");
          std::swap(perm[col], perm[piv]);
          std::swap(x[col], x[piv]);
          Jet inv_p = inv(a[static_cast<size_t>(perm[col]) * n + col]);
          for (int t = 0; t < n; ++t) {
            if (t == col) continue;
            Jet f = a[static_cast<size_t>(perm[t]) * n + col] * inv_p;
            for (int c2 = col; c2 < n; ++c2)
              a[static_cast<size_t>(perm[t]) * n + c2] -=
                  f * a[static_cast<size_t>(perm[col]) * n + c2];
            x[t] -= f * x[col];
          }
          x[col] = x[col] * inv_p;
          // normalize the pivot row lazily: only x matters for the result
          for (int c2 = n - 1; c2 >= col; --c2)
            a[static_cast<size_t>(perm[col]) * n + c2] =
                a[static_cast<size_t>(perm[col]) * n + c2] * inv_p;
        }
        return x[i];
      }));
  return r;
}

VecField apply(const MatrixField& m, const VecField& v) {
  check_same_chart(m.chart, v.chart, "apply");
  if (m.cols != static_cast<int>(v.comp.size())) throw std::invalid_argument("apply: shape");
  VecField r{m.chart, {}};
  r.comp.reserve(m.rows);
  for (int i = 0; i < m.rows; ++i) {
    ScalarField acc;
    for (int j = 0; j < m.cols; ++j) {
      ScalarField term = m.at(i, j) * v.comp[j];
      acc = acc.valid() ? acc + term : term;
    }
    r.comp.push_back(acc);
  }
  return r;
}

MatrixField block2(const MatrixField& a, const MatrixField& b, const MatrixField& c,
                   const MatrixField& d) {
  if (a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols)
    throw std::invalid_argument("block2: shape");
  MatrixField r = MatrixField::zero(a.chart, a.rows + c.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) r.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) r.at(i, a.cols + j) = b.at(i, j);
  for (int i = 0; i < c.rows; ++i)
    for (int j = 0; j < c.cols; ++j) r.at(a.rows + i, j) = c.at(i, j);
  for (int i = 0; i < d.rows; ++i)
    for (int j = 0; j < d.cols; ++j) r.at(a.rows + i, a.cols + j) = d.at(i, j);
  return r;
}

FormField two_form_from_map(const MatrixField& m) {
  if (m.rows != m.cols) throw std::invalid_argument("two_form_from_map: not square");
  auto T = CombTable::get(m.rows, 2);
  FormField w{m.chart, 2, {}};
  w.comp.reserve(T->size());
  for (int r = 0; r < T->size(); ++r) {
    auto K = T->tuple(r);
    w.comp.push_back(m.at(K[1], K[0]));
  }
  return w;
}

MatrixField map_from_two_form(const FormField& w) {
  if (w.degree != 2) throw std::invalid_argument("map_from_two_form: degree");
  int n = w.chart->nslots();
  auto T = CombTable::get(n, 2);
  MatrixField m = MatrixField::zero(w.chart, n, n);
  for (int r = 0; r < T->size(); ++r) {
    auto K = T->tuple(r);
    m.at(K[1], K[0]) = w.comp[r];
    m.at(K[0], K[1]) = -w.comp[r];
  }
  return m;
}

// ---------------------------------------------------------------------------
// Type decomposition

FormField type_project(const FormField& a, const MatrixField& I, int p, int q) {
  check_same_chart(a.chart, I.chart, "type_project");
  int n = a.chart->nslots();
  int k = a.degree;
  if (p < 0 || q < 0 || p + q != k) throw std::invalid_argument("type_project: bad bidegree");
  if (I.rows != n || I.cols != n) throw std::invalid_argument("type_project: I shape");
  if (k == 0) return a;
  if (a.comp.empty()) return a;

  auto TK = CombTable::get(n, k);
  auto TS = CombTable::get(k, p);  // which slots receive the (1,0) projector
  int ncomp = TK->size();

  std::vector<ScalarField> deps = a.comp;
  deps.insert(deps.end(), I.e.begin(), I.e.end());

  FormField r{a.chart, k, {}};
  r.comp.reserve(ncomp);
  for (int rk = 0; rk < ncomp; ++rk) {
    std::vector<int> K(TK->tuple(rk).begin(), TK->tuple(rk).end());
    r.comp.push_back(ScalarField::computed(deps, [TK, TS, K, n, k, ncomp](std::span<const Jet> d) {
      auto layout = d[0].layout_ptr();
      const cplx half{0.5, 0.0};
      const cplx ihalf{0.0, 0.5};
      // P = (1 - iI)/2 projects onto the +i eigenspace, Pb = (1 + iI)/2.
      std::vector<Jet> P(static_cast<size_t>(n) * n), Pb(static_cast<size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const Jet& Iij = d[ncomp + static_cast<size_t>(i) * n + j];
          Jet diag = Jet::constant(layout, i == j ? 1.0 : 0.0);
          P[static_cast<size_t>(i) * n + j] = half * diag - ihalf * Iij;
          Pb[static_cast<size_t>(i) * n + j] = half * diag + ihalf * Iij;
        }
      Jet acc = Jet::constant(layout, 0.0);
      std::vector<int> m(k, 0), sorted(k);
      for (int rs = 0; rs < TS->size(); ++rs) {
        auto S = TS->tuple(rs);
        std::vector<bool> holo(k, false);
        for (int t = 0; t < TS->k(); ++t) holo[S[t]] = true;
        // odometer over maps {1..k} -> slots
        std::fill(m.begin(), m.end(), 0);
        while (true) {
          for (int t = 0; t < k; ++t) sorted[t] = m[t];
          int sg = CombTable::sort_sign(sorted);
          if (sg != 0) {
            Jet w = d[TK->rank(sorted)];
            for (int t = 0; t < k; ++t) {
              const auto& proj = holo[t] ? P : Pb;
              w = w * proj[static_cast<size_t>(m[t]) * n + K[t]];
            }
            if (sg == -1) w = -w;
            acc += w;
          }
          int t = k - 1;
          while (t >= 0 && m[t] == n - 1) m[t--] = 0;
          if (t < 0) break;
          ++m[t];
        }
      }
      return acc;
    }));
  }
  return r;
}

FormField dc(const FormField& a, const MatrixField& I) {
  int k = a.degree;
  FormField acc = FormField::zero(a.chart, k + 1);
  if (k + 1 > a.chart->nslots()) return FormField{a.chart, k + 1, {}};
  for (int p = 0; p <= k; ++p) {
    int q = k - p;
    FormField dpiece = ext_deriv(type_project(a, I, p, q));
    acc = acc + type_project(dpiece, I, p, q + 1) - type_project(dpiece, I, p + 1, q);
  }
  return cplx{0.0, 1.0} * acc;
}

std::vector<FormField> nijenhuis(const MatrixField& I) {
  int n = I.chart->nslots();
  if (I.rows != n || I.cols != n) throw std::invalid_argument("nijenhuis: shape");
  auto T = CombTable::get(n, 2);
  std::vector<FormField> N;
  N.reserve(n);
  for (int kk = 0; kk < n; ++kk) {
    FormField f{I.chart, 2, {}};
    f.comp.reserve(T->size());
    for (int r = 0; r < T->size(); ++r) {
      auto K = T->tuple(r);
      int i = K[0], j = K[1];
      ScalarField acc;
      for (int m = 0; m < n; ++m) {
        ScalarField term = I.at(m, i) * I.at(kk, j).partial(m) -
                           I.at(m, j) * I.at(kk, i).partial(m) +
                           I.at(kk, m) * (I.at(m, i).partial(j) - I.at(m, j).partial(i));
        acc = acc.valid() ? acc + term : term;
      }
      f.comp.push_back(acc);
    }
    N.push_back(std::move(f));
  }
  return N;
}

double nijenhuis_residual(const MatrixField& I, const Point& p) {
  double r = 0.0;
  for (const auto& f : nijenhuis(I)) r = std::max(r, f.max_abs(p));
  return r;
}

double schouten_residual(const MatrixField& m, const Point& p) {
  if (m.rows != m.cols) throw std::invalid_argument("schouten_residual: shape");
  int n = m.rows;
  EvalContext ctx;
  // b^{ij} = m(j,i); jets at order 1 supply the first partials.
  std::vector<Jet> b(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b[static_cast<size_t>(i) * n + j] = m.at(j, i).eval(p, 1, ctx);
  auto bv = [&](int i, int j) { return b[static_cast<size_t>(i) * n + j].value(); };
  auto bd = [&](int s, int i, int j) { return b[static_cast<size_t>(i) * n + j].d(s); };
  double res = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        cplx acc = 0.0;
        for (int s = 0; s < n; ++s)
          acc += bv(s, i) * bd(s, j, k) + bv(s, j) * bd(s, k, i) + bv(s, k) * bd(s, i, j);
        res = std::max(res, std::abs(acc));
      }
  return res;
}

}  // namespace gkx
