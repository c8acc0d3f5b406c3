#include "gkx/jet.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace gkx {

namespace {

std::mutex g_layout_mutex;
std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>>& layout_cache() {
  static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
  return cache;
}

// Enumerate exponent vectors of total degree d over n slots, lexicographic.
void enumerate_degree(int n, int d, std::vector<std::uint8_t>& cur, int pos, int left,
                      std::vector<std::vector<std::uint8_t>>& out) {
  if (pos == n - 1) {
    cur[pos] = static_cast<std::uint8_t>(left);
    out.push_back(cur);
    return;
  }
  for (int k = left; k >= 0; --k) {
    cur[pos] = static_cast<std::uint8_t>(k);
    enumerate_degree(n, d, cur, pos + 1, left - k, out);
  }
}

}  // namespace

JetLayout::JetLayout(int nvars, int order) : nvars_(nvars), order_(order) {
  assert(nvars >= 1 && nvars <= 16 && order >= 0 && order <= 12);
  std::vector<std::uint8_t> cur(nvars);
  for (int d = 0; d <= order; ++d) enumerate_degree(nvars, d, cur, 0, d, exps_);
  deg_.resize(exps_.size());
  for (size_t i = 0; i < exps_.size(); ++i) {
    int d = 0;
    for (int j = 0; j < nvars; ++j) d += exps_[i][j];
    deg_[i] = d;
  }
  prod_.assign(exps_.size() * exps_.size(), -1);
  std::vector<std::uint8_t> sum(nvars);
  for (size_t i = 0; i < exps_.size(); ++i)
    for (size_t j = 0; j < exps_.size(); ++j) {
      if (deg_[i] + deg_[j] > order) continue;
      for (int k = 0; k < nvars; ++k) sum[k] = static_cast<std::uint8_t>(exps_[i][k] + exps_[j][k]);
      prod_[i * exps_.size() + j] = rank({sum.data(), sum.size()});
    }
}

int JetLayout::rank(std::span<const std::uint8_t> e) const {
  int d = 0;
  for (auto v : e) d += v;
  if (d > order_) return -1;
  for (size_t i = 0; i < exps_.size(); ++i) {
    if (deg_[i] != d) continue;
    if (std::equal(e.begin(), e.end(), exps_[i].begin())) return static_cast<int>(i);
  }
  return -1;
}

std::shared_ptr<const JetLayout> JetLayout::get(int nvars, int order) {
  std::lock_guard<std::mutex> lock(g_layout_mutex);
  auto key = std::make_pair(nvars, order);
  auto& cache = layout_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto ptr = std::shared_ptr<const JetLayout>(new JetLayout(nvars, order));
  cache.emplace(key, ptr);
  return ptr;
}

Jet::Jet(std::shared_ptr<const JetLayout> layout, cplx value)
    : layout_(std::move(layout)), c_(layout_->size(), cplx{}) {
  c_[0] = value;
}

Jet Jet::variable(std::shared_ptr<const JetLayout> layout, int slot, cplx value) {
  Jet j(layout, value);
  if (layout->order() >= 1) j.c_[1 + slot] = 1.0;  // degree-1 block follows the constant
  return j;
}

cplx Jet::d(int slot) const {
  if (order() < 1) throw std::logic_error("jet order too low for derivative");
  return c_[1 + slot];
}

Jet Jet::partial(int slot) const {
  if (order() < 1) throw std::logic_error("jet order too low for partial()");
  auto out_layout = JetLayout::get(nvars(), order() - 1);
  Jet out(out_layout, cplx{});
  std::vector<std::uint8_t> e(nvars());
  for (int i = 0; i < out_layout->size(); ++i) {
    auto oe = out_layout->exponents(i);
    std::copy(oe.begin(), oe.end(), e.begin());
    e[slot] += 1;
    int src = layout_->rank({e.data(), e.size()});
    out.c_[i] = c_[src] * static_cast<double>(e[slot]);
  }
  return out;
}

Jet Jet::conjugated(std::span<const int> slot_conj) const {
  Jet out(layout_, cplx{});
  std::vector<std::uint8_t> e(nvars());
  for (int i = 0; i < layout_->size(); ++i) {
    auto src = layout_->exponents(i);
    for (int k = 0; k < nvars(); ++k) e[slot_conj[k]] = src[k];
    out.c_[layout_->rank({e.data(), e.size()})] = std::conj(c_[i]);
  }
  return out;
}

Jet Jet::with_order(int order) const {
  if (order == this->order()) return *this;
  auto out_layout = JetLayout::get(nvars(), order);
  Jet out(out_layout, cplx{});
  int n = std::min(out_layout->size(), layout_->size());
  std::copy(c_.begin(), c_.begin() + n, out.c_.begin());
  return out;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (auto& v : out.c_) v = -v;
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  assert(layout_.get() == o.layout_.get());
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  assert(layout_.get() == o.layout_.get());
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator+=(cplx s) { c_[0] += s; return *this; }
Jet& Jet::operator-=(cplx s) { c_[0] -= s; return *this; }
Jet& Jet::operator*=(cplx s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  assert(a.layout_.get() == b.layout_.get());
  const JetLayout& L = *a.layout_;
  Jet out(a.layout_, cplx{});
  out.c_[0] = 0.0;
  int n = L.size();
  for (int i = 0; i < n; ++i) {
    if (a.c_[i] == cplx{}) continue;
    for (int j = 0; j < n; ++j) {
      int k = L.product(i, j);
      if (k >= 0) out.c_[k] += a.c_[i] * b.c_[j];
    }
  }
  return out;
}

Jet Jet::apply_analytic(std::span<const cplx> derivs) const {
  // Horner evaluation of sum_k f^(k)(u0)/k! * (u - u0)^k.
  Jet u = *this;
  u.c_[0] = 0.0;
  int m = order();
  double fact = 1.0;
  for (int k = 1; k <= m; ++k) fact *= k;
  Jet acc(layout_, derivs[m] / fact);
  for (int k = m - 1; k >= 0; --k) {
    fact = 1.0;
    for (int i = 1; i <= k; ++i) fact *= i;
    acc = acc * u;
    acc += derivs[k] / fact;
  }
  return acc;
}

Jet inv(const Jet& a) {
  cplx u0 = a.value();
  if (std::abs(u0) == 0.0) throw std::domain_error("jet inversion at zero");
  std::vector<cplx> d(a.order() + 1);
  // d^k (1/u) = (-1)^k k! / u^{k+1}
  cplx p = 1.0 / u0;
  double fact = 1.0;
  double sign = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    d[k] = sign * fact * p;
    p /= u0;
    sign = -sign;
    fact *= k + 1;
  }
  return a.apply_analytic(d);
}

Jet operator/(const Jet& a, const Jet& b) { return a * inv(b); }
Jet operator/(cplx s, const Jet& b) { Jet r = inv(b); r *= s; return r; }

Jet log(const Jet& a) {
  cplx u0 = a.value();
  if (std::abs(u0) == 0.0) throw std::domain_error("jet log at zero");
  std::vector<cplx> d(a.order() + 1);
  d[0] = std::log(u0);
  cplx p = 1.0 / u0;
  double fact = 1.0;
  double sign = 1.0;
  for (int k = 1; k <= a.order(); ++k) {
    d[k] = sign * fact * p;
    p /= u0;
    sign = -sign;
    fact *= k;
  }
  return a.apply_analytic(d);
}

Jet exp(const Jet& a) {
  std::vector<cplx> d(a.order() + 1, std::exp(a.value()));
  return a.apply_analytic(d);
}

Jet sqrt(const Jet& a) { return pow(a, cplx{0.5, 0.0}); }

Jet pow(const Jet& a, int k) {
  if (k == 0) return Jet::constant(a.layout_ptr(), 1.0);
  if (k < 0) return inv(pow(a, -k));
  Jet r = a;
  for (int i = 1; i < k; ++i) r = r * a;
  return r;
}

Jet pow(const Jet& a, cplx p) { return exp(p * log(a)); }

Jet sin(const Jet& a) {
  std::vector<cplx> d(a.order() + 1);
  cplx s = std::sin(a.value()), c = std::cos(a.value());
  const cplx table[4] = {s, c, -s, -c};
  for (int k = 0; k <= a.order(); ++k) d[k] = table[k % 4];
  return a.apply_analytic(d);
}

Jet cos(const Jet& a) {
  std::vector<cplx> d(a.order() + 1);
  cplx s = std::sin(a.value()), c = std::cos(a.value());
  const cplx table[4] = {c, -s, -c, s};
  for (int k = 0; k <= a.order(); ++k) d[k] = table[k % 4];
  return a.apply_analytic(d);
}

Jet Jet::compose(std::span<const Jet> args) const {
  assert(static_cast<int>(args.size()) == nvars());
  auto inner = args[0].layout_ptr();
  // Powers of the centered arguments up to the outer order.
  std::vector<std::vector<Jet>> powers(nvars());
  for (int v = 0; v < nvars(); ++v) {
    Jet centered = args[v];
    centered -= args[v].value();
    powers[v].push_back(Jet::constant(inner, 1.0));
    for (int k = 1; k <= order(); ++k) powers[v].push_back(powers[v].back() * centered);
  }
  // The outer jet must be expanded at the values of args.
  Jet out(inner, cplx{});
  for (int i = 0; i < layout_->size(); ++i) {
    if (c_[i] == cplx{}) continue;
    auto e = layout_->exponents(i);
    Jet term = Jet::constant(inner, c_[i]);
    for (int v = 0; v < nvars(); ++v)
      if (e[v] > 0) term = term * powers[v][e[v]];
    out += term;
  }
  return out;
}

double Jet::max_abs() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace gkx
