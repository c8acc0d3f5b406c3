#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace gkx {

using cplx = std::complex<double>;

// Dense truncated Taylor expansion in `nvars` complex variables around a base
// point, up to total degree `order`.  Coefficients are monomial coefficients:
// f = sum_a c[a] * (x - p)^a, so the partial derivative value is c[a] * a!.
// Monomials are indexed grade-major, lexicographic within a grade; the index
// tables (and the pairwise product table) are cached per (nvars, order).
class JetLayout {
public:
  static std::shared_ptr<const JetLayout> get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(exps_.size()); }
  std::span<const std::uint8_t> exponents(int idx) const {
    return {exps_[idx].data(), static_cast<size_t>(nvars_)};
  }
  int degree(int idx) const { return deg_[idx]; }
  // Index of the monomial with the given exponents, -1 when degree > order.
  int rank(std::span<const std::uint8_t> e) const;
  // Index of the product monomial i * j, -1 on truncation overflow.
  int product(int i, int j) const { return prod_[static_cast<size_t>(i) * exps_.size() + j]; }

private:
  JetLayout(int nvars, int order);
  int nvars_, order_;
  std::vector<std::vector<std::uint8_t>> exps_;
  std::vector<int> deg_;
  std::vector<int> prod_;
};

class Jet {
public:
  Jet() = default;
  Jet(std::shared_ptr<const JetLayout> layout, cplx value);
  static Jet constant(std::shared_ptr<const JetLayout> layout, cplx value) { return Jet(layout, value); }
  static Jet variable(std::shared_ptr<const JetLayout> layout, int slot, cplx value);

  const JetLayout& layout() const { return *layout_; }
  std::shared_ptr<const JetLayout> layout_ptr() const { return layout_; }
  bool valid() const { return layout_ != nullptr; }
  int order() const { return layout_->order(); }
  int nvars() const { return layout_->nvars(); }

  cplx value() const { return c_.empty() ? cplx{} : c_[0]; }
  cplx coeff(int idx) const { return c_[idx]; }
  cplx& coeff(int idx) { return c_[idx]; }
  // Value of the first partial derivative along `slot`.
  cplx d(int slot) const;

  // Jet of the partial derivative, one order lower.
  Jet partial(int slot) const;
  // Coefficient-wise conjugate with variable slots permuted by `slot_conj`
  // (the chart involution pairing z with conj(z)).
  Jet conjugated(std::span<const int> slot_conj) const;
  // Truncate (or zero-extend) to a layout with the same nvars.
  Jet with_order(int order) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(cplx s);
  Jet& operator-=(cplx s);
  Jet& operator*=(cplx s);

  friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
  friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
  friend Jet operator+(Jet a, cplx s) { a += s; return a; }
  friend Jet operator+(cplx s, Jet a) { a += s; return a; }
  friend Jet operator-(Jet a, cplx s) { a -= s; return a; }
  friend Jet operator-(cplx s, const Jet& a) { Jet r = -a; r += s; return r; }
  friend Jet operator*(Jet a, cplx s) { a *= s; return a; }
  friend Jet operator*(cplx s, Jet a) { a *= s; return a; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator/(cplx s, const Jet& b);
  friend Jet operator/(Jet a, cplx s) { a *= 1.0 / s; return a; }

  // f(u) for analytic f given by the list of derivative values f^(k)(u0).
  Jet apply_analytic(std::span<const cplx> derivs) const;

  friend Jet inv(const Jet& a);
  friend Jet log(const Jet& a);
  friend Jet exp(const Jet& a);
  friend Jet sqrt(const Jet& a);
  friend Jet pow(const Jet& a, int k);
  friend Jet pow(const Jet& a, cplx p);
  friend Jet sin(const Jet& a);
  friend Jet cos(const Jet& a);

  // Substitute: this jet's variables are the values of `args` (jets in a
  // common inner layout).  args.size() must equal nvars().
  Jet compose(std::span<const Jet> args) const;

  double max_abs() const;

private:
  std::shared_ptr<const JetLayout> layout_;
  std::vector<cplx> c_;
};

}  // namespace gkx
