#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <vector>

#include "gkx/field.hpp"

namespace gkx {

// Strictly increasing k-subsets of {0..n-1} in lexicographic order, with
// combinatorial ranking.  Cached per (n, k).
class CombTable {
public:
  static std::shared_ptr<const CombTable> get(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  int size() const { return count_; }
  std::span<const int> tuple(int r) const {
    return {tuples_.data() + static_cast<size_t>(r) * k_, static_cast<size_t>(k_)};
  }
  int rank(std::span<const int> increasing) const;

  // Sorts idx in place; returns the permutation sign, or 0 on repeats.
  static int sort_sign(std::vector<int>& idx);

private:
  CombTable(int n, int k);
  int n_, k_;
  int count_ = 0;
  std::vector<int> tuples_;  // flattened
};

// Vector field in the coordinate frame of a chart.
struct VecField {
  ChartPtr chart;
  std::vector<ScalarField> comp;  // size nslots

  static VecField zero(ChartPtr chart);
  static VecField basis(ChartPtr chart, int slot);
  Eigen::VectorXcd value(const Point& p) const;
  Eigen::VectorXcd value(const Point& p, EvalContext& ctx) const;
  VecField conj() const;
};

VecField operator+(const VecField& a, const VecField& b);
VecField operator-(const VecField& a, const VecField& b);
VecField operator*(const ScalarField& f, const VecField& a);
VecField operator*(cplx s, const VecField& a);

// Differential k-form; components over strictly increasing multi-indices.
struct FormField {
  ChartPtr chart;
  int degree = 0;
  std::vector<ScalarField> comp;  // CombTable(nslots, degree) order

  static FormField zero(ChartPtr chart, int degree);
  static FormField scalar(ChartPtr chart, ScalarField f);
  // dx^{i1} ∧ ... ∧ dx^{ik} for an arbitrary index tuple (sign handled).
  static FormField basis(ChartPtr chart, std::vector<int> idx);

  // Component for an arbitrary index tuple, with antisymmetry sign.
  ScalarField coefficient(std::vector<int> idx) const;
  Eigen::VectorXcd value(const Point& p) const;
  Eigen::VectorXcd value(const Point& p, EvalContext& ctx) const;
  double max_abs(const Point& p) const;
  FormField conj() const;
};

FormField operator+(const FormField& a, const FormField& b);
FormField operator-(const FormField& a, const FormField& b);
FormField operator-(const FormField& a);
FormField operator*(const ScalarField& f, const FormField& a);
FormField operator*(cplx s, const FormField& a);

FormField wedge(const FormField& a, const FormField& b);
FormField ext_deriv(const FormField& a);
// (i_X a)(Y1,...) = a(X, Y1, ...).
FormField interior(const VecField& X, const FormField& a);
// a(X1,...,Xk) as a scalar field.
ScalarField contract(const FormField& a, const std::vector<VecField>& Xs);
VecField lie_bracket(const VecField& X, const VecField& Y);
// Cartan formula i_X d + d i_X.
FormField lie_derivative(const VecField& X, const FormField& a);
FormField pullback(const ChartMap& phi, const FormField& a);

// Matrix of scalar fields; the canonical representation of every pointwise
// linear map (endomorphisms of T, metrics T->T*, bivectors T*->T, and block
// maps on T + T*).  Columns act on input components: (Mv)^i = M(i,j) v^j.
struct MatrixField {
  ChartPtr chart;
  int rows = 0, cols = 0;
  std::vector<ScalarField> e;  // row-major

  static MatrixField zero(ChartPtr chart, int rows, int cols);
  static MatrixField identity(ChartPtr chart, int n);
  static MatrixField constant(ChartPtr chart, const Eigen::MatrixXcd& m);

  const ScalarField& at(int i, int j) const { return e[static_cast<size_t>(i) * cols + j]; }
  ScalarField& at(int i, int j) { return e[static_cast<size_t>(i) * cols + j]; }
  Eigen::MatrixXcd value(const Point& p) const;
  Eigen::MatrixXcd value(const Point& p, EvalContext& ctx) const;
  MatrixField transpose() const;
};

MatrixField operator+(const MatrixField& a, const MatrixField& b);
MatrixField operator-(const MatrixField& a, const MatrixField& b);
MatrixField operator*(const MatrixField& a, const MatrixField& b);
MatrixField operator*(cplx s, const MatrixField& a);
MatrixField operator*(const ScalarField& f, const MatrixField& a);
MatrixField inverse(const MatrixField& m);
VecField apply(const MatrixField& m, const VecField& v);
// [[a, b], [c, d]] with consistent partition sizes.
MatrixField block2(const MatrixField& a, const MatrixField& b, const MatrixField& c,
                   const MatrixField& d);

// A 2-form and its associated map X -> i_X w are transposes of each other:
// (map X)(Y) = w(X, Y), so map(j,i) = w_ij.
FormField two_form_from_map(const MatrixField& m);
MatrixField map_from_two_form(const FormField& w);

// (p,q)-part of a k-form with respect to an almost complex structure I on T,
// via per-slot projectors (1 -+ iI)/2.
FormField type_project(const FormField& a, const MatrixField& I, int p, int q);
// i(dbar - del) where del/dbar are the type-shifted pieces of d.
FormField dc(const FormField& a, const MatrixField& I);

// Nijenhuis tensor of an almost complex structure, as one 2-form per output
// component: N^k(X,Y) coefficient fields.
std::vector<FormField> nijenhuis(const MatrixField& I);
double nijenhuis_residual(const MatrixField& I, const Point& p);

// Max component of [beta,beta] at p for a bivector given as a map T*->T
// (components b^{ ij } = m(j,i)); zero iff Poisson at p.
double schouten_residual(const MatrixField& m, const Point& p);

}  // namespace gkx
