#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gkx/chart.hpp"
#include "gkx/jet.hpp"

namespace gkx {

class FieldNode;

// Memo for one evaluation point: nodes shared inside a field DAG are
// evaluated once per (node, order).  Memoized nodes are kept alive for the
// life of the context, so entries stay valid even after the fields that
// created them go out of scope.
struct EvalContext {
  std::unordered_map<const FieldNode*, std::unordered_map<int, Jet>> memo;
  std::vector<std::shared_ptr<const FieldNode>> pins;
};

// Smooth complex-valued function on a chart, evaluated as a truncated Taylor
// jet of any requested order.  Value semantics over an immutable DAG.
class ScalarField {
public:
  ScalarField() = default;
  explicit ScalarField(std::shared_ptr<const FieldNode> node) : node_(std::move(node)) {}

  Jet eval(const Point& p, int order) const;
  Jet eval(const Point& p, int order, EvalContext& ctx) const;
  cplx value(const Point& p) const { return eval(p, 0).value(); }
  bool valid() const { return node_ != nullptr; }

  static ScalarField constant(cplx v);
  static ScalarField coord(int slot);
  // Arbitrary evaluator; must be a pure function of (point, order).
  static ScalarField external(std::function<Jet(const Point&, int)> fn);
  // Combine dependency jets of equal order into one jet.
  static ScalarField computed(std::vector<ScalarField> deps,
                              std::function<Jet(std::span<const Jet>)> fn);

  ScalarField conj() const;
  ScalarField partial(int slot) const;
  // f(u) for analytic f: derivs(u0, order) returns {f(u0), f'(u0), ...}.
  ScalarField analytic(std::function<std::vector<cplx>(cplx, int)> derivs) const;

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator/(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a);
  friend ScalarField operator+(const ScalarField& a, cplx s) { return a + ScalarField::constant(s); }
  friend ScalarField operator+(cplx s, const ScalarField& a) { return ScalarField::constant(s) + a; }
  friend ScalarField operator-(const ScalarField& a, cplx s) { return a - ScalarField::constant(s); }
  friend ScalarField operator-(cplx s, const ScalarField& a) { return ScalarField::constant(s) - a; }
  friend ScalarField operator*(const ScalarField& a, cplx s) { return a * ScalarField::constant(s); }
  friend ScalarField operator*(cplx s, const ScalarField& a) { return ScalarField::constant(s) * a; }
  friend ScalarField operator/(const ScalarField& a, cplx s) { return a * ScalarField::constant(1.0 / s); }
  friend ScalarField operator/(cplx s, const ScalarField& a) { return ScalarField::constant(s) / a; }

  friend ScalarField log(const ScalarField& a);
  friend ScalarField exp(const ScalarField& a);
  friend ScalarField sqrt(const ScalarField& a);
  friend ScalarField sin(const ScalarField& a);
  friend ScalarField cos(const ScalarField& a);
  friend ScalarField pow(const ScalarField& a, int k);

  const FieldNode* node() const { return node_.get(); }

private:
  std::shared_ptr<const FieldNode> node_;
};

class FieldNode {
public:
  virtual ~FieldNode() = default;
  virtual Jet eval(const Point& p, int order, EvalContext& ctx) const = 0;
};

// Map between charts given by one scalar field per target slot; non-real
// targets may list only the holomorphic slots (conjugate slots are derived).
struct ChartMap {
  ChartPtr source;
  ChartPtr target;
  std::vector<ScalarField> components;  // indexed by target slot

  Point apply(const Point& p) const;
  // Jets of all target slots at p, in the source chart's variables.
  std::vector<Jet> jets(const Point& p, int order, EvalContext& ctx) const;
};

// Builds the full slot list for a complex target from holomorphic components.
ChartMap make_chart_map(ChartPtr source, ChartPtr target, std::vector<ScalarField> holo_components);

// f ∘ φ as a field on φ's source chart.
ScalarField pullback(const ChartMap& phi, const ScalarField& f);

}  // namespace gkx
