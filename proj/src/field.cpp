#include "gkx/field.hpp"

#include <stdexcept>

namespace gkx {

namespace {

class ConstNode final : public FieldNode {
public:
  explicit ConstNode(cplx v) : v_(v) {}
  Jet eval(const Point& p, int order, EvalContext&) const override {
    return Jet::constant(JetLayout::get(p.chart->nslots(), order), v_);
  }

private:
  cplx v_;
};

class CoordNode final : public FieldNode {
public:
  explicit CoordNode(int slot) : slot_(slot) {}
  Jet eval(const Point& p, int order, EvalContext&) const override {
    return Jet::variable(JetLayout::get(p.chart->nslots(), order), slot_, p.coords[slot_]);
  }

private:
  int slot_;
};

enum class BinOp { Add, Sub, Mul, Div };

class BinNode final : public FieldNode {
public:
  BinNode(BinOp op, ScalarField a, ScalarField b) : op_(op), a_(std::move(a)), b_(std::move(b)) {}
  Jet eval(const Point& p, int order, EvalContext& ctx) const override {
    Jet ja = a_.eval(p, order, ctx);
    Jet jb = b_.eval(p, order, ctx);
    switch (op_) {
      case BinOp::Add: return ja + jb;
      case BinOp::Sub: return ja - jb;
      case BinOp::Mul: return ja * jb;
      case BinOp::Div: return ja / jb;
    }
    throw std::logic_error("unreachable");
  }

private:
  BinOp op_;
  ScalarField a_, b_;
};

class NegNode final : public FieldNode {
public:
  explicit NegNode(ScalarField a) : a_(std::move(a)) {}
  Jet eval(const Point& p, int order, EvalContext& ctx) const override {
    return -a_.eval(p, order, ctx);
  }

private:
  ScalarField a_;
};

class ConjNode final : public FieldNode {
public:
  explicit ConjNode(ScalarField a) : a_(std::move(a)) {}
  Jet eval(const Point& p, int order, EvalContext& ctx) const override {
    Jet j = a_.eval(p, order, ctx);
    const auto& cm = p.chart->conj_map();
    return j.conjugated({cm.data(), cm.size()});
  }

private:
  ScalarField a_;
};

class PartialNode final : public FieldNode {
public:
  PartialNode(ScalarField a, int slot) : a_(std::move(a)), slot_(slot) {}
  Jet eval(const Point& p, int order, EvalContext& ctx) const override {
    return a_.eval(p, order + 1, ctx).partial(slot_);
  }

private:
  ScalarField a_;
  int slot_;
};

class AnalyticNode final : public FieldNode {
public:
  AnalyticNode(ScalarField a, std::function<std::vector<cplx>(cplx, int)> derivs)
      : a_(std::move(a)), derivs_(std::move(derivs)) {}
  Jet eval(const Point& p, int order, EvalContext& ctx) const override {
    Jet u = a_.eval(p, order, ctx);
    auto d = derivs_(u.value(), order);
    return u.apply_analytic(d);
  }

private:
  ScalarField a_;
  std::function<std::vector<cplx>(cplx, int)> derivs_;
};

class ExternalNode final : public FieldNode {
public:
  explicit ExternalNode(std::function<Jet(const Point&, int)> fn) : fn_(std::move(fn)) {}
  Jet eval(const Point& p, int order, EvalContext&) const override { return fn_(p, order); }

private:
  std::function<Jet(const Point&, int)> fn_;
};

class ComputedNode final : public FieldNode {
public:
  ComputedNode(std::vector<ScalarField> deps, std::function<Jet(std::span<const Jet>)> fn)
      : deps_(std::move(deps)), fn_(std::move(fn)) {}
  Jet eval(const Point& p, int order, EvalContext& ctx) const override {
    std::vector<Jet> jets;
    jets.reserve(deps_.size());
    for (const auto& d : deps_) jets.push_back(d.eval(p, order, ctx));
    return fn_(jets);
  }

private:
  std::vector<ScalarField> deps_;
  std::function<Jet(std::span<const Jet>)> fn_;
};

ScalarField wrap(std::shared_ptr<const FieldNode> n) { return ScalarField(std::move(n)); }

}  // namespace

Jet ScalarField::eval(const Point& p, int order) const {
  EvalContext ctx;
  return eval(p, order, ctx);
}

Jet ScalarField::eval(const Point& p, int order, EvalContext& ctx) const {
  if (!node_) throw std::logic_error("empty ScalarField");
  auto [slot, fresh] = ctx.memo.try_emplace(node_.get());
  // Pin the node so its address cannot be recycled while the memo lives.
  if (fresh) ctx.pins.push_back(node_);
  auto& per_node = slot->second;
  auto it = per_node.find(order);
  if (it != per_node.end()) return it->second;
  Jet j = node_->eval(p, order, ctx);
  per_node.emplace(order, j);
  return j;
}

ScalarField ScalarField::constant(cplx v) { return wrap(std::make_shared<ConstNode>(v)); }
ScalarField ScalarField::coord(int slot) { return wrap(std::make_shared<CoordNode>(slot)); }
ScalarField ScalarField::external(std::function<Jet(const Point&, int)> fn) {
  return wrap(std::make_shared<ExternalNode>(std::move(fn)));
}
ScalarField ScalarField::computed(std::vector<ScalarField> deps,
                                  std::function<Jet(std::span<const Jet>)> fn) {
  return wrap(std::make_shared<ComputedNode>(std::move(deps), std::move(fn)));
}

ScalarField ScalarField::conj() const { return wrap(std::make_shared<ConjNode>(*this)); }
ScalarField ScalarField::partial(int slot) const {
  return wrap(std::make_shared<PartialNode>(*this, slot));
}
ScalarField ScalarField::analytic(std::function<std::vector<cplx>(cplx, int)> derivs) const {
  return wrap(std::make_shared<AnalyticNode>(*this, std::move(derivs)));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return wrap(std::make_shared<BinNode>(BinOp::Add, a, b));
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return wrap(std::make_shared<BinNode>(BinOp::Sub, a, b));
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return wrap(std::make_shared<BinNode>(BinOp::Mul, a, b));
}
ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  return wrap(std::make_shared<BinNode>(BinOp::Div, a, b));
}
ScalarField operator-(const ScalarField& a) { return wrap(std::make_shared<NegNode>(a)); }

ScalarField log(const ScalarField& a) {
  return a.analytic([](cplx u0, int order) {
    Jet probe = Jet::variable(JetLayout::get(1, order), 0, u0);
    Jet l = log(probe);
    std::vector<cplx> d(order + 1);
    double fact = 1.0;
    for (int k = 0; k <= order; ++k) {
      if (k > 0) fact *= k;
      d[k] = l.coeff(k) * fact;
    }
    return d;
  });
}

ScalarField exp(const ScalarField& a) {
  return a.analytic([](cplx u0, int order) {
    return std::vector<cplx>(order + 1, std::exp(u0));
  });
}

ScalarField sqrt(const ScalarField& a) {
  return a.analytic([](cplx u0, int order) {
    Jet probe = Jet::variable(JetLayout::get(1, order), 0, u0);
    Jet s = sqrt(probe);
    std::vector<cplx> d(order + 1);
    double fact = 1.0;
    for (int k = 0; k <= order; ++k) {
      if (k > 0) fact *= k;
      d[k] = s.coeff(k) * fact;
    }
    return d;
  });
}

ScalarField sin(const ScalarField& a) {
  return a.analytic([](cplx u0, int order) {
    std::vector<cplx> d(order + 1);
    cplx s = std::sin(u0), c = std::cos(u0);
    const cplx cycle[4] = {s, c, -s, -c};
    for (int k = 0; k <= order; ++k) d[k] = cycle[k % 4];
    return d;
  });
}

ScalarField cos(const ScalarField& a) {
  return a.analytic([](cplx u0, int order) {
    std::vector<cplx> d(order + 1);
    cplx s = std::sin(u0), c = std::cos(u0);
    const cplx cycle[4] = {c, -s, -c, s};
    for (int k = 0; k <= order; ++k) d[k] = cycle[k % 4];
    return d;
  });
}

ScalarField pow(const ScalarField& a, int k) {
  if (k == 0) return ScalarField::constant(1.0);
  if (k < 0) return ScalarField::constant(1.0) / pow(a, -k);
  ScalarField r = a;
  for (int i = 1; i < k; ++i) r = r * a;
  return r;
}

Point ChartMap::apply(const Point& p) const {
  Point out{target, std::vector<cplx>(target->nslots())};
  for (int i = 0; i < target->nslots(); ++i) out.coords[i] = components[i].value(p);
  return out;
}

std::vector<Jet> ChartMap::jets(const Point& p, int order, EvalContext& ctx) const {
  std::vector<Jet> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.eval(p, order, ctx));
  return out;
}

ChartMap make_chart_map(ChartPtr source, ChartPtr target, std::vector<ScalarField> holo) {
  ChartMap m{std::move(source), std::move(target), {}};
  if (m.target->is_real()) {
    m.components = std::move(holo);
  } else {
    int n = m.target->ncomplex();
    if (static_cast<int>(holo.size()) != n) throw std::invalid_argument("make_chart_map: arity");
    m.components = holo;
    for (int i = 0; i < n; ++i) m.components.push_back(holo[i].conj());
  }
  return m;
}

ScalarField pullback(const ChartMap& phi, const ScalarField& f) {
  ChartMap map = phi;
  return ScalarField::external([map, f](const Point& p, int order) {
    EvalContext ctx;
    auto args = map.jets(p, order, ctx);
    Point q{map.target, std::vector<cplx>(map.target->nslots())};
    for (size_t i = 0; i < args.size(); ++i) q.coords[i] = args[i].value();
    Jet outer = f.eval(q, order);
    return outer.compose(args);
  });
}

}  // namespace gkx
