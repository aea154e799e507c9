#include "rhocarroll/dsl/expression.hpp"

#include "rhocarroll/dsl/parser.hpp"

namespace rhoc::dsl {

namespace {

[[noreturn]] void semantic(const Expr& e, const std::string& msg) {
  throw Error(ErrorCode::Semantic,
              "line " + std::to_string(e.pos.line) + ", column " + std::to_string(e.pos.column) + ": " + msg);
}

const char* kind_name(const Value& v) {
  switch (v.index()) {
    case 0: return "element";
    case 1: return "section";
    default: return "derivation";
  }
}

bool is_zero_element(const Value& v) { return v.index() == 0 && std::get<Element>(v).is_zero(); }

Value zero_like(const Value& like, const PresentationPtr& alg) {
  if (const auto* s = std::get_if<Section>(&like)) return Section::zero(s->pair());
  if (const auto* d = std::get_if<DerivationCombo>(&like)) return DerivationCombo::zero(d->basis());
  return Element(alg);
}

class Evaluator {
 public:
  explicit Evaluator(const EvalContext& ctx) : ctx_(ctx) {
    if (!ctx_.algebra) throw Error(ErrorCode::Semantic, "no algebra is in scope");
  }

  Value eval(const Expr& e) {
    const auto& alg = ctx_.algebra;
    switch (e.kind) {
      case Expr::Kind::Number:
        return Element::scalar(alg, alg->scalar(GaussianRational(Rational(e.text))));
      case Expr::Kind::Name: return name(e);
      case Expr::Kind::Neg: return negate(eval(*e.args[0]));
      case Expr::Kind::Add:
      case Expr::Kind::Sub: {
        Value a = eval(*e.args[0]);
        Value b = eval(*e.args[1]);
        if (e.kind == Expr::Kind::Sub) b = negate(std::move(b));
        if (is_zero_element(a)) a = zero_like(b, alg);
        if (is_zero_element(b)) b = zero_like(a, alg);
        if (a.index() != b.index()) semantic(e, std::string("cannot add ") + kind_name(a) + " and " + kind_name(b));
        return std::visit(
            [&](auto& x) -> Value {
              using T = std::decay_t<decltype(x)>;
              return x + std::get<T>(b);
            },
            a);
      }
      case Expr::Kind::Mul: {
        Value a = eval(*e.args[0]);
        Value b = eval(*e.args[1]);
        const auto* f = std::get_if<Element>(&a);
        if (!f) semantic(e, std::string("a ") + kind_name(a) + " takes coefficients on the left only");
        return std::visit([&](auto& x) -> Value { return *f * x; }, b);
      }
      case Expr::Kind::Div: {
        Value a = eval(*e.args[0]);
        Value b = eval(*e.args[1]);
        const auto* g = std::get_if<Element>(&b);
        if (!g) semantic(e, "division by a non-element");
        auto inv = g->unit_inverse();
        if (!inv) semantic(e, "division by '" + g->to_string() + "', which is not a unit");
        if (const auto* f = std::get_if<Element>(&a)) return *f * *inv;
        if (!g->is_scalar()) semantic(e, "sections and derivations divide by scalars only");
        return std::visit([&](auto& x) -> Value { return *inv * x; }, a);
      }
      case Expr::Kind::Pow: {
        Value a = eval(*e.args[0]);
        const auto* f = std::get_if<Element>(&a);
        if (!f) semantic(e, std::string("cannot raise a ") + kind_name(a) + " to a power");
        try {
          return f->pow(e.exponent);
        } catch (const Error& err) {
          semantic(e, err.what());
        }
      }
      case Expr::Kind::Call: return call(e);
    }
    semantic(e, "unsupported expression");
  }

 private:
  Value negate(Value v) const {
    const Element minus_one = Element::scalar(ctx_.algebra, ctx_.algebra->scalar(GaussianRational(-1)));
    return std::visit([&](auto& x) -> Value { return minus_one * x; }, v);
  }

  Value name(const Expr& e) {
    const auto& alg = ctx_.algebra;
    if (auto g = alg->generator_index(e.text)) return Element::generator(alg, *g);
    if (e.text == "i") return Element::scalar(alg, alg->scalar(GaussianRational::i()));
    if (const int p = alg->params()->index_of(e.text); p >= 0) {
      return Element::scalar(alg, Laurent::parameter(alg->params(), static_cast<std::size_t>(p)));
    }
    if (ctx_.pair) {
      if (auto k = ctx_.pair->basis_index(e.text)) return Section::basis(ctx_.pair, *k);
    }
    if (ctx_.derivations) {
      if (auto k = ctx_.derivations->index_of(e.text)) return DerivationCombo::basis_element(ctx_.derivations, *k);
    }
    semantic(e, "unknown name '" + e.text + "'");
  }

  template <class T>
  T as(const Expr& e, const char* what) {
    Value v = eval(e);
    if (is_zero_element(v)) {
      if constexpr (std::is_same_v<T, Section>) {
        if (ctx_.pair) return Section::zero(ctx_.pair);
      }
    }
    if (auto* x = std::get_if<T>(&v)) return std::move(*x);
    semantic(e, std::string("expected ") + what + ", got " + kind_name(v));
  }

  std::string name_arg(const Expr& e) {
    if (e.kind != Expr::Kind::Name) semantic(e, "expected a name");
    return e.text;
  }

  void arity(const Expr& e, std::size_t n) {
    if (e.args.size() != n) {
      semantic(e, e.text + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") + ", got " +
                      std::to_string(e.args.size()));
    }
  }

  const Connection& connection_arg(const Expr& e) {
    const std::string n = name_arg(e);
    const Connection* c = ctx_.connection ? ctx_.connection(n) : nullptr;
    if (!c) semantic(e, "unknown connection '" + n + "'");
    return *c;
  }

  Value call(const Expr& e) {
    const std::string& f = e.text;
    if (f == "apply") {
      arity(e, 2);
      Value x = eval(*e.args[0]);
      const Element g = as<Element>(*e.args[1], "an element");
      if (const auto* u = std::get_if<Section>(&x)) return anchor_of(*u).apply(g);
      if (const auto* d = std::get_if<DerivationCombo>(&x)) return d->apply(g);
      semantic(*e.args[0], "expected a derivation or a section, got element");
    }
    if (f == "commutator") {
      arity(e, 2);
      return rho_commutator(as<Element>(*e.args[0], "an element"), as<Element>(*e.args[1], "an element"));
    }
    if (f == "bracket") {
      arity(e, 2);
      Value a = eval(*e.args[0]);
      if (std::holds_alternative<DerivationCombo>(a)) {
        const DerivationCombo& x = std::get<DerivationCombo>(a);
        const ActionTable t = der_commutator(x, as<DerivationCombo>(*e.args[1], "a derivation"));
        try {
          return DerivationCombo::from_action(x.basis(), t);
        } catch (const Error&) {
          semantic(e, "commutator " + t.to_string() + " is outside the span of the declared derivations");
        }
      }
      if (!std::holds_alternative<Section>(a)) semantic(e, "bracket takes two sections or two derivations");
      return bracket(std::get<Section>(a), as<Section>(*e.args[1], "a section"));
    }
    if (f == "anchor") {
      arity(e, 1);
      return anchor_of(as<Section>(*e.args[0], "a section"));
    }
    if (f == "nabla") {
      arity(e, 3);
      const Connection& c = connection_arg(*e.args[0]);
      return nabla(c, as<Section>(*e.args[1], "a section"), as<Section>(*e.args[2], "a section"));
    }
    if (f == "curvature") {
      arity(e, 4);
      const Connection& c = connection_arg(*e.args[0]);
      return curvature(c, as<Section>(*e.args[1], "a section"), as<Section>(*e.args[2], "a section"),
                       as<Section>(*e.args[3], "a section"));
    }
    if (f == "torsion") {
      arity(e, 3);
      const Connection& c = connection_arg(*e.args[0]);
      return torsion(c, as<Section>(*e.args[1], "a section"), as<Section>(*e.args[2], "a section"));
    }
    if (const Metric* g = ctx_.metric ? ctx_.metric(f) : nullptr) {
      arity(e, 2);
      return metric_eval(*g, as<Section>(*e.args[0], "a section"), as<Section>(*e.args[1], "a section"));
    }
    semantic(e, "unknown function '" + f + "'");
  }

  const EvalContext& ctx_;
};

}  // namespace

std::string render_value(const Value& v) {
  return std::visit([](const auto& x) { return x.to_string(); }, v);
}

Value evaluate(const Expr& e, const EvalContext& ctx) { return Evaluator(ctx).eval(e); }

Element evaluate_element(const Expr& e, const EvalContext& ctx) {
  Value v = evaluate(e, ctx);
  if (auto* x = std::get_if<Element>(&v)) return std::move(*x);
  semantic(e, std::string("expected an element, got ") + kind_name(v));
}

Section evaluate_section(const Expr& e, const EvalContext& ctx) {
  Value v = evaluate(e, ctx);
  if (is_zero_element(v) && ctx.pair) return Section::zero(ctx.pair);
  if (auto* x = std::get_if<Section>(&v)) return std::move(*x);
  semantic(e, std::string("expected a section, got ") + kind_name(v));
}

DerivationCombo evaluate_derivation(const Expr& e, const EvalContext& ctx) {
  Value v = evaluate(e, ctx);
  if (is_zero_element(v) && ctx.derivations) return DerivationCombo::zero(ctx.derivations);
  if (auto* x = std::get_if<DerivationCombo>(&v)) return std::move(*x);
  semantic(e, std::string("expected a derivation, got ") + kind_name(v));
}

Value evaluate(std::string_view source, const EvalContext& ctx) { return evaluate(*parse_expression(source), ctx); }

}  // namespace rhoc::dsl
