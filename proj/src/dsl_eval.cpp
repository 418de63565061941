#include "ngeo/chow.hpp"
#include "ngeo/dsl.hpp"
#include "ngeo/families.hpp"
#include "ngeo/noether.hpp"
#include "ngeo/reid_rr.hpp"

#include <array>
#include <functional>
#include <map>
#include <stdexcept>

namespace ngeo::dsl {

namespace {

using chow::BundleRef;
using chow::CoverRef;
using chow::HirzebruchRef;

using Space = std::variant<HirzebruchRef, BundleRef, CoverRef>;

int level_of(const Space& sp) { return static_cast<int>(sp.index()); }

bool same_space(const Space& a, const Space& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) {
        const auto& y = std::get<std::decay_t<decltype(x)>>(b);
        return x == y || *x == *y;
      },
      a);
}

std::string describe(const Space& sp) {
  return std::visit([](const auto& x) { return x->describe(); }, sp);
}

// A divisor expression. Level 0 lives on a surface (s, l), level 1 on a bundle
// (V, p*s, p*l), level 2 on a cover (E, rho*p*s, rho*p*l). Free symbols carry
// no space until an operation binds them.
struct Divisor {
  int level = 0;
  std::array<Rational, 3> c{};  // c[0] is the V/E coefficient, unused at level 0
  std::optional<Space> space;
};

struct Record {
  std::string text;
  std::optional<Rational> k3;
  std::optional<std::int64_t> p_g;
};

using Value = std::variant<Rational, Space, Divisor, rr::Basket, Record>;

struct EvalError : std::runtime_error {
  SourcePos pos;
  EvalError(std::string msg, SourcePos p) : std::runtime_error(std::move(msg)), pos(p) {}
};

const char* type_name(const Value& v) {
  switch (v.index()) {
    case 0: return std::get<Rational>(v).is_integer() ? "integer" : "rational";
    case 1: return "space";
    case 2: return "divisor";
    case 3: return "basket";
    default: return "record";
  }
}

std::string linear_form(const std::vector<std::pair<Rational, std::string>>& terms) {
  std::string out;
  for (const auto& [coef, name] : terms) {
    if (coef.is_zero()) continue;
    bool neg = coef.sign() < 0;
    Rational mag = neg ? -coef : coef;
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    if (mag != Rational(1)) out += mag.str() + "*";
    out += name;
  }
  return out.empty() ? "0" : out;
}

std::string format_divisor(const Divisor& d) {
  std::string base = linear_form({{d.c[1], "s"}, {d.c[2], "l"}});
  if (d.level == 0) return base;
  bool has_base = !d.c[1].is_zero() || !d.c[2].is_zero();
  std::string wrapped = d.level == 1 ? "pull(" + base + ")" : "pull(pull(" + base + "))";
  std::vector<std::pair<Rational, std::string>> terms{{d.c[0], d.level == 1 ? "V" : "E"}};
  if (has_base) terms.emplace_back(Rational(1), wrapped);
  return linear_form(terms);
}

std::string format(const Value& v) {
  struct {
    std::string operator()(const Rational& q) const { return q.str(); }
    std::string operator()(const Space& s) const { return describe(s); }
    std::string operator()(const Divisor& d) const { return format_divisor(d); }
    std::string operator()(const rr::Basket& b) const { return b.str(); }
    std::string operator()(const Record& r) const { return r.text; }
  } visitor;
  return std::visit(visitor, v);
}

std::string classification_text(const noether::LineClassification& c) {
  std::string out = noether::to_string(c.region);
  if (c.region == noether::Region::OutOfTheoremScope) out += " placement=" + noether::to_string(c.placement);
  if (c.forced_baskets.size() == 1) out += " basket=" + c.forced_baskets.front().str();
  return out;
}

template <class D>
Divisor from_chow(const D& d, int level, Space sp) {
  Divisor out{level, {}, std::move(sp)};
  if constexpr (D::rank == 3) {
    out.c = {d[0], d[1], d[2]};
  } else {
    out.c = {Rational(0), d[0], d[1]};
  }
  return out;
}

class Evaluator {
 public:
  EvalResult run(const Program& program) {
    EvalResult result;
    try {
      for (const auto& stmt : program.statements) execute(stmt, result.output);
    } catch (const EvalError& err) {
      result.diagnostics.push_back({Diagnostic::Severity::Error, err.what(), err.pos});
    }
    return result;
  }

 private:
  void execute(const Stmt& s, std::vector<std::string>& output) {
    switch (s.kind) {
      case Stmt::Kind::Let: {
        if (env_.count(s.name)) throw EvalError("'" + s.name + "' is already bound", s.pos);
        env_.emplace(s.name, eval(s.expr));
        break;
      }
      case Stmt::Kind::Print: {
        std::string text = format(eval(s.expr));
        output.push_back(s.label ? *s.label + " " + text : text);
        break;
      }
      case Stmt::Kind::Assert: {
        Value lhs = eval(s.expr);
        Value rhs = eval(s.rhs);
        if (!holds(s.comparison, lhs, rhs, s.pos))
          throw EvalError("assertion failed: " + pretty_print(s.expr) + " " + s.comparison + " " +
                              pretty_print(s.rhs) + " (computed " + format(lhs) + ", expected " + format(rhs) + ")",
                          s.pos);
        break;
      }
    }
  }

  bool holds(const std::string& cmp, const Value& lhs, const Value& rhs, SourcePos pos) {
    if (cmp == "==") {
      if (lhs.index() != rhs.index())
        throw EvalError(std::string("cannot compare ") + type_name(lhs) + " with " + type_name(rhs), pos);
      if (auto* q = std::get_if<Rational>(&lhs)) return *q == std::get<Rational>(rhs);
      if (auto* d = std::get_if<Divisor>(&lhs)) {
        const auto& e = std::get<Divisor>(rhs);
        if (d->space && e.space && !same_space(*d->space, *e.space)) return false;
        return d->level == e.level && d->c == e.c;
      }
      if (auto* b = std::get_if<rr::Basket>(&lhs)) return *b == std::get<rr::Basket>(rhs);
      if (auto* sp = std::get_if<Space>(&lhs)) return same_space(*sp, std::get<Space>(rhs));
      return std::get<Record>(lhs).text == std::get<Record>(rhs).text;
    }
    auto* a = std::get_if<Rational>(&lhs);
    auto* b = std::get_if<Rational>(&rhs);
    if (!a || !b) throw EvalError("'" + cmp + "' needs two numbers", pos);
    return cmp == "<=" ? *a <= *b : *a >= *b;
  }

  Value eval(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Int:
        return Rational::parse(e.text);
      case Expr::Kind::Ident:
        return lookup(e);
      case Expr::Kind::Basket:
        return basket_literal(e);
      case Expr::Kind::Negate:
        return negate(eval(e.args[0]), e.pos);
      case Expr::Kind::Binary:
        return arith(e.op, eval(e.args[0]), eval(e.args[1]), e.pos);
      case Expr::Kind::Call:
        return call(e);
    }
    throw EvalError("unknown expression", e.pos);
  }

  Value lookup(const Expr& e) {
    if (e.text == "s") return Divisor{0, {Rational(0), Rational(1), Rational(0)}, std::nullopt};
    if (e.text == "l") return Divisor{0, {Rational(0), Rational(0), Rational(1)}, std::nullopt};
    if (e.text == "V") return Divisor{1, {Rational(1), Rational(0), Rational(0)}, std::nullopt};
    if (e.text == "E") return Divisor{2, {Rational(1), Rational(0), Rational(0)}, std::nullopt};
    auto it = env_.find(e.text);
    if (it == env_.end()) throw EvalError("unbound identifier '" + e.text + "'", e.pos);
    return it->second;
  }

  Value basket_literal(const Expr& e) {
    std::vector<rr::BasketPoint> pts;
    try {
      for (const auto& [r, b] : e.pairs)
        pts.emplace_back(Rational::parse(r).to_int64(), Rational::parse(b).to_int64());
    } catch (const DomainError& err) {
      throw EvalError(err.what(), e.pos);
    }
    return rr::Basket(std::move(pts));
  }

  Value negate(Value v, SourcePos pos) {
    if (auto* q = std::get_if<Rational>(&v)) return -*q;
    if (auto* d = std::get_if<Divisor>(&v)) {
      for (auto& x : d->c) x = -x;
      return *d;
    }
    throw EvalError(std::string("cannot negate a ") + type_name(v), pos);
  }

  Value arith(char op, Value lhs, Value rhs, SourcePos pos) {
    auto* a = std::get_if<Rational>(&lhs);
    auto* b = std::get_if<Rational>(&rhs);
    auto* da = std::get_if<Divisor>(&lhs);
    auto* db = std::get_if<Divisor>(&rhs);
    try {
      if (a && b) {
        switch (op) {
          case '+': return *a + *b;
          case '-': return *a - *b;
          case '*': return *a * *b;
          default: return *a / *b;
        }
      }
      if (da && db && (op == '+' || op == '-')) {
        if (da->level != db->level)
          throw EvalError("cannot combine divisors from different levels of the tower (" + format_divisor(*da) +
                              " and " + format_divisor(*db) + ")",
                          pos);
        if (da->space && db->space && !same_space(*da->space, *db->space))
          throw EvalError("divisors live on different spaces: " + describe(*da->space) + " vs " +
                              describe(*db->space),
                          pos);
        Divisor out = *da;
        if (!out.space) out.space = db->space;
        for (int i = 0; i < 3; ++i) out.c[i] = op == '+' ? da->c[i] + db->c[i] : da->c[i] - db->c[i];
        return out;
      }
      if (op == '*' && ((a && db) || (da && b))) {
        Divisor out = da ? *da : *db;
        const Rational& k = a ? *a : *b;
        for (auto& x : out.c) x *= k;
        return out;
      }
      if (op == '/' && da && b) {
        Divisor out = *da;
        for (auto& x : out.c) x /= *b;
        return out;
      }
    } catch (const DomainError& err) {
      throw EvalError(err.what(), pos);
    }
    throw EvalError(std::string("cannot apply '") + op + "' to " + type_name(lhs) + " and " + type_name(rhs), pos);
  }

  // --- argument helpers -------------------------------------------------------

  struct Args {
    const Expr& call;
    std::vector<Value> values;

    void arity(std::size_t lo, std::size_t hi) const {
      if (values.size() < lo || values.size() > hi) {
        std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi);
        throw EvalError(call.text + "() takes " + want + " argument(s), got " + std::to_string(values.size()),
                        call.pos);
      }
    }
    SourcePos pos(std::size_t i) const { return i < call.args.size() ? call.args[i].pos : call.pos; }

    Rational number(std::size_t i) const {
      if (auto* q = std::get_if<Rational>(&values[i])) return *q;
      throw EvalError(call.text + "() argument " + std::to_string(i + 1) + " must be a number, got " +
                          type_name(values[i]),
                      pos(i));
    }
    std::int64_t integer(std::size_t i) const {
      Rational q = number(i);
      if (!q.is_integer())
        throw EvalError(call.text + "() argument " + std::to_string(i + 1) + " must be an integer, got " + q.str(),
                        pos(i));
      return q.to_int64();
    }
    const Divisor& divisor(std::size_t i) const {
      if (auto* d = std::get_if<Divisor>(&values[i])) return *d;
      throw EvalError(call.text + "() argument " + std::to_string(i + 1) + " must be a divisor, got " +
                          type_name(values[i]),
                      pos(i));
    }
    const Space& space(std::size_t i) const {
      if (auto* s = std::get_if<Space>(&values[i])) return *s;
      throw EvalError(call.text + "() argument " + std::to_string(i + 1) + " must be a space, got " +
                          type_name(values[i]),
                      pos(i));
    }
    template <class Ref>
    const Ref& space_of(std::size_t i, const char* what) const {
      const Space& sp = space(i);
      if (auto* r = std::get_if<Ref>(&sp)) return *r;
      throw EvalError(call.text + "() argument " + std::to_string(i + 1) + " must be " + what, pos(i));
    }
    const rr::Basket& basket(std::size_t i) const {
      if (auto* b = std::get_if<rr::Basket>(&values[i])) return *b;
      throw EvalError(call.text + "() argument " + std::to_string(i + 1) + " must be a basket, got " +
                          type_name(values[i]),
                      pos(i));
    }
  };

  static void check_binding(const Divisor& d, const Space& sp, SourcePos pos) {
    if (d.level != level_of(sp))
      throw EvalError("divisor " + format_divisor(d) + " does not live on " + describe(sp), pos);
    if (d.space && !same_space(*d.space, sp))
      throw EvalError("divisor is bound to " + describe(*d.space) + ", not " + describe(sp), pos);
  }

  static chow::SurfaceDivisor on_surface(const Divisor& d, const HirzebruchRef& f, SourcePos pos) {
    check_binding(d, Space{f}, pos);
    return chow::surface_divisor(f, d.c[1], d.c[2]);
  }
  static chow::ThreefoldDivisor on_bundle(const Divisor& d, const BundleRef& y, SourcePos pos) {
    check_binding(d, Space{y}, pos);
    return chow::threefold_divisor(y, d.c[0], d.c[1], d.c[2]);
  }
  static chow::CoverDivisor on_cover(const Divisor& d, const CoverRef& x, SourcePos pos) {
    check_binding(d, Space{x}, pos);
    return chow::cover_divisor(x, d.c[0], d.c[1], d.c[2]);
  }

  static Record family_record(const families::FamilyRecord& r) {
    std::string text = "p_g=" + std::to_string(r.p_g) + " K3=" + r.k3.str() + " chi=" + std::to_string(r.chi_omega);
    if (r.p2) text += " P2=" + std::to_string(*r.p2);
    text += " basket=" + (r.basket ? r.basket->str() : std::string("?"));
    text += " region=" + noether::to_string(r.classification.region);
    return {text, r.k3, r.p_g};
  }

  // --- builtins ---------------------------------------------------------------

  Value call(const Expr& e) {
    Args args{e, {}};
    for (const auto& a : e.args) args.values.push_back(eval(a));
    try {
      return dispatch(args);
    } catch (const DomainError& err) {
      throw EvalError(err.what(), e.pos);
    }
  }

  Value dispatch(const Args& args) {
    const std::string& name = args.call.text;
    const SourcePos pos = args.call.pos;

    if (name == "hirzebruch") {
      args.arity(1, 1);
      return Space{chow::make_hirzebruch(args.integer(0))};
    }
    if (name == "proj_bundle") {
      args.arity(2, 2);
      const auto& f = args.space_of<HirzebruchRef>(0, "a Hirzebruch surface");
      return Space{chow::make_proj_bundle(f, on_surface(args.divisor(1), f, args.pos(1)))};
    }
    if (name == "double_cover") {
      args.arity(2, 2);
      const auto& y = args.space_of<BundleRef>(0, "a P^1-bundle");
      return Space{chow::make_double_cover(y, on_bundle(args.divisor(1), y, args.pos(1)))};
    }
    if (name == "pull") {
      args.arity(1, 1);
      Divisor d = args.divisor(0);
      if (d.level == 2) throw EvalError("pull() cannot lift a divisor that already lives on a cover", pos);
      Divisor out{d.level + 1, d.c, std::nullopt};
      if (d.level == 1) out.c[0] = Rational(2) * d.c[0];
      return out;
    }
    if (name == "canonical") {
      args.arity(1, 1);
      const Space& sp = args.space(0);
      if (auto* f = std::get_if<HirzebruchRef>(&sp)) return from_chow(chow::surface_canonical(*f), 0, sp);
      if (auto* y = std::get_if<BundleRef>(&sp)) return from_chow(chow::bundle_canonical(*y), 1, sp);
      return from_chow(chow::cover_canonical(std::get<CoverRef>(sp)), 2, sp);
    }
    if (name == "restrict") {
      args.arity(2, 2);
      const Space& sp = args.space(0);
      if (auto* y = std::get_if<BundleRef>(&sp)) {
        auto r = chow::bundle_restrict_to_section(on_bundle(args.divisor(1), *y, args.pos(1)));
        return from_chow(r, 0, Space{(*y)->base});
      }
      if (auto* x = std::get_if<CoverRef>(&sp)) {
        auto r = chow::cover_restrict_to_E(on_cover(args.divisor(1), *x, args.pos(1)));
        return from_chow(r, 0, Space{(*x)->target->base});
      }
      throw EvalError("restrict() needs a P^1-bundle or a double cover", pos);
    }
    if (name == "dot") {
      const Space& sp = args.space(0);
      if (auto* f = std::get_if<HirzebruchRef>(&sp)) {
        args.arity(3, 3);
        return chow::surface_intersect(on_surface(args.divisor(1), *f, args.pos(1)),
                                       on_surface(args.divisor(2), *f, args.pos(2)));
      }
      args.arity(4, 4);
      if (auto* y = std::get_if<BundleRef>(&sp))
        return chow::bundle_intersect3(on_bundle(args.divisor(1), *y, args.pos(1)),
                                       on_bundle(args.divisor(2), *y, args.pos(2)),
                                       on_bundle(args.divisor(3), *y, args.pos(3)));
      const auto& x = std::get<CoverRef>(sp);
      return chow::cover_intersect3(on_cover(args.divisor(1), x, args.pos(1)),
                                    on_cover(args.divisor(2), x, args.pos(2)),
                                    on_cover(args.divisor(3), x, args.pos(3)));
    }
    if (name == "h0") {
      args.arity(2, 2);
      const Space& sp = args.space(0);
      if (auto* f = std::get_if<HirzebruchRef>(&sp))
        return Rational(chow::surface_h0(on_surface(args.divisor(1), *f, args.pos(1))));
      if (auto* y = std::get_if<BundleRef>(&sp))
        return Rational(chow::bundle_h0(on_bundle(args.divisor(1), *y, args.pos(1))));
      throw EvalError("h0() needs a Hirzebruch surface or a P^1-bundle", pos);
    }
    if (name == "K3" || name == "pg") {
      args.arity(1, 1);
      if (auto* r = std::get_if<Record>(&args.values[0])) {
        if (name == "K3" && r->k3) return *r->k3;
        if (name == "pg" && r->p_g) return Rational(*r->p_g);
        throw EvalError(name + "() is not defined for this record", pos);
      }
      const auto& x = args.space_of<CoverRef>(0, "a double cover or a family record");
      if (name == "K3") return chow::contracted_canonical_cube(x);
      return Rational(chow::cover_geometric_genus(x));
    }
    if (name == "l2") {
      args.arity(1, 1);
      return rr::l2_of(args.basket(0));
    }
    if (name == "P2") {
      args.arity(3, 3);
      return rr::plurigenus2(args.number(0), args.integer(1), args.basket(2)).value;
    }
    if (name == "chi") {
      args.arity(1, 1);
      return Rational(rr::chi_from_pg(args.integer(0)));
    }
    if (name == "line") {
      args.arity(2, 2);
      return noether::line_value(args.integer(0), static_cast<int>(args.integer(1)));
    }
    if (name == "classify") {
      args.arity(2, 2);
      return Record{classification_text(noether::classify(args.integer(0), args.number(1))), std::nullopt,
                    std::nullopt};
    }
    if (name == "min_k3") {
      args.arity(1, 1);
      return noether::min_k3_fibered(args.integer(0));
    }
    if (name == "p2_bound") {
      args.arity(2, 2);
      return Rational(noether::p2_upper_bound(args.integer(0), args.number(1)));
    }
    if (name == "family") {
      args.arity(3, 3);
      return family_record(families::build_family({args.integer(0), args.integer(1), args.integer(2)}));
    }
    if (name == "example") {
      args.arity(3, 3);
      return family_record(
          families::noether_example(static_cast<int>(args.integer(0)), args.integer(1), args.integer(2)));
    }
    if (name == "model") {
      args.arity(2, 2);
      auto m = families::structure_model(args.integer(0), args.integer(1));
      std::string text = "m=" + std::to_string(m.m) + " e=" + std::to_string(m.e) + " k=" + std::to_string(m.k) +
                         " p_g=" + std::to_string(m.p_g) + " K3=" + m.k3.str() + " hodge=(" +
                         std::to_string(m.hodge_degrees.first) + "," + std::to_string(m.hodge_degrees.second) +
                         ") gamma=" + m.gamma_degree.str() + " region=" + noether::to_string(m.classification.region);
      return Record{text, m.k3, m.p_g};
    }
    throw EvalError("unknown function '" + name + "'", pos);
  }

  std::map<std::string, Value> env_;
};

}  // namespace

EvalResult evaluate(const Program& program) { return Evaluator().run(program); }

EvalResult run_script(std::string_view text) {
  ParseResult parsed = parse(text);
  if (!parsed.ok()) return {{}, parsed.diagnostics};
  return evaluate(*parsed.program);
}

}  // namespace ngeo::dsl
