#include "mmt/ast.hpp"

#include <algorithm>

namespace mmt {

Morphism morph_ident(Identifier theory) {
  Morphism m;
  m.kind = Morphism::Kind::Ident;
  m.path = std::move(theory);
  return m;
}

Morphism morph_link(Identifier link) {
  Morphism m;
  m.kind = Morphism::Kind::Link;
  m.path = std::move(link);
  return m;
}

Morphism morph_comp(std::vector<Morphism> factors) {
  std::vector<Morphism> flat;
  for (auto& f : factors) {
    if (f.is_composition())
      for (auto& g : f.factors) flat.push_back(std::move(g));
    else
      flat.push_back(std::move(f));
  }
  if (flat.size() == 1) return flat.front();
  Morphism m;
  m.kind = Morphism::Kind::Comp;
  m.factors = std::move(flat);
  return m;
}

Morphism morph_comp(Morphism first, Morphism then) {
  std::vector<Morphism> fs;
  fs.push_back(std::move(first));
  fs.push_back(std::move(then));
  return morph_comp(std::move(fs));
}

std::vector<Morphism> Morphism::canonical_factors() const {
  std::vector<Morphism> out;
  if (is_composition()) {
    for (const auto& f : factors) {
      auto inner = f.canonical_factors();
      out.insert(out.end(), inner.begin(), inner.end());
    }
  } else if (is_link()) {
    out.push_back(*this);
  }
  // identities vanish; a pure identity morphism canonicalizes to the empty chain
  return out;
}

std::string Morphism::str() const {
  switch (kind) {
    case Kind::Ident: return "id_" + path.str();
    case Kind::Link: return path.str();
    case Kind::Comp: {
      std::string out;
      for (size_t i = 0; i < factors.size(); ++i) {
        if (i) out += " ; ";
        out += factors[i].str();
      }
      return out;
    }
  }
  return {};
}

Term filtered() { return Term{}; }

Term constant(Identifier id) {
  Term t;
  t.kind = Term::Kind::Const;
  t.con = std::move(id);
  return t;
}

Term var(std::string_view name) {
  Term t;
  t.kind = Term::Kind::Var;
  t.var = std::string(name);
  return t;
}

Term app(Term head, std::vector<Term> args) {
  Term t;
  t.kind = Term::Kind::App;
  t.sub.reserve(args.size() + 1);
  t.sub.push_back(std::move(head));
  for (auto& a : args) t.sub.push_back(std::move(a));
  return t;
}

Term bind(Term binder, Context ctx, Term scope) {
  Term t;
  t.kind = Term::Kind::Bind;
  t.sub.push_back(std::move(binder));
  t.sub.push_back(std::move(scope));
  t.ctx = std::move(ctx);
  return t;
}

Term morph_app(Term arg, Morphism m) {
  Term t;
  t.kind = Term::Kind::MorphApp;
  t.sub.push_back(std::move(arg));
  t.morph.push_back(std::move(m));
  return t;
}

Assignment con_ass(LocalPath name, Term t) {
  Assignment a;
  a.kind = Assignment::Kind::Constant;
  a.name = std::move(name);
  a.term = std::move(t);
  return a;
}

Assignment str_ass(LocalPath name, Morphism m) {
  Assignment a;
  a.kind = Assignment::Kind::Structure;
  a.name = std::move(name);
  a.morph = std::move(m);
  return a;
}

std::string Term::str() const {
  switch (kind) {
    case Kind::Filtered: return "\xe2\x8a\xa5";  // bottom
    case Kind::Const: return con.str();
    case Kind::Var: return var;
    case Kind::App: {
      std::string out = "@(";
      for (size_t i = 0; i < sub.size(); ++i) {
        if (i) out += ", ";
        out += sub[i].str();
      }
      return out + ")";
    }
    case Kind::Bind:
      return "\xce\xb2(" + binder().str() + "; " + to_string(ctx) + "; " + scope().str() + ")";
    case Kind::MorphApp: return "(" + arg().str() + ")^{" + morphism().str() + "}";
  }
  return {};
}

std::string to_string(const Context& ctx) {
  std::string out = "[";
  for (size_t i = 0; i < ctx.size(); ++i) {
    if (i) out += ", ";
    out += ctx[i].name.str();
    if (ctx[i].type) out += " : " + ctx[i].type->str();
    if (ctx[i].def) out += " = " + ctx[i].def->str();
  }
  return out + "]";
}

const Identifier& module_name(const Module& m) {
  if (const auto* t = std::get_if<TheoryDecl>(&m)) return t->name;
  return std::get<ViewDecl>(m).name;
}

bool is_flat(const Term& t) {
  if (t.kind == Term::Kind::MorphApp) return false;
  for (const auto& s : t.sub)
    if (!is_flat(s)) return false;
  for (const auto& v : t.ctx) {
    if (v.type && !is_flat(*v.type)) return false;
    if (v.def && !is_flat(*v.def)) return false;
  }
  return true;
}

namespace {

bool is_flat(const std::optional<Term>& t) { return !t || is_flat(*t); }

bool is_flat(const LinkBody& b) {
  for (const auto& a : b.assignments) {
    if (a.kind == Assignment::Kind::Structure) return false;
    if (a.term && !is_flat(*a.term)) return false;
  }
  return true;
}

}  // namespace

bool is_flat(const TheoryGraph& tg) {
  for (const auto& mod : tg) {
    if (const auto* thy = std::get_if<TheoryDecl>(&mod)) {
      for (const auto& sym : thy->body) {
        if (std::holds_alternative<StructureDecl>(sym)) return false;
        const auto& c = std::get<ConstantDecl>(sym);
        if (!is_flat(c.type) || !is_flat(c.def)) return false;
      }
    } else {
      if (!is_flat(std::get<ViewDecl>(mod).body)) return false;
    }
  }
  return true;
}

namespace {

void walk(const Term& t, Context& scope,
          const std::function<void(const Term&, const Context&)>& visit) {
  visit(t, scope);
  switch (t.kind) {
    case Term::Kind::Filtered:
    case Term::Kind::Const:
    case Term::Kind::Var:
      break;
    case Term::Kind::App:
      for (const auto& s : t.sub) walk(s, scope, visit);
      break;
    case Term::Kind::Bind: {
      walk(t.binder(), scope, visit);
      size_t base = scope.size();
      // each variable scopes over the types/defs of the following ones
      for (const auto& v : t.ctx) {
        if (v.type) walk(*v.type, scope, visit);
        if (v.def) walk(*v.def, scope, visit);
        scope.push_back(v);
      }
      walk(t.scope(), scope, visit);
      scope.resize(base);
      break;
    }
    case Term::Kind::MorphApp:
      walk(t.arg(), scope, visit);
      break;
  }
}

}  // namespace

void for_each_subterm(const Term& t,
                      const std::function<void(const Term&, const Context&)>& visit) {
  Context scope;
  walk(t, scope, visit);
}

std::vector<Term> subterms(const Term& t) {
  std::vector<Term> out;
  for_each_subterm(t, [&](const Term& s, const Context&) { out.push_back(s); });
  return out;
}

namespace {

struct AlphaEnv {
  // parallel stacks: bound names on each side, matched by position
  std::vector<std::string> left, right;

  // index from the top of the stack, or npos if free
  size_t find(const std::vector<std::string>& side, const std::string& n) const {
    for (size_t i = side.size(); i > 0; --i)
      if (side[i - 1] == n) return side.size() - i;
    return static_cast<size_t>(-1);
  }
};

bool alpha_eq(const Term& a, const Term& b, AlphaEnv& env);

bool alpha_eq_opt(const std::optional<Term>& a, const std::optional<Term>& b, AlphaEnv& env) {
  if (a.has_value() != b.has_value()) return false;
  return !a || alpha_eq(*a, *b, env);
}

bool alpha_eq(const Term& a, const Term& b, AlphaEnv& env) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Term::Kind::Filtered: return true;
    case Term::Kind::Const: return a.con == b.con;
    case Term::Kind::Var: {
      size_t ia = env.find(env.left, a.var);
      size_t ib = env.find(env.right, b.var);
      if (ia != ib) return false;
      if (ia == static_cast<size_t>(-1)) return a.var == b.var;  // both free
      return true;
    }
    case Term::Kind::App: {
      if (a.sub.size() != b.sub.size()) return false;
      for (size_t i = 0; i < a.sub.size(); ++i)
        if (!alpha_eq(a.sub[i], b.sub[i], env)) return false;
      return true;
    }
    case Term::Kind::Bind: {
      if (a.ctx.size() != b.ctx.size()) return false;
      if (!alpha_eq(a.binder(), b.binder(), env)) return false;
      size_t pushed = 0;
      bool ok = true;
      for (size_t i = 0; i < a.ctx.size() && ok; ++i) {
        ok = alpha_eq_opt(a.ctx[i].type, b.ctx[i].type, env) &&
             alpha_eq_opt(a.ctx[i].def, b.ctx[i].def, env);
        env.left.push_back(a.ctx[i].name.str());
        env.right.push_back(b.ctx[i].name.str());
        ++pushed;
      }
      ok = ok && alpha_eq(a.scope(), b.scope(), env);
      env.left.resize(env.left.size() - pushed);
      env.right.resize(env.right.size() - pushed);
      return ok;
    }
    case Term::Kind::MorphApp:
      return a.morphism() == b.morphism() && alpha_eq(a.arg(), b.arg(), env);
  }
  return false;
}

}  // namespace

bool alpha_equal(const Term& a, const Term& b) {
  AlphaEnv env;
  return alpha_eq(a, b, env);
}

std::vector<std::string> free_term_vars(const Term& t) {
  std::vector<std::string> out;
  std::vector<std::string> bound;
  std::function<void(const Term&)> go = [&](const Term& u) {
    switch (u.kind) {
      case Term::Kind::Var:
        if (std::find(bound.begin(), bound.end(), u.var) == bound.end() &&
            std::find(out.begin(), out.end(), u.var) == out.end())
          out.push_back(u.var);
        break;
      case Term::Kind::App:
        for (const auto& s : u.sub) go(s);
        break;
      case Term::Kind::MorphApp:
        go(u.arg());
        break;
      case Term::Kind::Bind: {
        go(u.binder());
        size_t base = bound.size();
        for (const auto& v : u.ctx) {
          if (v.type) go(*v.type);
          if (v.def) go(*v.def);
          bound.push_back(v.name.str());
        }
        go(u.scope());
        bound.resize(base);
        break;
      }
      default:
        break;
    }
  };
  go(t);
  return out;
}

}  // namespace mmt
