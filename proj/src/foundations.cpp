#include "mmt/foundations.hpp"

#include <algorithm>
#include <set>

#include "mmt/check.hpp"

namespace mmt {

namespace {

class StructuralFoundation : public Foundation {
 public:
  std::string key() const override { return "structural"; }
  bool typed(const Graph&, const Identifier&, const Context&, const std::optional<Term>&,
             const std::optional<Term>&) const override {
    return true;
  }
  bool equal(const Graph&, const Identifier&, const Context&, const std::optional<Term>&,
             const std::optional<Term>&) const override {
    return true;
  }
};

class OpenMathFoundation : public Foundation {
 public:
  std::string key() const override { return "openmath"; }

  bool typed(const Graph& g, const Identifier& theory, const Context& ctx,
             const std::optional<Term>& value,
             const std::optional<Term>& type) const override {
    if (type.has_value()) return false;  // all constants are untyped
    if (!value.has_value()) return true;
    return term_well_formed(g, theory, ctx, *value);
  }

  bool equal(const Graph& g, const Identifier&, const Context&, const std::optional<Term>& a,
             const std::optional<Term>& b) const override {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    try {
      return alpha_equal(normalize_term(g, *a), normalize_term(g, *b));
    } catch (const Error&) {
      return false;
    }
  }
};

// ---------------------------------------------------------------------------
// LF

bool is_root_const(const Term& t, const Identifier& root, const char* name) {
  return t.kind == Term::Kind::Const && t.con.symbol.size() == 1 &&
         t.con.symbol[0].str() == name && t.con.to_module() == root;
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  std::function<void(const Term&)> go = [&](const Term& u) {
    switch (u.kind) {
      case Term::Kind::Var:
        if (std::find(bound.rbegin(), bound.rend(), u.var) == bound.rend()) out.insert(u.var);
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

// Capture-avoiding substitution of a single variable.
Term subst(const Term& t, const std::string& name, const Term& value) {
  switch (t.kind) {
    case Term::Kind::Filtered:
    case Term::Kind::Const:
      return t;
    case Term::Kind::Var:
      return t.var == name ? value : t;
    case Term::Kind::App: {
      Term out;
      out.kind = Term::Kind::App;
      out.sub.reserve(t.sub.size());
      for (const auto& s : t.sub) out.sub.push_back(subst(s, name, value));
      return out;
    }
    case Term::Kind::MorphApp:
      return morph_app(subst(t.arg(), name, value), t.morphism());
    case Term::Kind::Bind: {
      std::set<std::string> fv = free_vars(value);
      Term binder = subst(t.binder(), name, value);
      Context ctx = t.ctx;
      Term scope = t.scope();
      bool shadowed = false;
      for (size_t i = 0; i < ctx.size(); ++i) {
        if (!shadowed) {
          if (ctx[i].type) ctx[i].type = subst(*ctx[i].type, name, value);
          if (ctx[i].def) ctx[i].def = subst(*ctx[i].def, name, value);
        }
        std::string vn = ctx[i].name.str();
        if (!shadowed && fv.count(vn)) {
          // rename the bound variable away from the substituted value
          std::string fresh = vn;
          do {
            fresh += "'";
          } while (fv.count(fresh) || free_vars(scope).count(fresh));
          Term fv_term = var(fresh);
          for (size_t j = i + 1; j < ctx.size(); ++j) {
            if (ctx[j].type) ctx[j].type = subst(*ctx[j].type, vn, fv_term);
            if (ctx[j].def) ctx[j].def = subst(*ctx[j].def, vn, fv_term);
          }
          scope = subst(scope, vn, fv_term);
          ctx[i].name = Name(fresh);
          vn = fresh;
        }
        if (vn == name) shadowed = true;
      }
      if (!shadowed) scope = subst(scope, name, value);
      return bind(std::move(binder), std::move(ctx), std::move(scope));
    }
  }
  return t;
}

class LfChecker {
 public:
  LfChecker(const Graph& g, const LfOptions& opt, Identifier root)
      : g_(g), opt_(opt), root_(std::move(root)), fuel_(opt.beta_fuel) {}

  // Canonical form for conversion checking: nested single-variable binders,
  // arrows expanded to Pi, nested application heads flattened, beta-reduced
  // (eta-contracted when enabled). Each call runs under a fresh fuel budget,
  // so the result is a pure function of the input.
  Term canonical(const Term& t) {
    fuel_ = opt_.beta_fuel;
    return reduce(canon_shape(t), 0);
  }

  bool convertible(const Term& a, const Term& b) {
    return alpha_equal(canonical(a), canonical(b));
  }

  /// Infers the classifier of a term: its type, kind, or Const(kind).
  std::optional<Term> infer(std::vector<std::pair<std::string, Term>>& env, const Term& t,
                            int depth) {
    if (depth > opt_.depth_limit) return std::nullopt;
    switch (t.kind) {
      case Term::Kind::Filtered:
      case Term::Kind::MorphApp:
        return std::nullopt;  // inputs are normal, morphism-free terms
      case Term::Kind::Var: {
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == t.var) return it->second;
        return std::nullopt;
      }
      case Term::Kind::Const: {
        if (is_root_const(t, root_, "type")) return kind_const();
        if (t.con.to_module() == root_) return std::nullopt;  // kind, lambda, Pi, arrow
        const ConstantInfo* info = g_.try_constant(t.con.to_module(), t.con.symbol);
        if (!info || !info->type) return std::nullopt;
        try {
          return canonical(normalize_term(g_, *info->type));
        } catch (const Error&) {
          return std::nullopt;
        }
      }
      case Term::Kind::App:
        return infer_app(env, t, depth);
      case Term::Kind::Bind:
        return infer_bind(env, t, depth);
    }
    return std::nullopt;
  }

  bool is_type(std::vector<std::pair<std::string, Term>>& env, const Term& t, int depth) {
    auto s = infer(env, t, depth);
    return s && is_root_const(*s, root_, "type");
  }

  // A valid classifier for a constant: a type or a kind.
  bool is_type_or_kind(const Term& t) {
    std::vector<std::pair<std::string, Term>> env;
    auto s = infer(env, canonical(t), 0);
    return s && (is_root_const(*s, root_, "type") || is_root_const(*s, root_, "kind"));
  }

  std::optional<Term> infer_closed(const Term& t) {
    std::vector<std::pair<std::string, Term>> env;
    return infer(env, canonical(t), 0);
  }

 private:
  Term type_const() { return constant(root_.with_symbol(local_path({"type"}))); }
  Term kind_const() { return constant(root_.with_symbol(local_path({"kind"}))); }

  bool is_lambda(const Term& t) { return is_root_const(t, root_, "lambda"); }
  bool is_pi(const Term& t) { return is_root_const(t, root_, "Pi"); }
  bool is_arrow(const Term& t) { return is_root_const(t, root_, "arrow"); }

  // Shape canonicalization (no reduction): flatten nested application heads,
  // split multi-variable binders, rewrite arrow chains into Pi binders.
  Term canon_shape(const Term& t) {
    switch (t.kind) {
      case Term::Kind::Filtered:
      case Term::Kind::Const:
      case Term::Kind::Var:
        return t;
      case Term::Kind::MorphApp:
        return morph_app(canon_shape(t.arg()), t.morphism());
      case Term::Kind::App: {
        std::vector<Term> parts;
        for (const auto& s : t.sub) parts.push_back(canon_shape(s));
        // arrow chains become right-nested Pi with vacuous dependency
        if (is_arrow(parts[0]) && parts.size() >= 3) {
          Term out = parts.back();
          for (size_t i = parts.size() - 1; i >= 2; --i) {
            Term dom = parts[i - 1];
            out = bind(pi_const(), {VarDecl{Name(fresh_arrow_var(out)), dom, std::nullopt}},
                       out);
          }
          return out;
        }
        if (parts[0].kind == Term::Kind::App) {
          std::vector<Term> flat(parts[0].sub.begin(), parts[0].sub.end());
          flat.insert(flat.end(), parts.begin() + 1, parts.end());
          Term out;
          out.kind = Term::Kind::App;
          out.sub = std::move(flat);
          return canon_shape(out);
        }
        Term out;
        out.kind = Term::Kind::App;
        out.sub = std::move(parts);
        return out;
      }
      case Term::Kind::Bind: {
        Term binder = canon_shape(t.binder());
        Term scope = canon_shape(t.scope());
        if ((is_lambda(binder) || is_pi(binder)) && t.ctx.size() > 1) {
          // split into nested single-variable binders
          Term out = scope;
          for (size_t i = t.ctx.size(); i-- > 0;) {
            VarDecl v = t.ctx[i];
            if (v.type) v.type = canon_shape(*v.type);
            if (v.def) v.def = canon_shape(*v.def);
            out = bind(binder, {std::move(v)}, std::move(out));
          }
          return out;
        }
        Context ctx = t.ctx;
        for (auto& v : ctx) {
          if (v.type) v.type = canon_shape(*v.type);
          if (v.def) v.def = canon_shape(*v.def);
        }
        return bind(std::move(binder), std::move(ctx), std::move(scope));
      }
    }
    return t;
  }

  Term pi_const() { return constant(root_.with_symbol(local_path({"Pi"}))); }

  static std::string fresh_arrow_var(const Term& body) {
    std::string name = "_";
    auto fv = free_vars(body);
    while (fv.count(name)) name += "_";
    return name;
  }

  // Normal-order reduction under the fuel bound; deterministic on equal input.
  Term reduce(const Term& t, int depth) {
    if (depth > opt_.depth_limit || fuel_ <= 0) return t;
    switch (t.kind) {
      case Term::Kind::Filtered:
      case Term::Kind::Const:
      case Term::Kind::Var:
      case Term::Kind::MorphApp:
        return t;
      case Term::Kind::App: {
        Term head = reduce(t.sub[0], depth + 1);
        if (head.kind == Term::Kind::Bind && is_lambda(head.binder()) && fuel_ > 0 &&
            t.sub.size() >= 2) {
          --fuel_;
          // single-variable lambda after canon_shape
          Term contracted = subst(head.scope(), head.ctx[0].name.str(), t.sub[1]);
          if (t.sub.size() == 2) return reduce(contracted, depth + 1);
          Term out;
          out.kind = Term::Kind::App;
          out.sub.push_back(std::move(contracted));
          out.sub.insert(out.sub.end(), t.sub.begin() + 2, t.sub.end());
          return reduce(canon_shape(out), depth + 1);
        }
        Term out;
        out.kind = Term::Kind::App;
        out.sub.push_back(std::move(head));
        for (size_t i = 1; i < t.sub.size(); ++i) out.sub.push_back(reduce(t.sub[i], depth + 1));
        if (out.sub[0].kind == Term::Kind::App) return reduce(canon_shape(out), depth + 1);
        return out;
      }
      case Term::Kind::Bind: {
        Term binder = reduce(t.binder(), depth + 1);
        Context ctx = t.ctx;
        for (auto& v : ctx) {
          if (v.type) v.type = reduce(*v.type, depth + 1);
          if (v.def) v.def = reduce(*v.def, depth + 1);
        }
        Term scope = reduce(t.scope(), depth + 1);
        if (opt_.eta && is_lambda(binder) && ctx.size() == 1 &&
            scope.kind == Term::Kind::App && scope.sub.size() >= 2) {
          const Term& last = scope.sub.back();
          if (last.kind == Term::Kind::Var && last.var == ctx[0].name.str()) {
            Term fun;
            if (scope.sub.size() == 2)
              fun = scope.sub[0];
            else {
              fun.kind = Term::Kind::App;
              fun.sub.assign(scope.sub.begin(), scope.sub.end() - 1);
            }
            if (!free_vars(fun).count(ctx[0].name.str())) return reduce(fun, depth + 1);
          }
        }
        return bind(std::move(binder), std::move(ctx), std::move(scope));
      }
    }
    return t;
  }

  std::optional<Term> infer_app(std::vector<std::pair<std::string, Term>>& env, const Term& t,
                                int depth) {
    const Term& head = t.sub[0];
    if (is_pi(head) || is_lambda(head) || is_arrow(head)) return std::nullopt;
    auto fty = infer(env, head, depth + 1);
    if (!fty) return std::nullopt;
    Term f = canonical(*fty);
    for (size_t i = 1; i < t.sub.size(); ++i) {
      if (!(f.kind == Term::Kind::Bind && is_pi(f.binder()) && f.ctx.size() == 1))
        return std::nullopt;
      if (!f.ctx[0].type) return std::nullopt;
      Term dom = *f.ctx[0].type;
      auto aty = infer(env, t.sub[i], depth + 1);
      if (!aty || !convertible(*aty, dom)) return std::nullopt;
      f = canonical(subst(f.scope(), f.ctx[0].name.str(), t.sub[i]));
    }
    return f;
  }

  std::optional<Term> infer_bind(std::vector<std::pair<std::string, Term>>& env, const Term& t,
                                 int depth) {
    const Term& binder = t.binder();
    if (is_lambda(binder) || is_pi(binder)) {
      size_t pushed = 0;
      std::optional<Term> result;
      bool ok = true;
      for (const auto& v : t.ctx) {
        if (!v.type || v.def) {
          ok = false;  // fully explicit input required; defined bound vars rejected
          break;
        }
        Term vt = canonical(*v.type);
        auto sort = infer(env, vt, depth + 1);
        if (!sort || !is_root_const(*sort, root_, "type")) {
          ok = false;
          break;
        }
        env.emplace_back(v.name.str(), vt);
        ++pushed;
      }
      if (ok) {
        if (is_lambda(binder)) {
          auto body = infer(env, t.scope(), depth + 1);
          if (body) {
            Term out = *body;
            for (size_t i = pushed; i-- > 0;) {
              const auto& [n, ty] = env[env.size() - (pushed - i)];
              out = bind(pi_const(), {VarDecl{Name(n), ty, std::nullopt}}, std::move(out));
            }
            result = out;
          }
        } else {  // Pi: the sort of the body
          auto sort = infer(env, t.scope(), depth + 1);
          if (sort && (is_root_const(*sort, root_, "type") || is_root_const(*sort, root_, "kind")))
            result = *sort;
        }
      }
      env.resize(env.size() - pushed);
      return result;
    }
    // generic binder: treat binding as application to the abstracted scope
    Term lam = bind(constant(root_.with_symbol(local_path({"lambda"}))), t.ctx, t.scope());
    Term as_app = app(binder, {std::move(lam)});
    return infer(env, canon_shape(as_app), depth + 1);
  }

  const Graph& g_;
  const LfOptions& opt_;
  Identifier root_;
  int fuel_;
};

class LfFoundation : public Foundation {
 public:
  explicit LfFoundation(LfOptions opt) : opt_(opt) {}

  std::string key() const override { return "lf"; }

  bool typed(const Graph& g, const Identifier& theory, const Context& ctx,
             const std::optional<Term>& value,
             const std::optional<Term>& type) const override {
    if (!value && !type) return true;
    Identifier root = FoundationRegistry::foundational_theory_of(g, theory);
    if (root == theory.to_module()) return false;  // at LF itself only undef:undef holds
    (void)ctx;  // the kernel consults foundations with the empty context
    try {
      LfChecker lf(g, opt_, root);
      std::optional<Term> v = value ? std::optional<Term>(normalize_term(g, *value)) : std::nullopt;
      std::optional<Term> ty = type ? std::optional<Term>(normalize_term(g, *type)) : std::nullopt;
      if (v && v->is_filtered()) return true;   // filtering is always permitted
      if (ty && ty->is_filtered()) return true; // the classifier itself was filtered away
      if (!v) return lf.is_type_or_kind(*ty);
      if (!ty) return false;  // no untyped values below LF
      auto vt = lf.infer_closed(*v);
      return vt && lf.convertible(*vt, *ty);
    } catch (const Error&) {
      return false;
    }
  }

  bool equal(const Graph& g, const Identifier& theory, const Context&,
             const std::optional<Term>& a, const std::optional<Term>& b) const override {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    try {
      Identifier root = FoundationRegistry::foundational_theory_of(g, theory);
      LfChecker lf(g, opt_, root);
      return lf.convertible(normalize_term(g, *a), normalize_term(g, *b));
    } catch (const Error&) {
      return false;
    }
  }

 private:
  LfOptions opt_;
};

}  // namespace

std::shared_ptr<const Foundation> structural_foundation() {
  static auto instance = std::make_shared<StructuralFoundation>();
  return instance;
}

std::shared_ptr<const Foundation> openmath_foundation() {
  static auto instance = std::make_shared<OpenMathFoundation>();
  return instance;
}

std::shared_ptr<const Foundation> lf_foundation(LfOptions opt) {
  return std::make_shared<LfFoundation>(opt);
}

FoundationRegistry::FoundationRegistry() : default_(structural_foundation()) {}

void FoundationRegistry::register_for(const Identifier& foundational_theory,
                                      std::shared_ptr<const Foundation> f) {
  by_theory_[foundational_theory.to_module().str()] = std::move(f);
}

void FoundationRegistry::set_default(std::shared_ptr<const Foundation> f) {
  default_ = std::move(f);
}

Identifier FoundationRegistry::foundational_theory_of(const Graph& g, const Identifier& theory) {
  Identifier root = theory.to_module();
  auto chain = g.meta_chain(root);
  if (!chain.empty()) root = chain.back().to_module();
  return root;
}

const Foundation& FoundationRegistry::resolve(const Graph& g, const Identifier& theory) const {
  try {
    Identifier root = foundational_theory_of(g, theory);
    if (auto it = by_theory_.find(root.str()); it != by_theory_.end()) return *it->second;
  } catch (const Error&) {
    // unknown theory or cyclic meta chain: fall through to the default
  }
  return *default_;
}

}  // namespace mmt
