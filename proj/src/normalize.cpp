#include "mmt/normalize.hpp"

namespace mmt {

namespace {

struct Normalizer {
  const Graph& g;
  const NormalizeOptions& opt;
  int depth = 0;

  struct DepthGuard {
    Normalizer& n;
    explicit DepthGuard(Normalizer& n_, const Term& at) : n(n_) {
      if (++n.depth > n.opt.depth_limit)
        throw Error(ErrorKind::CyclicDefinition,
                    "normalization depth limit exceeded at " + at.str());
    }
    ~DepthGuard() { --n.depth; }
  };

  Term norm(const Term& t) {
    DepthGuard guard(*this, t);
    switch (t.kind) {
      case Term::Kind::Filtered:
      case Term::Kind::Var:
        return t;
      case Term::Kind::Const: {
        const ConstantInfo* info = g.try_constant(t.con.to_module(), t.con.symbol);
        if (!info) throw Error(ErrorKind::IllFormed, "unknown constant " + t.con.str());
        if (info->def) return norm(*info->def);
        return t;
      }
      case Term::Kind::App: {
        std::vector<Term> parts;
        parts.reserve(t.sub.size());
        for (const auto& s : t.sub) {
          Term n = norm(s);
          if (n.is_filtered()) return filtered();  // strictness
          parts.push_back(std::move(n));
        }
        Term out;
        out.kind = Term::Kind::App;
        out.sub = std::move(parts);
        return out;
      }
      case Term::Kind::Bind: {
        Term b = norm(t.binder());
        if (b.is_filtered()) return filtered();
        auto ctx = norm_context(t.ctx);
        if (!ctx) return filtered();
        Term s = norm(t.scope());
        if (s.is_filtered()) return filtered();
        return bind(std::move(b), std::move(*ctx), std::move(s));
      }
      case Term::Kind::MorphApp:
        return norm_morph_app(t.arg(), t.morphism());
    }
    return t;
  }

  std::optional<Context> norm_context(const Context& ctx) {
    Context out;
    out.reserve(ctx.size());
    for (const auto& v : ctx) {
      VarDecl nv{v.name, std::nullopt, std::nullopt};
      if (v.type) {
        Term n = norm(*v.type);
        if (n.is_filtered()) return std::nullopt;
        nv.type = std::move(n);
      }
      if (v.def) {
        Term n = norm(*v.def);
        if (n.is_filtered()) return std::nullopt;
        nv.def = std::move(n);
      }
      out.push_back(std::move(nv));
    }
    return out;
  }

  Term norm_morph_app(const Term& t, const Morphism& m) {
    switch (m.kind) {
      case Morphism::Kind::Ident:
        return norm(t);
      case Morphism::Kind::Comp: {
        // chains evaluate link by link, in diagrammatic order
        Term acc = t;
        for (const auto& f : m.factors) acc = morph_app(std::move(acc), f);
        return norm(acc);
      }
      case Morphism::Kind::Link:
        return norm_link_app(t, m.path);
    }
    return t;
  }

  // The sub-induction for a single link l applied to a term.
  Term norm_link_app(const Term& t, const Identifier& link) {
    DepthGuard guard(*this, t);
    switch (t.kind) {
      case Term::Kind::Filtered:
        return filtered();
      case Term::Kind::Var:
        return t;  // links never introduce variables; bound names stay fixed
      case Term::Kind::App: {
        Term pushed;
        pushed.kind = Term::Kind::App;
        pushed.sub.reserve(t.sub.size());
        for (const auto& s : t.sub) pushed.sub.push_back(morph_app(s, morph_link(link)));
        return norm(pushed);
      }
      case Term::Kind::Bind: {
        Morphism l = morph_link(link);
        Context ctx;
        ctx.reserve(t.ctx.size());
        for (const auto& v : t.ctx) {
          VarDecl nv{v.name, std::nullopt, std::nullopt};
          if (v.type) nv.type = morph_app(*v.type, l);
          if (v.def) nv.def = morph_app(*v.def, l);
          ctx.push_back(std::move(nv));
        }
        return norm(bind(morph_app(t.binder(), l), std::move(ctx), morph_app(t.scope(), l)));
      }
      case Term::Kind::MorphApp:
        // inner application first, then the link on the normal form
        return norm_link_app(norm(t), link);
      case Term::Kind::Const:
        return norm_const_app(t.con, link);
    }
    return t;
  }

  // (D?c)^l: expand a definiens first; route meta-theory constants through
  // the meta-morphism; replace domain constants by the link's assignment.
  Term norm_const_app(const Identifier& con, const Identifier& link) {
    const LinkInfo* li = g.try_link_info(link);
    if (!li) throw Error(ErrorKind::IllFormed, "unknown link " + link.str());
    const ConstantInfo* info = g.try_constant(con.to_module(), con.symbol);
    if (!info) throw Error(ErrorKind::IllFormed, "unknown constant " + con.str());

    if (info->def) return norm(morph_app(*info->def, morph_link(link)));

    if (li->is_defined())  // a defined link acts exactly like its definiens
      return norm(morph_app(constant(con), *li->definiens));

    Identifier domain = li->from.to_module();
    if (con.to_module() == domain) {
      std::optional<Term> ass = g.try_assignment(link, con.symbol);
      if (!ass)
        throw Error(ErrorKind::IllFormed, "no assignment for " + con.str() + " under " + link.str());
      return norm(*ass);
    }
    if (!g.is_meta_ancestor(con.to_module(), domain))
      throw Error(ErrorKind::IllFormed, con.str() + " is neither over the domain of " +
                                            link.str() + " nor over a meta-theory of it");
    if (!li->meta_morph)
      throw Error(ErrorKind::IllFormed,
                  link.str() + " has no meta-morphism for " + con.str());
    return norm(morph_app(constant(con), *li->meta_morph));
  }
};

}  // namespace

Term normalize_term(const Graph& g, const Term& t, const NormalizeOptions& opt) {
  Normalizer n{g, opt};
  return n.norm(t);
}

std::optional<Context> normalize_context(const Graph& g, const Context& ctx,
                                         const NormalizeOptions& opt) {
  Normalizer n{g, opt};
  return n.norm_context(ctx);
}

Term apply_morphism(const Graph& g, const Term& t, const Morphism& m,
                    const NormalizeOptions& opt) {
  return normalize_term(g, morph_app(t, m), opt);
}

}  // namespace mmt
