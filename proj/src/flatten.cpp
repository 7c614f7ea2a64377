#include "mmt/flatten.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mmt/normalize.hpp"

namespace mmt {

namespace {

std::optional<Term> norm_opt(const Graph& g, const std::optional<Term>& t, bool normalize) {
  if (!t) return std::nullopt;
  if (!normalize) return t;
  return normalize_term(g, *t);
}

ViewDecl flatten_link(const Graph& g, const Identifier& link, const FlattenOptions& opt) {
  LinkInfo li = g.link_info(link);
  ViewDecl out;
  out.name = link.to_module();
  out.from = li.from.to_module();
  out.to = li.to.to_module();
  if (li.is_defined()) {
    out.body.definiens = li.definiens;
    return out;
  }
  out.meta_morph = li.meta_morph;
  for (const auto& name : g.assignment_names(link)) {
    Term value = g.assignment(link, name);
    out.body.assignments.push_back(
        con_ass(name, opt.normalize ? normalize_term(g, value) : value));
  }
  return out;
}

}  // namespace

TheoryGraph flatten_graph(const Graph& g, const FlattenOptions& opt) {
  TheoryGraph out;
  for (const auto& mod : g.modules()) {
    if (const auto* thy = std::get_if<TheoryDecl>(&mod)) {
      TheoryDecl flat;
      flat.name = thy->name;
      flat.meta = thy->meta;
      for (const auto& name : g.constant_names(thy->name)) {
        ConstantInfo info = g.constant(thy->name, name);
        flat.body.push_back(ConstantDecl{name, norm_opt(g, info.type, opt.normalize),
                                         norm_opt(g, info.def, opt.normalize)});
      }
      out.push_back(std::move(flat));
      // every structure link of the theory, declared and induced, becomes a view
      for (const auto& link : g.structure_links(thy->name))
        out.push_back(flatten_link(g, link, opt));
    } else {
      out.push_back(flatten_link(g, std::get<ViewDecl>(mod).name, opt));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Incremental flattening of a single structure

namespace {

// Syntactic translation of a term over S to a term over T along the structure
// being flattened: S-constants are prefixed with the structure name, meta
// constants are routed through the meta translation, and morphisms into S are
// post-composed with the replacement view. One unfolding of the link, without
// deep normalization.
struct StructTranslator {
  const Graph& g;
  Identifier s;                        // domain of the structure
  Identifier t;                        // containing theory
  LocalPath prefix;                    // structure name
  std::optional<Morphism> meta_route;  // meta-morphism, or the link definiens
  Morphism into_t;                     // the view T/i that keeps the link alive

  Term operator()(const Term& term) const {
    switch (term.kind) {
      case Term::Kind::Filtered:
      case Term::Kind::Var:
        return term;
      case Term::Kind::Const: {
        Identifier d = term.con.to_module();
        if (d == s) return constant(t.with_symbol(path_concat(prefix, term.con.symbol)));
        if (g.is_meta_ancestor(d, s) && meta_route && !meta_route->is_identity())
          return morph_app(term, *meta_route);
        return term;
      }
      case Term::Kind::App: {
        Term out;
        out.kind = Term::Kind::App;
        out.sub.reserve(term.sub.size());
        for (const auto& x : term.sub) out.sub.push_back((*this)(x));
        return out;
      }
      case Term::Kind::Bind: {
        Context ctx = term.ctx;
        for (auto& v : ctx) {
          if (v.type) v.type = (*this)(*v.type);
          if (v.def) v.def = (*this)(*v.def);
        }
        return bind((*this)(term.binder()), std::move(ctx), (*this)(term.scope()));
      }
      case Term::Kind::MorphApp:
        // (w)^mu over S becomes (w)^(mu ; T/i) over T
        return morph_app(term.arg(), morph_comp(term.morphism(), into_t));
    }
    return term;
  }
};

const StructureDecl* find_structure(const TheoryDecl& thy, const LocalPath& name) {
  for (const auto& sym : thy.body)
    if (const auto* str = std::get_if<StructureDecl>(&sym))
      if (str->name == name) return str;
  return nullptr;
}

const Assignment* find_assignment(const std::vector<Assignment>& assignments,
                                  const LocalPath& name, Assignment::Kind kind) {
  for (const auto& a : assignments)
    if (a.kind == kind && a.name == name) return &a;
  return nullptr;
}

}  // namespace

TheoryGraph flatten_structure(const Graph& g, const Identifier& theory_id,
                              const LocalPath& name) {
  const TheoryDecl* thy = g.find_theory(theory_id);
  if (!thy) throw Error(ErrorKind::UnknownModule, "no theory " + theory_id.str());
  const StructureDecl* str = find_structure(*thy, name);
  if (!str)
    throw Error(ErrorKind::UnknownStructure,
                theory_id.str() + " declares no structure " + path_to_string(name));

  Identifier link = theory_id.to_module().module_child(name);
  const TheoryDecl& dom = g.theory(str->from);
  bool defined = str->body.is_defined();

  StructTranslator tr{g,
                      str->from.to_module(),
                      theory_id.to_module(),
                      name,
                      defined ? str->body.definiens : str->meta_morph,
                      morph_link(link)};

  // translated copies of the domain's local declarations
  std::vector<Symbol> copies;
  for (const auto& sym : dom.body) {
    if (const auto* con = std::get_if<ConstantDecl>(&sym)) {
      ConstantDecl c;
      c.name = path_concat(name, con->name);
      if (con->type) c.type = tr(*con->type);
      if (con->def) {
        c.def = tr(*con->def);
      } else if (defined) {
        c.def = morph_app(constant(str->from.with_symbol(con->name)), *str->body.definiens);
      } else if (const Assignment* a = find_assignment(str->body.assignments, con->name,
                                                       Assignment::Kind::Constant)) {
        c.def = a->term;  // already a term over T
      }
      copies.push_back(std::move(c));
    } else {
      // a structure h of the domain yields a structure i/h of T
      const auto& h = std::get<StructureDecl>(sym);
      StructureDecl c;
      c.name = path_concat(name, h.name);
      c.from = h.from;
      if (defined) {
        c.body.definiens = morph_comp(morph_link(str->from.to_module().module_child(h.name)),
                                      *str->body.definiens);
      } else if (const Assignment* a = find_assignment(str->body.assignments, h.name,
                                                       Assignment::Kind::Structure)) {
        c.body.definiens = a->morph;  // the structure assignment names the composite
      } else {
        if (h.meta_morph) c.meta_morph = morph_comp(*h.meta_morph, tr.into_t);
        // absorb the domain-side assignments, then the deep ones of this structure
        for (const auto& a : h.body.assignments) {
          if (a.kind == Assignment::Kind::Constant)
            c.body.assignments.push_back(con_ass(a.name, tr(*a.term)));
          else
            c.body.assignments.push_back(str_ass(a.name, morph_comp(*a.morph, tr.into_t)));
        }
        for (const auto& a : str->body.assignments) {
          if (!path_starts_with(a.name, h.name) || a.name.size() == h.name.size()) continue;
          LocalPath rest = path_suffix(a.name, h.name);
          if (find_assignment(c.body.assignments, rest, a.kind)) continue;
          if (a.kind == Assignment::Kind::Constant)
            c.body.assignments.push_back(con_ass(rest, *a.term));
          else
            c.body.assignments.push_back(str_ass(rest, *a.morph));
        }
      }
      copies.push_back(std::move(c));
    }
  }

  // the replacement view T/i, so the link and its assignments keep existing
  ViewDecl view;
  view.name = link;
  view.from = str->from.to_module();
  view.to = theory_id.to_module();
  if (defined) {
    view.body.definiens = str->body.definiens;
  } else {
    view.meta_morph = str->meta_morph;
    for (const auto& sym : dom.body) {
      if (const auto* con = std::get_if<ConstantDecl>(&sym)) {
        if (auto value = g.try_assignment(link, con->name))
          view.body.assignments.push_back(con_ass(con->name, *value));
      } else {
        const auto& h = std::get<StructureDecl>(sym);
        view.body.assignments.push_back(str_ass(
            h.name,
            morph_link(theory_id.to_module().module_child(path_concat(name, h.name)))));
      }
    }
  }

  // links the domain acquired from earlier flattenings (views extending its
  // name) stay reachable through defined view copies
  std::vector<ViewDecl> extension_views;
  for (const auto& mod : g.modules()) {
    const auto* v = std::get_if<ViewDecl>(&mod);
    if (!v) continue;
    if (!(v->name.document() == str->from.document())) continue;
    const LocalPath& vm = v->name.module;
    if (vm.size() <= str->from.module.size() || !path_starts_with(vm, str->from.module))
      continue;
    LocalPath h = path_suffix(vm, str->from.module);
    ViewDecl copy;
    copy.name = theory_id.to_module().module_child(path_concat(name, h));
    copy.from = v->from;
    copy.to = theory_id.to_module();
    copy.body.definiens = morph_comp(morph_link(v->name.to_module()), morph_link(link));
    extension_views.push_back(std::move(copy));
  }

  // rebuild the graph: the structure replaced in place, the view right after T
  TheoryGraph out;
  for (const auto& mod : g.modules()) {
    if (const auto* t = std::get_if<TheoryDecl>(&mod); t && t->name == thy->name) {
      TheoryDecl nt;
      nt.name = t->name;
      nt.meta = t->meta;
      for (const auto& sym : t->body) {
        const auto* s = std::get_if<StructureDecl>(&sym);
        if (s && s->name == name)
          nt.body.insert(nt.body.end(), copies.begin(), copies.end());
        else
          nt.body.push_back(sym);
      }
      out.push_back(std::move(nt));
      out.push_back(view);
      for (const auto& ev : extension_views) out.push_back(ev);
    } else {
      out.push_back(mod);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Equivalences

namespace {

std::map<std::string, const TheoryDecl*> theories_by_name(const Graph& g) {
  std::map<std::string, const TheoryDecl*> out;
  for (const auto& name : g.theory_names()) out.emplace(name.str(), g.find_theory(name));
  return out;
}

std::set<std::string> name_set(const std::vector<LocalPath>& names) {
  std::set<std::string> out;
  for (const auto& n : names) out.insert(path_to_string(n));
  return out;
}

}  // namespace

bool structurally_equivalent(const Graph& a, const Graph& b) {
  auto ta = theories_by_name(a), tb = theories_by_name(b);
  if (ta.size() != tb.size()) return false;
  for (const auto& [name, decl] : ta) {
    auto it = tb.find(name);
    if (it == tb.end()) return false;
    if (decl->meta != it->second->meta) return false;
    if (name_set(a.constant_names(decl->name)) != name_set(b.constant_names(decl->name)))
      return false;
  }
  auto links = [](const Graph& g) {
    std::map<std::string, std::pair<std::string, std::string>> out;
    for (const auto& l : g.link_names()) {
      LinkInfo li = g.link_info(l);
      out.emplace(l.str(), std::make_pair(li.from.to_module().str(), li.to.to_module().str()));
    }
    return out;
  };
  return links(a) == links(b);
}

bool semantically_equivalent(const Graph& a, const Graph& b) {
  if (!structurally_equivalent(a, b)) return false;
  auto norm_eq = [&](const std::optional<Term>& x, const std::optional<Term>& y) {
    if (x.has_value() != y.has_value()) return false;
    if (!x) return true;
    return normalize_term(a, *x) == normalize_term(b, *y);
  };
  for (const auto& tname : a.theory_names()) {
    for (const auto& cname : a.constant_names(tname)) {
      ConstantInfo ca = a.constant(tname, cname);
      ConstantInfo cb = b.constant(tname, cname);
      if (!norm_eq(ca.type, cb.type) || !norm_eq(ca.def, cb.def)) return false;
    }
  }
  for (const auto& lname : a.link_names()) {
    LinkInfo la = a.link_info(lname);
    for (const auto& cname : a.constant_names(la.from)) {
      auto va = a.try_assignment(lname, cname);
      auto vb = b.try_assignment(lname, cname);
      if (va.has_value() && vb.has_value() &&
          !(normalize_term(a, *va) == normalize_term(b, *vb)))
        return false;
    }
  }
  return true;
}

}  // namespace mmt
