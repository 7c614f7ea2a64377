#include "mmt/check.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace mmt {

std::string Diagnostic::render() const {
  std::string out = severity == Severity::Error ? "ERROR" : "WARNING";
  out += " rule=" + rule + " at=" + at + " msg=" + message;
  return out;
}

namespace {

Diagnostic with_at(Diagnostic d, const Identifier& at) {
  d.at = at.str();
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// Morphism typing

std::optional<MorphismType> morphism_type(const Graph& g, const Morphism& m, std::string* error) {
  auto fail = [&](std::string msg) -> std::optional<MorphismType> {
    if (error) *error = std::move(msg);
    return std::nullopt;
  };
  switch (m.kind) {
    case Morphism::Kind::Ident: {
      if (!g.find_theory(m.path)) return fail("identity of unknown theory " + m.path.str());
      return MorphismType{m.path.to_module(), m.path.to_module()};  // TMid
    }
    case Morphism::Kind::Link: {
      const LinkInfo* li = g.try_link_info(m.path);
      if (!li) return fail("unknown link " + m.path.str());
      return MorphismType{li->from.to_module(), li->to.to_module()};  // TMmor
    }
    case Morphism::Kind::Comp: {
      // TMcomp with TMcovariant/TMcontravariant mediating at the joints
      std::optional<MorphismType> acc;
      for (const auto& f : m.factors) {
        auto ft = morphism_type(g, f, error);
        if (!ft) return std::nullopt;
        if (!acc) {
          acc = ft;
          continue;
        }
        // TMcontravariant raises the next factor's domain to a meta-theory
        if (!(ft->from == acc->to) && !g.is_meta_ancestor(acc->to, ft->from))
          return fail("composition mismatch: " + acc->to.str() + " does not match " +
                      ft->from.str());
        acc->to = ft->to;
      }
      if (!acc) return fail("empty composition");
      return acc;
    }
  }
  return fail("malformed morphism");
}

bool morphism_types_as(const Graph& g, const Morphism& m, const Identifier& from,
                       const Identifier& to) {
  auto mt = morphism_type(g, m);
  if (!mt) return false;
  bool dom_ok = mt->from == from.to_module() || g.is_meta_ancestor(from.to_module(), mt->from);
  bool cod_ok = mt->to == to.to_module() || g.is_meta_ancestor(mt->to, to.to_module());
  return dom_ok && cod_ok;
}

// ---------------------------------------------------------------------------
// Structurally well-formed terms

namespace {

void check_term_impl(const Graph& g, const Identifier& home, std::vector<const VarDecl*>& scope,
                     const Term& t, const std::string& at, std::vector<Diagnostic>* out) {
  auto report = [&](const char* rule, std::string msg) {
    if (out)
      out->push_back(Diagnostic{Diagnostic::Severity::Error, rule, at, std::move(msg)});
  };
  switch (t.kind) {
    case Term::Kind::Filtered:  // TOspecial
      return;
    case Term::Kind::Var: {
      for (auto it = scope.rbegin(); it != scope.rend(); ++it)
        if ((*it)->name.str() == t.var) return;
      report("TOvar", "variable " + t.var + " is not in scope");
      return;
    }
    case Term::Kind::Const: {
      Identifier d = t.con.to_module();
      if (!g.try_constant(d, t.con.symbol)) {
        report("TOsym", "unknown constant " + t.con.str());
        return;
      }
      bool in_home = d == home.to_module();
      bool in_meta = !in_home && g.is_meta_ancestor(d, home.to_module());
      if (!in_home && !in_meta)
        report("TOmeta", t.con.str() + " is not over " + home.str() + " or a meta-theory of it");
      return;
    }
    case Term::Kind::App:
      if (t.sub.size() < 2) report("TOapp", "application without arguments");
      for (const auto& s : t.sub) check_term_impl(g, home, scope, s, at, out);
      return;
    case Term::Kind::Bind: {
      check_term_impl(g, home, scope, t.binder(), at, out);  // TObind: binder over outer scope
      size_t base = scope.size();
      for (const auto& v : t.ctx) {  // TOvardec
        if (v.type) check_term_impl(g, home, scope, *v.type, at, out);
        if (v.def) check_term_impl(g, home, scope, *v.def, at, out);
        scope.push_back(&v);
      }
      check_term_impl(g, home, scope, t.scope(), at, out);
      scope.resize(base);
      return;
    }
    case Term::Kind::MorphApp: {
      std::string err;
      auto mt = morphism_type(g, t.morphism(), &err);
      if (!mt) {
        report("TOmor", err);
        return;
      }
      bool cod_ok =
          mt->to == home.to_module() || g.is_meta_ancestor(mt->to, home.to_module());
      if (!cod_ok)
        report("TOmor", "morphism into " + mt->to.str() + " applied in " + home.str());
      // TOmor moves closed terms only
      for (const auto& v : free_term_vars(t.arg()))
        report("TOmor", "morphism applied to a term with free variable " + v);
      std::vector<const VarDecl*> empty;
      check_term_impl(g, mt->from, empty, t.arg(), at, out);
      return;
    }
  }
}

bool term_ok(const Graph& g, const Identifier& home, const Context& ctx, const Term& t) {
  std::vector<Diagnostic> diags;
  std::vector<const VarDecl*> scope;
  for (const auto& v : ctx) scope.push_back(&v);
  check_term_impl(g, home, scope, t, "", &diags);
  return diags.empty();
}

}  // namespace

bool term_well_formed(const Graph& g, const Identifier& home, const Context& ctx, const Term& t) {
  return term_ok(g, home, ctx, t);
}

std::vector<Diagnostic> Checker::check_term(const Identifier& home, const Context& ctx,
                                            const Term& t) {
  std::vector<Diagnostic> out;
  std::vector<const VarDecl*> scope;
  for (const auto& v : ctx) scope.push_back(&v);
  check_term_impl(g_, home, scope, t, home.str(), &out);
  return out;
}

// ---------------------------------------------------------------------------
// Atomic dependency graph: detects cyclic references between declarations.
// Evaluation (normalization) re-enters only definientia and assignment
// values, never declared types, so constants contribute two nodes: their
// type and their definiens. Nodes:
//   hdr:<module>          module existence
//   all:<theory>          the complete body (a structure copies its domain)
//   typ:<theory>!<name>   a constant's declared type
//   def:<theory>!<name>   a constant's definiens
//   str:<theory>!<name>   a structure declaration with its assignments
//   view:<view>           a view body with its assignments

namespace {

struct DepGraph {
  std::unordered_map<std::string, std::vector<std::string>> edges;

  void edge(const std::string& a, std::string b) { edges[a].push_back(std::move(b)); }
};

std::string hdr_node(const Identifier& m) { return "hdr:" + m.to_module().str(); }
std::string all_node(const Identifier& t) { return "all:" + t.to_module().str(); }
std::string typ_node(const Identifier& t, const LocalPath& n) {
  return "typ:" + t.to_module().str() + "!" + path_to_string(n);
}
std::string def_node(const Identifier& t, const LocalPath& n) {
  return "def:" + t.to_module().str() + "!" + path_to_string(n);
}
std::string str_node(const Identifier& t, const LocalPath& n) {
  return "str:" + t.to_module().str() + "!" + path_to_string(n);
}
std::string view_node(const Identifier& v) { return "view:" + v.to_module().str(); }

// The declared symbol of T that a (possibly induced) name resolves through.
const Symbol* symbol_anchor(const Graph& g, const Identifier& theory, const LocalPath& name,
                            LocalPath* anchor_name) {
  const TheoryDecl* thy = g.find_theory(theory);
  if (!thy) return nullptr;
  for (const auto& sym : thy->body) {
    const LocalPath& n =
        std::holds_alternative<ConstantDecl>(sym) ? std::get<ConstantDecl>(sym).name
                                                  : std::get<StructureDecl>(sym).name;
    if (n == name || path_starts_with(name, n)) {
      *anchor_name = n;
      return &sym;
    }
  }
  return nullptr;
}

struct AnchorCollector {
  const Graph& g;
  DepGraph& dep;
  std::string node;

  // a constant occurrence: evaluation may expand its definiens
  void constant_ref(const Identifier& con) {
    Identifier d = con.to_module();
    dep.edge(node, hdr_node(d));
    LocalPath anchor;
    if (const Symbol* sym = symbol_anchor(g, d, con.symbol, &anchor)) {
      if (std::holds_alternative<ConstantDecl>(*sym))
        dep.edge(node, def_node(d, anchor));
      else
        dep.edge(node, str_node(d, anchor));
    }
  }

  void link_ref(const Identifier& link) {
    // exact view, or a declared structure under the longest theory prefix
    if (g.find_view(link)) {
      dep.edge(node, view_node(link));
      return;
    }
    const LocalPath& path = link.module;
    for (size_t tlen = path.size(); tlen-- > 0;) {
      LocalPath tpath(path.begin(), path.begin() + static_cast<long>(tlen));
      Identifier tid = link.with_module(tpath);
      if (!g.find_theory(tid)) continue;
      LocalPath rest(path.begin() + static_cast<long>(tlen), path.end());
      LocalPath anchor;
      if (const Symbol* sym = symbol_anchor(g, tid, rest, &anchor))
        if (std::holds_alternative<StructureDecl>(*sym)) dep.edge(node, str_node(tid, anchor));
      return;
    }
  }

  void morphism(const Morphism& m) {
    switch (m.kind) {
      case Morphism::Kind::Ident:
        dep.edge(node, hdr_node(m.path));
        break;
      case Morphism::Kind::Link:
        link_ref(m.path);
        break;
      case Morphism::Kind::Comp:
        for (const auto& f : m.factors) morphism(f);
        break;
    }
  }

  // meta-morphisms only need their links to exist; evaluation through them is
  // driven by the translated constants, so body-level edges would report
  // spurious cycles on incrementally flattened graphs
  void shallow_morphism(const Morphism& m) {
    if (m.is_composition()) {
      for (const auto& f : m.factors) shallow_morphism(f);
      return;
    }
    Identifier mod = m.path.to_module();
    if (g.find_view(mod) || g.find_theory(mod)) {
      dep.edge(node, hdr_node(mod));
      return;
    }
    const LocalPath& path = mod.module;
    for (size_t tlen = path.size(); tlen-- > 0;) {
      Identifier tid = mod.with_module(LocalPath(path.begin(), path.begin() + (long)tlen));
      if (g.find_theory(tid)) {
        dep.edge(node, hdr_node(tid));
        return;
      }
    }
  }

  void term(const Term& t) {
    switch (t.kind) {
      case Term::Kind::Const:
        constant_ref(t.con);
        break;
      case Term::Kind::App:
        for (const auto& s : t.sub) term(s);
        break;
      case Term::Kind::Bind:
        term(t.binder());
        for (const auto& v : t.ctx) {
          if (v.type) term(*v.type);
          if (v.def) term(*v.def);
        }
        term(t.scope());
        break;
      case Term::Kind::MorphApp:
        term(t.arg());
        morphism(t.morphism());
        break;
      default:
        break;
    }
  }

  void body(const LinkBody& b) {
    if (b.definiens) morphism(*b.definiens);
    for (const auto& a : b.assignments) {
      if (a.term) term(*a.term);
      if (a.morph) morphism(*a.morph);
    }
  }
};

// Returns one node on a dependency cycle, if any.
std::optional<std::string> find_cycle(const DepGraph& dep) {
  enum class Color { White, Grey, Black };
  std::unordered_map<std::string, Color> color;
  std::optional<std::string> found;
  std::function<bool(const std::string&)> dfs = [&](const std::string& n) -> bool {
    auto& c = color[n];
    if (c == Color::Grey) {
      found = n;
      return true;
    }
    if (c == Color::Black) return false;
    c = Color::Grey;
    if (auto it = dep.edges.find(n); it != dep.edges.end())
      for (const auto& next : it->second)
        if (dfs(next)) return true;
    color[n] = Color::Black;
    return false;
  };
  for (const auto& [n, _] : dep.edges)
    if (dfs(n)) break;
  return found;
}

}  // namespace

void Checker::check_acyclic() {
  DepGraph dep;
  for (const auto& mod : g_.modules()) {
    if (const auto* thy = std::get_if<TheoryDecl>(&mod)) {
      std::string hdr = hdr_node(thy->name);
      std::string all = all_node(thy->name);
      dep.edge(all, hdr);
      if (thy->meta) dep.edge(hdr, hdr_node(*thy->meta));
      for (const auto& sym : thy->body) {
        if (const auto* con = std::get_if<ConstantDecl>(&sym)) {
          std::string tn = typ_node(thy->name, con->name);
          std::string dn = def_node(thy->name, con->name);
          dep.edge(all, tn);
          dep.edge(all, dn);
          dep.edge(tn, hdr);
          dep.edge(dn, hdr);
          if (con->type) {
            AnchorCollector ac{g_, dep, tn};
            ac.term(*con->type);
          }
          if (con->def) {
            AnchorCollector ac{g_, dep, dn};
            ac.term(*con->def);
          }
        } else {
          const auto& str = std::get<StructureDecl>(sym);
          std::string n = str_node(thy->name, str.name);
          dep.edge(all, n);
          dep.edge(n, hdr);
          dep.edge(n, all_node(str.from));  // a structure copies its whole domain
          AnchorCollector ac{g_, dep, n};
          if (str.meta_morph) ac.shallow_morphism(*str.meta_morph);
          ac.body(str.body);
        }
      }
    } else {
      const auto& view = std::get<ViewDecl>(mod);
      std::string hdr = hdr_node(view.name);
      std::string vb = view_node(view.name);
      dep.edge(hdr, hdr_node(view.from));
      dep.edge(hdr, hdr_node(view.to));
      dep.edge(vb, hdr);
      AnchorCollector ac{g_, dep, vb};
      if (view.meta_morph) ac.shallow_morphism(*view.meta_morph);
      ac.body(view.body);
    }
  }
  if (auto cyclic = find_cycle(dep))
    report("Acyclic", Identifier{}, "cyclic dependency through " + *cyclic);
}

// ---------------------------------------------------------------------------
// Rule replay

void Checker::report(const std::string& rule, const Identifier& at, std::string msg) {
  diags_.push_back(Diagnostic{Diagnostic::Severity::Error, rule, at.str(), std::move(msg)});
}

const Foundation& Checker::foundation_for(const Identifier& theory) const {
  return reg_.resolve(g_, theory);
}

std::vector<Diagnostic> Checker::check_graph() {
  diags_.clear();
  for (const auto& clash : g_.clashes())
    report("ClashFree", clash.second, clash.reason + " (conflicts with " + clash.first.str() + ")");
  check_acyclic();
  // lookups are only well-defined functions on clash-free acyclic graphs
  if (!diags_.empty()) return diags_;
  for (const auto& mod : g_.modules()) check_module(mod);
  return diags_;
}

std::optional<MorphismType> Checker::check_morphism(const Morphism& m,
                                                    std::vector<Diagnostic>* diags) {
  std::string err;
  auto mt = morphism_type(g_, m, &err);
  if (!mt && diags)
    diags->push_back(Diagnostic{Diagnostic::Severity::Error, "TMcomp", m.str(), err});
  return mt;
}

void Checker::check_module(const Module& mod) {
  if (const auto* thy = std::get_if<TheoryDecl>(&mod)) {
    if (thy->meta && !g_.find_theory(*thy->meta))  // TGemptytheory premise
      report("TGemptytheory", thy->name, "unknown meta-theory " + thy->meta->str());
    for (const auto& sym : thy->body) check_symbol(*thy, sym);
    return;
  }
  const auto& view = std::get<ViewDecl>(mod);
  bool ends_ok = true;
  if (!g_.find_theory(view.from)) {
    report("TGemptyview", view.name, "unknown domain " + view.from.str());
    ends_ok = false;
  }
  if (!g_.find_theory(view.to)) {
    report("TGemptyview", view.name, "unknown codomain " + view.to.str());
    ends_ok = false;
  }
  if (!ends_ok) return;

  if (view.body.is_defined()) {  // TGemptyviewmapall
    std::string err;
    auto mt = morphism_type(g_, *view.body.definiens, &err);
    if (!mt)
      report("TGemptyviewmapall", view.name, err);
    else if (!morphism_types_as(g_, *view.body.definiens, view.from, view.to))
      report("TGemptyviewmapall", view.name,
             "definiens has type " + mt->from.str() + " -> " + mt->to.str());
    return;
  }

  // TGemptyview: a domain with a meta-theory needs a meta-morphism into the codomain
  auto meta = g_.find_theory(view.from)->meta;
  if (meta) {
    if (!view.meta_morph)
      report("TGemptyview", view.name, "domain has meta-theory " + meta->str() +
                                           " but no meta-morphism is given");
    else if (!morphism_types_as(g_, *view.meta_morph, *meta, view.to))
      report("TGemptyview", view.name,
             "meta-morphism is not a morphism " + meta->str() + " -> " + view.to.str());
  } else if (view.meta_morph) {
    report("TGemptyview", view.name, "meta-morphism given but the domain has no meta-theory");
  }

  LinkContext lc{view.name.to_module(), view.from.to_module(), view.to.to_module(), false,
                 view.meta_morph};
  for (const auto& ass : view.body.assignments) check_assignment(lc, ass);
}

void Checker::check_symbol(const TheoryDecl& thy, const Symbol& sym) {
  if (const auto* con = std::get_if<ConstantDecl>(&sym)) {
    Identifier at = thy.name.with_symbol(con->name);
    if (con->type)
      for (auto& d : check_term(thy.name, {}, *con->type)) diags_.push_back(with_at(d, at));
    if (con->def)
      for (auto& d : check_term(thy.name, {}, *con->def)) diags_.push_back(with_at(d, at));
    // TGsymbol: the definiens must have the declared type
    try {
      if (!foundation_for(thy.name).typed(g_, thy.name, {}, con->def, con->type))
        report("TGsymbol", at, "definiens does not have the declared type");
    } catch (const Error& e) {
      report("TGsymbol", at, e.what());
    }
    return;
  }

  const auto& str = std::get<StructureDecl>(sym);
  Identifier link = thy.name.module_child(str.name);
  if (!g_.find_theory(str.from)) {
    report("TGemptyimport", link, "unknown domain " + str.from.str());
    return;
  }

  if (str.body.is_defined()) {  // TGemptyimportmapall
    std::string err;
    auto mt = morphism_type(g_, *str.body.definiens, &err);
    if (!mt)
      report("TGemptyimportmapall", link, err);
    else if (!morphism_types_as(g_, *str.body.definiens, str.from, thy.name))
      report("TGemptyimportmapall", link,
             "definiens has type " + mt->from.str() + " -> " + mt->to.str());
    return;
  }

  auto meta = g_.find_theory(str.from)->meta;  // TGemptyimport
  if (meta) {
    if (!str.meta_morph)
      report("TGemptyimport", link, "domain has meta-theory " + meta->str() +
                                        " but no meta-morphism is given");
    else if (!morphism_types_as(g_, *str.meta_morph, *meta, thy.name))
      report("TGemptyimport", link,
             "meta-morphism is not a morphism " + meta->str() + " -> " + thy.name.str());
  } else if (str.meta_morph) {
    report("TGemptyimport", link, "meta-morphism given but the domain has no meta-theory");
  }

  LinkContext lc{link, str.from.to_module(), thy.name.to_module(), true, str.meta_morph};
  for (const auto& ass : str.body.assignments) check_assignment(lc, ass);
}

void Checker::check_assignment(const LinkContext& lc, const Assignment& ass) {
  Identifier at = lc.link.with_symbol(ass.name);
  Morphism link_m = morph_link(lc.link);

  if (ass.kind == Assignment::Kind::Constant) {
    const ConstantInfo* info = g_.try_constant(lc.from, ass.name);
    if (!info) {
      report("TGinstsymb", at, "domain has no constant " + lc.from.with_symbol(ass.name).str());
      return;
    }
    if (info->def) {
      // TGhidesymb: filtering is the only possible assignment to a defined constant
      if (!ass.term->is_filtered())
        report("TGhidesymb", at, "only filtering may be assigned to a defined constant");
      return;
    }
    // TGinstsymb
    for (auto& d : check_term(lc.to, {}, *ass.term)) diags_.push_back(with_at(d, at));
    std::optional<Term> expected;
    if (info->type) expected = morph_app(*info->type, link_m);
    try {
      if (!foundation_for(lc.to).typed(g_, lc.to, {}, ass.term, expected))
        report("TGinstsymb", at, "assigned term does not have the translated type");
    } catch (const Error& e) {
      report("TGinstsymb", at, e.what());
    }
    return;
  }

  // TGinstimp
  Identifier inner_id = lc.from.module_child(ass.name);
  const LinkInfo* inner = g_.try_link_info(inner_id);
  if (!inner) {
    report("TGinstimp", at, "domain has no structure " + inner_id.str());
    return;
  }
  Identifier r = inner->from.to_module();
  std::string err;
  auto mt = morphism_type(g_, *ass.morph, &err);
  if (!mt) {
    report("TGinstimp", at, err);
    return;
  }
  if (!morphism_types_as(g_, *ass.morph, r, lc.to)) {
    report("TGinstimp", at, "assigned morphism is not a morphism " + r.str() + " -> " +
                                lc.to.str() + " (got " + mt->from.str() + " -> " +
                                mt->to.str() + ")");
    return;
  }
  // the meta-morphism triangle must commute
  std::optional<Identifier> r_meta;
  if (const TheoryDecl* rt = g_.find_theory(r)) r_meta = rt->meta;
  if (r_meta && inner->meta_morph) {
    Morphism composed = morph_comp(*inner->meta_morph, link_m);
    if (!morphisms_equal(*ass.morph, composed, *r_meta, lc.to))
      report("TGinstimp", at, "morphism disagrees with the structure's meta-morphism");
  }
  // defined imported constants must be mapped compatibly
  try {
    for (const auto& c : g_.constant_names(r)) {
      const ConstantInfo* full = g_.try_constant(lc.from, path_concat(ass.name, c));
      if (!full || !full->def) continue;
      Term lhs = morph_app(*full->def, link_m);
      Term rhs = morph_app(constant(r.with_symbol(c)), *ass.morph);
      if (!foundation_for(lc.to).equal(g_, lc.to, {}, lhs, rhs))
        report("TGinstimp", at,
               "defined constant " + path_to_string(c) + " is not mapped compatibly");
    }
  } catch (const Error& e) {
    report("TGinstimp", at, e.what());
  }
}

// ---------------------------------------------------------------------------
// Morphism equality

namespace {

std::string chain_key(const std::vector<Morphism>& fs) {
  std::string out;
  for (const auto& f : fs) {
    out += f.path.to_module().str();
    out += ';';
  }
  return out;
}

}  // namespace

bool Checker::rewrite_equal(const std::vector<Morphism>& a, const std::vector<Morphism>& b) {
  // Equational axioms: every defined link equals its definiens, and every
  // structure assignment h |-> mu makes S/h ; l equal to mu (Thm. strass).
  struct Axiom {
    std::vector<Morphism> lhs, rhs;
  };
  std::vector<Axiom> axioms;
  for (const auto& mod : g_.modules()) {
    auto add_strass = [&](const Identifier& link, const Identifier& from,
                          const std::vector<Assignment>& assignments) {
      for (const auto& ass : assignments) {
        if (ass.kind != Assignment::Kind::Structure) continue;
        std::vector<Morphism> lhs{morph_link(from.module_child(ass.name)), morph_link(link)};
        axioms.push_back({std::move(lhs), ass.morph->canonical_factors()});
      }
    };
    if (const auto* thy = std::get_if<TheoryDecl>(&mod)) {
      for (const auto& sym : thy->body) {
        const auto* str = std::get_if<StructureDecl>(&sym);
        if (!str) continue;
        Identifier link = thy->name.module_child(str->name);
        if (str->body.is_defined())
          axioms.push_back({{morph_link(link)}, str->body.definiens->canonical_factors()});
        else
          add_strass(link, str->from, str->body.assignments);
      }
    } else {
      const auto& view = std::get<ViewDecl>(mod);
      if (view.body.is_defined())
        axioms.push_back({{morph_link(view.name)}, view.body.definiens->canonical_factors()});
      else
        add_strass(view.name, view.from, view.body.assignments);
    }
  }

  // bounded bidirectional closure; incompleteness here is fine, the caller
  // falls back to the extensional comparison
  constexpr size_t kMaxStates = 128;
  auto close = [&](const std::vector<Morphism>& start) {
    std::vector<std::vector<Morphism>> frontier{start};
    std::set<std::string> seen{chain_key(start)};
    for (size_t i = 0; i < frontier.size() && seen.size() < kMaxStates; ++i) {
      std::vector<Morphism> cur = frontier[i];
      auto try_add = [&](std::vector<Morphism> next) {
        std::string key = chain_key(next);
        if (seen.insert(key).second) frontier.push_back(std::move(next));
      };
      // induced/defined link expansion at any position
      for (size_t p = 0; p < cur.size(); ++p) {
        const LinkInfo* li = g_.try_link_info(cur[p].path);
        if (li && li->is_defined()) {
          std::vector<Morphism> next(cur.begin(), cur.begin() + static_cast<long>(p));
          auto def = li->definiens->canonical_factors();
          next.insert(next.end(), def.begin(), def.end());
          next.insert(next.end(), cur.begin() + static_cast<long>(p) + 1, cur.end());
          try_add(std::move(next));
        }
      }
      for (const auto& ax : axioms) {
        for (size_t dir = 0; dir < 2; ++dir) {
          const auto& pat = dir == 0 ? ax.lhs : ax.rhs;
          const auto& rep = dir == 0 ? ax.rhs : ax.lhs;
          if (pat.empty() || pat.size() > cur.size()) continue;
          for (size_t p = 0; p + pat.size() <= cur.size(); ++p) {
            bool match = true;
            for (size_t k = 0; k < pat.size() && match; ++k)
              match = cur[p + k].path.to_module() == pat[k].path.to_module() &&
                      cur[p + k].kind == pat[k].kind;
            if (!match) continue;
            std::vector<Morphism> next(cur.begin(), cur.begin() + static_cast<long>(p));
            next.insert(next.end(), rep.begin(), rep.end());
            next.insert(next.end(), cur.begin() + static_cast<long>(p + pat.size()), cur.end());
            try_add(std::move(next));
          }
        }
      }
    }
    return seen;
  };

  auto sa = close(a);
  auto sb = close(b);
  return std::any_of(sa.begin(), sa.end(), [&](const std::string& k) { return sb.count(k) > 0; });
}

bool Checker::morphisms_equal(const Morphism& a, const Morphism& b, const Identifier& from,
                              const Identifier& to) {
  try {
    return equal_morphisms_impl(a, b, from, to, 0);
  } catch (const Error&) {
    return false;
  }
}

bool Checker::equal_morphisms_impl(const Morphism& a, const Morphism& b, const Identifier& from,
                                   const Identifier& to, int depth) {
  if (depth > kResolutionDepthLimit) return false;
  auto ca = a.canonical_factors();
  auto cb = b.canonical_factors();
  if (chain_key(ca) == chain_key(cb)) return true;
  if (rewrite_equal(ca, cb)) return true;

  // TMequal': local constants via the foundation, declared structures
  // recursively, then the meta-theory
  const TheoryDecl* s = g_.find_theory(from);
  if (!s) return false;
  const Foundation& f = foundation_for(to);
  for (const auto& sym : s->body) {
    if (const auto* con = std::get_if<ConstantDecl>(&sym)) {
      if (con->def) continue;  // defined constants expand
      Term c = constant(from.to_module().with_symbol(con->name));
      if (!f.equal(g_, to, {}, morph_app(c, a), morph_app(c, b))) return false;
    } else {
      const auto& str = std::get<StructureDecl>(sym);
      Morphism inner = morph_link(from.to_module().module_child(str.name));
      const LinkInfo* li = g_.try_link_info(inner.path);
      if (!li) return false;
      if (!equal_morphisms_impl(morph_comp(inner, a), morph_comp(inner, b), li->from, to,
                                depth + 1))
        return false;
    }
  }
  if (s->meta && !equal_morphisms_impl(a, b, *s->meta, to, depth + 1)) return false;
  return true;
}

bool Checker::is_total(const Morphism& m) {
  auto mt = morphism_type(g_, m);
  if (!mt) return false;
  // domain constants and, via the meta chain, the meta-morphism's constants
  std::vector<Identifier> domains{mt->from};
  for (const auto& meta : g_.meta_chain(mt->from)) domains.push_back(meta);
  for (const auto& d : domains) {
    for (const auto& c : g_.constant_names(d)) {
      Term moved = morph_app(constant(d.with_symbol(c)), m);
      try {
        if (normalize_term(g_, moved).is_filtered()) return false;
      } catch (const Error&) {
        return false;
      }
    }
  }
  return true;
}

std::vector<Diagnostic> check_graph(const TheoryGraph& tg, const FoundationRegistry& reg) {
  Graph g(tg);
  Checker checker(g, reg);
  return checker.check_graph();
}

std::vector<Diagnostic> check_graph(const TheoryGraph& tg,
                                    std::shared_ptr<const Foundation> foundation) {
  FoundationRegistry reg;
  reg.set_default(std::move(foundation));
  return check_graph(tg, reg);
}

}  // namespace mmt
