#include "mmt/library.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace mmt {

// ---------------------------------------------------------------------------
// Catalog

void Catalog::add_rule(std::string uri_prefix, std::string location) {
  rules_.emplace_back(std::move(uri_prefix), std::move(location));
}

Catalog Catalog::from_text(const std::string& text) {
  Catalog cat;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string keyword, prefix, location;
    ls >> keyword >> prefix >> location;
    if (keyword != "PREFIX" || prefix.empty() || location.empty())
      throw Error(ErrorKind::Usage, "bad catalog line: " + line);
    cat.add_rule(prefix, location);
  }
  return cat;
}

Catalog Catalog::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Usage, "cannot open catalog file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

std::optional<std::string> Catalog::locate(const std::string& uri) const {
  const std::pair<std::string, std::string>* best = nullptr;
  for (const auto& rule : rules_) {
    if (uri.rfind(rule.first, 0) != 0) continue;
    if (!best || rule.first.size() > best->first.size()) best = &rule;
  }
  if (!best) return std::nullopt;
  // the matched prefix is replaced by the location
  return best->second + uri.substr(best->first.size());
}

// ---------------------------------------------------------------------------
// Module reference collection

namespace {

void collect_morphism_refs(const Morphism& m, std::vector<Identifier>& out) {
  switch (m.kind) {
    case Morphism::Kind::Ident:
    case Morphism::Kind::Link:
      out.push_back(m.path.to_module());
      break;
    case Morphism::Kind::Comp:
      for (const auto& f : m.factors) collect_morphism_refs(f, out);
      break;
  }
}

void collect_term_refs(const Term& t, std::vector<Identifier>& out) {
  switch (t.kind) {
    case Term::Kind::Const:
      out.push_back(t.con.to_module());
      break;
    case Term::Kind::App:
      for (const auto& s : t.sub) collect_term_refs(s, out);
      break;
    case Term::Kind::Bind:
      collect_term_refs(t.binder(), out);
      for (const auto& v : t.ctx) {
        if (v.type) collect_term_refs(*v.type, out);
        if (v.def) collect_term_refs(*v.def, out);
      }
      collect_term_refs(t.scope(), out);
      break;
    case Term::Kind::MorphApp:
      collect_term_refs(t.arg(), out);
      collect_morphism_refs(t.morphism(), out);
      break;
    default:
      break;
  }
}

void collect_body_refs(const LinkBody& b, std::vector<Identifier>& out) {
  if (b.definiens) collect_morphism_refs(*b.definiens, out);
  for (const auto& a : b.assignments) {
    if (a.term) collect_term_refs(*a.term, out);
    if (a.morph) collect_morphism_refs(*a.morph, out);
  }
}

std::vector<Identifier> collect_module_refs(const Module& mod) {
  std::vector<Identifier> out;
  if (const auto* thy = std::get_if<TheoryDecl>(&mod)) {
    if (thy->meta) out.push_back(thy->meta->to_module());
    for (const auto& sym : thy->body) {
      if (const auto* con = std::get_if<ConstantDecl>(&sym)) {
        if (con->type) collect_term_refs(*con->type, out);
        if (con->def) collect_term_refs(*con->def, out);
      } else {
        const auto& str = std::get<StructureDecl>(sym);
        out.push_back(str.from.to_module());
        if (str.meta_morph) collect_morphism_refs(*str.meta_morph, out);
        collect_body_refs(str.body, out);
      }
    }
  } else {
    const auto& view = std::get<ViewDecl>(mod);
    out.push_back(view.from.to_module());
    out.push_back(view.to.to_module());
    if (view.meta_morph) collect_morphism_refs(*view.meta_morph, out);
    collect_body_refs(view.body, out);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Library

const Graph& Library::graph() const {
  if (!graph_) graph_ = std::make_shared<Graph>(merged_);
  return *graph_;
}

const Document* Library::find_document(const Identifier& uri) const {
  for (const auto& d : docs_)
    if (d.uri == uri.document()) return &d;
  return nullptr;
}

std::vector<Diagnostic> Library::add_document(const Document& doc, ValidationLevel level) {
  FoundationRegistry reg;
  return add_document(doc, level, reg);
}

std::vector<Diagnostic> Library::add_document(const Document& doc, ValidationLevel level,
                                              const FoundationRegistry& reg) {
  std::vector<Diagnostic> diags;

  // duplicate module identifiers must carry identical declarations
  std::map<std::string, const Module*> existing;
  for (const auto& m : merged_) existing.emplace(module_name(m).str(), &m);
  TheoryGraph candidate = merged_;
  for (const auto& m : doc.graph) {
    auto it = existing.find(module_name(m).str());
    if (it == existing.end()) {
      candidate.push_back(m);
    } else if (!(*it->second == m)) {
      diags.push_back(Diagnostic{Diagnostic::Severity::Error, "Library",
                                 module_name(m).str(),
                                 "module already exists with a different declaration"});
    }
  }
  if (!diags.empty()) return diags;

  if (level != ValidationLevel::XmlOnly) {
    // remote references must be satisfiable from the library
    Graph cg(candidate);
    for (const auto& m : doc.graph) {
      for (const auto& ref : collect_module_refs(m)) {
        if (cg.has_module(ref) || cg.try_link_info(ref)) continue;
        diags.push_back(Diagnostic{Diagnostic::Severity::Error, "UnresolvableReference",
                                   module_name(m).str(),
                                   "reference to unknown module " + ref.str()});
      }
    }
    if (diags.empty()) {
      Checker checker(cg, reg);
      diags = checker.check_graph();
    }
  }
  if (!diags.empty()) return diags;  // rejection is atomic

  docs_.push_back(doc);
  merged_ = std::move(candidate);
  rebuild();
  return diags;
}

std::vector<Diagnostic> Library::ensure_document(const std::string& doc_uri,
                                                 ValidationLevel level,
                                                 const FoundationRegistry& reg) {
  std::vector<std::string> loading;
  std::function<std::vector<Diagnostic>(const std::string&)> go =
      [&](const std::string& uri) -> std::vector<Diagnostic> {
    if (find_document(doc_id(uri))) return {};
    if (std::find(loading.begin(), loading.end(), uri) != loading.end())
      throw Error(ErrorKind::UnresolvableReference,
                  "cyclic inter-document dependency at " + uri);
    auto location = catalog_.locate(uri);
    if (!location)
      throw Error(ErrorKind::UnresolvableReference, "no catalog entry for " + uri);
    std::ifstream in(*location);
    if (!in)
      throw Error(ErrorKind::UnresolvableReference,
                  "cannot open " + *location + " for " + uri);
    std::stringstream buf;
    buf << in.rdbuf();
    loading.push_back(uri);
    ReadResult rr = read_document(buf.str(), &merged_);
    std::vector<Diagnostic> diags = rr.diagnostics;
    // pull dependencies first, in reference order
    for (const auto& mod : rr.doc.graph)
      for (const auto& ref : collect_module_refs(mod)) {
        std::string ref_doc = ref.document().str();
        if (ref_doc != uri && !find_document(ref.document())) {
          auto sub = go(ref_doc);
          diags.insert(diags.end(), sub.begin(), sub.end());
        }
      }
    loading.pop_back();
    auto added = add_document(rr.doc, level, reg);
    diags.insert(diags.end(), added.begin(), added.end());
    return diags;
  };
  return go(doc_uri);
}

// ---------------------------------------------------------------------------
// Atomic queries

QueryResult Library::atomic_query(const Identifier& uri) const {
  const Graph& g = graph();
  QueryResult out{};

  if (!uri.has_module()) {
    const Document* d = find_document(uri);
    if (!d) throw Error(ErrorKind::NotFound, "no document " + uri.str());
    out.kind = QueryResult::Kind::Document;
    out.document = *d;
    return out;
  }

  if (!uri.has_symbol()) {
    if (const TheoryDecl* thy = g.find_theory(uri)) {
      out.kind = QueryResult::Kind::Theory;
      out.theory = *thy;
      return out;
    }
    if (const LinkInfo* li = g.try_link_info(uri)) {
      ViewDecl view;
      view.name = uri.to_module();
      view.from = li->from.to_module();
      view.to = li->to.to_module();
      view.meta_morph = li->meta_morph;
      if (li->is_defined())
        view.body.definiens = li->definiens;
      else
        view.body.assignments = *li->assignments;
      out.kind = QueryResult::Kind::View;
      out.view = std::move(view);
      return out;
    }
    throw Error(ErrorKind::NotFound, "no module " + uri.str());
  }

  // symbol level: g?T?i/c names an induced constant, g?T/i?c an assignment
  if (g.find_theory(uri.to_module())) {
    if (const ConstantInfo* info = g.try_constant(uri.to_module(), uri.symbol)) {
      out.kind = QueryResult::Kind::Constant;
      out.constant = ConstantDecl{uri.symbol, info->type, info->def};
      return out;
    }
    throw Error(ErrorKind::NotFound, "no constant " + uri.str());
  }
  if (g.try_link_info(uri.to_module())) {
    if (auto term = g.try_assignment(uri.to_module(), uri.symbol)) {
      out.kind = QueryResult::Kind::Assignment;
      out.assignment = con_ass(uri.symbol, std::move(*term));
      return out;
    }
    throw Error(ErrorKind::NotFound, "no induced assignment " + uri.str());
  }
  throw Error(ErrorKind::NotFound, "no declaration " + uri.str());
}

std::string QueryResult::to_xml() const {
  switch (kind) {
    case Kind::Document: return write_document(*document);
    case Kind::Theory: return write_module(Module(*theory));
    case Kind::View: return write_module(Module(*view));
    case Kind::Constant: return write_constant_decl(*constant);
    case Kind::Assignment: return write_assignment(*assignment);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Relational index

void Library::index_term(const Term& t, const std::string& relation,
                         const std::string& subject_of) {
  std::function<void(const Term&)> go = [&](const Term& u) {
    switch (u.kind) {
      case Term::Kind::Const:
        relations_.push_back(RelationTriple{u.con.str(), relation, subject_of});
        break;
      case Term::Kind::App:
        for (const auto& s : u.sub) go(s);
        break;
      case Term::Kind::Bind:
        go(u.binder());
        for (const auto& v : u.ctx) {
          if (v.type) go(*v.type);
          if (v.def) go(*v.def);
        }
        go(u.scope());
        break;
      case Term::Kind::MorphApp:
        go(u.arg());
        break;
      default:
        break;
    }
  };
  go(t);
}

void Library::rebuild() {
  graph_.reset();
  relations_.clear();
  for (const auto& doc : docs_) {
    for (const auto& mod : doc.graph) {
      std::string mod_uri = module_name(mod).str();
      relations_.push_back(RelationTriple{doc.uri.str(), "declares", mod_uri});
      if (const auto* thy = std::get_if<TheoryDecl>(&mod)) {
        if (thy->meta)
          relations_.push_back(RelationTriple{mod_uri, "has-meta", thy->meta->str()});
        for (const auto& sym : thy->body) {
          if (const auto* con = std::get_if<ConstantDecl>(&sym)) {
            std::string curi = thy->name.with_symbol(con->name).str();
            relations_.push_back(RelationTriple{mod_uri, "declares", curi});
            if (con->type) index_term(*con->type, "occurs-in-type-of", curi);
            if (con->def) index_term(*con->def, "occurs-in-definiens-of", curi);
          } else {
            const auto& str = std::get<StructureDecl>(sym);
            std::string luri = thy->name.module_child(str.name).str();
            relations_.push_back(RelationTriple{mod_uri, "declares", luri});
            relations_.push_back(RelationTriple{mod_uri, "imports-from", str.from.str()});
            relations_.push_back(RelationTriple{luri, "has-domain", str.from.str()});
            relations_.push_back(RelationTriple{luri, "has-codomain", mod_uri});
            for (const auto& a : str.body.assignments)
              if (a.term)
                index_term(*a.term, "occurs-in-definiens-of",
                           Identifier{thy->name.doc, path_concat(thy->name.module, str.name),
                                      a.name}
                               .str());
          }
        }
      } else {
        const auto& view = std::get<ViewDecl>(mod);
        relations_.push_back(RelationTriple{mod_uri, "has-domain", view.from.str()});
        relations_.push_back(RelationTriple{mod_uri, "has-codomain", view.to.str()});
        for (const auto& a : view.body.assignments)
          if (a.term)
            index_term(*a.term, "occurs-in-definiens-of",
                       view.name.with_symbol(a.name).str());
      }
    }
  }
  std::sort(relations_.begin(), relations_.end());
  relations_.erase(std::unique(relations_.begin(), relations_.end()), relations_.end());
}

std::vector<RelationTriple> Library::query_relations(
    const std::optional<std::string>& subject, const std::optional<std::string>& relation,
    const std::optional<std::string>& object) const {
  std::vector<RelationTriple> out;
  for (const auto& t : relations_) {
    if (subject && t.subject != *subject) continue;
    if (relation && t.relation != *relation) continue;
    if (object && t.object != *object) continue;
    out.push_back(t);
  }
  return out;
}

std::vector<Identifier> Library::deps_closure(const Identifier& module) const {
  const Graph& g = graph();
  // source order index for deterministic tie-breaking
  std::map<std::string, size_t> order;
  for (size_t i = 0; i < merged_.size(); ++i) order.emplace(module_name(merged_[i]).str(), i);

  // normalize a reference to the module that declares it
  auto declaring = [&](const Identifier& ref) -> std::optional<Identifier> {
    if (g.has_module(ref)) return ref.to_module();
    const LocalPath& path = ref.module;
    for (size_t tlen = path.size(); tlen-- > 0;) {
      Identifier tid = ref.with_module(LocalPath(path.begin(), path.begin() + (long)tlen));
      if (g.find_theory(tid)) return tid;
    }
    return std::nullopt;
  };

  std::vector<Identifier> out;
  std::set<std::string> visited;
  std::function<void(const Identifier&)> visit = [&](const Identifier& m) {
    if (!visited.insert(m.str()).second) return;
    const Module* mod = nullptr;
    for (const auto& cand : merged_)
      if (module_name(cand).to_module() == m) mod = &cand;
    if (!mod) return;
    std::vector<Identifier> deps;
    for (const auto& ref : collect_module_refs(*mod))
      if (auto d = declaring(ref); d && !(*d == m)) deps.push_back(*d);
    std::sort(deps.begin(), deps.end(), [&](const Identifier& a, const Identifier& b) {
      return order[a.str()] < order[b.str()];
    });
    deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
    for (const auto& d : deps) visit(d);
    out.push_back(m);
  };
  visit(module.to_module());
  return out;
}

}  // namespace mmt
