#include "mmt/elaborate.hpp"

#include <algorithm>

namespace mmt {

namespace {

const LocalPath* symbol_name(const Symbol& s) {
  if (const auto* c = std::get_if<ConstantDecl>(&s)) return &c->name;
  return &std::get<StructureDecl>(s).name;
}

void check_depth(int depth, const Identifier& at) {
  if (depth > kResolutionDepthLimit)
    throw Error(ErrorKind::CyclicDefinition,
                "module reference depth exceeded while resolving " + at.str());
}

}  // namespace

Graph::Graph(const TheoryGraph& tg, bool memoize) : tg_(&tg), memoize_(memoize) {
  build_index();
}

Graph::Graph(TheoryGraph&& tg, bool memoize)
    : owned_(std::make_shared<const TheoryGraph>(std::move(tg))),
      tg_(owned_.get()),
      memoize_(memoize) {
  build_index();
}

void Graph::build_index() {
  for (const auto& mod : *tg_) {
    const Identifier& name = module_name(mod);
    module_index_.emplace(name.str(), &mod);
    if (const auto* thy = std::get_if<TheoryDecl>(&mod)) {
      theories_.push_back(thy);
      TheoryIndex idx;
      idx.decl = thy;
      for (const auto& sym : thy->body) idx.symbols.emplace(path_to_string(*symbol_name(sym)), &sym);
      theory_index_.emplace(name.str(), std::move(idx));
    } else {
      views_.push_back(&std::get<ViewDecl>(mod));
    }
  }
}

bool Graph::has_module(const Identifier& name) const {
  return module_index_.count(name.to_module().str()) > 0;
}

const TheoryDecl* Graph::find_theory(const Identifier& name) const {
  auto it = theory_index_.find(name.to_module().str());
  return it == theory_index_.end() ? nullptr : it->second.decl;
}

const ViewDecl* Graph::find_view(const Identifier& name) const {
  auto it = module_index_.find(name.to_module().str());
  if (it == module_index_.end()) return nullptr;
  return std::get_if<ViewDecl>(it->second);
}

const Graph::TheoryIndex* Graph::theory_index(const Identifier& name) const {
  auto it = theory_index_.find(name.to_module().str());
  return it == theory_index_.end() ? nullptr : &it->second;
}

const TheoryDecl& Graph::theory(const Identifier& name) const {
  const TheoryDecl* t = find_theory(name);
  if (!t) throw Error(ErrorKind::UnknownModule, "no theory " + name.str());
  return *t;
}

std::optional<Identifier> Graph::meta_of(const Identifier& theory_id) const {
  return theory(theory_id).meta;
}

std::vector<Identifier> Graph::meta_chain(const Identifier& theory_id) const {
  std::vector<Identifier> chain;
  const TheoryDecl* t = find_theory(theory_id);
  while (t && t->meta) {
    if (static_cast<int>(chain.size()) > kResolutionDepthLimit)
      throw Error(ErrorKind::CyclicDefinition, "cyclic meta-theory chain at " + theory_id.str());
    chain.push_back(*t->meta);
    t = find_theory(*t->meta);
  }
  return chain;
}

bool Graph::is_meta_ancestor(const Identifier& anc, const Identifier& theory_id) const {
  for (const auto& m : meta_chain(theory_id))
    if (m == anc) return true;
  return false;
}

// Resolution of a link identifier. Declared views match whole; otherwise the
// identifier must decompose as T?i... for a declared theory T whose body
// declares a structure named by a prefix i of the rest; a non-empty remainder
// h names an induced structure with definiens S/h ; T/i.
LinkInfo Graph::resolve_link(const Identifier& link, int depth) const {
  check_depth(depth, link);
  Identifier key = link.to_module();

  if (auto it = module_index_.find(key.str()); it != module_index_.end()) {
    if (const auto* view = std::get_if<ViewDecl>(it->second)) {
      LinkInfo info;
      info.from = view->from;
      info.to = view->to;
      info.is_structure = false;
      if (view->body.is_defined())
        info.definiens = view->body.definiens;  // ELviewdef
      else
        info.assignments = &view->body.assignments;  // ELview
      info.meta_morph = view->meta_morph;
      return info;
    }
    throw Error(ErrorKind::UnknownLink, key.str() + " is a theory, not a link");
  }

  // try every proper prefix of the module path as the containing theory;
  // clash-freeness makes the winner unique
  const LocalPath& path = key.module;
  for (size_t tlen = path.size(); tlen-- > 0;) {
    LocalPath tpath(path.begin(), path.begin() + static_cast<long>(tlen));
    Identifier tid = key.with_module(tpath);
    const TheoryIndex* tidx = theory_index(tid);
    if (!tidx) continue;
    LocalPath rest(path.begin() + static_cast<long>(tlen), path.end());
    // find the declared structure whose name is a prefix of rest
    for (size_t ilen = rest.size(); ilen >= 1; --ilen) {
      LocalPath iname(rest.begin(), rest.begin() + static_cast<long>(ilen));
      auto sit = tidx->symbols.find(path_to_string(iname));
      if (sit == tidx->symbols.end()) continue;
      const auto* str = std::get_if<StructureDecl>(sit->second);
      if (!str) break;  // a constant cannot be dereferenced further
      Identifier this_link = tid.module_child(iname);
      if (ilen == rest.size()) {
        LinkInfo info;
        info.from = str->from;
        info.to = tid;
        info.is_structure = true;
        if (str->body.is_defined())
          info.definiens = str->body.definiens;  // ELstrdef
        else
          info.assignments = &str->body.assignments;  // ELstr
        info.meta_morph = str->meta_morph;
        return info;
      }
      // ELindstr: T?i/h is defined as the composition S/h ; T/i
      LocalPath h(rest.begin() + static_cast<long>(ilen), rest.end());
      Identifier inner_id = str->from.module_child(h);
      LinkInfo inner = resolve_link(inner_id, depth + 1);
      LinkInfo info;
      info.from = inner.from;
      info.to = tid;
      info.is_structure = true;
      info.definiens = morph_comp(morph_link(inner_id), morph_link(this_link));
      return info;
    }
    break;  // longest theory prefix wins; shorter ones would clash
  }
  throw Error(ErrorKind::UnknownLink, "no link " + key.str());
}

LinkInfo Graph::link_info(const Identifier& link) const {
  std::string key = link.to_module().str();
  if (memoize_) {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (auto it = link_cache_.find(key); it != link_cache_.end()) return it->second;
  }
  LinkInfo info = resolve_link(link, 0);
  if (memoize_) {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    link_cache_.emplace(key, info);
  }
  return info;
}

const LinkInfo* Graph::try_link_info(const Identifier& link) const {
  std::string key = link.to_module().str();
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (auto it = link_cache_.find(key); it != link_cache_.end()) return &it->second;
  }
  try {
    LinkInfo info = resolve_link(link, 0);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    return &link_cache_.emplace(key, std::move(info)).first->second;
  } catch (const Error&) {
    return nullptr;
  }
}

// The four rules for induced constants. Qualified names resolve through
// declared structures; the definiens comes from the domain constant
// (ELindcondef), an explicit or induced assignment (ELindconass), or is
// absent when the structure supplies only the default (ELindconelse).
ConstantInfo Graph::resolve_constant(const Identifier& theory_id, const LocalPath& name,
                                     int depth) const {
  check_depth(depth, theory_id.with_symbol(name));
  const TheoryIndex* tidx = theory_index(theory_id);
  if (!tidx) throw Error(ErrorKind::UnknownModule, "no theory " + theory_id.str());

  if (auto it = tidx->symbols.find(path_to_string(name)); it != tidx->symbols.end()) {
    if (const auto* con = std::get_if<ConstantDecl>(it->second))
      return ConstantInfo{con->type, con->def};  // ELcon
    throw Error(ErrorKind::UnknownConstant,
                theory_id.with_symbol(name).str() + " names a structure, not a constant");
  }

  for (size_t ilen = name.size(); ilen >= 1; --ilen) {
    LocalPath iname(name.begin(), name.begin() + static_cast<long>(ilen));
    auto sit = tidx->symbols.find(path_to_string(iname));
    if (sit == tidx->symbols.end()) continue;
    const auto* str = std::get_if<StructureDecl>(sit->second);
    if (!str) break;
    LocalPath rest(name.begin() + static_cast<long>(ilen), name.end());
    if (rest.empty()) break;  // the structure itself is not a constant
    Identifier link = theory_id.module_child(iname);
    ConstantInfo inner = resolve_constant(str->from, rest, depth + 1);
    ConstantInfo out;
    if (inner.type) out.type = morph_app(*inner.type, morph_link(link));
    if (inner.def) {
      out.def = morph_app(*inner.def, morph_link(link));  // ELindcondef
    } else {
      std::optional<Term> ass = resolve_assignment(link, rest, depth + 1);
      Term dflt = mmt::constant(theory_id.with_symbol(name));
      if (ass && !(*ass == dflt)) out.def = std::move(ass);  // ELindconass vs ELindconelse
    }
    return out;
  }
  throw Error(ErrorKind::UnknownConstant, "no constant " + theory_id.with_symbol(name).str());
}

ConstantInfo Graph::constant(const Identifier& theory_id, const LocalPath& name) const {
  std::string key = theory_id.with_symbol(name).str();
  if (memoize_) {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (auto it = constant_cache_.find(key); it != constant_cache_.end()) return it->second;
  }
  ConstantInfo info = resolve_constant(theory_id, name, 0);
  if (memoize_) {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    constant_cache_.emplace(key, info);
  }
  return info;
}

const ConstantInfo* Graph::try_constant(const Identifier& theory_id, const LocalPath& name) const {
  std::string key = theory_id.with_symbol(name).str();
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (auto it = constant_cache_.find(key); it != constant_cache_.end()) return &it->second;
  }
  try {
    ConstantInfo info = resolve_constant(theory_id, name, 0);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    return &constant_cache_.emplace(key, std::move(info)).first->second;
  } catch (const Error&) {
    return nullptr;
  }
}

// The five rules for induced assignments.
std::optional<Term> Graph::resolve_assignment(const Identifier& link, const LocalPath& name,
                                              int depth) const {
  check_depth(depth, link.with_symbol(name));
  LinkInfo li = resolve_link(link, depth);
  ConstantInfo dom_con = resolve_constant(li.from, name, depth + 1);

  if (li.is_defined()) {
    // ELassdeflink: undefined constants are translated along the definiens
    if (dom_con.def) return std::nullopt;
    return morph_app(mmt::constant(li.from.with_symbol(name)), *li.definiens);
  }

  // ELass: an explicit assignment, including filters on defined constants
  for (const auto& a : *li.assignments)
    if (a.kind == Assignment::Kind::Constant && a.name == name) return a.term;

  // ELindass: an assignment to a structure h covers the names h/c
  for (const auto& a : *li.assignments) {
    if (a.kind != Assignment::Kind::Structure) continue;
    if (!path_starts_with(name, a.name) || a.name.size() == name.size()) continue;
    if (dom_con.def) return std::nullopt;  // premise: the imported constant is undefined
    LinkInfo h_link = resolve_link(li.from.module_child(a.name), depth + 1);
    LocalPath rest = path_suffix(name, a.name);
    return morph_app(mmt::constant(h_link.from.with_symbol(rest)), *a.morph);
  }

  if (dom_con.def) return std::nullopt;  // defined constants need no assignment
  if (li.is_structure) {
    // ELdefassstr: default to the induced constant T?i/c
    LocalPath iname = path_suffix(link.to_module().module, li.to.module);
    return mmt::constant(li.to.with_symbol(path_concat(iname, name)));
  }
  return filtered();  // ELdefassview
}

Term Graph::assignment(const Identifier& link, const LocalPath& name) const {
  auto t = resolve_assignment(link, name, 0);
  if (!t)
    throw Error(ErrorKind::NoAssignment,
                "no induced assignment for " + link.with_symbol(name).str());
  return *t;
}

std::optional<Term> Graph::try_assignment(const Identifier& link, const LocalPath& name) const {
  try {
    return resolve_assignment(link, name, 0);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<Identifier> Graph::theory_names() const {
  std::vector<Identifier> out;
  out.reserve(theories_.size());
  for (const auto* t : theories_) out.push_back(t->name);
  return out;
}

std::vector<Identifier> Graph::view_names() const {
  std::vector<Identifier> out;
  out.reserve(views_.size());
  for (const auto* v : views_) out.push_back(v->name);
  return out;
}

std::vector<LocalPath> Graph::constant_names(const Identifier& theory_id) const {
  const TheoryDecl& thy = theory(theory_id);
  std::vector<LocalPath> out;
  for (const auto& sym : thy.body) {
    if (const auto* con = std::get_if<ConstantDecl>(&sym)) {
      out.push_back(con->name);
    } else {
      const auto& str = std::get<StructureDecl>(sym);
      for (const auto& inner : constant_names(str.from))
        out.push_back(path_concat(str.name, inner));
    }
  }
  return out;
}

void Graph::collect_structure_links(const Identifier& theory_id, const LocalPath& prefix,
                                    const Identifier& root, std::vector<Identifier>& out,
                                    int depth) const {
  check_depth(depth, theory_id);
  const TheoryDecl& thy = theory(theory_id);
  for (const auto& sym : thy.body) {
    const auto* str = std::get_if<StructureDecl>(&sym);
    if (!str) continue;
    LocalPath name = path_concat(prefix, str->name);
    out.push_back(root.module_child(name));
    collect_structure_links(str->from, name, root, out, depth + 1);
  }
  // a declared view whose name extends the theory's is a link of it as well,
  // so structures still induce through it after incremental flattening
  if (!prefix.empty()) {
    for (const auto* view : views_) {
      if (!(view->name.document() == thy.name.document())) continue;
      const LocalPath& vm = view->name.module;
      if (vm.size() <= thy.name.module.size()) continue;
      if (!path_starts_with(vm, thy.name.module)) continue;
      out.push_back(root.module_child(path_concat(prefix, path_suffix(vm, thy.name.module))));
    }
  }
}

std::vector<Identifier> Graph::structure_links(const Identifier& theory_id) const {
  std::vector<Identifier> out;
  collect_structure_links(theory_id, {}, theory(theory_id).name.to_module(), out, 0);
  return out;
}

std::vector<Identifier> Graph::link_names() const {
  std::vector<Identifier> out;
  for (const auto& mod : *tg_) {
    if (const auto* thy = std::get_if<TheoryDecl>(&mod)) {
      auto links = structure_links(thy->name);
      out.insert(out.end(), links.begin(), links.end());
    } else {
      out.push_back(std::get<ViewDecl>(mod).name);
    }
  }
  return out;
}

std::vector<LocalPath> Graph::assignment_names(const Identifier& link) const {
  LinkInfo li = link_info(link);
  std::vector<LocalPath> out;
  for (const auto& name : constant_names(li.from))
    if (try_assignment(link, name)) out.push_back(name);
  return out;
}

std::vector<Clash> Graph::clashes() const {
  std::vector<Clash> out;

  // module level: no two declarations i, j with i = j or j = i/j' where the
  // body of i declares j'
  std::unordered_map<std::string, const Module*> seen;
  for (const auto& mod : *tg_) {
    const Identifier name = module_name(mod).to_module();
    auto [it, fresh] = seen.emplace(name.str(), &mod);
    if (!fresh) {
      out.push_back({name, name, "duplicate module declaration"});
      continue;
    }
    const LocalPath& path = name.module;
    for (size_t plen = 1; plen < path.size(); ++plen) {  // proper prefixes only
      LocalPath pre(path.begin(), path.begin() + static_cast<long>(plen));
      Identifier pid = name.with_module(pre);
      const TheoryIndex* tidx = theory_index(pid);
      if (!tidx) continue;
      LocalPath rest(path.begin() + static_cast<long>(plen), path.end());
      // clash iff the body of the prefix theory declares the rest or a prefix
      // of it, which would give the module URI a second resolution; a body
      // name *extending* the rest is fine (a flat graph pairs the view T/i
      // with constants i/c in T)
      for (size_t rlen = 1; rlen <= rest.size(); ++rlen) {
        LocalPath rpre(rest.begin(), rest.begin() + static_cast<long>(rlen));
        if (tidx->symbols.count(path_to_string(rpre))) {
          out.push_back({pid, name, "module name overlaps a declaration in " + pid.str()});
          break;
        }
      }
    }
  }

  // symbol level: within one body, no two declarations i, j with i = j or
  // j = i/j'; the same discipline applies to link bodies
  auto check_names = [&](const Identifier& owner, const std::vector<LocalPath>& names) {
    for (size_t a = 0; a < names.size(); ++a)
      for (size_t b = a + 1; b < names.size(); ++b) {
        const LocalPath &x = names[a], &y = names[b];
        if (x == y) {
          out.push_back({owner.with_symbol(x), owner.with_symbol(y), "duplicate declaration"});
        } else if (path_starts_with(y, x) || path_starts_with(x, y)) {
          out.push_back(
              {owner.with_symbol(x), owner.with_symbol(y), "declaration names overlap"});
        }
      }
  };

  for (const auto& mod : *tg_) {
    if (const auto* thy = std::get_if<TheoryDecl>(&mod)) {
      std::vector<LocalPath> names;
      for (const auto& sym : thy->body) names.push_back(*symbol_name(sym));
      check_names(thy->name, names);
      for (const auto& sym : thy->body)
        if (const auto* str = std::get_if<StructureDecl>(&sym)) {
          std::vector<LocalPath> anames;
          for (const auto& a : str->body.assignments) anames.push_back(a.name);
          check_names(thy->name.module_child(str->name), anames);
        }
    } else {
      const auto& view = std::get<ViewDecl>(mod);
      std::vector<LocalPath> anames;
      for (const auto& a : view.body.assignments) anames.push_back(a.name);
      check_names(view.name, anames);
    }
  }
  return out;
}

}  // namespace mmt
