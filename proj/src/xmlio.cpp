#include "mmt/xmlio.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>

namespace mmt {

// ---------------------------------------------------------------------------
// XML document model

namespace xml {

const std::string* Node::attr(const std::string& n) const {
  for (const auto& [k, v] : attrs)
    if (k == n) return &v;
  return nullptr;
}

const Node* Node::child(const std::string& local) const {
  for (const auto& c : children)
    if (c.name == local) return &c;
  return nullptr;
}

namespace {

struct Parser {
  std::string_view in;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorKind::XmlSyntax, msg + " at offset " + std::to_string(pos));
  }

  bool starts_with(std::string_view s) const { return in.substr(pos, s.size()) == s; }
  char peek() const { return pos < in.size() ? in[pos] : '\0'; }

  void skip_ws() {
    while (pos < in.size() && std::isspace(static_cast<unsigned char>(in[pos]))) ++pos;
  }

  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts_with("<?")) {
        size_t end = in.find("?>", pos);
        if (end == std::string_view::npos) fail("unterminated processing instruction");
        pos = end + 2;
      } else if (starts_with("<!--")) {
        size_t end = in.find("-->", pos);
        if (end == std::string_view::npos) fail("unterminated comment");
        pos = end + 3;
      } else if (starts_with("<!DOCTYPE")) {
        size_t end = in.find('>', pos);
        if (end == std::string::npos) fail("unterminated doctype");
        pos = end + 1;
      } else {
        return;
      }
    }
  }

  std::string name_token() {
    size_t start = pos;
    while (pos < in.size()) {
      char c = in[pos];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
          c == ':' || static_cast<unsigned char>(c) >= 0x80)
        ++pos;
      else
        break;
    }
    if (pos == start) fail("expected a name");
    return std::string(in.substr(start, pos - start));
  }

  std::string decode_entities(std::string_view raw) {
    std::string out;
    for (size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '&') {
        out.push_back(raw[i]);
        continue;
      }
      size_t end = raw.find(';', i);
      if (end == std::string_view::npos) fail("unterminated entity reference");
      std::string ent(raw.substr(i + 1, end - i - 1));
      if (ent == "lt")
        out.push_back('<');
      else if (ent == "gt")
        out.push_back('>');
      else if (ent == "amp")
        out.push_back('&');
      else if (ent == "quot")
        out.push_back('"');
      else if (ent == "apos")
        out.push_back('\'');
      else if (!ent.empty() && ent[0] == '#') {
        long code = ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X')
                        ? std::strtol(ent.c_str() + 2, nullptr, 16)
                        : std::strtol(ent.c_str() + 1, nullptr, 10);
        if (code < 0x80) {
          out.push_back(static_cast<char>(code));
        } else if (code < 0x800) {
          out.push_back(static_cast<char>(0xC0 | (code >> 6)));
          out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else if (code < 0x10000) {
          out.push_back(static_cast<char>(0xE0 | (code >> 12)));
          out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
          out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else {
          out.push_back(static_cast<char>(0xF0 | (code >> 18)));
          out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3F)));
          out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
          out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        }
      } else {
        fail("unknown entity &" + ent + ";");
      }
      i = end;
    }
    return out;
  }

  // prefix -> namespace URI bindings, scoped
  using NsEnv = std::map<std::string, std::string>;

  Node element(const NsEnv& outer) {
    if (peek() != '<') fail("expected element");
    ++pos;
    std::string qname = name_token();

    std::vector<std::pair<std::string, std::string>> raw_attrs;
    for (;;) {
      skip_ws();
      if (starts_with("/>")) {
        pos += 2;
        return finish(qname, std::move(raw_attrs), outer, true);
      }
      if (peek() == '>') {
        ++pos;
        return finish(qname, std::move(raw_attrs), outer, false);
      }
      std::string aname = name_token();
      skip_ws();
      if (peek() != '=') fail("expected '=' after attribute " + aname);
      ++pos;
      skip_ws();
      char quote = peek();
      if (quote != '"' && quote != '\'') fail("expected quoted attribute value");
      ++pos;
      size_t end = in.find(quote, pos);
      if (end == std::string_view::npos) fail("unterminated attribute value");
      raw_attrs.emplace_back(aname, decode_entities(in.substr(pos, end - pos)));
      pos = end + 1;
    }
  }

  Node finish(const std::string& qname, std::vector<std::pair<std::string, std::string>> raw,
              const NsEnv& outer, bool self_closing) {
    NsEnv env = outer;
    Node node;
    for (const auto& [k, v] : raw) {
      if (k == "xmlns")
        env[""] = v;
      else if (k.rfind("xmlns:", 0) == 0)
        env[k.substr(6)] = v;
      else
        node.attrs.emplace_back(k, v);
    }
    auto colon = qname.find(':');
    std::string prefix = colon == std::string::npos ? "" : qname.substr(0, colon);
    node.name = colon == std::string::npos ? qname : qname.substr(colon + 1);
    if (auto it = env.find(prefix); it != env.end()) node.ns = it->second;

    if (self_closing) return node;
    for (;;) {
      size_t text_start = pos;
      while (pos < in.size() && in[pos] != '<') ++pos;
      if (pos >= in.size()) fail("unterminated element " + qname);
      std::string text = decode_entities(in.substr(text_start, pos - text_start));
      if (text.find_first_not_of(" \t\r\n") != std::string::npos) {
        size_t b = text.find_first_not_of(" \t\r\n");
        size_t e = text.find_last_not_of(" \t\r\n");
        node.text += text.substr(b, e - b + 1);
      }
      if (starts_with("</")) {
        pos += 2;
        std::string close = name_token();
        if (close != qname) fail("mismatched close tag " + close + " for " + qname);
        skip_ws();
        if (peek() != '>') fail("expected '>' in close tag");
        ++pos;
        return node;
      }
      if (starts_with("<!--")) {
        size_t end = in.find("-->", pos);
        if (end == std::string_view::npos) fail("unterminated comment");
        pos = end + 3;
        continue;
      }
      node.children.push_back(element(env));
    }
  }
};

void escape_into(std::string& out, const std::string& s, bool attr) {
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"':
        if (attr)
          out += "&quot;";
        else
          out.push_back(c);
        break;
      default: out.push_back(c);
    }
  }
}

void serialize_into(const Node& n, std::string& out, int indent) {
  std::string tag = (n.ns == kMathMlNs ? "m:" : "") + n.name;
  out.append(static_cast<size_t>(indent), ' ');
  out += '<';
  out += tag;
  if (indent == 0) {
    out += " xmlns=\"";
    out += kOmdocNs;
    out += "\" xmlns:m=\"";
    out += kMathMlNs;
    out += '"';
  }
  for (const auto& [k, v] : n.attrs) {
    out += ' ';
    out += k;
    out += "=\"";
    escape_into(out, v, true);
    out += '"';
  }
  if (n.children.empty() && n.text.empty()) {
    out += "/>\n";
    return;
  }
  out += '>';
  if (!n.text.empty() && n.children.empty()) {
    escape_into(out, n.text, false);
    out += "</" + tag + ">\n";
    return;
  }
  out += '\n';
  if (!n.text.empty()) {
    out.append(static_cast<size_t>(indent) + 2, ' ');
    escape_into(out, n.text, false);
    out += '\n';
  }
  for (const auto& c : n.children) serialize_into(c, out, indent + 2);
  out.append(static_cast<size_t>(indent), ' ');
  out += "</" + tag + ">\n";
}

}  // namespace

Node parse(const std::string& text) {
  Parser p{text};
  p.skip_misc();
  Node root = p.element({});
  p.skip_misc();
  if (p.pos != text.size())
    throw Error(ErrorKind::XmlSyntax, "trailing content after the root element");
  return root;
}

std::string serialize(const Node& root) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  serialize_into(root, out, 0);
  return out;
}

}  // namespace xml

// ---------------------------------------------------------------------------
// Writer

namespace {

using xml::Node;

Node omdoc_el(std::string name) {
  Node n;
  n.ns = kOmdocNs;
  n.name = std::move(name);
  return n;
}

Node math_el(std::string name) {
  Node n;
  n.ns = kMathMlNs;
  n.name = std::move(name);
  return n;
}

Node mmt_symbol(const std::string& name) {
  Node n = math_el("csymbol");
  n.attrs.emplace_back("base", kMmtBase);
  n.attrs.emplace_back("cd", "mmt");
  n.attrs.emplace_back("name", name);
  return n;
}

// Accepts both the cd= and module= spellings for the reserved dictionary.
bool is_mmt_symbol(const Node& n, const char* name) {
  if (n.name != "csymbol") return false;
  const std::string* base = n.attr("base");
  if (!base || *base != kMmtBase) return false;
  const std::string* cd = n.attr("cd");
  if (!cd) cd = n.attr("module");
  if (!cd || *cd != "mmt") return false;
  if (const std::string* nm = n.attr("name")) return *nm == name;
  return n.text == name;
}

Node triple_csymbol(const Identifier& id) {
  Node n = math_el("csymbol");
  if (!id.doc.empty()) n.attrs.emplace_back("base", id.doc);
  if (id.has_module()) n.attrs.emplace_back("cd", path_to_string(id.module));
  if (id.has_symbol()) n.text = path_to_string(id.symbol);
  return n;
}

Node encode_morphism(const Morphism& m);

Node encode_term(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Filtered:
      return mmt_symbol("filtered");
    case Term::Kind::Const:
      return triple_csymbol(t.con);
    case Term::Kind::Var: {
      Node n = math_el("ci");
      n.text = t.var;
      return n;
    }
    case Term::Kind::App: {
      Node n = math_el("apply");
      for (const auto& s : t.sub) n.children.push_back(encode_term(s));
      return n;
    }
    case Term::Kind::Bind: {
      Node n = math_el("bind");
      n.children.push_back(encode_term(t.binder()));
      for (const auto& v : t.ctx) {
        Node bvar = math_el("bvar");
        Node ci = math_el("ci");
        ci.attrs.emplace_back("name", v.name.str());
        if (!v.type && !v.def) {
          // no annotations: the semantics wrapper is omitted
          bvar.children.push_back(std::move(ci));
        } else {
          Node sem = math_el("semantics");
          sem.children.push_back(std::move(ci));
          auto annotation = [&](const char* which, const Term& body) {
            Node a = math_el("annotation-xml");
            a.attrs.emplace_back("base", kMmtBase);
            a.attrs.emplace_back("cd", "mmt");
            a.attrs.emplace_back("name", which);
            a.children.push_back(encode_term(body));
            return a;
          };
          if (v.type) sem.children.push_back(annotation("type", *v.type));
          if (v.def) sem.children.push_back(annotation("value", *v.def));
          bvar.children.push_back(std::move(sem));
        }
        n.children.push_back(std::move(bvar));
      }
      n.children.push_back(encode_term(t.scope()));
      return n;
    }
    case Term::Kind::MorphApp: {
      Node n = math_el("apply");
      n.children.push_back(mmt_symbol("morphism-application"));
      n.children.push_back(encode_term(t.arg()));
      n.children.push_back(encode_morphism(t.morphism()));
      return n;
    }
  }
  return math_el("ci");
}

Node encode_morphism(const Morphism& m) {
  switch (m.kind) {
    case Morphism::Kind::Link:
      return triple_csymbol(m.path);
    case Morphism::Kind::Ident: {
      Node n = math_el("apply");
      n.children.push_back(mmt_symbol("identity"));
      n.children.push_back(triple_csymbol(m.path));
      return n;
    }
    case Morphism::Kind::Comp: {
      Node n = math_el("apply");
      n.children.push_back(mmt_symbol("composition"));
      for (const auto& f : m.factors) n.children.push_back(encode_morphism(f));
      return n;
    }
  }
  return math_el("ci");
}

Node encode_assignments(const LinkBody& body, Node into) {
  if (body.definiens) {
    Node def = omdoc_el("definition");
    def.children.push_back(encode_morphism(*body.definiens));
    into.children.push_back(std::move(def));
    return into;
  }
  for (const auto& a : body.assignments) {
    Node n = omdoc_el(a.kind == Assignment::Kind::Constant ? "conass" : "strass");
    n.attrs.emplace_back("name", path_to_string(a.name));
    if (a.term) n.children.push_back(encode_term(*a.term));
    if (a.morph) n.children.push_back(encode_morphism(*a.morph));
    into.children.push_back(std::move(n));
  }
  return into;
}

Node encode_meta_morph(const std::optional<Morphism>& m, Node into) {
  if (m) {
    Node inc = omdoc_el("include");
    inc.children.push_back(encode_morphism(*m));
    into.children.push_back(std::move(inc));
  }
  return into;
}

Node encode_symbol(const Symbol& sym) {
  if (const auto* con = std::get_if<ConstantDecl>(&sym)) {
    Node n = omdoc_el("constant");
    n.attrs.emplace_back("name", path_to_string(con->name));
    if (con->type) {
      Node ty = omdoc_el("type");
      ty.children.push_back(encode_term(*con->type));
      n.children.push_back(std::move(ty));
    }
    if (con->def) {
      Node df = omdoc_el("definition");
      df.children.push_back(encode_term(*con->def));
      n.children.push_back(std::move(df));
    }
    return n;
  }
  const auto& str = std::get<StructureDecl>(sym);
  Node n = omdoc_el("structure");
  n.attrs.emplace_back("name", path_to_string(str.name));
  n.attrs.emplace_back("from", encode_identifier(str.from));
  n = encode_meta_morph(str.meta_morph, std::move(n));
  return encode_assignments(str.body, std::move(n));
}

Node encode_module(const Module& mod) {
  if (const auto* thy = std::get_if<TheoryDecl>(&mod)) {
    Node n = omdoc_el("theory");
    n.attrs.emplace_back("name", path_to_string(thy->name.module));
    if (thy->meta) n.attrs.emplace_back("meta", encode_identifier(*thy->meta));
    for (const auto& sym : thy->body) n.children.push_back(encode_symbol(sym));
    return n;
  }
  const auto& view = std::get<ViewDecl>(mod);
  Node n = omdoc_el("view");
  n.attrs.emplace_back("name", path_to_string(view.name.module));
  n.attrs.emplace_back("from", encode_identifier(view.from));
  n.attrs.emplace_back("to", encode_identifier(view.to));
  n = encode_meta_morph(view.meta_morph, std::move(n));
  return encode_assignments(view.body, std::move(n));
}

}  // namespace

std::string write_document(const Document& doc) {
  Node root = omdoc_el("omdoc");
  root.attrs.emplace_back("base", encode_identifier(doc.uri));
  for (const auto& mod : doc.graph) root.children.push_back(encode_module(mod));
  return xml::serialize(root);
}

std::string write_module(const Module& mod) { return xml::serialize(encode_module(mod)); }

std::string write_constant_decl(const ConstantDecl& c) {
  return xml::serialize(encode_symbol(Symbol(c)));
}

std::string write_assignment(const Assignment& a) {
  LinkBody b;
  b.assignments.push_back(a);
  Node host = encode_assignments(b, omdoc_el("host"));
  return xml::serialize(host.children.front());
}

// ---------------------------------------------------------------------------
// Reader

namespace {

struct Reader {
  std::vector<Diagnostic> diags;
  const TheoryGraph* external;
  TheoryGraph* own = nullptr;  // modules already read from this document

  void warn(const std::string& at, std::string msg) {
    diags.push_back(Diagnostic{Diagnostic::Severity::Warning, "XmlRead", at, std::move(msg)});
  }
  void error(const std::string& at, std::string msg) {
    diags.push_back(Diagnostic{Diagnostic::Severity::Error, "XmlRead", at, std::move(msg)});
  }

  // `base` attributes override the positional base; their value may itself be
  // relative and resolves against the enclosing base. On csymbol the base
  // attribute is the triple's document component, not a scoping override.
  Identifier effective_base(const Node& n, const Identifier& base) {
    if (n.name == "csymbol" || n.name == "annotation-xml") return base;
    const std::string* attr = n.attr("base");
    if (!attr) return base;
    try {
      return resolve(base, parse_identifier(*attr));
    } catch (const Error& e) {
      error(base.str(), std::string("bad base attribute: ") + e.what());
      return base;
    }
  }

  Identifier resolve_ref(const std::string& text, const Identifier& base) {
    return resolve(base, parse_identifier(text));
  }

  const TheoryDecl* find_theory(const Identifier& id) {
    for (const TheoryGraph* tg : {static_cast<const TheoryGraph*>(own), external}) {
      if (!tg) continue;
      for (const auto& mod : *tg)
        if (const auto* t = std::get_if<TheoryDecl>(&mod))
          if (t->name.to_module() == id) return t;
    }
    return nullptr;
  }

  const ViewDecl* find_view(const Identifier& id) {
    for (const TheoryGraph* tg : {static_cast<const TheoryGraph*>(own), external}) {
      if (!tg) continue;
      for (const auto& mod : *tg)
        if (const auto* v = std::get_if<ViewDecl>(&mod))
          if (v->name.to_module() == id) return v;
    }
    return nullptr;
  }

  // Domain of a morphism over the modules seen so far; needed because the
  // base of omega in omega^mu (and of inner composition factors) is dom(mu).
  std::optional<Identifier> morphism_domain(const Morphism& m, int depth = 0) {
    if (depth > 64) return std::nullopt;
    switch (m.kind) {
      case Morphism::Kind::Ident:
        return m.path.to_module();
      case Morphism::Kind::Comp:
        if (m.factors.empty()) return std::nullopt;
        return morphism_domain(m.factors.front(), depth + 1);
      case Morphism::Kind::Link:
        return link_domain(m.path.to_module(), depth);
    }
    return std::nullopt;
  }

  std::optional<Identifier> link_domain(const Identifier& link, int depth) {
    if (const ViewDecl* v = find_view(link)) return v->from.to_module();
    const LocalPath& path = link.module;
    for (size_t tlen = path.size(); tlen-- > 0;) {
      Identifier tid =
          link.with_module(LocalPath(path.begin(), path.begin() + static_cast<long>(tlen)));
      const TheoryDecl* thy = find_theory(tid);
      if (!thy) continue;
      LocalPath rest(path.begin() + static_cast<long>(tlen), path.end());
      for (size_t ilen = rest.size(); ilen >= 1; --ilen) {
        LocalPath iname(rest.begin(), rest.begin() + static_cast<long>(ilen));
        for (const auto& sym : thy->body) {
          const auto* str = std::get_if<StructureDecl>(&sym);
          if (!str || !(str->name == iname)) continue;
          if (ilen == rest.size()) return str->from.to_module();
          return link_domain(
              str->from.to_module().module_child(
                  LocalPath(rest.begin() + static_cast<long>(ilen), rest.end())),
              depth + 1);
        }
      }
      break;
    }
    return std::nullopt;
  }

  // -- objects ---------------------------------------------------------------

  Identifier csymbol_identifier(const Node& n, const Identifier& base) {
    if (n.name != "csymbol")
      throw Error(ErrorKind::XmlSyntax, "expected csymbol, found " + n.name);
    Identifier rel;
    if (const std::string* b = n.attr("base")) rel.doc = *b;
    const std::string* cd = n.attr("cd");
    if (!cd) cd = n.attr("module");
    auto component = [](const std::string& text, LocalPath* path, bool* relative) {
      std::string_view body = text;
      if (!body.empty() && body.front() == '/') {
        *relative = true;
        body.remove_prefix(1);
      }
      *path = path_from_string(body);
    };
    if (cd) component(*cd, &rel.module, &rel.module_relative);
    if (!n.text.empty()) component(n.text, &rel.symbol, &rel.symbol_relative);
    return resolve(base, rel);
  }

  Morphism read_morphism(const Node& n, const Identifier& base) {
    if (n.name == "csymbol") return morph_link(csymbol_identifier(n, base).to_module());
    if (n.name == "apply" && !n.children.empty()) {
      const Node& head = n.children.front();
      if (is_mmt_symbol(head, "identity")) {
        if (n.children.size() != 2)
          throw Error(ErrorKind::XmlSyntax, "identity expects one operand");
        return morph_ident(csymbol_identifier(n.children[1], base).to_module());
      }
      if (is_mmt_symbol(head, "composition")) {
        // factors resolve right to left: each one's base is the domain of its successor
        std::vector<Morphism> factors(n.children.size() - 1);
        Identifier cur = base;
        for (size_t i = n.children.size(); i-- > 1;) {
          factors[i - 1] = read_morphism(n.children[i], cur);
          if (auto dom = morphism_domain(factors[i - 1]))
            cur = *dom;
          else if (i > 1)
            warn(base.str(), "cannot resolve the domain of a composition factor");
        }
        return morph_comp(std::move(factors));
      }
    }
    throw Error(ErrorKind::XmlSyntax, "expected a morphism, found element " + n.name);
  }

  Term read_term(const Node& n, const Identifier& base) {
    if (n.name == "ci") {
      const std::string* nm = n.attr("name");
      return var(nm ? *nm : n.text);
    }
    if (n.name == "csymbol") {
      if (is_mmt_symbol(n, "filtered")) return filtered();
      Identifier id = csymbol_identifier(n, base);
      if (!id.has_symbol())
        throw Error(ErrorKind::XmlSyntax, "module identifier in term position: " + id.str());
      return constant(std::move(id));
    }
    if (n.name == "apply") {
      if (n.children.empty()) throw Error(ErrorKind::XmlSyntax, "empty apply");
      if (is_mmt_symbol(n.children.front(), "morphism-application")) {
        if (n.children.size() != 3)
          throw Error(ErrorKind::XmlSyntax, "morphism-application expects two operands");
        Morphism m = read_morphism(n.children[2], base);
        Identifier arg_base = base;
        if (auto dom = morphism_domain(m))
          arg_base = *dom;
        else
          warn(base.str(), "cannot resolve the domain of an applied morphism");
        return morph_app(read_term(n.children[1], arg_base), std::move(m));
      }
      std::vector<Term> args;
      for (size_t i = 1; i < n.children.size(); ++i)
        args.push_back(read_term(n.children[i], base));
      return app(read_term(n.children.front(), base), std::move(args));
    }
    if (n.name == "bind") {
      if (n.children.size() < 2)
        throw Error(ErrorKind::XmlSyntax, "bind needs a binder and a scope");
      Term binder = read_term(n.children.front(), base);
      Context ctx;
      for (size_t i = 1; i + 1 < n.children.size(); ++i) {
        if (n.children[i].name != "bvar")
          throw Error(ErrorKind::XmlSyntax, "expected bvar in bind");
        ctx.push_back(read_bvar(n.children[i], base));
      }
      Term scope = read_term(n.children.back(), base);
      return bind(std::move(binder), std::move(ctx), std::move(scope));
    }
    throw Error(ErrorKind::XmlSyntax, "expected a term, found element " + n.name);
  }

  VarDecl read_bvar(const Node& bvar, const Identifier& base) {
    const Node* sem = bvar.child("semantics");
    const Node* ci = sem ? sem->child("ci") : bvar.child("ci");
    if (!ci) throw Error(ErrorKind::XmlSyntax, "bvar without a variable name");
    VarDecl v;
    const std::string* nm = ci->attr("name");
    v.name = Name(nm ? *nm : ci->text);
    if (sem) {
      for (const auto& ann : sem->children) {
        if (ann.name != "annotation-xml") continue;
        const std::string* which = ann.attr("name");
        if (!which || ann.children.empty()) continue;
        Term body = read_term(ann.children.front(), base);
        if (*which == "type")
          v.type = std::move(body);
        else if (*which == "value")
          v.def = std::move(body);
      }
    }
    return v;
  }

  // -- structural levels -------------------------------------------------------

  LinkBody read_link_body(const Node& n, const Identifier& term_base,
                          std::optional<Morphism>* meta_morph, const Identifier& morph_base) {
    LinkBody body;
    for (const auto& c : n.children) {
      try {
        if (c.name == "include") {
          if (!c.children.empty()) *meta_morph = read_morphism(c.children.front(), morph_base);
        } else if (c.name == "definition") {
          if (!c.children.empty())
            body.definiens = read_morphism(c.children.front(), morph_base);
        } else if (c.name == "conass") {
          const std::string* nm = c.attr("name");
          if (!nm || c.children.empty()) {
            error(term_base.str(), "conass needs a name and a term");
            continue;
          }
          Identifier cb = effective_base(c, term_base);
          body.assignments.push_back(
              con_ass(path_from_string(*nm), read_term(c.children.front(), cb)));
        } else if (c.name == "strass") {
          const std::string* nm = c.attr("name");
          if (!nm || c.children.empty()) {
            error(term_base.str(), "strass needs a name and a morphism");
            continue;
          }
          Identifier cb = effective_base(c, term_base);
          body.assignments.push_back(
              str_ass(path_from_string(*nm), read_morphism(c.children.front(), cb)));
        } else {
          warn(term_base.str(), "skipping unknown element " + c.name);
        }
      } catch (const Error& e) {
        error(term_base.str(), e.what());
      }
    }
    return body;
  }

  std::optional<Symbol> read_symbol(const Node& n, const Identifier& theory_base) {
    if (n.name == "constant") {
      const std::string* nm = n.attr("name");
      if (!nm) {
        error(theory_base.str(), "constant without name");
        return std::nullopt;
      }
      Identifier base = effective_base(n, theory_base);
      ConstantDecl c;
      c.name = path_from_string(*nm);
      if (const Node* ty = n.child("type"); ty && !ty->children.empty())
        c.type = read_term(ty->children.front(), effective_base(*ty, base));
      if (const Node* df = n.child("definition"); df && !df->children.empty())
        c.def = read_term(df->children.front(), effective_base(*df, base));
      return Symbol(std::move(c));
    }
    if (n.name == "structure") {
      const std::string* nm = n.attr("name");
      const std::string* from = n.attr("from");
      if (!nm || !from) {
        error(theory_base.str(), "structure needs name and from");
        return std::nullopt;
      }
      Identifier base = effective_base(n, theory_base);
      StructureDecl s;
      s.name = path_from_string(*nm);
      s.from = resolve_ref(*from, base).to_module();
      // assignments in a structure live in the containing theory
      s.body = read_link_body(n, base, &s.meta_morph, base);
      return Symbol(std::move(s));
    }
    warn(theory_base.str(), "skipping unknown element " + n.name);
    return std::nullopt;
  }

  Document read(const Node& root) {
    if (root.name != "omdoc") throw Error(ErrorKind::XmlSyntax, "root element must be omdoc");
    const std::string* base_attr = root.attr("base");
    if (!base_attr) throw Error(ErrorKind::XmlSyntax, "omdoc element without base attribute");
    Document doc;
    doc.uri = parse_identifier(*base_attr).document();
    if (!doc.uri.is_absolute())
      throw Error(ErrorKind::XmlSyntax, "document URI must be absolute: " + doc.uri.str());
    own = &doc.graph;

    for (const auto& mod : root.children) {
      Identifier base = effective_base(mod, doc.uri);
      if (mod.name == "theory") {
        const std::string* nm = mod.attr("name");
        if (!nm) {
          error(doc.uri.str(), "theory without name");
          continue;
        }
        TheoryDecl thy;
        thy.name = base.document().with_module(path_from_string(*nm));
        if (const std::string* meta = mod.attr("meta")) {
          try {
            thy.meta = resolve_ref(*meta, base).to_module();
          } catch (const Error& e) {
            error(thy.name.str(), e.what());
          }
        }
        Identifier tbase = thy.name;  // symbols resolve against the containing theory
        for (const auto& c : mod.children) {
          try {
            if (auto sym = read_symbol(c, tbase)) thy.body.push_back(std::move(*sym));
          } catch (const Error& e) {
            error(thy.name.str(), e.what());
          }
        }
        doc.graph.push_back(std::move(thy));
      } else if (mod.name == "view") {
        const std::string* nm = mod.attr("name");
        const std::string* from = mod.attr("from");
        const std::string* to = mod.attr("to");
        if (!nm || !from || !to) {
          error(doc.uri.str(), "view needs name, from, and to");
          continue;
        }
        ViewDecl view;
        view.name = base.document().with_module(path_from_string(*nm));
        try {
          view.from = resolve_ref(*from, base).to_module();
          view.to = resolve_ref(*to, base).to_module();
        } catch (const Error& e) {
          error(view.name.str(), e.what());
          continue;
        }
        // assignment terms are checked against, and resolve in, the codomain;
        // the definiens and meta-morphism inherit the view's own base
        view.body = read_link_body(mod, view.to, &view.meta_morph, base);
        doc.graph.push_back(std::move(view));
      } else {
        warn(doc.uri.str(), "skipping unknown element " + mod.name);
      }
    }
    return doc;
  }
};

}  // namespace

ReadResult read_document(const std::string& xml_text, const TheoryGraph* external) {
  xml::Node root = xml::parse(xml_text);
  Reader reader{{}, external};
  ReadResult out;
  out.doc = reader.read(root);
  out.diagnostics = std::move(reader.diags);
  return out;
}

}  // namespace mmt
