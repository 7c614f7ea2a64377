#include "mmt/ids.hpp"

#include <algorithm>
#include <cctype>

namespace mmt {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::MalformedUri: return "MalformedUri";
    case ErrorKind::NoModuleContext: return "NoModuleContext";
    case ErrorKind::UnknownModule: return "UnknownModule";
    case ErrorKind::UnknownConstant: return "UnknownConstant";
    case ErrorKind::UnknownLink: return "UnknownLink";
    case ErrorKind::UnknownStructure: return "UnknownStructure";
    case ErrorKind::NoAssignment: return "NoAssignment";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::CyclicDefinition: return "CyclicDefinition";
    case ErrorKind::IllFormed: return "IllFormed";
    case ErrorKind::XmlSyntax: return "XmlSyntax";
    case ErrorKind::UnresolvableReference: return "UnresolvableReference";
    case ErrorKind::Usage: return "Usage";
  }
  return "Error";
}

namespace {

bool is_hex(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }

int hex_val(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return c - 'A' + 10;
}

// Characters the MMT grammar reserves inside names; they must be %-encoded.
bool is_reserved(char c) {
  switch (c) {
    case '?': case '/': case '#': case '[': case ']': case '@': case '%': return true;
    default: return false;
  }
}

// Raw characters never legal in a URI, escaped on output.
bool needs_uri_escape(unsigned char c) {
  if (c <= 0x20 || c >= 0x7f) return true;
  switch (c) {
    case '"': case '<': case '>': case '\\': case '^': case '`': case '{': case '}':
    case '|': return true;
    default: return false;
  }
}

void append_escaped(std::string& out, unsigned char c) {
  static const char* hex = "0123456789ABCDEF";
  out.push_back('%');
  out.push_back(hex[c >> 4]);
  out.push_back(hex[c & 0xf]);
}

// Decodes one component segment; rejects raw reserved characters.
std::string decode_segment(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '%') {
      if (i + 2 >= s.size() || !is_hex(s[i + 1]) || !is_hex(s[i + 2]))
        throw Error(ErrorKind::MalformedUri, "bad percent escape in '" + std::string(s) + "'");
      out.push_back(static_cast<char>(hex_val(s[i + 1]) * 16 + hex_val(s[i + 2])));
      i += 2;
    } else if (is_reserved(c)) {
      throw Error(ErrorKind::MalformedUri,
                  std::string("unescaped reserved character '") + c + "' in name");
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string encode_segment(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    auto c = static_cast<unsigned char>(ch);
    if (is_reserved(ch) || needs_uri_escape(c))
      append_escaped(out, c);
    else
      out.push_back(ch);
  }
  return out;
}

// Parses a module/symbol component "a/b/c" or relative "/a/b".
std::pair<LocalPath, bool> parse_component(std::string_view s, const char* what) {
  bool relative = false;
  if (!s.empty() && s.front() == '/') {
    relative = true;
    s.remove_prefix(1);
  }
  LocalPath path;
  if (s.empty()) {
    if (relative)
      throw Error(ErrorKind::MalformedUri, std::string("empty relative ") + what + " component");
    return {path, false};
  }
  size_t start = 0;
  while (true) {
    size_t slash = s.find('/', start);
    std::string_view seg =
        slash == std::string_view::npos ? s.substr(start) : s.substr(start, slash - start);
    if (seg.empty())
      throw Error(ErrorKind::MalformedUri, std::string("empty name segment in ") + what);
    path.emplace_back(decode_segment(seg));
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return {path, relative};
}

struct UriParts {
  std::string scheme, authority, path, query, fragment;
  bool has_authority = false, has_query = false, has_fragment = false;
};

UriParts split_uri(std::string_view s) {
  UriParts u;
  auto frag = s.find('#');
  if (frag != std::string_view::npos) {
    u.has_fragment = true;
    u.fragment = std::string(s.substr(frag + 1));
    s = s.substr(0, frag);
  }
  auto query = s.find('?');
  if (query != std::string_view::npos) {
    u.has_query = true;
    u.query = std::string(s.substr(query + 1));
    s = s.substr(0, query);
  }
  // scheme ::= ALPHA (ALPHA / DIGIT / "+" / "-" / ".")* ":"
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
    if (c == ':' && i > 0) {
      u.scheme = std::string(s.substr(0, i));
      s = s.substr(i + 1);
      break;
    }
    if (!ok || (i == 0 && !std::isalpha(static_cast<unsigned char>(c)))) break;
    ++i;
  }
  if (s.substr(0, 2) == "//") {
    u.has_authority = true;
    s = s.substr(2);
    auto end = s.find('/');
    if (end == std::string_view::npos) {
      u.authority = std::string(s);
      s = {};
    } else {
      u.authority = std::string(s.substr(0, end));
      s = s.substr(end);
    }
  }
  u.path = std::string(s);
  return u;
}

std::string join_uri(const UriParts& u) {
  std::string out;
  if (!u.scheme.empty()) {
    out += u.scheme;
    out += ':';
  }
  if (u.has_authority) {
    out += "//";
    out += u.authority;
  }
  out += u.path;
  if (u.has_query) {
    out += '?';
    out += u.query;
  }
  if (u.has_fragment) {
    out += '#';
    out += u.fragment;
  }
  return out;
}

// RFC 3986 section 5.2.4.
std::string remove_dot_segments(std::string_view in) {
  std::string input(in), output;
  while (!input.empty()) {
    if (input.rfind("../", 0) == 0)
      input.erase(0, 3);
    else if (input.rfind("./", 0) == 0)
      input.erase(0, 2);
    else if (input.rfind("/./", 0) == 0)
      input.replace(0, 3, "/");
    else if (input == "/.")
      input = "/";
    else if (input.rfind("/../", 0) == 0) {
      input.replace(0, 4, "/");
      auto cut = output.find_last_of('/');
      output.erase(cut == std::string::npos ? 0 : cut);
    } else if (input == "/..") {
      input = "/";
      auto cut = output.find_last_of('/');
      output.erase(cut == std::string::npos ? 0 : cut);
    } else if (input == "." || input == "..")
      input.clear();
    else {
      size_t next = input.find('/', input.front() == '/' ? 1 : 0);
      if (next == std::string::npos) {
        output += input;
        input.clear();
      } else {
        output += input.substr(0, next);
        input.erase(0, next);
      }
    }
  }
  return output;
}

// RFC 3986 section 5.3 merge.
std::string merge_paths(const UriParts& base, const std::string& ref_path) {
  if (base.has_authority && base.path.empty()) return "/" + ref_path;
  auto cut = base.path.find_last_of('/');
  if (cut == std::string::npos) return ref_path;
  return base.path.substr(0, cut + 1) + ref_path;
}

void validate_doc_component(std::string_view s) {
  if (s.find('#') != std::string_view::npos)
    throw Error(ErrorKind::MalformedUri, "document identifier must not carry a fragment");
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%') {
      if (i + 2 >= s.size() || !is_hex(s[i + 1]) || !is_hex(s[i + 2]))
        throw Error(ErrorKind::MalformedUri, "bad percent escape in document URI");
    }
  }
}

}  // namespace

LocalPath local_path(std::initializer_list<std::string_view> segments) {
  LocalPath p;
  p.reserve(segments.size());
  for (auto s : segments) p.emplace_back(std::string(s));
  return p;
}

std::string path_to_string(const LocalPath& p) {
  std::string out;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) out += '/';
    for (char ch : p[i].str()) {
      if (ch == '%' || ch == '/')
        append_escaped(out, static_cast<unsigned char>(ch));
      else
        out.push_back(ch);
    }
  }
  return out;
}

LocalPath path_from_string(std::string_view s) {
  LocalPath p;
  size_t start = 0;
  if (s.empty()) return p;
  while (true) {
    size_t slash = s.find('/', start);
    std::string_view seg =
        slash == std::string_view::npos ? s.substr(start) : s.substr(start, slash - start);
    if (seg.empty()) throw Error(ErrorKind::MalformedUri, "empty name segment");
    p.emplace_back(percent_decode(seg));
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return p;
}

bool path_starts_with(const LocalPath& p, const LocalPath& prefix) {
  if (prefix.size() > p.size()) return false;
  return std::equal(prefix.begin(), prefix.end(), p.begin());
}

LocalPath path_concat(const LocalPath& a, const LocalPath& b) {
  LocalPath out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

LocalPath path_suffix(const LocalPath& p, const LocalPath& prefix) {
  return LocalPath(p.begin() + static_cast<long>(prefix.size()), p.end());
}

bool uri_has_scheme(std::string_view uri) {
  if (uri.empty() || !std::isalpha(static_cast<unsigned char>(uri[0]))) return false;
  for (size_t i = 1; i < uri.size(); ++i) {
    char c = uri[i];
    if (c == ':') return true;
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.'))
      return false;
  }
  return false;
}

std::string percent_decode(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size() && is_hex(s[i + 1]) && is_hex(s[i + 2])) {
      out.push_back(static_cast<char>(hex_val(s[i + 1]) * 16 + hex_val(s[i + 2])));
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

bool Identifier::is_absolute() const {
  if (module_relative || symbol_relative) return false;
  if (!uri_has_scheme(doc)) return false;
  if (has_symbol() && !has_module()) return false;  // no symbol outside a theory
  return true;
}

std::string Identifier::str() const { return encode_identifier(*this); }

Identifier doc_id(std::string_view uri) { return Identifier{std::string(uri), {}, {}}; }

Identifier module_id(std::string_view uri, std::initializer_list<std::string_view> path) {
  return Identifier{std::string(uri), local_path(path), {}};
}

Identifier symbol_id(std::string_view uri, std::initializer_list<std::string_view> module,
                     std::initializer_list<std::string_view> symbol) {
  return Identifier{std::string(uri), local_path(module), local_path(symbol)};
}

Identifier parse_identifier(std::string_view s) {
  // Split on at most two '?' separators; splitting needs no document context.
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t q = s.find('?', start);
    if (q == std::string_view::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, q - start));
    start = q + 1;
  }
  if (parts.size() > 3)
    throw Error(ErrorKind::MalformedUri, "more than two '?' separators in '" + std::string(s) + "'");

  Identifier id;
  validate_doc_component(parts[0]);
  id.doc = std::string(parts[0]);
  if (parts.size() >= 2) {
    auto [m, rel] = parse_component(parts[1], "module");
    if (rel && !id.doc.empty())
      throw Error(ErrorKind::MalformedUri, "module-relative path after non-empty document");
    id.module = std::move(m);
    id.module_relative = rel;
  }
  if (parts.size() == 3) {
    auto [sym, rel] = parse_component(parts[2], "symbol");
    if (rel && !(id.doc.empty() && id.module.empty()))
      throw Error(ErrorKind::MalformedUri, "symbol-relative path needs empty document and module");
    id.symbol = std::move(sym);
    id.symbol_relative = rel;
  }
  if (id.has_symbol() && !id.has_module() && uri_has_scheme(id.doc))
    throw Error(ErrorKind::MalformedUri, "symbol outside a module in '" + std::string(s) + "'");
  return id;
}

std::string encode_identifier(const Identifier& id) {
  std::string out = id.doc;
  std::string mod;
  if (id.module_relative) mod += '/';
  {
    std::string joined;
    for (size_t i = 0; i < id.module.size(); ++i) {
      if (i) joined += '/';
      joined += encode_segment(id.module[i].str());
    }
    mod += joined;
  }
  std::string sym;
  if (id.symbol_relative) sym += '/';
  for (size_t i = 0; i < id.symbol.size(); ++i) {
    if (i) sym += '/';
    sym += encode_segment(id.symbol[i].str());
  }
  // Trailing but not leading separators are dropped.
  if (!id.symbol.empty() || id.symbol_relative) {
    out += '?';
    out += mod;
    out += '?';
    out += sym;
  } else if (!id.module.empty() || id.module_relative) {
    out += '?';
    out += mod;
  }
  return out;
}

std::string resolve_uri_reference(std::string_view base, std::string_view ref) {
  UriParts b = split_uri(base);
  UriParts r = split_uri(ref);
  UriParts t;
  if (!r.scheme.empty()) {
    t.scheme = r.scheme;
    t.has_authority = r.has_authority;
    t.authority = r.authority;
    t.path = remove_dot_segments(r.path);
    t.has_query = r.has_query;
    t.query = r.query;
  } else {
    if (r.has_authority) {
      t.has_authority = true;
      t.authority = r.authority;
      t.path = remove_dot_segments(r.path);
      t.has_query = r.has_query;
      t.query = r.query;
    } else {
      if (r.path.empty()) {
        t.path = b.path;
        if (r.has_query) {
          t.has_query = true;
          t.query = r.query;
        } else {
          t.has_query = b.has_query;
          t.query = b.query;
        }
      } else {
        if (r.path.front() == '/')
          t.path = remove_dot_segments(r.path);
        else
          t.path = remove_dot_segments(merge_paths(b, r.path));
        t.has_query = r.has_query;
        t.query = r.query;
      }
      t.has_authority = b.has_authority;
      t.authority = b.authority;
    }
    t.scheme = b.scheme;
  }
  t.has_fragment = r.has_fragment;
  t.fragment = r.fragment;
  return join_uri(t);
}

Identifier resolve(const Identifier& base, const Identifier& rel) {
  if (!base.is_absolute())
    throw Error(ErrorKind::IllFormed, "resolution base must be absolute: " + base.str());

  Identifier out;
  if (!rel.doc.empty()) {
    out.doc = resolve_uri_reference(base.doc, rel.doc);
    out.module = rel.module;
    out.symbol = rel.symbol;
  } else if (rel.has_module() || rel.module_relative) {
    out.doc = base.doc;
    out.module = rel.module_relative ? path_concat(base.module, rel.module) : rel.module;
    out.symbol = rel.symbol;
  } else if (rel.has_symbol() || rel.symbol_relative) {
    out.doc = base.doc;
    out.module = base.module;
    out.symbol = rel.symbol_relative ? path_concat(base.symbol, rel.symbol) : rel.symbol;
  } else {
    out = base;
  }
  if (out.has_symbol() && !out.has_module())
    throw Error(ErrorKind::NoModuleContext,
                "resolution of " + rel.str() + " against " + base.str() +
                    " would place a symbol outside a module");
  return out;
}

}  // namespace mmt
