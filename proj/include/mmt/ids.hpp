#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "mmt/errors.hpp"

namespace mmt {

/// One segment of a qualified identifier. Stores the percent-decoded text;
/// re-escaping happens when an identifier is rendered as a URI string.
/// Invariant: non-empty.
class Name {
 public:
  Name() = default;  // empty placeholder for containers; not a valid name
  explicit Name(std::string text) : text_(std::move(text)) {
    if (text_.empty()) throw Error(ErrorKind::MalformedUri, "empty name segment");
  }

  const std::string& str() const { return text_; }
  bool operator==(const Name&) const = default;
  auto operator<=>(const Name&) const = default;

 private:
  std::string text_;
};

/// Qualified local identifier: a non-empty list of names (c, i, add/mon/comp).
/// An empty vector stands for the absent component of an identifier triple.
using LocalPath = std::vector<Name>;

LocalPath local_path(std::initializer_list<std::string_view> segments);
/// Renders with '/' separators; within a segment only '%' and '/' are escaped
/// (the escape used when a path flows into an XML name attribute).
std::string path_to_string(const LocalPath& p);
LocalPath path_from_string(std::string_view s);
bool path_starts_with(const LocalPath& p, const LocalPath& prefix);
LocalPath path_concat(const LocalPath& a, const LocalPath& b);
/// p minus a leading prefix; precondition: path_starts_with(p, prefix).
LocalPath path_suffix(const LocalPath& p, const LocalPath& prefix);

/// An MMT identifier: the triple (document URI, module path, symbol path).
/// Absent components read as epsilon. The two relative flags mark the written
/// forms ?/I (module-relative) and ??/I (symbol-relative).
struct Identifier {
  std::string doc;  // URI reference without query/fragment, possibly empty
  LocalPath module;
  LocalPath symbol;
  bool module_relative = false;
  bool symbol_relative = false;

  // Equality is structural on the decoded triple, never on URI spellings.
  bool operator==(const Identifier&) const = default;
  auto operator<=>(const Identifier&) const = default;

  bool empty() const {
    return doc.empty() && module.empty() && symbol.empty() && !module_relative &&
           !symbol_relative;
  }
  bool has_module() const { return !module.empty(); }
  bool has_symbol() const { return !symbol.empty(); }
  bool is_absolute() const;

  /// Drop the symbol component (module identifier of a symbol identifier).
  Identifier to_module() const { return Identifier{doc, module, {}, module_relative, false}; }
  /// Drop module and symbol (containing document).
  Identifier document() const { return Identifier{doc, {}, {}, false, false}; }
  Identifier with_symbol(LocalPath s) const {
    return Identifier{doc, module, std::move(s), module_relative, false};
  }
  Identifier with_module(LocalPath m) const {
    return Identifier{doc, std::move(m), {}, false, false};
  }
  /// Extends the module path: the link T/i of a structure i declared in T.
  Identifier module_child(const LocalPath& extra) const {
    return Identifier{doc, path_concat(module, extra), {}, module_relative, false};
  }

  std::string str() const;
};

/// Builders for the common absolute forms.
Identifier doc_id(std::string_view uri);
Identifier module_id(std::string_view uri, std::initializer_list<std::string_view> path);
Identifier symbol_id(std::string_view uri, std::initializer_list<std::string_view> module,
                     std::initializer_list<std::string_view> symbol);

/// Splits on at most two '?' separators and percent-decodes the name segments.
/// Identifiers are parseable locally: no document context is consulted.
Identifier parse_identifier(std::string_view s);

/// Inverse of parse_identifier; trailing but not leading '?' separators are
/// dropped, reserved characters are re-escaped.
std::string encode_identifier(const Identifier& id);

/// Resolution of a relative identifier against an absolute base, following
/// the four-way case split on which components of the reference are empty.
/// Throws NoModuleContext when the result would place a symbol outside a
/// module, i.e. (G, epsilon, s).
Identifier resolve(const Identifier& base, const Identifier& rel);

/// RFC 3986 reference resolution (sections 5.2.2-5.2.4), no shortcuts.
std::string resolve_uri_reference(std::string_view base, std::string_view ref);

/// True if the string carries a URI scheme ("http:", "urn:", ...).
bool uri_has_scheme(std::string_view uri);

std::string percent_decode(std::string_view s);

}  // namespace mmt
