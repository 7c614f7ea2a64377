#pragma once

#include <string>
#include <vector>

#include "mmt/ast.hpp"
#include "mmt/check.hpp"

namespace mmt {

namespace xml {

/// Minimal namespace-aware XML document model; just enough for the omdoc
/// encoding plus MathML terms.
struct Node {
  std::string ns;    // resolved namespace URI
  std::string name;  // local name
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<Node> children;
  std::string text;  // concatenated character data

  const std::string* attr(const std::string& name) const;
  const Node* child(const std::string& local) const;
};

Node parse(const std::string& text);              // throws Error(XmlSyntax)
std::string serialize(const Node& root);

}  // namespace xml

inline constexpr const char* kOmdocNs = "http://www.omdoc.org/ns/omdoc";
inline constexpr const char* kMathMlNs = "http://www.w3.org/1998/Math/MathML";
/// Reserved dictionary for the MMT primitives (filtered, identity,
/// composition, morphism-application, type, value).
inline constexpr const char* kMmtBase = "http://cds.omdoc.org/omdoc/mmt.omdoc";

/// Document writer: the inverse of read_document, emitting absolute
/// identifiers and a fixed attribute order.
std::string write_document(const Document& doc);

struct ReadResult {
  Document doc;
  std::vector<Diagnostic> diagnostics;
};

/// Reads the XML encoding back into an AST. Relative identifiers are resolved
/// against the base of their position (document, containing theory, codomain
/// of the link, domain of an applied morphism), with explicit `base`
/// attributes overriding. Modules already known to the caller can be supplied
/// for resolving the domains of cross-document morphisms. Unknown elements
/// produce diagnostics and are skipped.
ReadResult read_document(const std::string& xml_text, const TheoryGraph* external = nullptr);

/// XML fragments for single declarations (used by atomic query output).
std::string write_module(const Module& mod);
std::string write_constant_decl(const ConstantDecl& c);
std::string write_assignment(const Assignment& a);

}  // namespace mmt
