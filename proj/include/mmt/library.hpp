#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mmt/check.hpp"
#include "mmt/xmlio.hpp"

namespace mmt {

/// Ordered prefix rules translating MMT URIs into physical locations
/// (filesystem paths or remote endpoints). Longest prefix wins.
class Catalog {
 public:
  void add_rule(std::string uri_prefix, std::string location);
  /// Parses the line-oriented format: `PREFIX <uri-prefix> <location>`.
  /// Blank lines and lines starting with '#' are skipped.
  static Catalog from_file(const std::string& path);
  static Catalog from_text(const std::string& text);

  std::optional<std::string> locate(const std::string& uri) const;
  size_t size() const { return rules_.size(); }

 private:
  std::vector<std::pair<std::string, std::string>> rules_;
};

/// Result of an atomic query: the single declaration a URI identifies.
struct QueryResult {
  enum class Kind { Document, Theory, View, Constant, Assignment };
  Kind kind;
  std::optional<Document> document;
  std::optional<TheoryDecl> theory;
  std::optional<ViewDecl> view;       // links, including structures and induced links
  std::optional<ConstantDecl> constant;
  std::optional<Assignment> assignment;

  std::string to_xml() const;
};

struct RelationTriple {
  std::string subject;
  std::string relation;  // occurs-in-type-of, occurs-in-definiens-of, has-domain,
                         // has-codomain, has-meta, declares, imports-from
  std::string object;

  bool operator==(const RelationTriple&) const = default;
  auto operator<=>(const RelationTriple&) const = default;
};

/// A collection of documents with a catalog, a merged theory-graph view, a
/// relational index, and validate-on-commit semantics: a rejected add leaves
/// the library untouched.
class Library {
 public:
  explicit Library(Catalog catalog = {}) : catalog_(std::move(catalog)) {}

  const Catalog& catalog() const { return catalog_; }
  Catalog& catalog() { return catalog_; }

  /// Validates the document against the current library at the given level
  /// and commits it if clean. Duplicate module URIs must carry identical
  /// declarations. Returns the diagnostics; empty means accepted.
  std::vector<Diagnostic> add_document(const Document& doc, ValidationLevel level,
                                       const FoundationRegistry& reg);
  std::vector<Diagnostic> add_document(const Document& doc, ValidationLevel level);

  /// Loads the document for a URI through the catalog (recursively pulling
  /// its dependencies) unless it is already present.
  std::vector<Diagnostic> ensure_document(const std::string& doc_uri, ValidationLevel level,
                                          const FoundationRegistry& reg);

  size_t document_count() const { return docs_.size(); }
  const Document* find_document(const Identifier& uri) const;
  const TheoryGraph& merged_graph() const { return merged_; }
  const Graph& graph() const;

  /// URI-indexed retrieval of a single (possibly induced) declaration.
  QueryResult atomic_query(const Identifier& uri) const;  // throws NotFound

  /// Pattern match over the relational index; nullopt components match anything.
  std::vector<RelationTriple> query_relations(const std::optional<std::string>& subject,
                                              const std::optional<std::string>& relation,
                                              const std::optional<std::string>& object) const;
  const std::vector<RelationTriple>& relations() const { return relations_; }

  /// Transitive closure of the structural dependency relation, in dependency
  /// order ending at the module itself; suitable for generating a
  /// self-contained document.
  std::vector<Identifier> deps_closure(const Identifier& module) const;

 private:
  void rebuild();
  void index_term(const Term& t, const std::string& subject_type_of,
                  const std::string& subject);

  Catalog catalog_;
  std::vector<Document> docs_;
  TheoryGraph merged_;
  mutable std::shared_ptr<Graph> graph_;
  std::vector<RelationTriple> relations_;
};

}  // namespace mmt
