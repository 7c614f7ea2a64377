#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmt/foundations.hpp"

namespace mmt {

enum class ValidationLevel { XmlOnly, Structural, Foundational };

struct Diagnostic {
  enum class Severity { Error, Warning };

  Severity severity = Severity::Error;
  std::string rule;  // inference rule that failed, e.g. TGinstsymb
  std::string at;    // URI of the offending declaration
  std::string message;

  /// Rendered as one machine-parseable line: LEVEL rule=<name> at=<URI> msg=<text>
  std::string render() const;
};

struct MorphismType {
  Identifier from;
  Identifier to;
};

/// Principal type of a morphism: links by lookup, id_T : T -> T, compositions
/// matched end to end modulo the meta-theory co-/contravariance rules.
std::optional<MorphismType> morphism_type(const Graph& g, const Morphism& m,
                                          std::string* error = nullptr);

/// Whether the judgment m : from -> to is derivable (principal type adjusted
/// by TMcontravariant on the domain and TMcovariant on the codomain).
bool morphism_types_as(const Graph& g, const Morphism& m, const Identifier& from,
                       const Identifier& to);

/// Structurally well-formed terms: variables in scope, constants over the
/// home theory or its meta-theories, closed terms moved along morphisms.
bool term_well_formed(const Graph& g, const Identifier& home, const Context& ctx,
                      const Term& t);

/// Validates a theory graph by decomposing it into atomic declarations and
/// replaying the well-formedness rules; never aborts on a diagnostic.
class Checker {
 public:
  Checker(const Graph& g, const FoundationRegistry& reg) : g_(g), reg_(reg) {}

  std::vector<Diagnostic> check_graph();

  /// Diagnostics for the structural well-formedness of a term over a theory.
  std::vector<Diagnostic> check_term(const Identifier& home, const Context& ctx, const Term& t);

  /// Typing of a morphism; failure is reported as a diagnostic.
  std::optional<MorphismType> check_morphism(const Morphism& m,
                                             std::vector<Diagnostic>* diags = nullptr);

  /// Extensional equality of two morphisms from S to T. Fast paths first:
  /// syntactic identity of composition chains and the equational axioms from
  /// defined links and structure assignments; then the elaboration-avoiding
  /// recursion over local constants and structures, whose leaves consult the
  /// foundation of the codomain.
  bool morphisms_equal(const Morphism& a, const Morphism& b, const Identifier& from,
                       const Identifier& to);

  /// A morphism is total if it filters no constant of its domain (after
  /// definitional expansion), recursively including the meta level.
  bool is_total(const Morphism& m);

 private:
  struct LinkContext {
    Identifier link;
    Identifier from;
    Identifier to;
    bool is_structure;
    std::optional<Morphism> meta_morph;
  };

  void check_module(const Module& mod);
  void check_symbol(const TheoryDecl& thy, const Symbol& sym);
  void check_assignment(const LinkContext& lc, const Assignment& ass);
  void check_acyclic();
  const Foundation& foundation_for(const Identifier& theory) const;
  void report(const std::string& rule, const Identifier& at, std::string msg);
  bool equal_morphisms_impl(const Morphism& a, const Morphism& b, const Identifier& from,
                            const Identifier& to, int depth);
  bool rewrite_equal(const std::vector<Morphism>& a, const std::vector<Morphism>& b);

  const Graph& g_;
  const FoundationRegistry& reg_;
  std::vector<Diagnostic> diags_;
};

/// Convenience wrapper: builds the Graph and runs the checker.
std::vector<Diagnostic> check_graph(const TheoryGraph& tg, const FoundationRegistry& reg);
std::vector<Diagnostic> check_graph(const TheoryGraph& tg,
                                    std::shared_ptr<const Foundation> foundation);

}  // namespace mmt
