#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mmt/ast.hpp"

namespace mmt {

/// Result of looking up a link: l is a link from `from` to `to` with a
/// definiens morphism or a list of assignments.
struct LinkInfo {
  Identifier from;
  Identifier to;
  bool is_structure = false;
  std::optional<Morphism> definiens;              // set for defined and induced links
  const std::vector<Assignment>* assignments = nullptr;  // set for links with a body
  std::optional<Morphism> meta_morph;

  bool is_defined() const { return definiens.has_value(); }
};

/// Induced or declared constant of a theory.
struct ConstantInfo {
  std::optional<Term> type;
  std::optional<Term> def;
};

struct Clash {
  Identifier first;
  Identifier second;
  std::string reason;
};

/// Read-only elaboration view over an immutable theory graph snapshot.
///
/// Lookups resolve qualified identifiers through declared structures only;
/// results are memoized per graph instance (single-writer cache behind a
/// mutex, so concurrent readers are fine).
class Graph {
 public:
  explicit Graph(const TheoryGraph& tg, bool memoize = true);
  /// Owning overload: keeps a temporary graph alive for the Graph's lifetime.
  explicit Graph(TheoryGraph&& tg, bool memoize = true);

  const TheoryGraph& modules() const { return *tg_; }

  // -- module level -------------------------------------------------------

  bool has_module(const Identifier& name) const;
  const TheoryDecl* find_theory(const Identifier& name) const;
  const ViewDecl* find_view(const Identifier& name) const;

  /// Body and meta-theory of a declared theory.
  const TheoryDecl& theory(const Identifier& name) const;  // throws UnknownModule
  std::optional<Identifier> meta_of(const Identifier& theory) const;
  /// Meta-theory chain of a theory, nearest first; cycle-guarded.
  std::vector<Identifier> meta_chain(const Identifier& theory) const;
  bool is_meta_ancestor(const Identifier& anc, const Identifier& theory) const;

  /// Resolves a link identifier: declared views, declared structures T/i and
  /// induced structures T/i/h (defined as the composition S/h ; T/i).
  LinkInfo link_info(const Identifier& link) const;  // throws UnknownModule/UnknownLink
  const LinkInfo* try_link_info(const Identifier& link) const;

  // -- symbol level --------------------------------------------------------

  /// The induced constant of T named by the (possibly qualified) path.
  ConstantInfo constant(const Identifier& theory, const LocalPath& name) const;
  const ConstantInfo* try_constant(const Identifier& theory, const LocalPath& name) const;

  /// The induced assignment of a link for an undefined domain constant (or an
  /// explicit assignment, including filters on defined constants).
  Term assignment(const Identifier& link, const LocalPath& name) const;
  std::optional<Term> try_assignment(const Identifier& link, const LocalPath& name) const;

  // -- enumeration ---------------------------------------------------------

  std::vector<Identifier> theory_names() const;      // declaration order
  std::vector<Identifier> view_names() const;        // declaration order
  /// All valid constant names of a theory (local and induced), in structure
  /// expansion order.
  std::vector<LocalPath> constant_names(const Identifier& theory) const;
  /// All valid links rooted at a theory: declared structures T/i and induced
  /// structures T/i/h, recursively.
  std::vector<Identifier> structure_links(const Identifier& theory) const;
  /// Every valid link of the graph: views plus structure links of all theories.
  std::vector<Identifier> link_names() const;
  /// Constants of the domain for which the link has a valid assignment.
  std::vector<LocalPath> assignment_names(const Identifier& link) const;

  // -- well-formedness prerequisites ---------------------------------------

  std::vector<Clash> clashes() const;
  bool is_clash_free() const { return clashes().empty(); }

 private:
  struct TheoryIndex {
    const TheoryDecl* decl;
    // declared symbol lookup by rendered path
    std::unordered_map<std::string, const Symbol*> symbols;
  };

  void build_index();
  const TheoryIndex* theory_index(const Identifier& name) const;
  LinkInfo resolve_link(const Identifier& link, int depth) const;
  ConstantInfo resolve_constant(const Identifier& theory, const LocalPath& name,
                                int depth) const;
  std::optional<Term> resolve_assignment(const Identifier& link, const LocalPath& name,
                                         int depth) const;
  void collect_structure_links(const Identifier& theory, const LocalPath& prefix,
                               const Identifier& root, std::vector<Identifier>& out,
                               int depth) const;

  std::shared_ptr<const TheoryGraph> owned_;
  const TheoryGraph* tg_;
  bool memoize_;

  std::unordered_map<std::string, const Module*> module_index_;
  std::unordered_map<std::string, TheoryIndex> theory_index_;
  std::vector<const TheoryDecl*> theories_;
  std::vector<const ViewDecl*> views_;

  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<std::string, LinkInfo> link_cache_;
  mutable std::unordered_map<std::string, ConstantInfo> constant_cache_;
};

/// Depth bound for qualified-name resolution; exceeding it means the module
/// reference graph is cyclic.
inline constexpr int kResolutionDepthLimit = 256;

}  // namespace mmt
