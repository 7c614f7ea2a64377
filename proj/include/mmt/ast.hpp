#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mmt/ids.hpp"

namespace mmt {

struct Term;

/// Morphisms: identity, a link (view or structure), or a diagrammatic
/// composition chain. Comp factors are kept flat; first factor applies first.
struct Morphism {
  enum class Kind { Ident, Link, Comp };

  Kind kind = Kind::Ident;
  Identifier path;                // Ident: theory; Link: link identifier
  std::vector<Morphism> factors;  // Comp only; each factor is Ident or Link

  bool operator==(const Morphism&) const = default;

  bool is_identity() const { return kind == Kind::Ident; }
  bool is_link() const { return kind == Kind::Link; }
  bool is_composition() const { return kind == Kind::Comp; }

  /// Right-nested chains are normalized to a flat factor list with identities
  /// dropped; used wherever morphisms are compared syntactically.
  std::vector<Morphism> canonical_factors() const;

  std::string str() const;
};

Morphism morph_ident(Identifier theory);
Morphism morph_link(Identifier link);
Morphism morph_comp(Morphism first, Morphism then);
Morphism morph_comp(std::vector<Morphism> factors);

struct VarDecl;
/// Ordered variable declarations; later declarations shadow earlier ones.
using Context = std::vector<VarDecl>;

/// OpenMath-style term tree.
struct Term {
  enum class Kind {
    Filtered,  // the special term for filtered knowledge
    Const,     // reference to a constant T?c
    Var,       // bound variable
    App,       // application of a head to >= 1 arguments
    Bind,      // binder, variable context, scope
    MorphApp,  // term moved along a morphism
  };

  Kind kind = Kind::Filtered;
  Identifier con;           // Const
  std::string var;          // Var
  std::vector<Term> sub;    // App: [head, args...]; Bind: [binder, scope]; MorphApp: [arg]
  Context ctx;              // Bind
  std::vector<Morphism> morph;  // MorphApp; singleton (vector sidesteps recursion limits)

  bool operator==(const Term&) const = default;

  bool is_filtered() const { return kind == Kind::Filtered; }

  const Term& head() const { return sub.front(); }  // App
  const Term& binder() const { return sub[0]; }     // Bind
  const Term& scope() const { return sub[1]; }      // Bind
  const Term& arg() const { return sub[0]; }        // MorphApp
  const Morphism& morphism() const { return morph.front(); }

  std::string str() const;
};

struct VarDecl {
  Name name;
  std::optional<Term> type;
  std::optional<Term> def;

  bool operator==(const VarDecl&) const = default;
};

Term filtered();
Term constant(Identifier id);
Term var(std::string_view name);
Term app(Term head, std::vector<Term> args);
Term bind(Term binder, Context ctx, Term scope);
Term morph_app(Term arg, Morphism m);

/// A constant declaration c [: type] [= definiens]. The name may be qualified
/// (deep induced constants are first-class declarations).
struct ConstantDecl {
  LocalPath name;
  std::optional<Term> type;
  std::optional<Term> def;

  bool operator==(const ConstantDecl&) const = default;
};

/// Assignment inside a link body: c |-> term or i |-> morphism.
struct Assignment {
  enum class Kind { Constant, Structure };

  Kind kind = Kind::Constant;
  LocalPath name;
  std::optional<Term> term;      // Constant
  std::optional<Morphism> morph; // Structure

  bool operator==(const Assignment&) const = default;
};

Assignment con_ass(LocalPath name, Term t);
Assignment str_ass(LocalPath name, Morphism m);

/// Body of a view or structure: either a list of assignments or a defining
/// morphism; the two are mutually exclusive.
struct LinkBody {
  std::optional<Morphism> definiens;
  std::vector<Assignment> assignments;

  bool operator==(const LinkBody&) const = default;
  bool is_defined() const { return definiens.has_value(); }
};

struct StructureDecl {
  LocalPath name;
  Identifier from;
  std::optional<Morphism> meta_morph;
  LinkBody body;

  bool operator==(const StructureDecl&) const = default;
};

using Symbol = std::variant<ConstantDecl, StructureDecl>;

struct TheoryDecl {
  Identifier name;                  // absolute module identifier
  std::optional<Identifier> meta;
  std::vector<Symbol> body;

  bool operator==(const TheoryDecl&) const = default;
};

struct ViewDecl {
  Identifier name;
  Identifier from;
  Identifier to;
  std::optional<Morphism> meta_morph;
  LinkBody body;

  bool operator==(const ViewDecl&) const = default;
};

using Module = std::variant<TheoryDecl, ViewDecl>;

/// Unit of validation and flattening: an ordered list of module declarations.
using TheoryGraph = std::vector<Module>;

struct Document {
  Identifier uri;
  TheoryGraph graph;

  bool operator==(const Document&) const = default;
};

const Identifier& module_name(const Module& m);

/// True iff the graph uses no structure declarations, no assignments to
/// structures, and no morphism applications anywhere.
bool is_flat(const TheoryGraph& tg);
bool is_flat(const Term& t);

/// Preorder traversal carrying the bound-variable scope at each subterm.
/// Morphisms are not descended into; a MorphApp yields itself then its arg.
void for_each_subterm(const Term& t,
                      const std::function<void(const Term&, const Context&)>& visit);
std::vector<Term> subterms(const Term& t);

/// Equality up to renaming of bound variables.
bool alpha_equal(const Term& a, const Term& b);

/// Names of the free variables of a term.
std::vector<std::string> free_term_vars(const Term& t);

std::string to_string(const Context& ctx);

}  // namespace mmt
