#pragma once

#include "mmt/check.hpp"

namespace mmt {

struct FlattenOptions {
  /// When false, types and definientia are emitted as translated but
  /// unnormalized terms (morphism applications kept).
  bool normalize = true;
};

/// Materializes every induced declaration: each theory lists all its valid
/// constants, each link with a body becomes a view listing all its valid
/// assignments, and links with definientia (including induced structures)
/// become defined views. Meta-theories and filtering are preserved.
TheoryGraph flatten_graph(const Graph& g, const FlattenOptions& opt = {});

/// Incremental flattening of one structure T/i: the structure is replaced by
/// translated copies of the domain's local declarations (without recursive
/// flattening of the domain), and a view T/i carrying the induced assignments
/// is added after T so the link keeps existing. Terms are translated
/// syntactically, not deeply normalized.
TheoryGraph flatten_structure(const Graph& g, const Identifier& theory, const LocalPath& name);

/// Same names: theories with equal meta-theories, links with equal endpoints,
/// and per-theory equal valid constant name sets.
bool structurally_equivalent(const Graph& a, const Graph& b);

/// Structural equivalence plus agreement of all normal forms: per constant
/// the types and definientia, per link the induced assignments.
bool semantically_equivalent(const Graph& a, const Graph& b);

}  // namespace mmt
