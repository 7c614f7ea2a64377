#pragma once

#include <optional>

#include "mmt/elaborate.hpp"

namespace mmt {

struct NormalizeOptions {
  /// Converts runaway recursion on cyclic definitions into a CyclicDefinition
  /// error instead of looping; kept well below stack exhaustion.
  int depth_limit = 512;
};

/// Computes the normal form: eliminates all morphism applications, expands
/// all definitions, and enforces strictness of filtering. The result contains
/// no MorphApp node. Throws IllFormed when a constant is moved along a link
/// whose domain is neither the constant's theory nor a meta-ancestor of it,
/// and CyclicDefinition when expansion does not terminate.
Term normalize_term(const Graph& g, const Term& t, const NormalizeOptions& opt = {});

/// Componentwise normalization; a filtered component collapses the whole
/// context to the filtered result (nullopt).
std::optional<Context> normalize_context(const Graph& g, const Context& ctx,
                                         const NormalizeOptions& opt = {});

/// Applies a morphism to a term and normalizes.
Term apply_morphism(const Graph& g, const Term& t, const Morphism& m,
                    const NormalizeOptions& opt = {});

}  // namespace mmt
