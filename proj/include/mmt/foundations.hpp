#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>

#include "mmt/elaborate.hpp"
#include "mmt/normalize.hpp"

namespace mmt {

/// Oracle pair defining the typing and equality judgments, keyed to a
/// foundational theory. Absent terms stand for omitted types/definitions:
/// typed(v, absent) means v is a well-formed untyped value, typed(absent, t)
/// means t may appear on the right of ':'. equal(absent, absent) holds for
/// every foundation.
class Foundation {
 public:
  virtual ~Foundation() = default;

  virtual std::string key() const = 0;

  virtual bool typed(const Graph& g, const Identifier& theory, const Context& ctx,
                     const std::optional<Term>& value,
                     const std::optional<Term>& type) const = 0;

  virtual bool equal(const Graph& g, const Identifier& theory, const Context& ctx,
                     const std::optional<Term>& a, const std::optional<Term>& b) const = 0;
};

/// Typing and equality hold unconditionally; the most permissive foundation,
/// used for structural validation and as the default fallback.
std::shared_ptr<const Foundation> structural_foundation();

/// Untyped terms with alpha-conversion as the only non-trivial equality;
/// realized as normalize-then-compare-up-to-alpha.
std::shared_ptr<const Foundation> openmath_foundation();

struct LfOptions {
  bool eta = false;     // beta-only conversion by default; eta is opt-in
  int beta_fuel = 10000;
  int depth_limit = 512;
};

/// Dependent type theory over a foundational theory declaring type, kind,
/// lambda, Pi (and optionally a non-dependent arrow). The foundational theory
/// is located per query as the <-maximal meta-ancestor of the home theory.
std::shared_ptr<const Foundation> lf_foundation(LfOptions opt = {});

/// Maps foundational theories to foundations. Resolution walks the meta-chain
/// of a theory to its <-maximal ancestor; unregistered roots fall back to the
/// default foundation (structural unless overridden).
class FoundationRegistry {
 public:
  FoundationRegistry();

  void register_for(const Identifier& foundational_theory,
                    std::shared_ptr<const Foundation> f);
  void set_default(std::shared_ptr<const Foundation> f);

  const Foundation& resolve(const Graph& g, const Identifier& theory) const;
  const Foundation& fallback() const { return *default_; }

  /// The <-maximal meta-ancestor (the theory itself when it has no meta).
  static Identifier foundational_theory_of(const Graph& g, const Identifier& theory);

 private:
  std::unordered_map<std::string, std::shared_ptr<const Foundation>> by_theory_;
  std::shared_ptr<const Foundation> default_;
};

}  // namespace mmt
