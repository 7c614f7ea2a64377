#pragma once

#include "mmt/ast.hpp"

// The elementary-algebra example used across the test suites: a logical
// framework document (m), a first-order syntax document (f), and an algebra
// document (e) with Monoid, CGroup, Ring, the integers, and the views v1/v2.

namespace fixtures {

using namespace mmt;

inline const char* kDocM = "http://ex.org/m";
inline const char* kDocF = "http://ex.org/f";
inline const char* kDocE = "http://ex.org/e";

Identifier lf();       // m?LF
Identifier folsyn();   // f?FOLSyn
Identifier monoid();   // e?Monoid
Identifier cgroup();   // e?CGroup
Identifier ring();     // e?Ring
Identifier integers(); // e?integers
Identifier v1();       // e?v1
Identifier v2();       // e?v2

Term lf_type();
Term iota();
Term o();
Term arrow(std::vector<Term> args);  // @(m?LF?arrow, args...)

TheoryDecl make_lf();
TheoryDecl make_folsyn();
TheoryDecl make_monoid();
TheoryDecl make_cgroup();
TheoryDecl make_ring();
TheoryDecl make_integers();
ViewDecl make_v1();
ViewDecl make_v2();

/// LF, FOLSyn, Monoid, CGroup, Ring: the fragment whose flattening the golden
/// test pins down.
TheoryGraph algebra_graph();

/// The algebra fragment plus integers, v1, v2.
TheoryGraph full_graph();

/// The three documents (m, f, e with everything).
std::vector<Document> documents();

/// Monoid declares the universe; Ring shares it between its two imports via a
/// deep assignment on the second structure.
TheoryGraph sharing_graph();

/// The left-neutrality axiom term over Monoid and the morphism
/// CGroup/mon ; v2 it is moved along in the examples.
Term neutrality_axiom();
Morphism mu_e();

}  // namespace fixtures
