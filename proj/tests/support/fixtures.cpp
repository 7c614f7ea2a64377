#include "support/fixtures.hpp"

namespace fixtures {

Identifier lf() { return module_id(kDocM, {"LF"}); }
Identifier folsyn() { return module_id(kDocF, {"FOLSyn"}); }
Identifier monoid() { return module_id(kDocE, {"Monoid"}); }
Identifier cgroup() { return module_id(kDocE, {"CGroup"}); }
Identifier ring() { return module_id(kDocE, {"Ring"}); }
Identifier integers() { return module_id(kDocE, {"integers"}); }
Identifier v1() { return module_id(kDocE, {"v1"}); }
Identifier v2() { return module_id(kDocE, {"v2"}); }

Term lf_type() { return constant(symbol_id(kDocM, {"LF"}, {"type"})); }
Term iota() { return constant(symbol_id(kDocF, {"FOLSyn"}, {"iota"})); }
Term o() { return constant(symbol_id(kDocF, {"FOLSyn"}, {"o"})); }

Term arrow(std::vector<Term> args) {
  return app(constant(symbol_id(kDocM, {"LF"}, {"arrow"})), std::move(args));
}

namespace {

ConstantDecl con(std::initializer_list<std::string_view> name, std::optional<Term> type = {},
                 std::optional<Term> def = {}) {
  return ConstantDecl{local_path(name), std::move(type), std::move(def)};
}

Morphism id_folsyn() { return morph_ident(folsyn()); }

}  // namespace

TheoryDecl make_lf() {
  TheoryDecl t;
  t.name = lf();
  t.body.push_back(con({"type"}));
  t.body.push_back(con({"kind"}));
  t.body.push_back(con({"lambda"}));
  t.body.push_back(con({"Pi"}));
  t.body.push_back(con({"arrow"}));
  return t;
}

TheoryDecl make_folsyn() {
  TheoryDecl t;
  t.name = folsyn();
  t.meta = lf();
  t.body.push_back(con({"iota"}, lf_type()));
  t.body.push_back(con({"o"}, lf_type()));
  t.body.push_back(con({"equal"}, arrow({iota(), iota(), o()})));
  t.body.push_back(con({"forall"}, arrow({arrow({iota(), o()}), o()})));
  return t;
}

TheoryDecl make_monoid() {
  TheoryDecl t;
  t.name = monoid();
  t.meta = folsyn();
  t.body.push_back(con({"comp"}, arrow({iota(), iota(), iota()})));
  t.body.push_back(con({"unit"}, iota()));
  return t;
}

TheoryDecl make_cgroup() {
  TheoryDecl t;
  t.name = cgroup();
  t.meta = folsyn();
  StructureDecl mon;
  mon.name = local_path({"mon"});
  mon.from = monoid();
  mon.meta_morph = id_folsyn();
  t.body.push_back(std::move(mon));
  t.body.push_back(con({"inv"}, arrow({iota(), iota()})));
  return t;
}

TheoryDecl make_ring() {
  TheoryDecl t;
  t.name = ring();
  t.meta = folsyn();
  StructureDecl add;
  add.name = local_path({"add"});
  add.from = cgroup();
  add.meta_morph = id_folsyn();
  t.body.push_back(std::move(add));
  StructureDecl mult;
  mult.name = local_path({"mult"});
  mult.from = monoid();
  mult.meta_morph = id_folsyn();
  t.body.push_back(std::move(mult));
  return t;
}

TheoryDecl make_integers() {
  TheoryDecl t;
  t.name = integers();
  t.meta = folsyn();
  t.body.push_back(con({"zero"}, iota()));
  t.body.push_back(con({"plus"}, arrow({iota(), iota(), iota()})));
  t.body.push_back(con({"neg"}, arrow({iota(), iota()})));
  return t;
}

ViewDecl make_v1() {
  ViewDecl v;
  v.name = v1();
  v.from = monoid();
  v.to = integers();
  v.meta_morph = id_folsyn();
  v.body.assignments.push_back(
      con_ass(local_path({"comp"}), constant(integers().with_symbol(local_path({"plus"})))));
  v.body.assignments.push_back(
      con_ass(local_path({"unit"}), constant(integers().with_symbol(local_path({"zero"})))));
  return v;
}

ViewDecl make_v2() {
  ViewDecl v;
  v.name = v2();
  v.from = cgroup();
  v.to = integers();
  v.meta_morph = id_folsyn();
  v.body.assignments.push_back(str_ass(local_path({"mon"}), morph_link(v1())));
  v.body.assignments.push_back(
      con_ass(local_path({"inv"}), constant(integers().with_symbol(local_path({"neg"})))));
  return v;
}

TheoryGraph algebra_graph() {
  TheoryGraph tg;
  tg.push_back(make_lf());
  tg.push_back(make_folsyn());
  tg.push_back(make_monoid());
  tg.push_back(make_cgroup());
  tg.push_back(make_ring());
  return tg;
}

TheoryGraph full_graph() {
  TheoryGraph tg = algebra_graph();
  tg.push_back(make_integers());
  tg.push_back(make_v1());
  tg.push_back(make_v2());
  return tg;
}

std::vector<Document> documents() {
  Document m{doc_id(kDocM), {make_lf()}};
  Document f{doc_id(kDocF), {make_folsyn()}};
  Document e{doc_id(kDocE),
             {make_monoid(), make_cgroup(), make_ring(), make_integers(), make_v1(),
              make_v2()}};
  return {std::move(m), std::move(f), std::move(e)};
}

TheoryGraph sharing_graph() {
  // Monoid declares the universe; CGroup imports it; Ring identifies the two
  // universes with a deep assignment on the second import.
  TheoryGraph tg;
  tg.push_back(make_lf());
  tg.push_back(make_folsyn());

  TheoryDecl mon;
  mon.name = monoid();
  mon.meta = folsyn();
  mon.body.push_back(con({"univ"}, lf_type()));
  mon.body.push_back(con({"comp"}));
  mon.body.push_back(con({"unit"}));
  tg.push_back(std::move(mon));

  tg.push_back(make_cgroup());

  TheoryDecl rng;
  rng.name = ring();
  rng.meta = folsyn();
  StructureDecl add;
  add.name = local_path({"add"});
  add.from = cgroup();
  add.meta_morph = id_folsyn();
  rng.body.push_back(std::move(add));
  StructureDecl mult;
  mult.name = local_path({"mult"});
  mult.from = cgroup();
  mult.meta_morph = id_folsyn();
  mult.body.assignments.push_back(
      con_ass(local_path({"mon", "univ"}),
              constant(ring().with_symbol(local_path({"add", "mon", "univ"})))));
  rng.body.push_back(std::move(mult));
  tg.push_back(std::move(rng));
  return tg;
}

Term neutrality_axiom() {
  Term comp = constant(monoid().with_symbol(local_path({"comp"})));
  Term unit = constant(monoid().with_symbol(local_path({"unit"})));
  Term equal = constant(folsyn().with_symbol(local_path({"equal"})));
  Term forall = constant(folsyn().with_symbol(local_path({"forall"})));
  return bind(forall, {VarDecl{Name("x"), iota(), std::nullopt}},
              app(equal, {app(comp, {unit, var("x")}), var("x")}));
}

Morphism mu_e() { return morph_comp(morph_link(cgroup().module_child(local_path({"mon"}))), morph_link(v2())); }

}  // namespace fixtures
