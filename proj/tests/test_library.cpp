#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "mmt/library.hpp"
#include "support/fixtures.hpp"

using namespace mmt;
using namespace fixtures;

TEST_SUITE("library") {

TEST_CASE("documents are accepted in dependency order") {
  Library lib;
  auto docs = documents();  // m, f, e
  for (const auto& d : docs) {
    auto diags = lib.add_document(d, ValidationLevel::Structural);
    CHECK(diags.empty());
  }
  CHECK(lib.document_count() == 3);
  CHECK(check_graph(lib.merged_graph(), structural_foundation()).empty());

  SUBCASE("re-adding an identical document is idempotent") {
    CHECK(lib.add_document(docs[1], ValidationLevel::Structural).empty());
    CHECK(lib.document_count() == 4);
    CHECK(check_graph(lib.merged_graph(), structural_foundation()).empty());
  }
  SUBCASE("a conflicting redefinition is rejected atomically") {
    Document evil = docs[1];
    std::get<TheoryDecl>(evil.graph[0]).body.clear();
    size_t before = lib.merged_graph().size();
    auto diags = lib.add_document(evil, ValidationLevel::Structural);
    CHECK_FALSE(diags.empty());
    CHECK(lib.merged_graph().size() == before);
  }
}

TEST_CASE("xml-only level stores without graph checking") {
  Library lib;
  auto docs = documents();
  // out of order and even with a broken reference: xml level only records
  Document bad = docs[2];
  std::get<ViewDecl>(bad.graph[4]).from = module_id(kDocE, {"Ghost"});
  CHECK(lib.add_document(bad, ValidationLevel::XmlOnly).empty());
  CHECK(lib.document_count() == 1);
}

TEST_CASE("adding a document before its dependencies is rejected") {
  Library lib;
  auto docs = documents();
  auto diags = lib.add_document(docs[2], ValidationLevel::Structural);  // e needs f and m
  REQUIRE_FALSE(diags.empty());
  bool unresolved = false;
  for (const auto& d : diags) unresolved |= d.rule == "UnresolvableReference";
  CHECK(unresolved);
  CHECK(lib.document_count() == 0);  // rejection is atomic
}

TEST_CASE("atomic queries return the induced declarations") {
  Library lib;
  for (const auto& d : documents()) REQUIRE(lib.add_document(d, ValidationLevel::Structural).empty());

  SUBCASE("document and module queries") {
    CHECK(lib.atomic_query(doc_id(kDocE)).kind == QueryResult::Kind::Document);
    auto thy = lib.atomic_query(cgroup());
    REQUIRE(thy.kind == QueryResult::Kind::Theory);
    CHECK(thy.theory->body.size() == 2);
    auto link = lib.atomic_query(cgroup().module_child(local_path({"mon"})));
    REQUIRE(link.kind == QueryResult::Kind::View);
    CHECK(link.view->from == monoid());
    CHECK(link.view->to == cgroup());
  }
  SUBCASE("assignment vs constant: the two readings of a name") {
    // g?T/i?c: the assignment the structure provides for c
    auto ass = lib.atomic_query(
        cgroup().module_child(local_path({"mon"})).with_symbol(local_path({"comp"})));
    REQUIRE(ass.kind == QueryResult::Kind::Assignment);
    CHECK(ass.assignment->name == local_path({"comp"}));
    CHECK(*ass.assignment->term ==
          constant(cgroup().with_symbol(local_path({"mon", "comp"}))));

    // g?T?i/c: the induced constant declaration
    auto con = lib.atomic_query(cgroup().with_symbol(local_path({"mon", "comp"})));
    REQUIRE(con.kind == QueryResult::Kind::Constant);
    CHECK(*con.constant->type ==
          morph_app(arrow({iota(), iota(), iota()}),
                    morph_link(cgroup().module_child(local_path({"mon"})))));
    CHECK_FALSE(con.constant->def.has_value());
  }
  SUBCASE("unknown URIs raise NotFound") {
    CHECK_THROWS_AS(lib.atomic_query(module_id(kDocE, {"Nope"})), Error);
    CHECK_THROWS_AS(lib.atomic_query(ring().with_symbol(local_path({"ghost"}))), Error);
  }
  SUBCASE("queries agree with elaboration") {
    const Graph& g = lib.graph();
    for (const auto& t : g.theory_names())
      for (const auto& c : g.constant_names(t)) {
        auto q = lib.atomic_query(t.with_symbol(c));
        REQUIRE(q.kind == QueryResult::Kind::Constant);
        ConstantInfo info = g.constant(t, c);
        CHECK(q.constant->type == info.type);
        CHECK(q.constant->def == info.def);
      }
  }
}

TEST_CASE("relational index") {
  Library lib;
  for (const auto& d : documents()) REQUIRE(lib.add_document(d, ValidationLevel::Structural).empty());

  SUBCASE("has-meta lists the FOLSyn theories") {
    auto rows = lib.query_relations(std::nullopt, "has-meta", folsyn().str());
    std::set<std::string> subjects;
    for (const auto& r : rows) subjects.insert(r.subject);
    CHECK(subjects == std::set<std::string>{monoid().str(), cgroup().str(), ring().str(),
                                            integers().str()});
  }
  SUBCASE("occurs-in-type-of is witnessed by real occurrences") {
    auto rows = lib.query_relations(std::nullopt, "occurs-in-type-of", std::nullopt);
    CHECK_FALSE(rows.empty());
    const Graph& g = lib.graph();
    for (const auto& r : rows) {
      Identifier subject = parse_identifier(r.subject);
      Identifier object = parse_identifier(r.object);
      ConstantInfo info = g.constant(object.to_module(), object.symbol);
      REQUIRE(info.type.has_value());
      bool witnessed = false;
      for_each_subterm(*info.type, [&](const Term& t, const Context&) {
        witnessed |= t.kind == Term::Kind::Const && t.con == subject;
      });
      CHECK(witnessed);
    }
    // inv appears in no type in the axiom-free example
    CHECK(lib.query_relations(cgroup().with_symbol(local_path({"inv"})).str(),
                              "occurs-in-type-of", std::nullopt)
              .empty());
  }
  SUBCASE("domains and codomains") {
    auto rows = lib.query_relations(v1().str(), std::nullopt, std::nullopt);
    bool dom = false, cod = false;
    for (const auto& r : rows) {
      dom |= r.relation == "has-domain" && r.object == monoid().str();
      cod |= r.relation == "has-codomain" && r.object == integers().str();
    }
    CHECK(dom);
    CHECK(cod);
  }
}

TEST_CASE("dependency closure is ordered") {
  Library lib;
  for (const auto& d : documents()) REQUIRE(lib.add_document(d, ValidationLevel::Structural).empty());
  auto closure = lib.deps_closure(ring());
  std::vector<std::string> got;
  for (const auto& m : closure) got.push_back(m.str());
  std::vector<std::string> expected{lf().str(), folsyn().str(), monoid().str(),
                                    cgroup().str(), ring().str()};
  CHECK(got == expected);
}

TEST_CASE("catalog files drive document loading") {
  // write the three documents into a temp directory and a catalog for them
  std::string dir = (std::filesystem::temp_directory_path() / "mmt_lib_work").string();
  std::filesystem::create_directories(dir);
  auto docs = documents();
  const char* names[] = {"m.omdoc", "f.omdoc", "e.omdoc"};
  for (size_t i = 0; i < docs.size(); ++i) {
    std::ofstream out(dir + "/" + names[i]);
    out << write_document(docs[i]);
  }
  Catalog cat = Catalog::from_text("# demo catalog\n"
                                   "PREFIX http://ex.org/m " + dir + "/m.omdoc\n"
                                   "PREFIX http://ex.org/f " + dir + "/f.omdoc\n"
                                   "PREFIX http://ex.org/e " + dir + "/e.omdoc\n");
  CHECK(cat.locate("http://ex.org/e") == dir + "/e.omdoc");
  CHECK_FALSE(cat.locate("http://elsewhere.org/x").has_value());

  Library lib(cat);
  FoundationRegistry reg;
  auto diags = lib.ensure_document("http://ex.org/e", ValidationLevel::Structural, reg);
  CHECK(diags.empty());
  CHECK(lib.document_count() == 3);  // dependencies were pulled in first
  CHECK(lib.find_document(doc_id(kDocM)) != nullptr);
}

TEST_CASE("longest catalog prefix wins") {
  Catalog cat;
  cat.add_rule("http://ex.org/", "/short/");
  cat.add_rule("http://ex.org/deep/", "/long/");
  CHECK(cat.locate("http://ex.org/deep/doc") == "/long/doc");
  CHECK(cat.locate("http://ex.org/other") == "/short/other");
}

}  // TEST_SUITE
