// Scriptable shell front end: batch validation, flattening, and queries
// against a library of omdoc documents.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmt/flatten.hpp"
#include "mmt/library.hpp"

namespace {

using namespace mmt;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Usage, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Usage, "cannot write " + path);
  out << text;
}

struct Options {
  std::string level = "structural";
  std::string foundation = "structural";
  std::string catalog_path;
  bool json = false;
};

ValidationLevel parse_level(const std::string& s) {
  if (s == "xml") return ValidationLevel::XmlOnly;
  if (s == "structural") return ValidationLevel::Structural;
  if (s == "foundational") return ValidationLevel::Foundational;
  throw Error(ErrorKind::Usage, "unknown validation level " + s);
}

FoundationRegistry make_registry(const Options& opt, ValidationLevel level) {
  FoundationRegistry reg;
  if (level != ValidationLevel::Foundational) return reg;  // structural default
  if (opt.foundation == "structural")
    reg.set_default(structural_foundation());
  else if (opt.foundation == "openmath")
    reg.set_default(openmath_foundation());
  else if (opt.foundation == "lf")
    reg.set_default(lf_foundation());
  else
    throw Error(ErrorKind::Usage, "unknown foundation " + opt.foundation);
  return reg;
}

Catalog load_catalog(const Options& opt) {
  if (!opt.catalog_path.empty()) return Catalog::from_file(opt.catalog_path);
  if (const char* env = std::getenv("MMT_CATALOG")) return Catalog::from_file(env);
  return {};
}

void print_diags(const std::vector<Diagnostic>& diags, bool json) {
  if (json) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& d : diags)
      out.push_back(
          {{"severity", d.severity == Diagnostic::Severity::Error ? "error" : "warning"},
           {"rule", d.rule},
           {"at", d.at},
           {"msg", d.message}});
    std::cerr << out.dump(2) << "\n";
    return;
  }
  for (const auto& d : diags) std::cerr << d.render() << "\n";
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Diagnostic::Severity::Error) return true;
  return false;
}

Library load_inputs(const Options& opt, const std::vector<std::string>& files,
                    ValidationLevel level, const FoundationRegistry& reg,
                    std::vector<Diagnostic>& diags) {
  Library lib(load_catalog(opt));
  for (const auto& file : files) {
    ReadResult rr = read_document(slurp(file), &lib.merged_graph());
    diags.insert(diags.end(), rr.diagnostics.begin(), rr.diagnostics.end());
    if (lib.catalog().size() > 0) {
      // pull remote references through the catalog before committing
      std::set<std::string> wanted;
      for (const auto& mod : rr.doc.graph) {
        if (const auto* thy = std::get_if<TheoryDecl>(&mod)) {
          if (thy->meta) wanted.insert(thy->meta->document().str());
          for (const auto& sym : thy->body)
            if (const auto* s = std::get_if<StructureDecl>(&sym))
              wanted.insert(s->from.document().str());
        } else {
          const auto& view = std::get<ViewDecl>(mod);
          wanted.insert(view.from.document().str());
          wanted.insert(view.to.document().str());
        }
      }
      for (const auto& w : wanted) {
        if (w == rr.doc.uri.str() || lib.find_document(doc_id(w))) continue;
        if (!lib.catalog().locate(w)) continue;
        try {
          auto more = lib.ensure_document(w, level, reg);
          diags.insert(diags.end(), more.begin(), more.end());
        } catch (const Error& e) {
          diags.push_back(Diagnostic{Diagnostic::Severity::Error, "UnresolvableReference", w,
                                     e.what()});
        }
      }
    }
    auto added = lib.add_document(rr.doc, level, reg);
    diags.insert(diags.end(), added.begin(), added.end());
  }
  return lib;
}

int cmd_check(const Options& opt, const std::vector<std::string>& files) {
  ValidationLevel level = parse_level(opt.level);
  FoundationRegistry reg = make_registry(opt, level);
  std::vector<Diagnostic> diags;
  load_inputs(opt, files, level, reg, diags);
  print_diags(diags, opt.json);
  return has_errors(diags) ? 1 : 0;
}

int cmd_flatten(const Options& opt, const std::string& file, const std::string& out_path,
                const std::string& structure_uri, bool no_normalize) {
  ValidationLevel level = parse_level(opt.level);
  FoundationRegistry reg = make_registry(opt, level);
  std::vector<Diagnostic> diags;
  Library lib = load_inputs(opt, {file}, level, reg, diags);
  if (has_errors(diags)) {
    print_diags(diags, opt.json);
    return 1;
  }
  Identifier doc_uri = read_document(slurp(file)).doc.uri;

  TheoryGraph result;
  if (!structure_uri.empty()) {
    Identifier link = parse_identifier(structure_uri);
    // split the link into its declaring theory and the structure name
    const Graph& g = lib.graph();
    const LocalPath& path = link.module;
    bool done = false;
    for (size_t tlen = path.size(); tlen-- > 0 && !done;) {
      Identifier tid =
          link.with_module(LocalPath(path.begin(), path.begin() + static_cast<long>(tlen)));
      if (!g.find_theory(tid)) continue;
      result = flatten_structure(
          g, tid, LocalPath(path.begin() + static_cast<long>(tlen), path.end()));
      done = true;
    }
    if (!done) throw Error(ErrorKind::UnknownStructure, "no structure " + structure_uri);
  } else {
    result = flatten_graph(lib.graph(), FlattenOptions{!no_normalize});
  }

  // keep the modules belonging to the input document
  Document out;
  out.uri = doc_uri;
  for (auto& mod : result)
    if (module_name(mod).doc == doc_uri.doc) out.graph.push_back(std::move(mod));
  emit(out_path, write_document(out));
  return 0;
}

int cmd_get(const Options& opt, const std::string& uri,
            const std::vector<std::string>& files) {
  ValidationLevel level = parse_level(opt.level);
  FoundationRegistry reg = make_registry(opt, level);
  std::vector<Diagnostic> diags;
  Library lib = load_inputs(opt, files, level, reg, diags);
  Identifier id = parse_identifier(uri);
  if (!id.doc.empty() && !lib.find_document(id.document()) && lib.catalog().size() > 0) {
    auto more = lib.ensure_document(id.document().str(), level, reg);
    diags.insert(diags.end(), more.begin(), more.end());
  }
  if (has_errors(diags)) {
    print_diags(diags, opt.json);
    return 1;
  }
  std::cout << lib.atomic_query(id).to_xml();
  return 0;
}

int cmd_deps(const Options& opt, const std::string& uri, bool self_contained,
             const std::vector<std::string>& files, const std::string& out_path) {
  ValidationLevel level = parse_level(opt.level);
  FoundationRegistry reg = make_registry(opt, level);
  std::vector<Diagnostic> diags;
  Library lib = load_inputs(opt, files, level, reg, diags);
  Identifier id = parse_identifier(uri);
  if (!id.doc.empty() && !lib.find_document(id.document()) && lib.catalog().size() > 0) {
    auto more = lib.ensure_document(id.document().str(), level, reg);
    diags.insert(diags.end(), more.begin(), more.end());
  }
  if (has_errors(diags)) {
    print_diags(diags, opt.json);
    return 1;
  }
  auto closure = lib.deps_closure(id);
  if (!self_contained) {
    std::string out;
    for (const auto& m : closure) out += m.str() + "\n";
    emit(out_path, out);
    return 0;
  }
  // aggregate a self-contained document holding the whole closure
  Document out;
  out.uri = id.document();
  for (const auto& m : closure)
    for (const auto& mod : lib.merged_graph())
      if (module_name(mod).to_module() == m) out.graph.push_back(mod);
  emit(out_path, write_document(out));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MMT kernel shell: validate, flatten, and query theory graphs"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--level", opt.level, "validation level: xml|structural|foundational");
  app.add_option("--foundation", opt.foundation,
                 "foundation for foundational validation: structural|openmath|lf");
  app.add_option("--catalog", opt.catalog_path, "catalog file (or MMT_CATALOG)");
  app.add_flag("--json", opt.json, "diagnostics as JSON");

  std::vector<std::string> files;
  std::string file, uri, out_path, structure_uri;
  bool no_normalize = false, self_contained = false;

  auto* check = app.add_subcommand("check", "validate omdoc documents");
  check->add_option("files", files, "input .omdoc files")->required();

  auto* flatten = app.add_subcommand("flatten", "materialize all induced declarations");
  flatten->add_option("file", file, "input .omdoc file")->required();
  flatten->add_option("--out", out_path, "output path (default stdout)");
  flatten->add_option("--structure", structure_uri, "flatten only this structure");
  flatten->add_flag("--no-normalize", no_normalize, "keep types/definientia unnormalized");

  auto* get = app.add_subcommand("get", "atomic query for one declaration");
  get->add_option("uri", uri, "MMT URI")->required();
  get->add_option("--input", files, "input .omdoc files");

  auto* deps = app.add_subcommand("deps", "dependency closure of a module");
  deps->add_option("uri", uri, "module URI")->required();
  deps->add_flag("--self-contained", self_contained, "emit an aggregated document");
  deps->add_option("--input", files, "input .omdoc files");
  deps->add_option("--out", out_path, "output path (default stdout)");

  // global options may follow the subcommand
  for (auto* sub : {check, flatten, get, deps}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(opt, files);
    if (flatten->parsed()) return cmd_flatten(opt, file, out_path, structure_uri, no_normalize);
    if (get->parsed()) return cmd_get(opt, uri, files);
    if (deps->parsed()) return cmd_deps(opt, uri, self_contained, files, out_path);
  } catch (const mmt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == mmt::ErrorKind::Usage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
