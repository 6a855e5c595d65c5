#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "theoria/theoria.hpp"

// theoria — compiler and library manager for tiny-theory files.
//
//   theoria check <files...>
//   theoria expand <files...> <Name> [--format text|json] [--full]
//   theoria gen <record|terms|hom|sub> <files...> <Name> [--full]
//   theoria graph <files...> [--format dot|json]
//   theoria stats <files...>
//
// Exit codes: 0 ok, 1 semantic/parse error, 2 I/O or usage error.

namespace {

using namespace theoria;

PropertyMacroTable macro_table() {
  PropertyMacroTable table = PropertyMacroTable::builtins();
  if (const char* extra = std::getenv("THEORIA_MACROS"))
    table.load_templates(read_file(extra));
  return table;
}

struct LoadedLibrary {
  LibraryEnv env;
  std::map<Name, std::string> file_of;  // theory -> source file
};

LoadedLibrary load(const std::vector<std::string>& files,
                   const PropertyMacroTable& table) {
  LoadedLibrary lib;
  std::set<Name> known;
  for (const auto& path : files) {
    SourceFile parsed;
    try {
      parsed = parse_library(read_file(path), known);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Io) throw;
      fail(e.kind(),
           path + ":" + std::to_string(e.pos().line) + ":" +
               std::to_string(e.pos().col) + ": " + e.what(),
           e.pos());
    }
    elaborate_into(lib.env, parsed, table);
    for (const auto& def : parsed.definitions) {
      known.insert(def.name);
      lib.file_of[def.name] = path;
    }
  }
  return lib;
}

int cmd_check(const std::vector<std::string>& files) {
  LoadedLibrary lib = load(files, macro_table());
  bool errors = false;
  for (const auto& name : lib.env.order) {
    const std::string& file = lib.file_of[name];
    for (const auto& d : check_theory(lib.env.theory(name))) {
      std::cerr << render(d, file) << "\n";
      if (d.severity == Severity::Error) errors = true;
    }
  }
  for (const auto& o : lib.env.obligations) {
    Diagnostic d{Severity::Note,
                 "obligation: axiom '" + o.axiom.text + "' of '" +
                     o.source.text + "' must hold in '" + o.target.text + "'",
                 o.target,
                 o.axiom,
                 {}};
    std::cerr << render(d, lib.file_of[o.target]) << "\n";
  }
  if (errors) return 1;
  std::cout << "ok: " << lib.env.theories.size() << " theories, "
            << lib.env.arrows.size() << " arrows\n";
  return 0;
}

int cmd_expand(const std::vector<std::string>& files, const Name& theory,
               const std::string& format, bool full) {
  LoadedLibrary lib = load(files, macro_table());
  const TheoryPresentation& p = lib.env.theory(theory);
  if (format == "json") {
    std::string provenance = "literal";
    if (auto it = lib.env.origins.find(theory); it != lib.env.origins.end())
      provenance = origin_name(it->second);
    std::cout << to_json(p, provenance).dump(2) << "\n";
    return 0;
  }
  PrintOptions opts;
  if (!full) {
    if (auto it = lib.env.artifacts.find(theory);
        it != lib.env.artifacts.end() && it->second.theory.has_value())
      opts.typefrom_abbrev = {Name{it->second.origin.text + "Type"},
                              it->second.origin};
  }
  std::cout << pretty_print(p, opts) << "\n";
  return 0;
}

int cmd_gen(const std::string& kind, const std::vector<std::string>& files,
            const Name& theory, bool full) {
  LoadedLibrary lib = load(files, macro_table());
  const TheoryPresentation& p = lib.env.theory(theory);
  if (kind == "record") {
    TypePtr record = gen_record_type(p);
    std::cout << "type " << theory.text << "Type = " << pretty_print(record)
              << "\n";
    return 0;
  }
  if (kind == "terms") {
    std::cout << pretty_print(gen_term_algebra(p)) << "\n";
    return 0;
  }
  TheoryPresentation out =
      kind == "hom" ? gen_homomorphism(p) : gen_substructure(p);
  PrintOptions opts;
  if (!full) opts.typefrom_abbrev = {Name{theory.text + "Type"}, theory};
  std::cout << pretty_print(out, opts) << "\n";
  return 0;
}

int cmd_graph(const std::vector<std::string>& files,
              const std::string& format) {
  LoadedLibrary lib = load(files, macro_table());
  if (format == "json")
    std::cout << graph_to_json(lib.env).dump(2) << "\n";
  else
    std::cout << graph_to_dot(lib.env);
  return 0;
}

int cmd_stats(const std::vector<std::string>& files) {
  LoadedLibrary lib = load(files, macro_table());
  size_t axioms = 0;
  for (const auto& [name, p] : lib.env.theories)
    for (const auto& d : p.decls)
      if (std::holds_alternative<AxiomDecl>(d.node)) ++axioms;
  std::cout << "theories:    " << lib.env.theories.size() << "\n";
  std::cout << "arrows:      " << lib.env.arrows.size() << "\n";
  std::cout << "axioms:      " << axioms << "\n";
  std::cout << "obligations: " << lib.env.obligations.size() << "\n";
  std::cout << "macro usage:\n";
  for (const auto& [name, count] : lib.env.macro_uses)
    std::cout << "  " << name.text << " " << count << "\n";
  return 0;
}

// The trailing positional of expand/gen is the theory name; everything
// before it is a source file.
bool split_files_and_name(std::vector<std::string> args,
                          std::vector<std::string>& files, Name& theory) {
  if (args.size() < 2) return false;
  theory = Name{args.back()};
  args.pop_back();
  files = std::move(args);
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"theoria - compiler and library manager for tiny theories"};
  app.require_subcommand(1);

  std::vector<std::string> check_files;
  auto* check = app.add_subcommand("check", "parse, elaborate and typecheck");
  check->add_option("files", check_files, "source files")->required();

  std::vector<std::string> expand_args;
  std::string expand_format = "text";
  bool expand_full = false;
  auto* expand =
      app.add_subcommand("expand", "print a flattened theory presentation");
  expand->add_option("args", expand_args, "source files then theory name")
      ->required();
  expand->add_option("--format", expand_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  expand->add_flag("--full", expand_full, "expand TypeFrom abbreviations");

  std::string gen_kind;
  std::vector<std::string> gen_args;
  bool gen_full = false;
  auto* gen = app.add_subcommand("gen", "run a universal-algebra generator");
  gen->add_option("kind", gen_kind, "record|terms|hom|sub")
      ->required()
      ->check(CLI::IsMember({"record", "terms", "hom", "sub"}));
  gen->add_option("args", gen_args, "source files then theory name")
      ->required();
  gen->add_flag("--full", gen_full, "expand TypeFrom abbreviations");

  std::vector<std::string> graph_files;
  std::string graph_format = "dot";
  auto* graph = app.add_subcommand("graph", "export the morphism graph");
  graph->add_option("files", graph_files, "source files")->required();
  graph->add_option("--format", graph_format, "dot|json")
      ->check(CLI::IsMember({"dot", "json"}));

  std::vector<std::string> stats_files;
  auto* stats = app.add_subcommand("stats", "corpus summary");
  stats->add_option("files", stats_files, "source files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*check) return cmd_check(check_files);
    if (*expand) {
      std::vector<std::string> files;
      Name theory;
      if (!split_files_and_name(expand_args, files, theory)) {
        std::cerr << "usage: theoria expand <files...> <Name>\n";
        return 2;
      }
      return cmd_expand(files, theory, expand_format, expand_full);
    }
    if (*gen) {
      std::vector<std::string> files;
      Name theory;
      if (!split_files_and_name(gen_args, files, theory)) {
        std::cerr << "usage: theoria gen <kind> <files...> <Name>\n";
        return 2;
      }
      return cmd_gen(gen_kind, files, theory, gen_full);
    }
    if (*graph) return cmd_graph(graph_files, graph_format);
    if (*stats) return cmd_stats(stats_files);
  } catch (const Error& e) {
    std::cerr << "theoria: " << e.what() << "\n";
    return e.kind() == ErrorKind::Io ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "theoria: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
