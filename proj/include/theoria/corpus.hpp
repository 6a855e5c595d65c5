#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "theoria/elaborator.hpp"
#include "theoria/json_io.hpp"
#include "theoria/typecheck.hpp"

// The shipped theory corpus: files, the manifest that pins its expected
// contents, and the shared multi-file elaboration entry point.

namespace theoria {

struct CorpusManifest {
  std::vector<std::string> files;  // relative to the manifest's directory
  size_t expected_theory_count = 0;
  std::vector<Name> expected_names;

  static CorpusManifest from_json(const json& j) {
    CorpusManifest m;
    for (const auto& f : j.at("files")) m.files.push_back(f.get<std::string>());
    m.expected_theory_count = j.at("expected_theory_count").get<size_t>();
    for (const auto& n : j.at("expected_names"))
      m.expected_names.push_back(Name{n.get<std::string>()});
    return m;
  }
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline CorpusManifest load_manifest(const std::string& path) {
  return CorpusManifest::from_json(json::parse(read_file(path)));
}

// Elaborates several files in order into one shared environment; later
// files may reference theories from earlier ones.
inline LibraryEnv elaborate_files(
    const std::vector<std::string>& paths,
    const PropertyMacroTable& table = PropertyMacroTable::builtins()) {
  LibraryEnv env;
  std::set<Name> known;
  for (const auto& path : paths) {
    SourceFile file = parse_library(read_file(path), known);
    elaborate_into(env, file, table);
    for (const auto& def : file.definitions) known.insert(def.name);
  }
  return env;
}

// Returns human-readable problems; empty means the corpus satisfies the
// manifest: everything elaborates, expected names present, count reached,
// everything typechecks, and every recorded arrow validates.
inline std::vector<std::string> validate_corpus(const LibraryEnv& env,
                                                const CorpusManifest& m) {
  std::vector<std::string> problems;
  if (env.theories.size() < m.expected_theory_count)
    problems.push_back("expected at least " +
                       std::to_string(m.expected_theory_count) +
                       " theories, got " +
                       std::to_string(env.theories.size()));
  for (const auto& n : m.expected_names)
    if (!env.has(n)) problems.push_back("missing expected theory '" + n.text + "'");
  for (const auto& [name, pres] : env.theories) {
    for (const auto& d : check_theory(pres))
      if (d.severity == Severity::Error)
        problems.push_back("theory '" + name.text + "': " + d.message);
  }
  for (const auto& a : env.arrows) {
    try {
      validate_arrow(a, env);
    } catch (const Error& e) {
      problems.push_back("arrow " + a.source.text + " -> " + a.target.text +
                         ": " + e.what());
    }
  }
  return problems;
}

}  // namespace theoria
