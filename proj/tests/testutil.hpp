#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "act/parser.hpp"

namespace act::test {

inline std::string corpus_dir() { return ACT_CORPUS_DIR; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Every .act file under the corpus dir (recursive), sorted for determinism.
inline std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(corpus_dir())) {
    if (e.path().extension() == ".act") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline act::Spec parse_or_die(const std::string& source) {
  auto res = act::parse_source(source, "<test>");
  if (!res.spec) throw std::runtime_error("parse failed:\n" + render_diagnostics(res.diagnostics));
  return std::move(*res.spec);
}

}  // namespace act::test
