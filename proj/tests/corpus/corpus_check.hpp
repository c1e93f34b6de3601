#ifndef CWKIT_TESTS_CORPUS_CHECK_HPP
#define CWKIT_TESTS_CORPUS_CHECK_HPP

// Golden-report comparison shared by the corpus test and the acceptance run.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <string>
#include <vector>

#include "cwkit/io.hpp"

namespace corpus {

namespace fs = std::filesystem;

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::vector<fs::path> documents(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string golden_text(const cwkit::Report& r) { return cwkit::strip_timing(r.json).dump(2) + "\n"; }

struct Outcome {
  std::size_t documents = 0;
  std::set<std::string> commands;
  std::vector<std::string> failures;
};

/// Runs every document twice, compares against golden/<name>.json byte for
/// byte and checks the parse/serialize round trip. With `update`, rewrites
/// the goldens instead of comparing.
inline Outcome check(const fs::path& dir, bool update = false) {
  Outcome o;
  for (const auto& p : documents(dir)) {
    ++o.documents;
    const std::string name = p.stem().string();
    const std::string text = slurp(p);
    const cwkit::Report a = cwkit::run("", text);
    const cwkit::Report b = cwkit::run("", text);
    o.commands.insert(a.command);
    const std::string ga = golden_text(a);
    if (ga != golden_text(b)) o.failures.push_back(name + ": two runs differ");
    const fs::path golden = dir / "golden" / (name + ".json");
    if (update) {
      std::ofstream(golden, std::ios::binary) << ga;
    } else if (!fs::exists(golden)) {
      o.failures.push_back(name + ": missing golden report");
    } else if (slurp(golden) != ga) {
      o.failures.push_back(name + ": report differs from golden");
    }
    try {
      const cwkit::ProblemDocument d1 = cwkit::parse_document(text);
      const cwkit::ProblemDocument d2 = cwkit::parse_document(cwkit::document_to_json(d1).dump(2));
      if (!(d1 == d2)) o.failures.push_back(name + ": round trip changed the document");
    } catch (const cwkit::SchemaError&) {
      if (a.json.value("status", "") != "rejected") o.failures.push_back(name + ": schema error not reported");
    }
  }
  return o;
}

}  // namespace corpus

#endif
