#include <cstring>
#include <iostream>

#include "corpus_check.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: corpus_test <corpus-dir> [--update]\n";
    return 2;
  }
  const bool update = argc > 2 && std::strcmp(argv[2], "--update") == 0;
  const corpus::Outcome o = corpus::check(argv[1], update);
  for (const auto& f : o.failures) std::cout << "FAIL " << f << "\n";
  std::cout << o.documents << " documents, " << o.commands.size() << " commands, " << o.failures.size()
            << " failures\n";
  if (update) return 0;
  const bool all_commands = o.commands.size() >= cwkit::commands().size();
  if (!all_commands) std::cout << "FAIL corpus does not cover every command\n";
  return o.failures.empty() && all_commands && o.documents >= 15 ? 0 : 1;
}
