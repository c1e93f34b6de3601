// cwkit command-line front end.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cwkit/io.hpp"
#include "cwkit/scalars.hpp"

namespace {

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

int severity(cwkit::Status s) {
  switch (s) {
    case cwkit::Status::ok: return 0;
    case cwkit::Status::unsupported: return 1;
    case cwkit::Status::rejected: return 2;
    case cwkit::Status::falsified: return 3;
    case cwkit::Status::error: return 4;
  }
  return 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cwkit: Chow-Witt cycles from local orientations"};
  app.require_subcommand(1, 1);
  std::vector<std::string> inputs;
  std::string output;
  std::string format = "json";
  std::uint64_t bound = cwkit::trial_division_bound();
  unsigned jobs = 1;

  std::vector<std::string> names = cwkit::commands();
  names.push_back("run");
  for (const auto& name : names) {
    auto* sub = app.add_subcommand(name, name == "run" ? "run the command named in each document" : "run " + name);
    sub->add_option("--input", inputs, "problem document (default: standard input); repeatable");
    sub->add_option("--output", output, "report path (default: standard output)");
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--trial-division-bound", bound, "trial division bound for integer factorization")
        ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
    sub->add_option("--jobs", jobs, "documents processed in parallel")->check(CLI::PositiveNumber);
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name() == "run"
                                  ? std::string()
                                  : app.get_subcommands().front()->get_name();
  cwkit::set_trial_division_bound(bound);

  std::vector<std::string> texts;
  if (inputs.empty()) {
    texts.push_back(read_all(std::cin));
  } else {
    for (const auto& p : inputs) {
      std::ifstream in(p, std::ios::binary);
      if (!in) {
        std::cerr << "cwkit: cannot read " << p << "\n";
        return 2;
      }
      texts.push_back(read_all(in));
    }
  }

  std::vector<cwkit::Report> reports(texts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < texts.size();) reports[i] = cwkit::run(command, texts[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < std::min<std::size_t>(jobs, texts.size()); ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream out;
  cwkit::Status worst = cwkit::Status::ok;
  if (format == "text") {
    for (const auto& r : reports) out << cwkit::render_text(r.json);
  } else if (reports.size() == 1) {
    out << reports[0].json.dump(2) << "\n";
  } else {
    cwkit::Json all = cwkit::Json::array();
    for (const auto& r : reports) all.push_back(r.json);
    out << all.dump(2) << "\n";
  }
  for (const auto& r : reports)
    if (severity(r.status) > severity(worst)) worst = r.status;

  if (output.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      std::cerr << "cwkit: cannot write " << output << "\n";
      return 1;
    }
    f << out.str();
  }
  return cwkit::exit_code(worst);
}
