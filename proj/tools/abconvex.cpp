#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abconvex/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Abstract convexity toolkit: c-transforms, antiderivatives, envelopes, Lipschitz extensions"};
  app.set_version_flag("--version", "abconvex 1.0.0");

  abconvex::CommandOptions opt;
  std::vector<std::string> commands(abconvex::kCommands.begin(), abconvex::kCommands.end());
  std::string output;
  std::string function, mapping, subset, site_function;

  app.add_option("command", opt.command, "Command to run")->required()->check(CLI::IsMember(commands));
  app.add_option("--instance", opt.instance, "Instance JSON file")->required();
  auto* f = app.add_option("--function", function, "Function name");
  auto* m = app.add_option("--mapping", mapping, "Mapping name");
  auto* s = app.add_option("--subset", subset, "Subset name (sites)");
  auto* sf = app.add_option("--site-function", site_function, "Anchor function supplying the site values");
  auto* lo = app.add_flag("--min", opt.only_min, "Only the minimal extension");
  app.add_flag("--max", opt.only_max, "Only the maximal extension")->excludes(lo);
  app.add_option("--epsilon", opt.epsilon, "Equality tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", opt.seed, "Seed for randomized verification sampling");
  app.add_option("--output", output, "Write the result here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : abconvex::kExitInputError;
  }
  if (f->count()) opt.function = function;
  if (m->count()) opt.mapping = mapping;
  if (s->count()) opt.subset = subset;
  if (sf->count()) opt.site_function = site_function;

  const abconvex::CommandResult result = abconvex::run_command(opt);
  if (output.empty()) {
    std::cout << result.json;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "abconvex: cannot write " << output << "\n";
      return abconvex::kExitInputError;
    }
    out << result.json;
  }
  return result.exit_code;
}
