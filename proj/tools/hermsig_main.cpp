// hermsig command line tool; see README.md for the input schemas.
#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "hermsig/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact signatures of hermitian forms over algebras with involution"};
  app.require_subcommand(1);

  hermsig::Request req;
  int ordering = -1;

  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"classify", "Per-ordering nil/lambda/M/m/c profile of an algebra"},
      {"signature", "Signed signatures of a hermitian form"},
      {"maximal", "Per-ordering eta-maximality of a form or element"},
      {"trace-form", "Involution trace form T_{(A,sigma,u)} and its signatures"},
      {"x-sigma", "Orderings where the involution is positive"},
      {"ps-check", "Decide property (PS'): X~_F = X_sigma"},
      {"certify", "Produce a sum-of-hermitian-squares certificate"},
      {"verify", "Check a certificate by exact arithmetic"},
      {"audit", "Cross-check trace-form positivity against maximality"},
  };
  for (const auto& [name, desc] : subcommands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--input", req.input_path, "Input JSON file")->required();
    sub->add_option("--ordering", ordering, "Restrict to one ordering index");
    sub->add_flag("--json", req.json_output, "Machine-readable output");
    sub->add_option("--seed", req.seed, "Seed for randomized strategies (default 0)");
    sub->add_option("--height-bound", req.height_bound, "Coordinate height bound for searches");
    sub->add_option("--max-exponent", req.max_exponent, "Exponent bound 2^s for searches");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 64;
  }

  req.subcommand = app.get_subcommands().front()->get_name();
  if (ordering >= 0) req.ordering = ordering;

  const hermsig::RunResult result = hermsig::run(req);
  std::cout << result.output;
  return result.exit_code;
}
