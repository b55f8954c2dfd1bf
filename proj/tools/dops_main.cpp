#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "dops/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"d-orthogonal polynomials, Geronimus transforms and bidiagonal chains in exact arithmetic"};
  app.require_subcommand(1);

  std::string scenario;
  std::string out = ".";
  dops::Index m = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario, "scenario JSON file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "output directory")->capture_default_str();
  };
  auto* generate = app.add_subcommand("generate", "d-OPS, dual vector and recurrence matrix through degree N");
  auto* transform = app.add_subcommand("transform", "Geronimus level m: vector, determinants, sequence");
  auto* verify = app.add_subcommand("verify", "connection matrices, bidiagonal chain and all identities");
  add_common(generate);
  add_common(transform);
  add_common(verify);
  transform->add_option("--m", m, "level 1..d")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const auto* chosen = app.get_subcommands().front();
  return dops::run_command(chosen->get_name(), scenario, m, out, std::cerr);
}
