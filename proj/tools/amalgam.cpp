// amalgam: invariants, KMS data, random walks, Fock relations and Serre
// trees for amalgamated free products described by a spec document.

#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "amalgam/commands.hpp"
#include "amalgam/error.hpp"

using namespace amalgam;

namespace {

struct Flags {
  std::string document;
  std::string format = "text";
  std::optional<std::vector<double>> omega;
  std::optional<int> depth;
  std::optional<long> trials;
  std::optional<int> horizon;
  std::optional<std::uint64_t> seed;
  std::optional<int> truncation;
  std::optional<int> radius;
  std::size_t max_order = Limits{}.max_group_order;
  std::size_t ball_budget = Limits{}.ball_budget;
  RunOptions options;
};

void apply(const Flags& f, SpecDocument& doc) {
  Parameters& p = doc.parameters;
  if (f.omega) {
    if (static_cast<int>(f.omega->size()) != doc.spec->size())
      throw SpecError("--omega: expected " + std::to_string(doc.spec->size()) + " weights");
    p.omega = *f.omega;
  }
  if (f.depth) p.depth = *f.depth;
  if (f.trials) p.trials = *f.trials;
  if (f.horizon) p.horizon = *f.horizon;
  if (f.seed) p.seed = *f.seed;
  if (f.truncation) p.truncation = *f.truncation;
  if (f.radius) p.radius = *f.radius;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants and checks for amalgamated free products"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&](CLI::App* sub) {
    sub->add_option("document", f.document, "spec document (YAML)")->required()->check(CLI::ExistingFile);
    sub->add_option("--format", f.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("--max-order", f.max_order, "largest group order accepted");
    sub->add_option("--ball-budget", f.ball_budget, "largest ball enumerated");
  };
  auto* invariants = app.add_subcommand("invariants", "A_Gamma, K-theory, ideals and simplicity");
  common(invariants);
  auto* kms = app.add_subcommand("kms", "inverse temperature, harmonic measure and stationarity");
  common(kms);
  kms->add_option("--omega", f.omega, "gauge weights, one per factor")->delimiter(',');
  kms->add_option("--max-depth", f.depth, "cylinder depth for the measure table and stationarity");
  kms->add_flag("--force-perron", f.options.force_perron, "run the Perron check on reducible A_Gamma");
  auto* simulate = app.add_subcommand("simulate", "seeded random walks against the harmonic measure");
  common(simulate);
  simulate->add_option("--omega", f.omega, "gauge weights, one per factor")->delimiter(',');
  simulate->add_option("--trials", f.trials, "number of walks")->check(CLI::PositiveNumber);
  simulate->add_option("--horizon", f.horizon, "steps per walk")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", f.seed, "walk t uses seed + t");
  simulate->add_flag("--martin", f.options.martin, "add the Martin kernel cross-check");
  simulate->add_option("--martin-trials", f.options.martin_trials, "walks per Martin kernel estimate")
      ->check(CLI::PositiveNumber);
  auto* verify = app.add_subcommand("verify", "Fock relations and hyperbolicity");
  common(verify);
  verify->add_option("--truncation,-L", f.truncation, "largest word length in the Fock model")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--radius", f.radius, "ball radius for delta")->check(CLI::NonNegativeNumber);
  verify->add_flag("--dump-operators", f.options.dump_operators, "include every T_g as row col value lines");
  verify->add_flag("--f2", f.options.f2, "add the free group example");
  auto* tree = app.add_subcommand("tree", "truncated Bass-Serre tree");
  common(tree);
  tree->add_option("--radius", f.radius, "ball radius")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Limits limits;
    limits.max_group_order = f.max_order;
    limits.ball_budget = f.ball_budget;
    SpecDocument doc = load_document(f.document, limits);
    apply(f, doc);
    const Report report = run(command, doc, f.options);
    std::cout << (f.format == "machine" ? report.machine() : report.text());
    return report.exit_code();
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 3;
  } catch (const DefectError& e) {
    std::cerr << "internal check failed: " << e.what() << '\n';
    return 1;
  }
}
