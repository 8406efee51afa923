#pragma once

// The CLI subcommands as library calls: each turns a spec document into a
// report whose checks decide the exit code.

#include <string>

#include "amalgam/document.hpp"
#include "amalgam/report.hpp"

namespace amalgam {

struct RunOptions {
  /// kms: run the Perron check even when A_Γ is reducible.
  bool force_perron = false;
  /// simulate: add the Martin kernel cross-check for each finite factor.
  bool martin = false;
  long martin_trials = 20000;
  /// verify: add the coordinate dump of every T_g.
  bool dump_operators = false;
  /// verify: add the free group example.
  bool f2 = false;
};

Report run_invariants(const SpecDocument& doc);
Report run_kms(const SpecDocument& doc, const RunOptions& options = {});
Report run_simulate(const SpecDocument& doc, const RunOptions& options = {});
Report run_verify(const SpecDocument& doc, const RunOptions& options = {});
Report run_tree(const SpecDocument& doc);

/// Dispatches on the subcommand name; throws SpecError for an unknown one.
Report run(const std::string& command, const SpecDocument& doc, const RunOptions& options = {});

}  // namespace amalgam
