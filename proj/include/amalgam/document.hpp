#pragma once

// Spec documents: a YAML description of H, the factors with their
// embeddings, optional overrides and command parameters.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amalgam/boundary.hpp"
#include "amalgam/chartab.hpp"
#include "amalgam/product.hpp"

namespace amalgam {

struct Parameters {
  /// Gauge weights; empty means all 1.
  std::vector<double> omega;
  int depth = 3;
  long trials = 100000;
  int horizon = 64;
  std::uint64_t seed = 0;
  int truncation = 5;
  int radius = 3;
  double tolerance = 1e-10;
  /// Extra cylinders whose measure is reported by `kms`.
  std::vector<Cylinder> cylinders;
};

struct SpecDocument {
  std::string source;
  SpecPtr spec;
  /// User-supplied table of H, already checked for orthogonality.
  std::optional<CharacterTable> character_table;
  Parameters parameters;

  /// The override when present, otherwise the computed table of H.
  CharacterTable table() const;
  /// parameters.omega, or all ones.
  std::vector<double> omega() const;
};

/// Throws SpecError with "source:line:column: field: message" diagnostics.
SpecDocument parse_document(std::string_view text, const std::string& source = "<input>",
                            const Limits& limits = {});
SpecDocument load_document(const std::string& path, const Limits& limits = {});

}  // namespace amalgam
