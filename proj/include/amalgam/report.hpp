#pragma once

// Command results as an ordered JSON tree, rendered either as stable JSON or
// as indented text.

#include <json.hpp>
#include <string>
#include <string_view>

namespace amalgam {

using Json = nlohmann::ordered_json;

class Report {
 public:
  explicit Report(std::string command);

  /// The named top-level section, created on first use.
  Json& section(const std::string& name);
  void check(const std::string& name, bool passed, const std::string& detail = "");
  /// A checked number with the tolerance it was judged against.
  static Json measured(double value, double tolerance);

  bool passed() const;
  int exit_code() const { return passed() ? 0 : 1; }
  const Json& tree() const { return tree_; }

  std::string machine() const;
  std::string text() const;
  static Report from_machine(std::string_view text);

 private:
  Report() = default;
  Json tree_;
};

}  // namespace amalgam
