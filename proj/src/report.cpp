#include "amalgam/report.hpp"

#include <cstdio>
#include <sstream>

#include "amalgam/error.hpp"

namespace amalgam {

Report::Report(std::string command) {
  tree_["command"] = std::move(command);
  tree_["sections"] = Json::object();
  tree_["checks"] = Json::array();
  tree_["passed"] = true;
}

Json& Report::section(const std::string& name) {
  Json& s = tree_["sections"][name];
  if (s.is_null()) s = Json::object();
  return s;
}

void Report::check(const std::string& name, bool passed, const std::string& detail) {
  Json c;
  c["name"] = name;
  c["passed"] = passed;
  if (!detail.empty()) c["detail"] = detail;
  tree_["checks"].push_back(std::move(c));
  tree_["passed"] = tree_["passed"].get<bool>() && passed;
}

Json Report::measured(double value, double tolerance) {
  Json m;
  m["value"] = value;
  m["tolerance"] = tolerance;
  return m;
}

bool Report::passed() const { return tree_["passed"].get<bool>(); }

std::string Report::machine() const { return tree_.dump(2) + "\n"; }

Report Report::from_machine(std::string_view text) {
  Report r;
  try {
    r.tree_ = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SpecError(std::string("machine report: ") + e.what());
  }
  if (!r.tree_.is_object() || !r.tree_.contains("command") || !r.tree_.contains("checks"))
    throw SpecError("machine report: missing command or checks");
  return r;
}

namespace {

std::string scalar(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
  if (j.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", j.get<double>());
    return buf;
  }
  if (j.is_null()) return "-";
  return j.dump();
}

bool flat(const Json& j) { return !j.is_structured(); }

bool is_measured(const Json& j) { return j.is_object() && j.size() == 2 && j.contains("value") && j.contains("tolerance"); }

bool scalar_list(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (!flat(x)) return false;
  return true;
}

bool short_list(const Json& j) {
  if (!scalar_list(j)) return false;
  std::size_t width = 0;
  for (const auto& x : j) width += scalar(x).size() + 2;
  return width <= 72;
}

bool matrix(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& row : j)
    if (!scalar_list(row)) return false;
  return true;
}

std::string inline_form(const Json& j) {
  if (is_measured(j)) return scalar(j["value"]) + " (tolerance " + scalar(j["tolerance"]) + ")";
  if (flat(j)) return scalar(j);
  std::string out = "[";
  for (std::size_t k = 0; k < j.size(); ++k) out += (k ? ", " : "") + scalar(j[k]);
  return out + "]";
}

void render(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (is_measured(value) || flat(value) || short_list(value)) {
        out << pad << key << ": " << inline_form(value) << '\n';
      } else if (matrix(value)) {
        out << pad << key << ":\n";
        std::vector<std::size_t> width;
        for (const auto& row : value)
          for (std::size_t c = 0; c < row.size(); ++c) {
            if (width.size() <= c) width.push_back(0);
            width[c] = std::max(width[c], scalar(row[c]).size());
          }
        for (const auto& row : value) {
          out << pad << "  ";
          for (std::size_t c = 0; c < row.size(); ++c) {
            const auto s = scalar(row[c]);
            out << std::string(width[c] - s.size() + (c ? 1 : 0), ' ') << s;
          }
          out << '\n';
        }
      } else {
        out << pad << key << ":\n";
        render(out, value, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& item : j) {
      if (item.is_object() && !is_measured(item)) {
        std::ostringstream inner;
        render(inner, item, indent + 2);
        std::string body = inner.str();
        body.replace(indent, 2, "- ");
        out << body;
      } else {
        out << pad << "- " << inline_form(item) << '\n';
      }
    }
  } else {
    out << pad << scalar(j) << '\n';
  }
}

}  // namespace

std::string Report::text() const {
  std::ostringstream out;
  out << tree_["command"].get<std::string>() << '\n';
  render(out, tree_["sections"], 2);
  out << "checks:\n";
  for (const auto& c : tree_["checks"]) {
    out << "  [" << (c["passed"].get<bool>() ? "PASS" : "FAIL") << "] " << c["name"].get<std::string>();
    if (c.contains("detail")) out << ": " << c["detail"].get<std::string>();
    out << '\n';
  }
  out << (passed() ? "all checks passed" : "some checks failed") << '\n';
  return out.str();
}

}  // namespace amalgam
