#include "amalgam/document.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "amalgam/error.hpp"

namespace amalgam {

CharacterTable SpecDocument::table() const {
  return character_table ? *character_table : amalgam::character_table(spec->subgroup());
}

std::vector<double> SpecDocument::omega() const {
  if (!parameters.omega.empty()) return parameters.omega;
  return std::vector<double>(spec->size(), 1.0);
}

namespace {

class Reader {
 public:
  Reader(std::string source, Limits limits) : source_(std::move(source)), limits_(limits) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& message) const {
    std::ostringstream out;
    out << source_;
    if (node.IsDefined() && node.Mark().line >= 0) out << ':' << node.Mark().line + 1 << ':' << node.Mark().column + 1;
    out << ": " << field << ": " << message;
    throw SpecError(out.str());
  }

  void only_keys(const YAML::Node& node, const std::string& field, std::set<std::string> allowed) const {
    if (!node.IsMap()) fail(node, field, "expected a mapping");
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) fail(kv.first, field, "unknown key '" + key + "'");
    }
  }

  template <class T>
  T scalar(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected a scalar");
    try {
      return node.as<T>();
    } catch (const YAML::BadConversion&) {
      fail(node, field, "cannot read '" + node.Scalar() + "'");
    }
  }

  // Runs f, prefixing SpecError and BudgetExceeded messages with the node's position.
  template <class F>
  auto anchored(const YAML::Node& node, const std::string& field, F&& f) const {
    try {
      return f();
    } catch (const SpecError& e) {
      fail(node, field, e.what());
    } catch (const BudgetExceeded& e) {
      std::ostringstream out;
      out << source_ << ':' << node.Mark().line + 1 << ':' << node.Mark().column + 1 << ": " << field << ": "
          << e.what();
      throw BudgetExceeded(out.str());
    }
  }

  GroupPtr group(const YAML::Node& node, const std::string& field) const {
    const auto text = scalar<std::string>(node, field);
    return anchored(node, field, [&] {
      return std::make_shared<const FiniteGroup>(group_from_descriptor(text, limits_));
    });
  }

  Element element(const FiniteGroup& g, const YAML::Node& node, const std::string& field) const {
    const auto label = scalar<std::string>(node, field);
    return anchored(node, field, [&] { return g.element(label); });
  }

  Factor factor(const YAML::Node& node, const GroupPtr& h, const std::string& field) const {
    only_keys(node, field, {"label", "group", "symbolic", "embedding", "representatives"});
    if (node["symbolic"]) {
      for (const char* k : {"group", "embedding", "representatives"})
        if (node[k]) fail(node[k], field, std::string("'") + k + "' does not apply to a symbolic factor");
      const auto generator = scalar<std::string>(node["symbolic"], field + ".symbolic");
      const auto label = node["label"] ? scalar<std::string>(node["label"], field + ".label") : "Z x H";
      return symbolic_factor(label, generator);
    }
    if (!node["group"]) fail(node, field, "missing 'group' (or 'symbolic')");
    const GroupPtr g = group(node["group"], field + ".group");
    std::vector<std::pair<Element, Element>> images;
    if (const auto e = node["embedding"]) {
      if (!e.IsMap()) fail(e, field + ".embedding", "expected a mapping from H labels to labels in the factor");
      for (const auto& kv : e) {
        const auto sub = field + ".embedding[" + kv.first.as<std::string>() + "]";
        images.emplace_back(element(*h, kv.first, sub), element(*g, kv.second, sub));
      }
    } else if (h->order() > 1) {
      fail(node, field, "missing 'embedding' for a nontrivial subgroup");
    }
    std::vector<Element> preferred;
    if (const auto r = node["representatives"]) {
      if (!r.IsSequence()) fail(r, field + ".representatives", "expected a list of labels");
      for (std::size_t k = 0; k < r.size(); ++k)
        preferred.push_back(element(*g, r[k], field + ".representatives[" + std::to_string(k) + "]"));
    }
    const auto label = node["label"] ? scalar<std::string>(node["label"], field + ".label") : node["group"].Scalar();
    const YAML::Node anchor = node["embedding"] ? node["embedding"] : node;
    return anchored(anchor, field + ".embedding", [&] {
      return finite_factor(label, SubgroupEmbedding::from_generator_images(h, g, images), preferred);
    });
  }

  CharacterTable table(const YAML::Node& node, const FiniteGroup& h) const {
    const std::string field = "character_table";
    only_keys(node, field, {"classes", "rows"});
    const auto classes = node["classes"];
    const auto rows = node["rows"];
    if (!classes || !classes.IsSequence()) fail(node, field + ".classes", "expected a list of class representatives");
    if (!rows || !rows.IsSequence()) fail(node, field + ".rows", "expected a list of rows");
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < classes.size(); ++k)
      labels.push_back(scalar<std::string>(classes[k], field + ".classes[" + std::to_string(k) + "]"));
    std::vector<std::vector<Cyclotomic>> values;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto f = field + ".rows[" + std::to_string(r) + "]";
      if (!rows[r].IsSequence()) fail(rows[r], f, "expected a list of values");
      values.emplace_back();
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        const auto text = scalar<std::string>(rows[r][c], f);
        values.back().push_back(anchored(rows[r][c], f, [&] { return Cyclotomic::parse(text); }));
      }
    }
    return anchored(node, field, [&] { return character_table_from_values(h, labels, values); });
  }

  Cylinder cylinder(const YAML::Node& node, const AmalgamSpec& spec, const std::string& field) const {
    if (!node.IsSequence()) fail(node, field, "expected a list of [factor, element] pairs");
    Cylinder c;
    for (std::size_t k = 0; k < node.size(); ++k) {
      const auto f = field + "[" + std::to_string(k) + "]";
      const auto pair = node[k];
      if (!pair.IsSequence() || pair.size() != 2) fail(pair, f, "expected [factor, element]");
      const int i = scalar<int>(pair[0], f) - 1;
      if (i < 0 || i >= spec.size()) fail(pair[0], f, "factor index out of range 1.." + std::to_string(spec.size()));
      const Factor& fac = spec.factor(i);
      int value = 0;
      if (fac.symbolic) {
        value = scalar<int>(pair[1], f);
      } else {
        value = fac.omega.coset_of[element(fac.group(), pair[1], f)];
      }
      if (value == 0) fail(pair[1], f, "element lies in H");
      c.prefix.push_back({i, value});
    }
    anchored(node, field, [&] {
      require_admissible(spec, c);
      return 0;
    });
    return c;
  }

  Parameters parameters(const YAML::Node& node, const AmalgamSpec& spec) const {
    const std::string field = "parameters";
    only_keys(node, field, {"omega", "depth", "trials", "horizon", "seed", "truncation", "radius", "tolerance", "cylinders"});
    Parameters p;
    if (const auto o = node["omega"]) {
      if (!o.IsSequence()) fail(o, field + ".omega", "expected a list of weights");
      for (std::size_t k = 0; k < o.size(); ++k) {
        const double w = scalar<double>(o[k], field + ".omega");
        if (!(w > 0)) fail(o[k], field + ".omega", "weights must be positive");
        p.omega.push_back(w);
      }
      if (static_cast<int>(p.omega.size()) != spec.size())
        fail(o, field + ".omega", "expected one weight per factor (" + std::to_string(spec.size()) + ")");
    }
    auto bounded = [&](const char* key, auto& target, long low) {
      if (const auto n = node[key]) {
        target = scalar<std::decay_t<decltype(target)>>(n, field + "." + key);
        if (static_cast<long>(target) < low) fail(n, field + "." + key, "must be at least " + std::to_string(low));
      }
    };
    bounded("depth", p.depth, 0);
    bounded("trials", p.trials, 1);
    bounded("horizon", p.horizon, 1);
    bounded("truncation", p.truncation, 0);
    bounded("radius", p.radius, 0);
    if (const auto n = node["seed"]) p.seed = scalar<std::uint64_t>(n, field + ".seed");
    if (const auto n = node["tolerance"]) {
      p.tolerance = scalar<double>(n, field + ".tolerance");
      if (!(p.tolerance > 0)) fail(n, field + ".tolerance", "must be positive");
    }
    if (const auto cs = node["cylinders"]) {
      if (!cs.IsSequence()) fail(cs, field + ".cylinders", "expected a list of cylinders");
      for (std::size_t k = 0; k < cs.size(); ++k)
        p.cylinders.push_back(cylinder(cs[k], spec, field + ".cylinders[" + std::to_string(k) + "]"));
    }
    return p;
  }

  SpecDocument document(const YAML::Node& root) const {
    if (!root.IsMap()) fail(root, "document", "expected a mapping at the top level");
    only_keys(root, "document", {"name", "subgroup", "factors", "character_table", "parameters"});
    if (!root["subgroup"]) fail(root, "subgroup", "missing");
    const GroupPtr h = group(root["subgroup"], "subgroup");
    if (!root["factors"]) fail(root, "factors", "missing");
    const auto fs = root["factors"];
    if (!fs.IsSequence() || fs.size() == 0) fail(fs, "factors", "expected a nonempty list of factors");
    std::vector<Factor> factors;
    for (std::size_t k = 0; k < fs.size(); ++k) factors.push_back(factor(fs[k], h, "factors[" + std::to_string(k) + "]"));

    SpecDocument doc;
    doc.source = source_;
    doc.spec = anchored(fs, "factors", [&] { return std::make_shared<const AmalgamSpec>(h, std::move(factors), limits_); });
    if (const auto t = root["character_table"]) doc.character_table = table(t, *h);
    if (const auto p = root["parameters"]) doc.parameters = parameters(p, *doc.spec);
    return doc;
  }

 private:
  std::string source_;
  Limits limits_;
};

}  // namespace

SpecDocument parse_document(std::string_view text, const std::string& source, const Limits& limits) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    std::ostringstream out;
    out << source << ':' << e.mark.line + 1 << ':' << e.mark.column + 1 << ": syntax: " << e.msg;
    throw SpecError(out.str());
  }
  return Reader(source, limits).document(root);
}

SpecDocument load_document(const std::string& path, const Limits& limits) {
  std::ifstream in(path);
  if (!in) throw SpecError(path + ": cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_document(text.str(), path, limits);
}

}  // namespace amalgam
