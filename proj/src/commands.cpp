#include "amalgam/commands.hpp"

#include <cmath>
#include <sstream>

#include "amalgam/error.hpp"
#include "amalgam/fock.hpp"
#include "amalgam/kms.hpp"
#include "amalgam/ktheory.hpp"
#include "amalgam/smith.hpp"

namespace amalgam {

namespace {

void describe_spec(Report& r, const SpecDocument& doc) {
  const AmalgamSpec& spec = *doc.spec;
  Json& s = r.section("spec");
  s["source"] = doc.source;
  s["subgroup_order"] = spec.subgroup().order();
  Json factors = Json::array();
  for (const auto& f : spec.factors()) {
    Json j;
    j["label"] = f.label;
    if (f.symbolic) {
      j["symbolic"] = f.generator;
    } else {
      j["order"] = f.group().order();
      j["index"] = f.omega.size();
      Json reps = Json::array();
      for (int c = 1; c < f.omega.size(); ++c) reps.push_back(f.group().label(f.representative(c)));
      j["coset_representatives"] = reps;
    }
    factors.push_back(j);
  }
  s["factors"] = factors;
}

std::string z_string(const mpz_class& z) { return z.get_str(); }

Json vertex_labels(const AGammaMatrix& a, const std::vector<int>& vertices) {
  Json j = Json::array();
  for (int v : vertices) j.push_back(a.vertex_label(v));
  return j;
}

}  // namespace

Report run_invariants(const SpecDocument& doc) {
  const AmalgamSpec& spec = *doc.spec;
  spec.require_finite("invariants");
  Report r("invariants");
  describe_spec(r, doc);

  const CharacterTable table = doc.table();
  const auto orth = check_orthogonality(spec.subgroup(), table);
  {
    Json& t = r.section("character_table");
    t["source"] = doc.character_table ? "document" : "computed";
    t["degrees"] = table.degrees;
    Json rows = Json::array();
    for (int k = 0; k < table.size(); ++k) {
      Json row = Json::array();
      for (int c = 0; c < static_cast<int>(table.values[k].size()); ++c) row.push_back(table.at(k, c).to_string());
      rows.push_back(row);
    }
    t["values"] = rows;
  }
  r.check("character table orthogonality", orth.ok(), orth.detail);

  const AGammaMatrix a = build_a_gamma(spec, table);
  {
    Json& m = r.section("a_gamma");
    Json labels = Json::array();
    for (int v = 0; v < a.size(); ++v) labels.push_back(a.vertex_label(v));
    m["vertices"] = labels;
    m["matrix"] = a.entries;
    m["transpose_sensitive"] = a.transpose_sensitive();
  }

  const IntMatrix one = one_minus(a);
  const SmithDecomposition snf = smith_normal_form(one);
  const KGroups k = k_groups_from_smith(snf);
  {
    Json& kg = r.section("k_theory");
    Json inv = Json::array();
    for (const auto& d : snf.invariant_factors()) inv.push_back(z_string(d));
    kg["invariant_factors_of_1_minus_a"] = inv;
    kg["K0"] = k.k0_string();
    kg["K1"] = k.k1_string();
  }
  r.check("Smith form U(1-A)V = D", snf.U * one * snf.V == snf.D);

  const bool irr = irreducible(a);
  const IdealPoset poset = ideal_lattice(a, spec.limits().max_hereditary_subsets);
  {
    Json& id = r.section("ideals");
    id["irreducible"] = irr;
    Json classes = Json::array();
    for (const auto& c : poset.classes) classes.push_back(vertex_labels(a, c));
    id["classes"] = classes;
    Json order = Json::array();
    for (std::size_t x = 0; x < poset.classes.size(); ++x)
      for (std::size_t y = 0; y < poset.classes.size(); ++y)
        if (poset.below[x][y]) order.push_back(Json::array({x, y}));
    id["class_order"] = order;
    id["hereditary_subsets"] = poset.ideal_count();
    Json subsets = Json::array();
    for (const auto& h : poset.hereditary) {
      Json j;
      j["classes"] = h;
      j["saturation"] = vertex_labels(a, poset.saturation(h));
      subsets.push_back(j);
    }
    id["lattice"] = subsets;
    Json hasse = Json::array();
    for (const auto& [x, y] : poset.hasse) hasse.push_back(Json::array({x, y}));
    id["hasse_edges"] = hasse;
  }

  const SimplicityResult simple = simplicity_check(spec);
  {
    Json& s = r.section("simplicity");
    s["simple"] = simple.simple;
    s["witness_factor"] = simple.witness < 0 ? Json(nullptr) : Json(simple.witness + 1);
    Json cores = Json::array();
    for (const auto& c : simple.cores) cores.push_back(c.size());
    s["core_orders"] = cores;
  }
  return r;
}

Report run_kms(const SpecDocument& doc, const RunOptions& options) {
  const AmalgamSpec& spec = *doc.spec;
  const Parameters& p = doc.parameters;
  const auto omega = doc.omega();
  Report r("kms");
  describe_spec(r, doc);

  const KmsSolution sol = solve_kms(spec, omega);
  {
    Json& k = r.section("temperature");
    k["omega"] = omega;
    k["beta"] = sol.beta;
    k["beta_residual"] = Report::measured(sol.beta_residual, 1e-12);
    k["boundary_case"] = sol.boundary_case;
    k["decay"] = sol.decay;
  }
  r.check("beta equation residual", sol.beta_residual <= 1e-12);
  {
    Json& m = r.section("measure");
    m["C"] = sol.C;
    m["mu"] = sol.mu;
    m["mu_residual"] = Report::measured(sol.mu_residual, 1e-12);
    Json table = Json::array();
    for (int d = 1; d <= p.depth; ++d)
      for (const auto& c : refine(spec, Cylinder{}, d)) {
        Json row;
        row["cylinder"] = to_string(spec, c);
        row["nu"] = nu_cylinder(spec, sol, c);
        table.push_back(row);
      }
    m["nu"] = table;
    if (!p.cylinders.empty()) {
      Json extra = Json::array();
      for (const auto& c : p.cylinders) {
        Json row;
        row["cylinder"] = to_string(spec, c);
        row["nu"] = nu_cylinder(spec, sol, c);
        extra.push_back(row);
      }
      m["requested"] = extra;
    }
  }
  r.check("mu system residual", sol.mu_residual <= 1e-12);

  const StationarityReport st = verify_stationarity(spec, sol, p.depth, p.tolerance);
  {
    Json& s = r.section("stationarity");
    s["max_depth"] = st.max_depth;
    s["cylinders"] = st.cylinders;
    s["max_residual"] = Report::measured(st.max_residual, st.tolerance);
    s["worst"] = to_string(spec, st.worst);
  }
  r.check("stationarity mu * nu = nu", st.ok());

  {
    Json& pr = r.section("perron");
    if (spec.all_finite()) {
      const CharacterTable table = doc.table();
      const AGammaMatrix a = build_a_gamma(spec, table);
      std::vector<std::vector<double>> entries;
      for (const auto& row : a.entries) entries.emplace_back(row.begin(), row.end());
      pr["root_of_a_gamma"] = perron_root(entries);
      const PerronReport perron = perron_check(spec, sol, a, table.degrees, options.force_perron);
      pr["skipped"] = perron.skipped;
      if (!perron.notice.empty()) pr["notice"] = perron.notice;
      if (!perron.skipped) {
        pr["radius"] = Report::measured(perron.radius, perron.tolerance);
        pr["vector"] = perron.y;
        pr["positive"] = perron.positive;
        r.check("Perron radius of decay-weighted A^t", perron.ok());
      }
    } else {
      pr["skipped"] = true;
      pr["notice"] = "A_Gamma needs finite factors";
    }
  }

  const FactorType type = factor_type(spec, omega);
  Json& ft = r.section("factor_type");
  ft["type"] = type.to_string();
  if (type.classified) ft["lambda"] = type.lambda;
  return r;
}

Report run_simulate(const SpecDocument& doc, const RunOptions& options) {
  const AmalgamSpec& spec = *doc.spec;
  const Parameters& p = doc.parameters;
  Report r("simulate");
  describe_spec(r, doc);
  const KmsSolution sol = solve_kms(spec, doc.omega());
  const WalkReport walk = random_walk(spec, sol.mu, p.trials, p.horizon, p.seed);

  Json& w = r.section("walk");
  w["trials"] = walk.trials;
  w["horizon"] = walk.horizon;
  w["seed"] = walk.seed;
  w["unsettled"] = walk.unstable;
  w["warning"] = walk.warning();
  if (walk.warning()) w["notice"] = "more than 1% of walks changed their first syllable in the final quarter; raise the horizon";
  Json rows = Json::array();
  double worst = 0;
  for (std::size_t k = 0; k < walk.cylinders.size(); ++k) {
    const double nu = nu_cylinder(spec, sol, walk.cylinders[k]);
    const double se = walk.std_error(k);
    const double z = se > 0 ? std::abs(walk.frequency(k) - nu) / se : (walk.frequency(k) == nu ? 0 : INFINITY);
    worst = std::max(worst, z);
    Json row;
    row["cylinder"] = to_string(spec, walk.cylinders[k]);
    row["count"] = walk.counts[k];
    row["frequency"] = walk.frequency(k);
    row["std_error"] = se;
    row["nu"] = nu;
    row["z"] = Report::measured(z, 3.0);
    rows.push_back(row);
  }
  w["cylinders"] = rows;
  Json factors = Json::array();
  for (int i = 0; i < spec.size(); ++i) {
    double nu = 0;
    for (const auto& c : walk.cylinders)
      if (c.prefix.front().factor == i) nu += nu_cylinder(spec, sol, c);
    Json row;
    row["factor"] = spec.factor(i).label;
    row["frequency"] = walk.factor_frequency(i);
    row["std_error"] = walk.factor_std_error(i);
    row["nu"] = nu;
    factors.push_back(row);
  }
  w["factors"] = factors;
  std::ostringstream detail;
  detail << "largest deviation " << worst << " standard errors";
  r.check("depth-1 frequencies within 3 standard errors of nu", worst <= 3.0, detail.str());

  if (options.martin) {
    Json& m = r.section("martin");
    Json list = Json::array();
    for (int i = 0; i < spec.size(); ++i) {
      if (spec.factor(i).symbolic) continue;
      const MartinReport mk =
          martin_kernel_crosscheck(spec, sol, i, spec.factor(i).representative(1), options.martin_trials, p.seed);
      Json row;
      row["factor"] = spec.factor(i).label;
      row["generator"] = spec.factor(i).group().label(mk.generator);
      row["cylinder"] = to_string(spec, mk.cylinder);
      row["exact"] = mk.exact;
      row["estimate"] = mk.estimate;
      row["std_error"] = mk.std_error;
      row["bias_bound"] = mk.bias_bound;
      row["undecided"] = mk.undecided;
      list.push_back(row);
      r.check("Martin kernel " + spec.factor(i).label, mk.ok());
    }
    m["kernels"] = list;
  }
  return r;
}

Report run_verify(const SpecDocument& doc, const RunOptions& options) {
  const AmalgamSpec& spec = *doc.spec;
  const Parameters& p = doc.parameters;
  Report r("verify");
  describe_spec(r, doc);

  const TruncatedFock fock(doc.spec, p.truncation);
  const FockReport fr = verify_relations(fock);
  {
    Json& f = r.section("fock");
    f["truncation"] = fr.truncation;
    f["dimension"] = fr.dimension;
    f["interior"] = fr.interior;
    f["generators"] = fock.generators().size();
    Json rel = Json::array();
    for (const auto& c : fr.relations) {
      Json j;
      j["relation"] = c.name;
      j["instances"] = c.instances;
      j["full_residual"] = c.full_residual;
      j["interior_residual"] = c.interior_residual;
      if (c.defect_rank >= 0) j["defect_rank"] = c.defect_rank;
      j["exact_on"] = c.full_required ? "full truncation" : "interior";
      rel.push_back(j);
      r.check("Fock: " + c.name, c.ok());
    }
    f["relations"] = rel;
    f["grading"] = fr.grading;
    f["initial_projections"] = fr.initial_projections;
    f["subgroup_multiplicities"] = fr.subgroup_multiplicities;
    f["all_irreducibles_present"] = fr.all_irreducibles_present;
    r.check("T_g raises length by one", fr.grading);
    r.check("T_g* T_g is a 0/1 diagonal", fr.initial_projections);
    if (options.dump_operators) {
      Json ops;
      for (std::size_t g = 0; g < fock.generators().size(); ++g)
        ops[fock.generators()[g].label] = fock.T(g).coordinates();
      f["operators"] = ops;
    }
  }

  const mpq_class delta = hyperbolicity_delta(spec, p.radius);
  {
    Json& h = r.section("hyperbolicity");
    h["radius"] = p.radius;
    h["delta"] = delta.get_str();
  }
  r.check("delta = 0 on the ball", delta == 0);

  if (options.f2) {
    const F2Example ex = f2_example(p.truncation);
    Json& f = r.section("free_group");
    f["letters"] = ex.labels;
    f["matrix"] = ex.matrix;
    f["creation_matches"] = ex.creation_matches;
    f["vacuum_sum"] = ex.vacuum_sum;
    f["initial_sums"] = ex.initial_sums;
    f["kills_inverse"] = ex.kills_inverse;
    r.check("free group Cuntz-Krieger example", ex.ok());
  }
  return r;
}

Report run_tree(const SpecDocument& doc) {
  const AmalgamSpec& spec = *doc.spec;
  Report r("tree");
  describe_spec(r, doc);
  const SerreTree tree = serre_tree(spec, doc.parameters.radius);
  Json& t = r.section("serre_tree");
  t["radius"] = doc.parameters.radius;
  t["vertices"] = tree.vertices.size();
  t["edges"] = tree.edges.size();
  Json adjacency = Json::array();
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const auto [a, b] = tree.edges[e];
    adjacency.push_back(tree.vertices[a] + " -- " + tree.vertices[b] + "  [" + tree.edge_labels[e] + "]");
  }
  t["adjacency"] = adjacency;
  t["connected"] = tree.connected;
  t["acyclic"] = tree.acyclic;
  r.check("Serre tree truncation connected", tree.connected);
  r.check("Serre tree truncation acyclic", tree.acyclic);
  return r;
}

Report run(const std::string& command, const SpecDocument& doc, const RunOptions& options) {
  if (command == "invariants") return run_invariants(doc);
  if (command == "kms") return run_kms(doc, options);
  if (command == "simulate") return run_simulate(doc, options);
  if (command == "verify") return run_verify(doc, options);
  if (command == "tree") return run_tree(doc);
  throw SpecError("unknown command '" + command + "'");
}

}  // namespace amalgam
