// One line per acceptance criterion; exit status 0 iff every line passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "amalgam/commands.hpp"
#include "amalgam/error.hpp"
#include "amalgam/fock.hpp"
#include "amalgam/kms.hpp"
#include "amalgam/ktheory.hpp"
#include "amalgam/smith.hpp"

using namespace amalgam;

namespace {

const std::string specs = SPEC_DIR;

SpecDocument bundled(const std::string& name) { return load_document(specs + "/" + name); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool passed = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

int failures = 0;

void criterion(int n, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.passed = false;
    o.detail << "[exception: " << e.what() << "] ";
  }
  if (!o.passed) ++failures;
  std::printf("criterion %2d: %s  %s  %s(%.2f s)\n", n, o.passed ? "PASS" : "FAIL", title.c_str(),
              o.detail.str().c_str(), seconds_since(t0));
  std::fflush(stdout);
}

using Rows = std::vector<std::vector<long>>;

bool orthogonal(const FiniteGroup& g) {
  return check_orthogonality(g, character_table(g)).ok();
}

bool divides_chain(const std::vector<mpz_class>& d) {
  for (std::size_t k = 0; k + 1 < d.size(); ++k) {
    if (d[k] == 0 && d[k + 1] != 0) return false;
    if (d[k] != 0 && d[k + 1] % d[k] != 0) return false;
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "golden A_Gamma for Z4 *_Z2 Z6 and S4 *_S3 S4", [](Outcome& o) {
    const Rows sl = {{0, 0, 1, 0}, {0, 0, 0, 1}, {2, 0, 0, 0}, {0, 2, 0, 0}};
    const Rows s4 = {{0, 0, 0, 1, 0, 1}, {0, 0, 0, 0, 1, 1}, {0, 0, 0, 1, 1, 2},
                     {1, 0, 1, 0, 0, 0}, {0, 1, 1, 0, 0, 0}, {1, 1, 2, 0, 0, 0}};
    for (const auto& [name, golden] : {std::pair{"sl2z.spec", sl}, std::pair{"s4s4.spec", s4}}) {
      const auto t0 = std::chrono::steady_clock::now();
      const Report r = run_invariants(bundled(name));
      const double dt = seconds_since(t0);
      o.require(r.tree()["sections"]["a_gamma"]["matrix"] == Json(golden), std::string(name) + " matrix");
      o.require(dt < 2.0, std::string(name) + " runtime");
      o.detail << name << " " << dt << " s; ";
    }
  });

  criterion(2, "golden K-groups", [](Outcome& o) {
    const auto sl = run_invariants(bundled("sl2z.spec")).tree()["sections"]["k_theory"];
    const auto s4 = run_invariants(bundled("s4s4.spec")).tree()["sections"]["k_theory"];
    o.require(sl["K0"] == "0" && sl["K1"] == "0", "SL(2,Z)");
    o.require(s4["K0"] == "Z ⊕ Z/4" && s4["K1"] == "Z", "S4 case");
    o.detail << "SL(2,Z): K0=" << sl["K0"].get<std::string>() << " K1=" << sl["K1"].get<std::string>()
             << "; S4: K0=" << s4["K0"].get<std::string>() << " K1=" << s4["K1"].get<std::string>() << " ";
  });

  criterion(3, "character tables: orthogonality and the S3 table", [](Outcome& o) {
    int groups = 0;
    for (int n = 1; n <= 12; ++n, ++groups) o.require(orthogonal(cyclic(n)), "Z_" + std::to_string(n));
    o.require(orthogonal(symmetric(3)), "S3");
    o.require(orthogonal(symmetric(4)), "S4");
    o.require(orthogonal(dihedral(4)), "D4");
    o.require(orthogonal(quaternion8()), "Q8");
    groups += 4;
    const FiniteGroup s3 = symmetric(3);
    const auto t = character_table(s3);
    const Element cols[] = {0, s3.element("(1 2)"), s3.element("(1 2 3)")};
    std::vector<std::vector<long>> rows;
    for (int k = 0; k < t.size(); ++k) {
      rows.emplace_back();
      for (Element g : cols) rows.back().push_back(t.on(k, g).rational().get_num().get_si());
    }
    std::sort(rows.begin(), rows.end());
    const std::vector<std::vector<long>> expected = {{1, -1, 1}, {1, 1, 1}, {2, 0, -1}};
    o.require(rows == expected, "S3 table");
    o.detail << groups << " groups ";
  });

  criterion(4, "Smith normal form on 500 random matrices", [](Outcome& o) {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> size(1, 8), entry(-5, 5);
    int bad = 0;
    for (int trial = 0; trial < 500; ++trial) {
      const int r = size(rng), c = size(rng);
      IntMatrix m(r, std::vector<mpz_class>(c));
      for (auto& row : m)
        for (auto& x : row) x = entry(rng);
      const auto snf = smith_normal_form(m);
      bool ok = snf.U * m * snf.V == snf.D;
      ok = ok && abs(determinant(snf.U)) == 1 && abs(determinant(snf.V)) == 1;
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
          if (i != j && snf.D[i][j] != 0) ok = false;
      const auto d = snf.invariant_factors();
      for (const auto& x : d)
        if (x < 0) ok = false;
      ok = ok && divides_chain(d);
      ok = ok && smith_normal_form(transpose(m)).invariant_factors() == d;
      if (!ok) ++bad;
    }
    o.require(bad == 0, std::to_string(bad) + " matrices");
    o.detail << "500 matrices ";
  });

  criterion(5, "simplicity and ideals", [](Outcome& o) {
    const auto s4 = bundled("s4s4.spec");
    const auto simple = simplicity_check(*s4.spec);
    const auto a4 = build_a_gamma(*s4.spec, s4.table());
    o.require(simple.simple && simple.witness >= 0, "S4 witness");
    o.require(irreducible(a4), "S4 irreducible");
    const auto sl = bundled("sl2z.spec");
    const auto asl = build_a_gamma(*sl.spec, sl.table());
    const auto poset = ideal_lattice(asl);
    o.require(!simplicity_check(*sl.spec).simple, "SL(2,Z) condition should fail");
    o.require(poset.classes.size() == 2 && !poset.comparable(0, 1), "two incomparable classes");
    o.require(poset.ideal_count() == 4, "four hereditary subsets");
    o.detail << "S4 witness factor " << simple.witness + 1 << "; SL(2,Z) " << poset.classes.size() << " classes, "
             << poset.ideal_count() << " hereditary subsets ";
  });

  criterion(6, "KMS inverse temperature and factor type", [](Outcome& o) {
    const auto sl = bundled("sl2z.spec");
    const auto s4 = bundled("s4s4.spec");
    const auto z3 = bundled("z2cubed.spec");
    const auto a = solve_kms(*sl.spec, sl.omega());
    const auto b = solve_kms(*s4.spec, s4.omega());
    o.require(a.beta_residual <= 1e-12 && b.beta_residual <= 1e-12, "beta residual");
    o.require(std::abs(std::exp(-a.beta) - 1 / std::sqrt(2.0)) <= 1e-10, "SL(2,Z) e^-beta");
    o.require(std::abs(std::exp(-b.beta) - 1.0 / 3) <= 1e-12, "S4 e^-beta");
    const auto t4 = factor_type(*s4.spec, s4.omega());
    const auto t3 = factor_type(*z3.spec, z3.omega());
    o.require(t4.classified && std::abs(t4.lambda - 1.0 / 9) <= 1e-12, "S4 lambda");
    // |I| = 3, [G:H] = 2
    o.require(t3.classified && std::abs(t3.lambda - 1.0 / ((3 - 1) * (2 - 1))) <= 1e-12, "homogeneous lambda");
    o.detail << "e^-beta = " << std::exp(-a.beta) << ", " << std::exp(-b.beta) << "; lambda = " << t4.lambda << ", "
             << t3.lambda << " ";
  });

  criterion(7, "exact stationarity to depth 3", [](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    for (const char* name : {"sl2z.spec", "s4s4.spec"}) {
      const auto doc = bundled(name);
      const auto st = verify_stationarity(*doc.spec, solve_kms(*doc.spec, doc.omega()), 3, 1e-10);
      o.require(st.ok(), name);
      o.detail << name << " " << st.cylinders << " cylinders, residual " << st.max_residual << "; ";
    }
    o.require(seconds_since(t0) < 30, "runtime");
  });

  criterion(8, "Monte Carlo depth-1 frequencies", [](Outcome& o) {
    for (const char* name : {"sl2z.spec", "s4s4.spec"}) {
      const auto doc = bundled(name);
      const auto& p = doc.parameters;
      const auto sol = solve_kms(*doc.spec, doc.omega());
      const auto walk = random_walk(*doc.spec, sol.mu, 100000, p.horizon, p.seed);
      double worst = 0;
      for (std::size_t k = 0; k < walk.cylinders.size(); ++k)
        worst = std::max(worst, std::abs(walk.frequency(k) - nu_cylinder(*doc.spec, sol, walk.cylinders[k])) /
                                    walk.std_error(k));
      o.require(worst <= 3, std::string(name) + " within 3 SE");
      const auto again = random_walk(*doc.spec, sol.mu, 100000, p.horizon, p.seed);
      o.require(again.counts == walk.counts && again.unstable == walk.unstable, std::string(name) + " repeatable");
      o.detail << name << " horizon " << p.horizon << " max " << worst << " SE; ";
    }
  });

  criterion(9, "Perron consistency", [](Outcome& o) {
    const auto s4 = bundled("s4s4.spec");
    const auto table = s4.table();
    const auto a = build_a_gamma(*s4.spec, table);
    const auto pr = perron_check(*s4.spec, solve_kms(*s4.spec, s4.omega()), a, table.degrees);
    o.require(!pr.skipped && std::abs(pr.radius - 1) <= 1e-9, "S4 radius");
    const auto sl = bundled("sl2z.spec");
    const auto asl = build_a_gamma(*sl.spec, sl.table());
    std::vector<std::vector<double>> m;
    for (const auto& row : asl.entries) m.emplace_back(row.begin(), row.end());
    const double root = perron_root(m);
    o.require(std::abs(root - std::sqrt(2.0)) <= 1e-9, "SL(2,Z) root");
    o.detail << "radius " << pr.radius << "; root " << root << " ";
  });

  criterion(10, "Fock relations and the free group matrix", [](Outcome& o) {
    for (const auto& [name, L] : {std::pair{"sl2z.spec", 5}, std::pair{"s4s4.spec", 3}}) {
      const auto fr = verify_relations(bundled(name).spec, L);
      o.require(fr.relations.at(0).full_residual == 0 && fr.relations.at(1).full_residual == 0,
                std::string(name) + " full truncation");
      o.require(fr.relations.at(2).interior_residual == 0 && fr.relations.at(3).interior_residual == 0,
                std::string(name) + " interior");
      o.require(fr.ok(), std::string(name) + " report");
      o.detail << name << " L=" << L << " dim " << fr.dimension << "; ";
    }
    const auto ex = f2_example(5);
    const std::vector<std::vector<int>> golden = {{1, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 0}, {1, 1, 0, 1}};
    o.require(ex.matrix == golden, "free group matrix");
    o.require(ex.ok(), "free group relations");
  });

  criterion(11, "hyperbolicity and Serre trees", [](Outcome& o) {
    for (const auto& [name, radius] : {std::pair{"sl2z.spec", 4}, std::pair{"s4s4.spec", 3}}) {
      const auto doc = bundled(name);
      const mpq_class delta = hyperbolicity_delta(*doc.spec, radius);
      const auto tree = serre_tree(*doc.spec, radius);
      o.require(delta == 0, std::string(name) + " delta");
      o.require(tree.connected && tree.acyclic, std::string(name) + " tree");
      o.detail << name << " r=" << radius << " delta " << delta.get_str() << ", tree " << tree.vertices.size()
               << " vertices; ";
    }
  });

  std::printf("%s\n", failures == 0 ? "all criteria passed" : "some criteria failed");
  return failures == 0 ? 0 : 1;
}
