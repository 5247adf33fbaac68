// One line per acceptance criterion; exit status 1 if any line fails.
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "algebra/linear.hpp"
#include "graphs.hpp"
#include "obstruction/obstruction.hpp"

using namespace jumploci;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> fixtures(const std::string& ext) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(FIXTURE_DIR))
    if (e.is_regular_file() && e.path().extension() == ext) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

IntMatrix coordinate_basis(std::size_t n, std::uint32_t mask) {
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1) {
      rows.emplace_back(n, Integer(0));
      rows.back()[i] = 1;
    }
  return IntMatrix::from_rows(rows);
}

// ---- criteria -----------------------------------------------------------

Outcome free_groups() {
  Outcome o;
  std::mt19937_64 rng(kDefaultSeed);
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto p = free_group(n);
    const auto a = alexander_matrix(p);
    for (int i = 0; i < 200; ++i) {
      const auto rho = random_rational_character(a, rng);
      o.require(h1_dim_at(p, a, rho) == n - 1, "F_" + std::to_string(n) + ": twisted H^1 differs from n-1");
    }
    for (std::size_t k = 1; k <= n - 1; ++k)
      o.require(charvar_ideal(a, k).is_zero(), "F_" + std::to_string(n) + ": ideal not zero at k=" + std::to_string(k));
  }
  return o;
}

Outcome free_abelian() {
  Outcome o;
  std::mt19937_64 rng(kDefaultSeed);
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto p = free_abelian_group(n);
    const auto a = alexander_matrix(p);
    const auto ideal = charvar_ideal(a, 1);
    o.require(ideal.includes_identity, "Z^" + std::to_string(n) + ": identity missing from V_1");
    for (int i = 0; i < 200; ++i) {
      const auto rho = random_rational_character(a, rng);
      o.require(!charvar_member(ideal, rho), "Z^" + std::to_string(n) + ": a nontrivial character lies in V_1");
      o.require(h1_dim_at(p, a, rho) == 0, "Z^" + std::to_string(n) + ": twisted H^1 nonzero");
    }
    const auto res = resonance_components({1, cup_tensor(p)});
    o.require(res.components.empty(), "Z^" + std::to_string(n) + ": positive-dimensional resonance component");
  }
  return o;
}

Outcome genus_two() {
  Outcome o;
  const auto p = surface_presentation(2, 0);
  const auto a = alexander_matrix(p);
  std::mt19937_64 rng(kDefaultSeed);
  for (int i = 0; i < 100; ++i) o.require(h1_dim_at(p, a, random_rational_character(a, rng)) == 2, "twisted H^1 != 2");
  const auto cup = cup_tensor(p);
  const auto res = resonance_components({1, cup});
  o.require(res.components.size() == 1 && res.components[0].dim() == 4 && res.components[0].certified,
            "R_1 is not the certified whole space");
  if (!res.components.empty()) {
    const auto iso = isotropy_class(cup, res.components[0].basis);
    o.require(iso.p == 1 && iso.pairing_nondegenerate && iso.admissible(), "isotropy class is not p=1, dim 4");
  }
  BatteryConfig cfg;
  cfg.variety = VarietyClass::projective;
  o.require(run_battery(p, std::nullopt, "surface2", cfg).overall == Verdict::pass, "projective battery did not pass");
  return o;
}

Outcome graph_sweep() {
  Outcome o;
  const auto graphs = testsupport::graphs_up_to_iso(5);
  std::size_t checked = 0;
  for (const auto& g : graphs) {
    const auto p = raag_presentation(g);
    const auto cup = cup_tensor(p);
    const std::string name = format_graph(g);
    const auto res = resonance_components({1, cup});
    std::vector<IntMatrix> want, got;
    for (auto w : testsupport::maximal_disconnected_subsets(g)) want.push_back(coordinate_basis(g.size(), w));
    for (const auto& c : res.components) {
      o.require(c.certified, "uncertified component for\n" + name);
      got.push_back(c.basis);
    }
    auto by_data = [](const IntMatrix& x, const IntMatrix& y) { return x.data() < y.data(); };
    std::sort(want.begin(), want.end(), by_data);
    std::sort(got.begin(), got.end(), by_data);
    o.require(got == want && res.uncertified.empty(), "resonance components differ from the oracle for\n" + name);
    std::mt19937_64 rng(kDefaultSeed);
    for (const auto& w : want) {
      std::vector<Rational> u(g.size(), Rational(0));
      for (std::size_t r = 0; r < w.rows(); ++r)
        for (std::size_t j = 0; j < w.cols(); ++j)
          if (w(r, j) != 0) u[j] = random_rational(rng);
      o.require(resonance_member({1, cup}, u), "oracle point not resonant for\n" + name);
    }
    BatteryConfig cfg;
    cfg.formal = true;
    const auto rep = run_battery(p, std::nullopt, "graph", cfg);
    o.require((rep.overall != Verdict::fail) == raag_classify(g).realizable,
              "classifier and battery disagree for\n" + name);
    ++checked;
  }
  o.require(checked == 52, "expected 52 graphs on 1..5 vertices");
  if (o.ok) o.detail = std::to_string(checked) + " graphs";
  return o;
}

Outcome tangent_cone() {
  Outcome o;
  std::vector<std::pair<std::string, Presentation>> formal{
      {"F_2", free_group(2)}, {"F_3", free_group(3)}, {"surface2", surface_presentation(2, 0)},
      {"F_2 x F_2", direct_product(free_group(2), free_group(2))}};
  for (const auto& g : testsupport::graphs_up_to_iso(5)) formal.emplace_back(format_graph(g), raag_presentation(g));
  std::size_t verified = 0;
  for (const auto& [name, p] : formal) {
    JumpLociContext ctx(p);
    for (std::size_t k = 1; k <= ctx.b1(); ++k) {
      const auto res = resonance_components({k, ctx.cup()});
      if (res.components.empty()) break;
      for (const auto& e : res.components) {
        o.require(e.certified, name + ": uncertified component");
        o.require(subtorus_verify(ctx.ideal(k), exp_map(e)), name + ": exp of a component leaves V_" + std::to_string(k));
        ++verified;
      }
    }
  }
  if (o.ok) o.detail = std::to_string(verified) + " components verified";
  return o;
}

Outcome covers() {
  Outcome o;
  std::size_t used = 0;
  for (const auto& path : fixtures(".pres")) {
    if (used == 10) break;
    const auto p = parse_presentation(slurp(path));
    const auto ab = abelianization(p);
    if (ab.b1 == 0) continue;
    std::vector<std::int64_t> phi;
    for (std::size_t i = 0; i < p.num_generators(); ++i) phi.push_back(ab.basis_map(i, 0).get_si());
    for (std::uint64_t n : {2, 3, 4}) {
      const auto s = cover_summary(p, phi, n);
      o.require(s.cover_b1 == s.twisted_sum(),
                path.filename().string() + " N=" + std::to_string(n) + ": cover b1 " + std::to_string(s.cover_b1) +
                    " != " + std::to_string(s.twisted_sum()));
    }
    ++used;
  }
  o.require(used == 10, "fewer than 10 fixtures with b1 > 0");
  if (o.ok) o.detail = std::to_string(used) + " fixtures x N in {2,3,4}";
  return o;
}

Outcome morgan() {
  Outcome o;
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto q = malcev_truncation(free_group(n), 4);
    o.require(morgan_degree_check(q, VarietyClass::projective).pass, "F_" + std::to_string(n) + " fails projective");
  }
  for (unsigned g = 1; g <= 3; ++g) {
    const auto q = malcev_truncation(surface_presentation(g, 0), 4);
    o.require(morgan_degree_check(q, VarietyClass::projective).pass,
              "genus " + std::to_string(g) + " surface fails projective");
  }
  const auto heis = malcev_truncation(parse_presentation("gens: x y\nrels:\n[x,[x,y]]\n[y,[x,y]]"), 4);
  const auto proj = morgan_degree_check(heis, VarietyClass::projective);
  o.require(!proj.pass && proj.witness_kind == "relation" && proj.witness_degree == 3u,
            "Heisenberg: expected a projective failure with relation degree 3");
  o.require(morgan_degree_check(heis, VarietyClass::quasiprojective).pass, "Heisenberg fails quasiprojective");
  return o;
}

Outcome parity() {
  Outcome o;
  BatteryConfig proj;
  proj.variety = VarietyClass::projective;
  const auto f3 = run_battery(free_group(3), std::nullopt, "F_3", proj);
  const auto* even = f3.find("even_b1");
  o.require(even && even->verdict == Verdict::fail && f3.overall == Verdict::fail, "F_3 passes the parity check");

  const auto p4 = parse_graph("vertices: a b c d\nedges:\na b\nb c\nc d\n");
  const auto cls = raag_classify(p4);
  o.require(!cls.realizable && cls.witness.has_value(), "P_4 classified as multipartite");
  if (cls.witness) {
    const auto co = p4.complement();
    const auto [u, v, w] = *cls.witness;
    o.require(co.adjacent(u, v) && co.adjacent(v, w) && !co.adjacent(u, w), "witness is not an induced complement path");
  }
  const auto p4rep = run_battery(raag_presentation(p4), p4, "P_4");
  o.require(p4rep.overall == Verdict::fail, "P_4 battery does not fail");

  const auto k3 = parse_graph("vertices: a b c\nedges:\na b\nb c\na c\n");
  const auto k3cls = raag_classify(k3);
  o.require(k3cls.realizable && !k3cls.projective_realizable, "K_3 should be realizable but not projective");
  o.require(check_raag(k3, VarietyClass::projective).verdict == Verdict::fail, "K_3 passes the projective sub-case");
  return o;
}

Outcome determinism() {
  Outcome o;
  std::size_t docs = 0;
  auto twice = [&](const std::string& name, const std::function<std::string()>& make) {
    o.require(make() == make(), name + ": output differs between runs");
    ++docs;
  };
  for (const auto& path : fixtures(".pres")) {
    const auto text = slurp(path);
    const auto id = path.filename().string();
    for (auto c : {VarietyClass::projective, VarietyClass::quasiprojective})
      twice(id, [&] {
        BatteryConfig cfg;
        cfg.variety = c;
        return run_battery(parse_presentation(text), std::nullopt, id, cfg).to_json().dump();
      });
    twice(id + " resonance", [&] { return resonance_report(parse_presentation(text), id, {}).dump(); });
    twice(id + " charvar", [&] {
      CharvarOptions opt;
      opt.torsion_bound = 6;
      return charvar_report(parse_presentation(text), id, opt).dump();
    });
  }
  for (const auto& path : fixtures(".graph")) {
    const auto text = slurp(path);
    const auto id = path.filename().string();
    twice(id, [&] {
      const auto g = parse_graph(text);
      return run_battery(raag_presentation(g), g, id).to_json().dump();
    });
  }
  if (o.ok) o.detail = std::to_string(docs) + " documents";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    double limit_seconds;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"C1", "free groups F_2..F_5: twisted H^1 = n-1, zero ideals", 5, free_groups},
      {"C2", "free abelian Z^2..Z^4: V_1 = {1}, no resonance components", 5, free_abelian},
      {"C3", "genus-2 surface: H^1 = 2, R_1 = C^4 with p = 1, projective battery passes", 10, genus_two},
      {"C4", "graph groups on <= 5 vertices: resonance oracle and classifier agreement", 120, graph_sweep},
      {"C5", "tangent cone: exp of resonance components inside V_k", 60, tangent_cone},
      {"C6", "cyclic covers: b1 equals the twisted sum", 30, covers},
      {"C7", "Morgan degrees at D = 4", 10, morgan},
      {"C8", "parity and graph exclusions", 5, parity},
      {"C9", "determinism of reports over the fixture corpus", 300, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.limit_seconds) {
      o.ok = false;
      o.detail = "time limit exceeded";
    }
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title << " (" << std::fixed
              << std::setprecision(2) << secs << " s, limit " << std::setprecision(0) << c.limit_seconds << " s)";
    if (!o.detail.empty()) std::cout << " - " << o.detail;
    std::cout << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
