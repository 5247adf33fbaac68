#include <random>

#include "doctest.h"

#include "algebra/linear.hpp"
#include "graphs.hpp"
#include "obstruction/obstruction.hpp"

using namespace jumploci;

namespace {

IntMatrix rows(std::vector<std::vector<long>> r) {
  std::vector<std::vector<Integer>> m;
  for (auto& row : r) {
    m.emplace_back();
    for (long x : row) m.back().push_back(Integer(x));
  }
  return IntMatrix::from_rows(m);
}

IntMatrix from_json(const Json& j) {
  std::vector<std::vector<Integer>> m;
  for (const auto& row : j) {
    m.emplace_back();
    for (const auto& x : row) m.back().push_back(Integer(x.get<long>()));
  }
  return IntMatrix::from_rows(m);
}

SimpleGraph graph(const std::string& text) { return parse_graph(text); }

// complete multipartite: the complement is a disjoint union of cliques
bool multipartite_oracle(const SimpleGraph& g) {
  const std::size_t n = g.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (a != b && b != c && a != c && !g.adjacent(a, b) && !g.adjacent(b, c) && g.adjacent(a, c)) return false;
  return true;
}

Verdict verdict_of(const ObstructionReport& r, const std::string& name) {
  const auto* c = r.find(name);
  REQUIRE(c != nullptr);
  return c->verdict;
}

// Re-derives every fail verdict from the evidence alone.
void replay_failures(const ObstructionReport& rep, const Presentation& p) {
  const auto cup = cup_tensor(p);
  for (const auto& c : rep.checks) {
    if (c.verdict != Verdict::fail) continue;
    CAPTURE(c.name);
    if (c.name == "even_b1") {
      CHECK(abelianization(p).b1 % 2 == 1);
    } else if (c.name == "isotropy") {
      bool seen = false;
      for (const auto& item : c.evidence["components"]) {
        if (item["ok"].get<bool>()) continue;
        seen = true;
        const auto basis = from_json(item["basis"]);
        std::vector<std::vector<Rational>> images;
        for (std::size_t i = 0; i < basis.rows(); ++i)
          for (std::size_t j = i + 1; j < basis.rows(); ++j) {
            std::vector<Rational> u(basis.cols()), v(basis.cols());
            for (std::size_t l = 0; l < basis.cols(); ++l) {
              u[l] = basis(i, l);
              v[l] = basis(j, l);
            }
            images.push_back(cup.cup(u, v));
          }
        std::size_t p_rank = 0;
        if (!images.empty() && cup.h2_dim() > 0) {
          RationalMatrix m(images.size(), cup.h2_dim());
          for (std::size_t r = 0; r < images.size(); ++r)
            for (std::size_t h = 0; h < cup.h2_dim(); ++h) m(r, h) = images[r][h];
          p_rank = rank(m);
        }
        CHECK(p_rank == item["p"].get<std::size_t>());
        const std::size_t d = basis.rows();
        CHECK((p_rank >= 2 || d < 2 * p_rank + 2 || (p_rank == 1 && !item["pairing_nondegenerate"].get<bool>())));
        // the space really is tangent to V_1: generic points resonate
        CHECK(resonance_level(cup, basis) >= 1);
      }
      CHECK(seen);
    } else if (c.name == "pairwise_intersections") {
      for (const auto& pair : c.evidence["offending_pairs"]) {
        const auto a = from_json(pair["first"]), b = from_json(pair["second"]);
        IntMatrix s(a.rows() + b.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
          for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i)
          for (std::size_t j = 0; j < b.cols(); ++j) s(a.rows() + i, j) = b(i, j);
        CHECK(rank(s) < rank(a) + rank(b));
      }
    } else if (c.name == "curve_profiles") {
      for (const auto& item : c.evidence["components"]) {
        if (item["ok"].get<bool>()) continue;
        const auto d = item["dim"].get<std::size_t>(), k = item["k"].get<std::size_t>();
        CHECK_FALSE((k + 1 == d && d >= 2));
        CHECK_FALSE((d >= 4 && d % 2 == 0 && k + 2 == d));
      }
    } else if (c.name == "tangent_cone") {
      for (const auto& item : c.evidence["direction_checks"])
        if (!item["in_R"].get<bool>())
          CHECK(resonance_level(cup, from_json(item["basis"])) < item["k"].get<std::size_t>());
    } else if (c.name == "morgan_degrees") {
      const auto q = malcev_truncation(p, c.evidence["up_to_degree"].get<unsigned>());
      const auto deg = c.evidence["witness"]["degree"].get<unsigned>();
      if (c.evidence["witness"]["kind"] == "relation")
        CHECK(q.relations[deg - 1] > 0);
      else
        CHECK(q.generators[deg - 1] > 0);
    }
  }
}

}  // namespace

TEST_SUITE("obstruction") {
  TEST_CASE("even b1") {
    CHECK(check_even_b1(3).verdict == Verdict::fail);
    CHECK(check_even_b1(4).verdict == Verdict::pass);
    CHECK(check_even_b1(0).verdict == Verdict::pass);
    CHECK(check_even_b1(3).evidence["b1"] == 3);
  }

  TEST_CASE("isotropy classes") {
    const auto s2 = cup_tensor(surface_presentation(2, 0));
    const auto full = isotropy_class(s2, rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
    CHECK(full.p == 1);
    CHECK(full.pairing_nondegenerate);
    CHECK(full.admissible());
    // a Lagrangian plane is 0-isotropic
    CHECK(isotropy_class(s2, rows({{1, 0, 0, 0}, {0, 0, 1, 0}})).p == 0);
    // a symplectic plane has p = 1 but dim 2 < 4
    CHECK_FALSE(isotropy_class(s2, rows({{1, 0, 0, 0}, {0, 1, 0, 0}})).admissible());

    const auto path = cup_tensor(raag_presentation(graph("vertices: a b c\nedges:\na b\nb c\n")));
    const auto ac = isotropy_class(path, rows({{1, 0, 0}, {0, 0, 1}}));
    CHECK(ac.p == 0);
    CHECK(ac.admissible());
    CHECK_FALSE(isotropy_class(path, rows({{1, 0, 0}})).admissible());
    // degenerate pairing: span(e_a, e_b, e_c) in the path has p = 2
    CHECK(isotropy_class(path, rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).p == 2);

    CHECK(check_isotropy({rows({{1, 0, 0}})}, path).verdict == Verdict::fail);
    CHECK(check_isotropy({rows({{1, 0, 0}, {0, 0, 1}})}, path).verdict == Verdict::pass);
  }

  TEST_CASE("pairwise intersections") {
    CHECK(check_pairwise_intersections({rows({{1, 0, 0, 0}, {0, 0, 1, 0}})}).verdict == Verdict::pass);
    CHECK(check_pairwise_intersections({rows({{1, 0, 0, 0}, {0, 0, 1, 0}}), rows({{0, 1, 0, 0}, {0, 0, 0, 1}})})
              .verdict == Verdict::pass);
    const auto bad =
        check_pairwise_intersections({rows({{1, 0, 0, 0}, {0, 0, 1, 0}}), rows({{1, 0, 0, 0}, {0, 0, 0, 1}})});
    CHECK(bad.verdict == Verdict::fail);
    CHECK(bad.evidence["offending_pairs"][0]["intersection_dim"] == 1);
    CHECK(check_pairwise_intersections({}).verdict == Verdict::pass);
  }

  TEST_CASE("curve profiles") {
    const auto p42 = curve_profiles(4, 2);
    REQUIRE(p42.size() == 1);
    CHECK(p42[0].type == "projective");
    CHECK(p42[0].g == 2);
    const auto p21 = curve_profiles(2, 1);
    REQUIRE(p21.size() == 2);
    CHECK((p21[0].g == 0 && p21[0].s == 3));
    CHECK((p21[1].g == 1 && p21[1].s == 1));
    CHECK(curve_profiles(3, 1).empty());
    CHECK(curve_profiles(1, 0).empty());
    // the profile equations hold exactly for every solution
    for (std::size_t d = 1; d <= 10; ++d)
      for (std::size_t k = 0; k <= 10; ++k)
        for (const auto& pr : curve_profiles(d, k)) {
          CHECK(k > 0);
          if (pr.type == "projective") {
            CHECK(d == 2 * pr.g);
            CHECK(k == 2 * pr.g - 2);
            CHECK(pr.g >= 2);
          } else {
            CHECK(d == 2 * pr.g + pr.s - 1);
            CHECK(static_cast<long>(k) == 2L * pr.g - 2 + pr.s);
            CHECK(pr.s >= 1);
          }
        }
  }

  TEST_CASE("graph group classification") {
    const auto p4 = raag_classify(graph("vertices: a b c d\nedges:\na b\nb c\nc d\n"));
    CHECK_FALSE(p4.realizable);
    REQUIRE(p4.witness);
    const auto co = graph("vertices: a b c d\nedges:\na b\nb c\nc d\n").complement();
    const auto [u, v, w] = *p4.witness;
    CHECK(co.adjacent(u, v));
    CHECK(co.adjacent(v, w));
    CHECK_FALSE(co.adjacent(u, w));

    const auto k22 = raag_classify(graph("vertices: a b c d\nedges:\na b\nb c\nc d\nd a\n"));
    CHECK(k22.realizable);
    CHECK(k22.decomposition == "F_2 x F_2");
    CHECK_FALSE(k22.projective_realizable);

    const auto k3 = raag_classify(graph("vertices: a b c\nedges:\na b\nb c\na c\n"));
    CHECK(k3.realizable);
    CHECK(k3.decomposition == "Z^3");
    CHECK_FALSE(k3.projective_realizable);
    CHECK(check_raag(graph("vertices: a b c\nedges:\na b\nb c\na c\n"), VarietyClass::projective).verdict ==
          Verdict::fail);
    CHECK(check_raag(graph("vertices: a b c\nedges:\na b\nb c\na c\n"), VarietyClass::quasiprojective).verdict ==
          Verdict::pass);
    CHECK(raag_classify(graph("vertices: a b c d\nedges:\na b\na c\na d\nb c\nb d\nc d\n")).projective_realizable);

    for (const auto& g : testsupport::graphs_up_to_iso(5)) CHECK(raag_classify(g).realizable == multipartite_oracle(g));
  }

  TEST_CASE("battery examples") {
    BatteryConfig proj;
    proj.variety = VarietyClass::projective;

    const auto f3 = run_battery(free_group(3), std::nullopt, "F3", proj);
    CHECK(f3.overall == Verdict::fail);
    CHECK(verdict_of(f3, "even_b1") == Verdict::fail);
    CHECK(f3.checks.front().name == "even_b1");
    replay_failures(f3, free_group(3));

    const auto s2 = run_battery(surface_presentation(2, 0), std::nullopt, "surface", proj);
    CHECK(s2.overall == Verdict::pass);
    CHECK(s2.b1 == 4);
    const auto& iso = s2.find("isotropy")->evidence["components"];
    REQUIRE(iso.size() == 1);
    CHECK(iso[0]["p"] == 1);
    CHECK(iso[0]["dim"] == 4);

    const auto p4g = graph("vertices: a b c d\nedges:\na b\nb c\nc d\n");
    const auto p4 = run_battery(raag_presentation(p4g), p4g, "P4");
    CHECK(p4.overall == Verdict::fail);
    CHECK(verdict_of(p4, "raag_classification") == Verdict::fail);
    CHECK(verdict_of(p4, "pairwise_intersections") == Verdict::fail);
    CHECK(p4.find("raag_classification")->evidence.contains("complement_path"));
    replay_failures(p4, raag_presentation(p4g));

    const auto heis = parse_presentation("gens: x y\nrels:\n[x,[x,y]]\n[y,[x,y]]");
    const auto hp = run_battery(heis, std::nullopt, "heis", proj);
    CHECK(verdict_of(hp, "morgan_degrees") == Verdict::fail);
    replay_failures(hp, heis);
    const auto hq = run_battery(heis, std::nullopt, "heis");
    CHECK(verdict_of(hq, "morgan_degrees") == Verdict::pass);

    // check order is fixed
    std::vector<std::string> names;
    for (const auto& c : p4.checks) names.push_back(c.name);
    CHECK(names == std::vector<std::string>{"resonance_components", "isotropy", "pairwise_intersections",
                                            "tangent_cone", "curve_profiles", "morgan_degrees",
                                            "raag_classification"});
  }

  TEST_CASE("graph sweep: classifier and battery agree") {
    for (const auto& g : testsupport::graphs_up_to_iso(5)) {
      const auto p = raag_presentation(g);
      CAPTURE(format_graph(g));
      BatteryConfig cfg;
      cfg.formal = true;
      const auto rep = run_battery(p, std::nullopt, "graph", cfg);
      const bool realizable = raag_classify(g).realizable;
      CHECK((rep.overall != Verdict::fail) == realizable);
      if (realizable) CHECK(rep.overall == Verdict::pass);
      replay_failures(rep, p);
    }
  }

  TEST_CASE("reports are deterministic") {
    const auto g = graph("vertices: a b c d\nedges:\na b\nb c\nc d\n");
    const auto a = run_battery(raag_presentation(g), g, "P4").to_json().dump();
    const auto b = run_battery(raag_presentation(g), g, "P4").to_json().dump();
    CHECK(a == b);
    const auto j = nlohmann::ordered_json::parse(a);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"input", "class", "b1", "torsion", "checks", "components", "overall", "seed",
                                           "truncation_degree"});
  }

  TEST_CASE("cover summary") {
    const auto s = cover_summary(free_group(2), {1, 0}, 3);
    CHECK(s.cover_b1 == 4);  // index-3 subgroup of F_2 has rank 4
    CHECK(s.twisted_sum() == 4);
    CHECK_THROWS_AS(cover_summary(free_group(2), {0, 0}, 3), std::invalid_argument);
    CHECK_THROWS_AS(cover_summary(free_group(2), {1}, 3), std::invalid_argument);
  }

  TEST_CASE("documents") {
    const auto r = resonance_report(free_abelian_group(3), "z3", {});
    CHECK(r["components"].empty());
    const auto c = charvar_report(free_group(2), "f2", {});
    CHECK(c["ideal"]["zero"] == true);
    const auto m = malcev_report(surface_presentation(2, 0), "s2", 4);
    CHECK(m["morgan"]["projective"]["verdict"] == "pass");
    const auto shallow = malcev_report(free_group(2), "f2", 3);
    CHECK(shallow["morgan"]["quasiprojective"]["verdict"] == "inconclusive");
    const auto k = raag_report(graph("vertices: a b\nedges:\n"), "k2bar");
    CHECK(k["decomposition"] == "F_2");
  }
}
