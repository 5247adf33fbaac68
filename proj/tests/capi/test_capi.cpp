#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <thread>

#include "json.hpp"
#include "jumploci/jumploci.h"

namespace {

using Json = nlohmann::ordered_json;

Json consume(char* raw) {
  Json j = Json::parse(raw);
  jl_string_free(raw);
  return j;
}

jl_options defaults() {
  jl_options o;
  jl_options_init(&o);
  return o;
}

}  // namespace

TEST_CASE("handles and parse errors") {
  jl_presentation* p = nullptr;
  REQUIRE(jl_presentation_parse("gens: a b\nrels:\n[a,b]\n", &p) == JL_OK);
  CHECK(jl_presentation_generators(p) == 2);
  CHECK(jl_presentation_relators(p) == 1);
  jl_presentation_free(p);

  jl_presentation* bad = reinterpret_cast<jl_presentation*>(0x1);
  CHECK(jl_presentation_parse("gens: a\nrels:\nb\n", &bad) == JL_PARSE_ERROR);
  CHECK(bad == nullptr);
  CHECK(jl_last_error_line() == 3);
  CHECK(jl_last_error_column() == 1);
  CHECK(std::string(jl_last_error()).size() > 0);

  CHECK(jl_presentation_parse(nullptr, &p) == JL_INVALID_ARGUMENT);
  jl_presentation_free(nullptr);
  jl_graph_free(nullptr);
  jl_string_free(nullptr);

  jl_graph* g = nullptr;
  CHECK(jl_graph_parse("vertices: a b\nedges:\na q\n", &g) == JL_PARSE_ERROR);
  REQUIRE(jl_graph_parse("vertices: a b c\nedges:\na b\nb c\n", &g) == JL_OK);
  REQUIRE(jl_presentation_from_graph(g, &p) == JL_OK);
  CHECK(jl_presentation_relators(p) == 2);
  jl_presentation_free(p);
  jl_graph_free(g);
}

TEST_CASE("documents through the C boundary") {
  jl_presentation* p = nullptr;
  REQUIRE(jl_presentation_parse("gens: a1 b1 a2 b2\nrels:\n[a1,b1] [a2,b2]\n", &p) == JL_OK);
  auto opts = defaults();
  char* raw = nullptr;

  REQUIRE(jl_resonance(p, "surface", &opts, &raw) == JL_OK);
  const auto res = consume(raw);
  CHECK(res["b1"] == 4);
  REQUIRE(res["components"].size() == 1);
  CHECK(res["components"][0]["dim"] == 4);

  REQUIRE(jl_malcev(p, "surface", &opts, &raw) == JL_OK);
  CHECK(consume(raw)["relation_degrees"] == Json::array({2}));

  opts.variety = JL_PROJECTIVE;
  REQUIRE(jl_obstruct(p, nullptr, "surface", &opts, &raw) == JL_OK);
  const auto rep = consume(raw);
  CHECK(rep["overall"] == "pass");
  CHECK(rep["seed"] == opts.seed);
  CHECK(rep["truncation_degree"] == 4);

  REQUIRE(jl_charvar(p, "surface", &opts, &raw) == JL_OK);
  CHECK(consume(raw)["ideal"]["unit"] == false);

  const int64_t phi[] = {1, 0, 0, 0};
  REQUIRE(jl_cover(p, "surface", phi, 4, 2, &raw) == JL_OK);
  CHECK(consume(raw)["consistent"] == true);
  const int64_t zero[] = {0, 0, 0, 0};
  CHECK(jl_cover(p, "surface", zero, 4, 2, &raw) == JL_INVALID_ARGUMENT);
  CHECK(jl_cover(p, "surface", phi, 3, 2, &raw) == JL_INVALID_ARGUMENT);

  opts.degree = 9;
  CHECK(jl_malcev(p, "surface", &opts, &raw) == JL_INVALID_ARGUMENT);
  opts = defaults();
  opts.k = 0;
  CHECK(jl_resonance(p, "surface", &opts, &raw) == JL_INVALID_ARGUMENT);
  CHECK(jl_resonance(p, "surface", nullptr, &raw) == JL_INVALID_ARGUMENT);
  jl_presentation_free(p);
}

TEST_CASE("resource bounds are computation errors") {
  jl_presentation* p = nullptr;
  REQUIRE(jl_presentation_parse("gens: a b c d e\nrels:\n", &p) == JL_OK);
  auto opts = defaults();
  opts.max_b1 = 4;
  char* raw = nullptr;
  CHECK(jl_resonance(p, nullptr, &opts, &raw) == JL_COMPUTATION_ERROR);
  CHECK(std::string(jl_last_error()).find("Betti") != std::string::npos);
  // the battery degrades check by check instead
  REQUIRE(jl_obstruct(p, nullptr, nullptr, &opts, &raw) == JL_OK);
  const auto rep = consume(raw);
  CHECK(rep["checks"][0]["verdict"] == "inconclusive");
  jl_presentation_free(p);
}

TEST_CASE("graph input") {
  jl_graph* g = nullptr;
  REQUIRE(jl_graph_parse("vertices: a b c d\nedges:\na b\nb c\nc d\n", &g) == JL_OK);
  char* raw = nullptr;
  REQUIRE(jl_raag(g, "P4", &raw) == JL_OK);
  const auto cls = consume(raw);
  CHECK(cls["realizable"] == false);
  CHECK(cls["complement_path"].size() == 3);
  auto opts = defaults();
  REQUIRE(jl_obstruct(nullptr, g, "P4", &opts, &raw) == JL_OK);
  const auto rep = consume(raw);
  CHECK(rep["overall"] == "fail");
  CHECK(rep["checks"].back()["name"] == "raag_classification");
  jl_graph_free(g);
}

TEST_CASE("last error is per thread") {
  jl_presentation* p = nullptr;
  CHECK(jl_presentation_parse("nonsense", &p) == JL_PARSE_ERROR);
  const std::string here = jl_last_error();
  std::string there = "unset";
  std::thread t([&] { there = jl_last_error(); });
  t.join();
  CHECK(there.empty());
  CHECK(std::string(jl_last_error()) == here);
}

TEST_CASE("concurrent calls agree") {
  auto run = [] {
    jl_presentation* p = nullptr;
    jl_presentation_parse("gens: a b c\nrels:\n[a,b]\n", &p);
    auto opts = defaults();
    char* raw = nullptr;
    jl_obstruct(p, nullptr, "x", &opts, &raw);
    std::string out = raw;
    jl_string_free(raw);
    jl_presentation_free(p);
    return out;
  };
  std::string a, b;
  std::thread t1([&] { a = run(); }), t2([&] { b = run(); });
  t1.join();
  t2.join();
  CHECK(a == b);
  CHECK(a == run());
}
