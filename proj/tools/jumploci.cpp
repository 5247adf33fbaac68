// Command-line front end; talks to the engine only through the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "jumploci/jumploci.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCompute = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ComputeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check(jl_status s, const std::string& what) {
  if (s == JL_OK) return;
  std::string msg = what + ": " + jl_last_error();
  if (s == JL_PARSE_ERROR || s == JL_INVALID_ARGUMENT) throw UsageError(msg);
  throw ComputeError(msg);
}

using PresentationPtr = std::unique_ptr<jl_presentation, decltype(&jl_presentation_free)>;
using GraphPtr = std::unique_ptr<jl_graph, decltype(&jl_graph_free)>;

PresentationPtr load_presentation(const std::string& path) {
  const std::string text = read_file(path);
  jl_presentation* p = nullptr;
  check(jl_presentation_parse(text.c_str(), &p), path);
  return PresentationPtr(p, jl_presentation_free);
}

GraphPtr load_graph(const std::string& path) {
  const std::string text = read_file(path);
  jl_graph* g = nullptr;
  check(jl_graph_parse(text.c_str(), &g), path);
  return GraphPtr(g, jl_graph_free);
}

Json take(char* raw) {
  std::unique_ptr<char, decltype(&jl_string_free)> owned(raw, jl_string_free);
  return Json::parse(owned.get());
}

// ---- text rendering -----------------------------------------------------

std::string vec(const Json& row) {
  std::string s = "(";
  for (std::size_t i = 0; i < row.size(); ++i) s += (i ? ", " : "") + row[i].dump();
  return s + ")";
}

std::string span(const Json& basis) {
  if (basis.empty()) return "{0}";
  std::string s = "span{";
  for (std::size_t i = 0; i < basis.size(); ++i) s += (i ? ", " : "") + vec(basis[i]);
  return s + "}";
}

void print_component(const Json& c) {
  std::cout << "  " << c["kind"].get<std::string>() << " dim " << c["dim"] << " level " << c["k"];
  if (c["kind"] == "linear")
    std::cout << ": " << span(c["basis"]);
  else {
    std::cout << ": directions " << span(c["basis"]);
    if (!c["translate"].is_null())
      std::cout << ", translate zeta_" << c["translate"]["order"] << "^" << vec(c["translate"]["exponents"]);
  }
  std::cout << (c["certified"].get<bool>() ? "" : " [uncertified]") << "\n";
}

void print_resonance(const Json& j) {
  std::cout << "b1 = " << j["b1"] << ", dim H^2 = " << j["h2"] << "\n";
  std::cout << "R_" << j["k"] << " components (positive-dimensional): " << j["components"].size() << "\n";
  for (const auto& c : j["components"]) print_component(c);
  if (!j["uncertified"].empty())
    std::cout << "uncertified sample points: " << j["uncertified"].size() << "\n";
}

void print_charvar(const Json& j) {
  std::cout << "b1 = " << j["b1"] << ", torsion = " << j["torsion"].dump() << "\n";
  const auto& ideal = j["ideal"];
  std::cout << "V_" << j["k"] << " ideal: ";
  if (ideal["zero"].get<bool>())
    std::cout << "zero (whole torus)";
  else if (ideal["unit"].get<bool>())
    std::cout << "unit (no nontrivial character)";
  else
    std::cout << ideal["generator_count"] << " minors";
  std::cout << "; trivial character " << (ideal["includes_identity"].get<bool>() ? "included" : "excluded") << "\n";
  std::cout << "components found: " << j["components"].size() << "\n";
  for (const auto& c : j["components"]) print_component(c);
  if (j["translate_scan_truncated"].get<bool>()) std::cout << "note: translate scan truncated\n";
}

void print_malcev(const Json& j) {
  std::cout << "graded quotient up to degree " << j["truncation_degree"] << "\n";
  std::cout << "  dims:              " << j["dims"].dump() << "\n";
  std::cout << "  generator degrees: " << j["generator_degrees"].dump() << "\n";
  std::cout << "  relation degrees:  " << j["relation_degrees"].dump() << "\n";
  for (const auto& [cls, v] : j["morgan"].items()) {
    std::cout << "  " << cls << ": " << v["verdict"].get<std::string>();
    if (v.contains("witness"))
      std::cout << " (" << v["witness"]["kind"].get<std::string>() << " in degree " << v["witness"]["degree"] << ")";
    if (v.contains("reason")) std::cout << " (" << v["reason"].get<std::string>() << ")";
    std::cout << "\n";
  }
}

void print_raag(const Json& j) {
  std::cout << (j["realizable"].get<bool>() ? "complete multipartite" : "not complete multipartite") << "\n";
  if (j.contains("decomposition")) std::cout << "  group: " << j["decomposition"].get<std::string>() << "\n";
  if (j.contains("complement_path")) {
    const auto& w = j["complement_path"];
    std::cout << "  complement path: " << w[0].get<std::string>() << " - " << w[1].get<std::string>() << " - "
              << w[2].get<std::string>() << "\n";
  }
  std::cout << "  projective case: " << (j["projective_realizable"].get<bool>() ? "possible" : "excluded") << "\n";
}

void print_report(const Json& j) {
  std::cout << "class " << j["class"].get<std::string>() << ", b1 = " << j["b1"] << ", torsion = " << j["torsion"].dump()
            << "\n";
  for (const auto& c : j["checks"]) {
    std::printf("  %-24s %s\n", c["name"].get<std::string>().c_str(), c["verdict"].get<std::string>().c_str());
    if (c["evidence"].contains("error")) std::cout << "      " << c["evidence"]["error"].get<std::string>() << "\n";
  }
  if (!j["components"].empty()) {
    std::cout << "components:\n";
    for (const auto& c : j["components"]) print_component(c);
  }
  std::cout << "overall: " << j["overall"].get<std::string>();
  if (j["overall"] == "pass") std::cout << " (no obstruction found)";
  std::cout << "\n";
}

void print_cover(const Json& j) {
  std::cout << "cover of order " << j["order"] << ": " << j["cover"]["generators"] << " generators, "
            << j["cover"]["relators"] << " relators, b1 = " << j["cover"]["b1"] << "\n";
  std::cout << "twisted H^1 over F_" << j["prime"] << ": " << j["twisted_h1"].dump() << " (sum " << j["twisted_sum"]
            << ")\n";
  std::cout << (j["consistent"].get<bool>() ? "consistent" : "MISMATCH") << "\n";
}

std::vector<std::int64_t> parse_phi(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--phi expects comma-separated integers, got '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jump loci and obstruction battery for finitely presented groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(jl_version()));

  jl_options opts;
  jl_options_init(&opts);
  std::string file, graph_file, variety = "quasiprojective", phi_text;
  bool json = false, formal = false;
  std::uint64_t order = 0;

  auto add_common = [&](CLI::App* sub) { sub->add_flag("--json", json, "Print the JSON document"); };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--k", opts.k, "Jump level")->check(CLI::Range(1u, 1000u));
    sub->add_option("--samples", opts.samples, "Random points per level")->check(CLI::Range(1u, 1000000u));
    sub->add_option("--seed", opts.seed, "Random seed");
  };

  auto* resonance = app.add_subcommand("resonance", "Resonance variety components");
  resonance->add_option("file", file, "Presentation file")->required();
  add_sampling(resonance);
  add_common(resonance);

  auto* charvar = app.add_subcommand("charvar", "Characteristic variety ideal and subtorus components");
  charvar->add_option("file", file, "Presentation file")->required();
  add_sampling(charvar);
  charvar->add_option("--torsion-bound", opts.torsion_bound, "Largest translate order scanned");
  add_common(charvar);

  auto* malcev = app.add_subcommand("malcev", "Graded Lie algebra of the truncated Malcev completion");
  malcev->add_option("file", file, "Presentation file")->required();
  malcev->add_option("--degree", opts.degree, "Truncation degree")->check(CLI::Range(2u, 5u));
  add_common(malcev);

  auto* obstruct = app.add_subcommand("obstruct", "Run the obstruction battery");
  auto* obstruct_file = obstruct->add_option("file", file, "Presentation file");
  auto* obstruct_graph = obstruct->add_option("--graph", graph_file, "Graph file (graph group input)");
  obstruct_file->excludes(obstruct_graph);
  obstruct->add_option("--class", variety, "Variety class")
      ->required()
      ->check(CLI::IsMember({"projective", "quasiprojective"}));
  obstruct->add_flag("--formal", formal, "Treat the group as 1-formal");
  obstruct->add_option("--degree", opts.degree, "Lie truncation degree")->check(CLI::Range(2u, 5u));
  obstruct->add_option("--samples", opts.samples, "Random points per level")->check(CLI::Range(1u, 1000000u));
  obstruct->add_option("--seed", opts.seed, "Random seed");
  add_common(obstruct);

  auto* raag = app.add_subcommand("raag", "Classify a graph group");
  raag->add_option("--graph", graph_file, "Graph file")->required();
  add_common(raag);

  auto* cover = app.add_subcommand("cover", "Cyclic cover and its twisted cohomology decomposition");
  cover->add_option("file", file, "Presentation file")->required();
  cover->add_option("--phi", phi_text, "Generator images in Z/N, comma separated")->required();
  cover->add_option("--order", order, "N")->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1000000}));
  add_common(cover);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    char* raw = nullptr;
    Json doc;
    if (resonance->parsed()) {
      auto p = load_presentation(file);
      check(jl_resonance(p.get(), file.c_str(), &opts, &raw), "resonance");
      doc = take(raw);
      if (!json) print_resonance(doc);
    } else if (charvar->parsed()) {
      auto p = load_presentation(file);
      check(jl_charvar(p.get(), file.c_str(), &opts, &raw), "charvar");
      doc = take(raw);
      if (!json) print_charvar(doc);
    } else if (malcev->parsed()) {
      auto p = load_presentation(file);
      check(jl_malcev(p.get(), file.c_str(), &opts, &raw), "malcev");
      doc = take(raw);
      if (!json) print_malcev(doc);
    } else if (obstruct->parsed()) {
      if (file.empty() && graph_file.empty()) throw UsageError("obstruct needs a presentation file or --graph");
      opts.variety = variety == "projective" ? JL_PROJECTIVE : JL_QUASIPROJECTIVE;
      opts.formal = formal ? 1 : 0;
      if (!graph_file.empty()) {
        auto g = load_graph(graph_file);
        check(jl_obstruct(nullptr, g.get(), graph_file.c_str(), &opts, &raw), "obstruct");
      } else {
        auto p = load_presentation(file);
        check(jl_obstruct(p.get(), nullptr, file.c_str(), &opts, &raw), "obstruct");
      }
      doc = take(raw);
      if (!json) print_report(doc);
    } else if (raag->parsed()) {
      auto g = load_graph(graph_file);
      check(jl_raag(g.get(), graph_file.c_str(), &raw), "raag");
      doc = take(raw);
      if (!json) print_raag(doc);
    } else if (cover->parsed()) {
      auto p = load_presentation(file);
      const auto phi = parse_phi(phi_text);
      check(jl_cover(p.get(), file.c_str(), phi.data(), phi.size(), order, &raw), "cover");
      doc = take(raw);
      if (!json) print_cover(doc);
    }
    if (json) std::cout << doc.dump(2) << "\n";
    return kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ComputeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCompute;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCompute;
  }
}
