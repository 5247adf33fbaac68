#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "jumploci/jumploci.hpp"
#include "lie/lie.hpp"

namespace jumploci {

using Json = nlohmann::ordered_json;

enum class Verdict { pass, fail, inconclusive };

const char* to_string(Verdict v);
// fail beats inconclusive beats pass
Verdict combine(Verdict a, Verdict b);

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::pass;
  Json evidence = Json::object();
};

// ---- individual checks --------------------------------------------------

CheckResult check_even_b1(std::size_t b1);

struct IsotropyClass {
  IntMatrix basis;
  std::size_t p = 0;                   // rank of the restricted cup product image
  bool pairing_nondegenerate = false;  // meaningful for p == 1
  bool admissible() const;             // p in {0,1}, dim >= 2p+2, nondegenerate when p == 1
};

IsotropyClass isotropy_class(const CupTensor& cup, const IntMatrix& basis);
CheckResult check_isotropy(const std::vector<IntMatrix>& spaces, const CupTensor& cup);
CheckResult check_pairwise_intersections(const std::vector<IntMatrix>& spaces);

struct CurveProfile {
  std::string type;  // "projective" or "punctured"
  unsigned g = 0;
  unsigned s = 0;
};

// All (g, s) with dimension d and generic level k.
std::vector<CurveProfile> curve_profiles(std::size_t d, std::size_t k);
CheckResult check_curve_profiles(const std::vector<SubtorusComponent>& components);

// (a) exp of resonance components inside V_k, (b) directions of subtori
// through 1 inside R_k. (b) is unconditional; (a) is definitive only on the
// formal branch.
CheckResult check_tangent_cone(JumpLociContext& ctx, const std::vector<LinearComponent>& resonance,
                               const std::vector<SubtorusComponent>& subtori, bool formal_branch);

CheckResult check_morgan(const GradedQuotient& q, VarietyClass c);

struct RaagClassification {
  bool realizable = false;
  std::vector<std::vector<std::size_t>> parts;          // complement components
  std::optional<std::array<std::size_t, 3>> witness;  // u - v - w induced path of the complement
  bool projective_realizable = false;
  std::string decomposition;  // e.g. "F_2 x F_2", "Z^3"
};

RaagClassification raag_classify(const SimpleGraph& g);
CheckResult check_raag(const SimpleGraph& g, VarietyClass c);

// ---- battery ------------------------------------------------------------

struct BatteryConfig {
  VarietyClass variety = VarietyClass::quasiprojective;
  bool formal = false;
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 200;
  unsigned truncation_degree = 4;
  std::uint64_t torsion_bound = 0;
  std::size_t max_b1 = 12;
};

struct ObstructionReport {
  std::string input;
  VarietyClass variety = VarietyClass::quasiprojective;
  std::size_t b1 = 0;
  std::vector<Integer> torsion;
  std::vector<CheckResult> checks;
  Json components = Json::array();
  Verdict overall = Verdict::pass;
  std::uint64_t seed = kDefaultSeed;
  std::optional<unsigned> truncation_degree;

  const CheckResult* find(const std::string& name) const;
  Json to_json() const;
};

// graph: when the input was a graph, p must be its graph-group presentation
ObstructionReport run_battery(const Presentation& p, const std::optional<SimpleGraph>& graph, const std::string& input,
                              const BatteryConfig& config = {});

// ---- cyclic covers ------------------------------------------------------

struct CoverSummary {
  std::uint64_t order = 0;
  std::vector<std::int64_t> phi;
  std::size_t cover_generators = 0;
  std::size_t cover_relators = 0;
  std::size_t cover_b1 = 0;
  std::vector<Integer> cover_torsion;
  std::uint64_t prime = 0;
  std::vector<std::size_t> twisted_h1;  // dim H^1(G, rho^j), j = 0..N-1, over F_p
  std::size_t twisted_sum() const;
};

// Throws std::invalid_argument when phi is not onto Z/N.
CoverSummary cover_summary(const Presentation& p, const std::vector<std::int64_t>& phi, std::uint64_t order);

// ---- JSON documents -----------------------------------------------------

Json integer_json(const Integer& z);
Json matrix_json(const IntMatrix& m);
Json linear_component_json(const LinearComponent& c);
Json subtorus_component_json(const SubtorusComponent& c);

struct ResonanceOptions {
  std::size_t k = 1;
  std::size_t samples = 200;
  std::uint64_t seed = kDefaultSeed;
  std::size_t max_b1 = 12;
};
Json resonance_report(const Presentation& p, const std::string& input, const ResonanceOptions& o);

struct CharvarOptions {
  std::size_t k = 1;
  std::size_t samples = 200;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t torsion_bound = 30;
  std::size_t max_b1 = 12;
};
Json charvar_report(const Presentation& p, const std::string& input, const CharvarOptions& o);

Json malcev_report(const Presentation& p, const std::string& input, unsigned degree);
Json raag_report(const SimpleGraph& g, const std::string& input);
Json cover_report(const Presentation& p, const std::string& input, const std::vector<std::int64_t>& phi,
                  std::uint64_t order);

}  // namespace jumploci
