#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "algebra/character.hpp"
#include "algebra/laurent.hpp"
#include "fox/fox.hpp"
#include "fox/magnus.hpp"

namespace jumploci {

constexpr std::uint64_t kDefaultSeed = 20240611;

// ---- characteristic varieties -------------------------------------------

// Ideal of V_k away from the trivial character: the (n-k)-minors of the
// Alexander matrix. An empty generator list is the zero ideal (whole torus);
// the unit ideal {1} means no nontrivial character qualifies.
struct CharVarIdeal {
  std::size_t k = 0;
  std::size_t nvars = 0;
  std::vector<LaurentPoly> gens;
  bool includes_identity = false;

  bool is_zero() const { return gens.empty(); }
  bool is_unit() const;
};

CharVarIdeal charvar_ideal(const AlexanderMatrix& a, std::size_t k);
bool charvar_member(const CharVarIdeal& ideal, const CharacterPoint& rho);

// Character coordinate j is zeta_N^exponents[j], zeta_N the fixed primitive
// N-th root of unity of the prime field chosen for N.
struct TorsionTranslate {
  std::uint64_t order = 1;
  std::vector<std::int64_t> exponents;  // one per torus coordinate (free, then torsion)
  friend bool operator==(const TorsionTranslate&, const TorsionTranslate&) = default;
};

// chi * {t = s^directions}: free coordinate j is chi_j * prod_i s_i^D(i,j);
// torsion coordinates are fixed by chi. No translate means chi = 1.
struct SubtorusComponent {
  IntMatrix directions;  // dim x b1
  std::optional<TorsionTranslate> translate;
  std::size_t k = 0;
  bool certified = false;

  std::size_t dim() const { return directions.rows(); }
  bool through_one() const { return !translate; }
};

// Every generator vanishes identically on the parametrized subtorus.
// Translated subtori are checked over F_p with p == 1 (mod N).
bool subtorus_verify(const CharVarIdeal& ideal, const SubtorusComponent& s);

// ---- resonance varieties ------------------------------------------------

struct ResonanceLocus {
  std::size_t k = 1;
  CupTensor cup;
};

// dim H^1 of the Aomoto complex at u (b1 at u = 0).
std::size_t aomoto_h1(const CupTensor& cup, const std::vector<Rational>& u);
bool resonance_member(const ResonanceLocus& r, const std::vector<Rational>& u);

struct LinearComponent {
  IntMatrix basis;  // rows, full row rank
  std::size_t k_max = 0;
  bool certified = false;

  std::size_t dim() const { return basis.rows(); }
};

// Largest k with span(basis) inside R_k: b1 - 1 - (rank of u -> u cup - at
// the generic point of the span, computed symbolically); 0 if that is negative.
// Requires a nonzero span.
std::size_t resonance_level(const CupTensor& cup, const IntMatrix& basis);

struct SamplerConfig {
  std::size_t samples = 200;
  std::uint64_t seed = kDefaultSeed;
  std::size_t max_b1 = 12;
};

struct ResonanceResult {
  std::vector<LinearComponent> components;  // maximal, positive-dimensional
  std::vector<std::vector<Rational>> uncertified;  // points of R_k in no certified component
};

// Throws std::invalid_argument when b1 exceeds config.max_b1.
ResonanceResult resonance_components(const ResonanceLocus& r, const SamplerConfig& config = {});

SubtorusComponent exp_map(const LinearComponent& e);

// ---- subtorus discovery -------------------------------------------------

// Caches the per-level ideals of one presentation.
class JumpLociContext {
 public:
  explicit JumpLociContext(Presentation p);

  const Presentation& presentation() const { return p_; }
  const AlexanderMatrix& alexander() const { return a_; }
  const CupTensor& cup() const { return cup_; }
  std::size_t b1() const { return a_.abel.b1; }

  const CharVarIdeal& ideal(std::size_t k);

  // dim H^1 at a pseudo-random point of the subtorus
  std::size_t h1_at_random_point(const SubtorusComponent& s, std::mt19937_64& rng) const;
  // Largest certified k >= 1 with s inside V_k (0 if none), starting the
  // downward search at the value seen at a random point.
  std::size_t generic_level(const SubtorusComponent& s, std::mt19937_64& rng);

 private:
  Presentation p_;
  AlexanderMatrix a_;
  CupTensor cup_;
  std::map<std::size_t, CharVarIdeal> ideals_;
};

struct SubtorusSearchConfig {
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t torsion_bound = 0;        // scan translates of order 2..bound; 0 disables
  std::size_t max_translate_checks = 5000;
  std::size_t max_b1 = 12;
};

struct SubtorusSearchResult {
  // all certified candidates with their generic level, no two nested at the
  // same or lower level
  std::vector<SubtorusComponent> candidates;
  bool translate_scan_truncated = false;
};

// Candidates: coordinate subtori, exp of the given linear subspaces, the
// trivial character, and (if enabled) coordinate subtori translated by torsion
// characters.
SubtorusSearchResult find_subtori(JumpLociContext& ctx, const std::vector<LinearComponent>& seeds,
                                  const SubtorusSearchConfig& config = {});

// Maximal candidates of generic level >= k: the components of V_k found.
std::vector<SubtorusComponent> components_at_level(const std::vector<SubtorusComponent>& candidates, std::size_t k);

// a inside b (directions and translates compared exactly)
bool subtorus_contains(const SubtorusComponent& b, const SubtorusComponent& a);

}  // namespace jumploci
