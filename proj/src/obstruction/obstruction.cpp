#include "obstruction/obstruction.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

#include "algebra/linear.hpp"

namespace jumploci {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
  if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
  return Verdict::pass;
}

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

Json torsion_json(const std::vector<Integer>& t) {
  Json out = Json::array();
  for (const auto& z : t) out.push_back(integer_json(z));
  return out;
}

std::vector<Rational> row_of(const IntMatrix& m, std::size_t i) {
  std::vector<Rational> v(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) v[j] = Rational(m(i, j));
  return v;
}

IntMatrix stack(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix s(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) s(a.rows() + i, j) = b(i, j);
  return s;
}

template <class F>
CheckResult guarded(const std::string& name, F&& body) {
  try {
    CheckResult r = body();
    r.name = name;
    return r;
  } catch (const std::exception& e) {
    CheckResult r;
    r.name = name;
    r.verdict = Verdict::inconclusive;
    r.evidence = Json{{"error", e.what()}};
    return r;
  }
}

}  // namespace

Json linear_component_json(const LinearComponent& c) {
  return Json{{"kind", "linear"},     {"k", c.k_max},          {"dim", c.dim()},
              {"basis", matrix_json(c.basis)}, {"translate", nullptr}, {"certified", c.certified}};
}

Json subtorus_component_json(const SubtorusComponent& c) {
  Json translate = nullptr;
  if (c.translate) translate = Json{{"order", c.translate->order}, {"exponents", c.translate->exponents}};
  return Json{{"kind", "subtorus"},   {"k", c.k},          {"dim", c.dim()},
              {"basis", matrix_json(c.directions)}, {"translate", translate}, {"certified", c.certified}};
}

// ---- checks -------------------------------------------------------------

CheckResult check_even_b1(std::size_t b1) {
  CheckResult r;
  r.name = "even_b1";
  r.verdict = b1 % 2 == 0 ? Verdict::pass : Verdict::fail;
  r.evidence = Json{{"b1", b1}};
  return r;
}

bool IsotropyClass::admissible() const {
  const std::size_t d = basis.rows();
  if (p == 0) return d >= 2;
  if (p == 1) return d >= 4 && pairing_nondegenerate;
  return false;
}

IsotropyClass isotropy_class(const CupTensor& cup, const IntMatrix& basis) {
  IsotropyClass c;
  c.basis = basis;
  const std::size_t d = basis.rows();
  std::vector<std::vector<Rational>> images;  // e_i cup e_j, i < j
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) images.push_back(cup.cup(row_of(basis, i), row_of(basis, j)));
  if (images.empty() || cup.h2_dim() == 0) return c;
  RationalMatrix m(images.size(), cup.h2_dim());
  for (std::size_t r = 0; r < images.size(); ++r)
    for (std::size_t h = 0; h < cup.h2_dim(); ++h) m(r, h) = images[r][h];
  c.p = rank(m);
  if (c.p != 1) return c;
  // the skew form omega with e_i cup e_j = omega_ij * v0
  std::size_t h0 = 0;
  const std::vector<Rational>* v0 = nullptr;
  for (const auto& v : images) {
    for (std::size_t h = 0; h < v.size() && !v0; ++h)
      if (v[h] != 0) {
        v0 = &v;
        h0 = h;
      }
    if (v0) break;
  }
  RationalMatrix omega(d, d, Rational(0));
  std::size_t idx = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j, ++idx) {
      const Rational w = images[idx][h0] / (*v0)[h0];
      omega(i, j) = w;
      omega(j, i) = -w;
    }
  c.pairing_nondegenerate = rank(omega) == d;
  return c;
}

CheckResult check_isotropy(const std::vector<IntMatrix>& spaces, const CupTensor& cup) {
  CheckResult r;
  r.name = "isotropy";
  Json items = Json::array();
  for (const auto& s : spaces) {
    const auto c = isotropy_class(cup, s);
    Json item{{"basis", matrix_json(s)}, {"dim", s.rows()}, {"p", c.p}};
    item["pairing_nondegenerate"] = c.p == 1 ? Json(c.pairing_nondegenerate) : Json(nullptr);
    item["ok"] = c.admissible();
    if (!c.admissible()) r.verdict = Verdict::fail;
    items.push_back(std::move(item));
  }
  r.evidence = Json{{"components", std::move(items)}};
  return r;
}

CheckResult check_pairwise_intersections(const std::vector<IntMatrix>& spaces) {
  CheckResult r;
  r.name = "pairwise_intersections";
  Json pairs = Json::array();
  for (std::size_t a = 0; a < spaces.size(); ++a)
    for (std::size_t b = a + 1; b < spaces.size(); ++b) {
      const std::size_t joint = rank(stack(spaces[a], spaces[b]));
      const std::size_t meet = spaces[a].rows() + spaces[b].rows() - joint;
      if (meet == 0) continue;
      r.verdict = Verdict::fail;
      pairs.push_back(Json{{"first", matrix_json(spaces[a])},
                           {"second", matrix_json(spaces[b])},
                           {"intersection_dim", meet}});
    }
  r.evidence = Json{{"components", spaces.size()}, {"offending_pairs", std::move(pairs)}};
  return r;
}

std::vector<CurveProfile> curve_profiles(std::size_t d, std::size_t k) {
  std::vector<CurveProfile> out;
  if (k == 0) return out;
  if (d >= 4 && d % 2 == 0 && k == d - 2) out.push_back({"projective", static_cast<unsigned>(d / 2), 0});
  if (d >= 2 && k == d - 1)
    // 2g + s - 1 = d, s >= 1
    for (unsigned g = 0; 2 * g + 1 <= d + 1; ++g) out.push_back({"punctured", g, static_cast<unsigned>(d + 1 - 2 * g)});
  return out;
}

CheckResult check_curve_profiles(const std::vector<SubtorusComponent>& components) {
  CheckResult r;
  r.name = "curve_profiles";
  Json items = Json::array();
  for (const auto& c : components) {
    if (c.dim() == 0) continue;
    const auto profiles = curve_profiles(c.dim(), c.k);
    Json sols = Json::array();
    for (const auto& pr : profiles) sols.push_back(Json{{"type", pr.type}, {"g", pr.g}, {"s", pr.s}});
    if (profiles.empty()) r.verdict = Verdict::fail;
    items.push_back(Json{{"basis", matrix_json(c.directions)},
                         {"dim", c.dim()},
                         {"k", c.k},
                         {"profiles", std::move(sols)},
                         {"ok", !profiles.empty()}});
  }
  r.evidence = Json{{"components", std::move(items)}};
  return r;
}

CheckResult check_tangent_cone(JumpLociContext& ctx, const std::vector<LinearComponent>& resonance,
                               const std::vector<SubtorusComponent>& subtori, bool formal_branch) {
  CheckResult r;
  r.name = "tangent_cone";
  bool exp_ok = true, dir_ok = true;
  Json exp_checks = Json::array(), dir_checks = Json::array();
  for (const auto& e : resonance) {
    const bool in = subtorus_verify(ctx.ideal(e.k_max), exp_map(e));
    exp_ok = exp_ok && in;
    exp_checks.push_back(Json{{"basis", matrix_json(e.basis)}, {"k", e.k_max}, {"exp_in_V", in}});
  }
  for (const auto& s : subtori) {
    if (!s.through_one() || s.dim() == 0) continue;
    const std::size_t level = resonance_level(ctx.cup(), s.directions);
    const bool in = level >= s.k;
    dir_ok = dir_ok && in;
    dir_checks.push_back(
        Json{{"basis", matrix_json(s.directions)}, {"k", s.k}, {"resonance_level", level}, {"in_R", in}});
  }
  if (!dir_ok)
    r.verdict = Verdict::fail;
  else if (!exp_ok)
    r.verdict = formal_branch ? Verdict::fail : Verdict::inconclusive;
  r.evidence = Json{{"formal_branch", formal_branch},
                    {"scope", formal_branch ? "full" : "partial"},
                    {"exp_checks", std::move(exp_checks)},
                    {"direction_checks", std::move(dir_checks)}};
  return r;
}

CheckResult check_morgan(const GradedQuotient& q, VarietyClass c) {
  CheckResult r;
  r.name = "morgan_degrees";
  const auto v = morgan_degree_check(q, c);
  r.verdict = v.pass ? Verdict::pass : Verdict::fail;
  r.evidence = Json{{"up_to_degree", q.degree},
                    {"dims", q.dims},
                    {"generator_degrees", v.generator_degrees},
                    {"relation_degrees", v.relation_degrees},
                    {"allowed_generator_degrees", v.allowed_generator_degrees},
                    {"allowed_relation_degrees", v.allowed_relation_degrees}};
  if (!v.pass) r.evidence["witness"] = Json{{"kind", v.witness_kind}, {"degree", *v.witness_degree}};
  return r;
}

// ---- graph groups -------------------------------------------------------

RaagClassification raag_classify(const SimpleGraph& g) {
  RaagClassification out;
  const SimpleGraph co = g.complement();
  out.parts = co.components();
  out.realizable = true;
  for (const auto& part : out.parts) {
    bool clique = true;
    for (std::size_t a = 0; a < part.size() && clique; ++a)
      for (std::size_t b = a + 1; b < part.size(); ++b)
        if (!co.adjacent(part[a], part[b])) {
          clique = false;
          break;
        }
    if (clique) continue;
    out.realizable = false;
    // a connected non-clique has a vertex with two non-adjacent neighbours
    for (std::size_t v : part) {
      for (std::size_t u : part) {
        if (u == v || !co.adjacent(u, v)) continue;
        for (std::size_t w : part)
          if (w > u && w != v && co.adjacent(v, w) && !co.adjacent(u, w)) {
            out.witness = std::array<std::size_t, 3>{u, v, w};
            break;
          }
        if (out.witness) break;
      }
      if (out.witness) break;
    }
    break;
  }
  if (out.realizable) {
    std::size_t singletons = 0;
    std::vector<std::string> factors;
    for (const auto& part : out.parts) {
      if (part.size() == 1)
        ++singletons;
      else
        factors.push_back("F_" + std::to_string(part.size()));
    }
    if (singletons == 1) factors.push_back("Z");
    if (singletons > 1) factors.push_back("Z^" + std::to_string(singletons));
    if (factors.empty()) factors.push_back("1");
    for (std::size_t i = 0; i < factors.size(); ++i) out.decomposition += (i ? " x " : "") + factors[i];
    out.projective_realizable = singletons == g.size() && g.size() % 2 == 0;
  }
  return out;
}

CheckResult check_raag(const SimpleGraph& g, VarietyClass c) {
  CheckResult r;
  r.name = "raag_classification";
  const auto cls = raag_classify(g);
  Json parts = Json::array();
  for (const auto& part : cls.parts) {
    Json names = Json::array();
    for (auto v : part) names.push_back(g.vertices()[v]);
    parts.push_back(std::move(names));
  }
  r.evidence = Json{{"realizable", cls.realizable}, {"complement_components", std::move(parts)}};
  if (cls.realizable) {
    r.evidence["decomposition"] = cls.decomposition;
  } else if (cls.witness) {
    const auto& w = *cls.witness;
    r.evidence["complement_path"] = Json::array({g.vertices()[w[0]], g.vertices()[w[1]], g.vertices()[w[2]]});
  }
  r.evidence["projective_realizable"] = cls.projective_realizable;
  if (!cls.realizable || (c == VarietyClass::projective && !cls.projective_realizable)) r.verdict = Verdict::fail;
  return r;
}

// ---- battery ------------------------------------------------------------

const CheckResult* ObstructionReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

Json ObstructionReport::to_json() const {
  Json checks_json = Json::array();
  for (const auto& c : checks)
    checks_json.push_back(Json{{"name", c.name}, {"verdict", to_string(c.verdict)}, {"evidence", c.evidence}});
  Json out;
  out["input"] = input;
  out["class"] = to_string(variety);
  out["b1"] = b1;
  out["torsion"] = torsion_json(torsion);
  out["checks"] = std::move(checks_json);
  out["components"] = components;
  out["overall"] = to_string(overall);
  out["seed"] = seed;
  out["truncation_degree"] = truncation_degree ? Json(*truncation_degree) : Json(nullptr);
  return out;
}

ObstructionReport run_battery(const Presentation& p, const std::optional<SimpleGraph>& graph, const std::string& input,
                              const BatteryConfig& config) {
  ObstructionReport rep;
  rep.input = input;
  rep.variety = config.variety;
  rep.seed = config.seed;
  rep.truncation_degree = config.truncation_degree;

  // the Lie computation is independent of everything else
  auto morgan = std::async(std::launch::async, [&p, &config] {
    return guarded("morgan_degrees", [&] {
      return check_morgan(malcev_truncation(p, config.truncation_degree), config.variety);
    });
  });

  JumpLociContext ctx(p);
  rep.b1 = ctx.b1();
  rep.torsion = ctx.alexander().abel.torsion;
  const bool formal_branch = config.formal || graph.has_value() || config.variety == VarietyClass::projective;

  if (config.variety == VarietyClass::projective) rep.checks.push_back(check_even_b1(rep.b1));

  std::optional<ResonanceResult> res;
  rep.checks.push_back(guarded("resonance_components", [&] {
    res = resonance_components(ResonanceLocus{1, ctx.cup()}, SamplerConfig{config.samples, config.seed, config.max_b1});
    CheckResult r;
    Json comps = Json::array();
    for (const auto& c : res->components) comps.push_back(linear_component_json(c));
    r.evidence = Json{{"k", 1}, {"components", std::move(comps)}, {"uncertified_points", res->uncertified.size()}};
    bool all_certified = res->uncertified.empty();
    for (const auto& c : res->components) all_certified = all_certified && c.certified;
    if (!all_certified) r.verdict = Verdict::inconclusive;
    return r;
  }));

  std::optional<SubtorusSearchResult> tori;
  std::string tori_error;
  try {
    tori = find_subtori(ctx, res ? res->components : std::vector<LinearComponent>{},
                        SubtorusSearchConfig{config.seed, config.torsion_bound, 5000, config.max_b1});
  } catch (const std::exception& e) {
    tori_error = e.what();
  }
  std::vector<SubtorusComponent> v1;      // components of V_1 found
  std::vector<SubtorusComponent> v1_one;  // positive-dimensional, through 1
  std::vector<IntMatrix> tangent_spaces;
  if (tori) {
    v1 = components_at_level(tori->candidates, 1);
    for (const auto& c : v1)
      if (c.through_one() && c.dim() > 0) {
        v1_one.push_back(c);
        tangent_spaces.push_back(c.directions);
      }
  }
  auto needs_tori = [&](const std::string& name, auto&& body) {
    if (!tori) {
      CheckResult r;
      r.name = name;
      r.verdict = Verdict::inconclusive;
      r.evidence = Json{{"error", tori_error}};
      return r;
    }
    return guarded(name, body);
  };

  rep.checks.push_back(needs_tori("isotropy", [&] { return check_isotropy(tangent_spaces, ctx.cup()); }));
  rep.checks.push_back(
      needs_tori("pairwise_intersections", [&] { return check_pairwise_intersections(tangent_spaces); }));
  rep.checks.push_back(needs_tori("tangent_cone", [&] {
    if (!res) throw std::runtime_error("resonance components unavailable");
    return check_tangent_cone(ctx, res->components, tori->candidates, formal_branch);
  }));
  rep.checks.push_back(needs_tori("curve_profiles", [&] { return check_curve_profiles(v1_one); }));
  rep.checks.push_back(morgan.get());
  if (graph) rep.checks.push_back(guarded("raag_classification", [&] { return check_raag(*graph, config.variety); }));

  if (res)
    for (const auto& c : res->components) rep.components.push_back(linear_component_json(c));
  for (const auto& c : v1) rep.components.push_back(subtorus_component_json(c));
  if (tori && tori->translate_scan_truncated) {
    // noted on the subtorus-based checks
    for (auto& c : rep.checks)
      if (c.name == "curve_profiles") c.evidence["translate_scan_truncated"] = true;
  }

  for (const auto& c : rep.checks) rep.overall = combine(rep.overall, c.verdict);
  return rep;
}

// ---- covers -------------------------------------------------------------

std::size_t CoverSummary::twisted_sum() const {
  std::size_t s = 0;
  for (auto h : twisted_h1) s += h;
  return s;
}

CoverSummary cover_summary(const Presentation& p, const std::vector<std::int64_t>& phi, std::uint64_t order) {
  if (phi.size() != p.num_generators())
    throw std::invalid_argument("phi needs one value per generator (" + std::to_string(p.num_generators()) + ")");
  if (order < 2) throw std::invalid_argument("cover order must be at least 2");
  const Presentation cover = cyclic_cover_presentation(p, phi, order);
  CoverSummary s;
  s.order = order;
  s.phi = phi;
  s.cover_generators = cover.num_generators();
  s.cover_relators = cover.num_relators();
  const auto ab = abelianization(cover);
  s.cover_b1 = ab.b1;
  s.cover_torsion = ab.torsion;

  const auto am = alexander_matrix(p);
  s.prime = prime_for_root_order(order);
  const PrimeField f(s.prime);
  const auto zeta = f.root_of_unity(order);
  const auto n = static_cast<std::int64_t>(order);
  for (std::uint64_t j = 0; j < order; ++j) {
    std::vector<std::uint64_t> images;
    for (auto e : phi) images.push_back(f.pow(zeta, ((e * static_cast<std::int64_t>(j)) % n + n) % n));
    s.twisted_h1.push_back(h1_dim_at(p, am, character_from_generator_images(am, s.prime, order, images)));
  }
  return s;
}

// ---- documents ----------------------------------------------------------

namespace {

Json rational_vector_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(q.get_str());
  return out;
}

}  // namespace

Json resonance_report(const Presentation& p, const std::string& input, const ResonanceOptions& o) {
  if (o.k == 0) throw std::invalid_argument("k must be at least 1");
  const auto cup = cup_tensor(p);
  const auto res = resonance_components(ResonanceLocus{o.k, cup}, SamplerConfig{o.samples, o.seed, o.max_b1});
  Json comps = Json::array(), stray = Json::array();
  for (const auto& c : res.components) comps.push_back(linear_component_json(c));
  for (const auto& u : res.uncertified) stray.push_back(rational_vector_json(u));
  Json out;
  out["input"] = input;
  out["b1"] = cup.b1();
  out["h2"] = cup.h2_dim();
  out["k"] = o.k;
  out["contains_zero"] = cup.b1() >= o.k;
  out["components"] = std::move(comps);
  out["uncertified"] = std::move(stray);
  out["samples"] = o.samples;
  out["seed"] = o.seed;
  return out;
}

Json charvar_report(const Presentation& p, const std::string& input, const CharvarOptions& o) {
  if (o.k == 0) throw std::invalid_argument("k must be at least 1");
  JumpLociContext ctx(p);
  const auto& a = ctx.alexander();
  const auto& ideal = ctx.ideal(o.k);
  const auto res =
      resonance_components(ResonanceLocus{o.k, ctx.cup()}, SamplerConfig{o.samples, o.seed, o.max_b1});
  const auto tori =
      find_subtori(ctx, res.components, SubtorusSearchConfig{o.seed, o.torsion_bound, 5000, o.max_b1});
  Json comps = Json::array();
  for (const auto& c : components_at_level(tori.candidates, o.k)) comps.push_back(subtorus_component_json(c));
  Json ideal_json;
  ideal_json["zero"] = ideal.is_zero();
  ideal_json["unit"] = ideal.is_unit();
  ideal_json["includes_identity"] = ideal.includes_identity;
  ideal_json["generator_count"] = ideal.gens.size();
  Json gens = Json::array();
  constexpr std::size_t kShown = 20;
  for (std::size_t i = 0; i < ideal.gens.size() && i < kShown; ++i) gens.push_back(ideal.gens[i].to_string(a.var_names));
  ideal_json["generators"] = std::move(gens);
  Json out;
  out["input"] = input;
  out["b1"] = ctx.b1();
  out["torsion"] = torsion_json(a.abel.torsion);
  out["k"] = o.k;
  out["variables"] = a.var_names;
  out["ideal"] = std::move(ideal_json);
  out["components"] = std::move(comps);
  out["translate_scan_truncated"] = tori.translate_scan_truncated;
  out["torsion_bound"] = o.torsion_bound;
  out["samples"] = o.samples;
  out["seed"] = o.seed;
  return out;
}

Json malcev_report(const Presentation& p, const std::string& input, unsigned degree) {
  const auto q = malcev_truncation(p, degree);
  Json out;
  out["input"] = input;
  out["truncation_degree"] = degree;
  out["dims"] = q.dims;
  out["generators"] = q.generators;
  out["relations"] = q.relations;
  out["generator_degrees"] = q.generator_degrees();
  out["relation_degrees"] = q.relation_degrees();
  Json morgan = Json::object();
  for (auto c : {VarietyClass::projective, VarietyClass::quasiprojective}) {
    try {
      const auto v = morgan_degree_check(q, c);
      Json item{{"verdict", v.pass ? "pass" : "fail"}};
      if (!v.pass) item["witness"] = Json{{"kind", v.witness_kind}, {"degree", *v.witness_degree}};
      morgan[to_string(c)] = std::move(item);
    } catch (const std::invalid_argument& e) {
      morgan[to_string(c)] = Json{{"verdict", "inconclusive"}, {"reason", e.what()}};
    }
  }
  out["morgan"] = std::move(morgan);
  return out;
}

Json raag_report(const SimpleGraph& g, const std::string& input) {
  const auto quasi = check_raag(g, VarietyClass::quasiprojective);
  Json out;
  out["input"] = input;
  out["vertices"] = g.size();
  out["edges"] = g.edges().size();
  for (const auto& [key, value] : quasi.evidence.items()) out[key] = value;
  return out;
}

Json cover_report(const Presentation& p, const std::string& input, const std::vector<std::int64_t>& phi,
                  std::uint64_t order) {
  const auto s = cover_summary(p, phi, order);
  Json out;
  out["input"] = input;
  out["order"] = s.order;
  out["phi"] = s.phi;
  out["cover"] = Json{{"generators", s.cover_generators},
                      {"relators", s.cover_relators},
                      {"b1", s.cover_b1},
                      {"torsion", torsion_json(s.cover_torsion)}};
  out["prime"] = s.prime;
  out["twisted_h1"] = s.twisted_h1;
  out["twisted_sum"] = s.twisted_sum();
  out["consistent"] = s.twisted_sum() == s.cover_b1;
  return out;
}

}  // namespace jumploci
