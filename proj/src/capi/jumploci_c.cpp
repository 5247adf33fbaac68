#include "jumploci/jumploci.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "obstruction/obstruction.hpp"

struct jl_presentation {
  jumploci::Presentation value;
};

struct jl_graph {
  jumploci::SimpleGraph value;
};

namespace {

struct LastError {
  std::string message;
  std::size_t line = 0;
  std::size_t column = 0;
};

thread_local LastError last_error;

jl_status fail(jl_status s, const std::string& message, std::size_t line = 0, std::size_t column = 0) {
  last_error = {message, line, column};
  return s;
}

jl_status ok() {
  last_error = {};
  return JL_OK;
}

// Exceptions raised while interpreting user input vs. during the computation.
enum class Stage { input, compute };

template <class F>
jl_status guard(Stage stage, F&& body) {
  try {
    body();
    return ok();
  } catch (const jumploci::ParseError& e) {
    return fail(JL_PARSE_ERROR, e.what(), e.line(), e.column());
  } catch (const std::bad_alloc&) {
    return fail(JL_OUT_OF_MEMORY, "out of memory");
  } catch (const std::invalid_argument& e) {
    return fail(stage == Stage::input ? JL_INVALID_ARGUMENT : JL_COMPUTATION_ERROR, e.what());
  } catch (const std::exception& e) {
    return fail(JL_COMPUTATION_ERROR, e.what());
  } catch (...) {
    return fail(JL_COMPUTATION_ERROR, "unknown failure");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

jl_status emit(const jumploci::Json& doc, char** json) {
  *json = copy_string(doc.dump(2));
  return JL_OK;
}

std::string label(const char* input) { return input ? input : ""; }

jl_status check_options(const jl_options* o) {
  if (!o) return fail(JL_INVALID_ARGUMENT, "options must not be null");
  if (o->k == 0) return fail(JL_INVALID_ARGUMENT, "k must be at least 1");
  if (o->samples == 0) return fail(JL_INVALID_ARGUMENT, "samples must be at least 1");
  if (o->degree < 2 || o->degree > 5) return fail(JL_INVALID_ARGUMENT, "degree must be in [2, 5]");
  if (o->variety != JL_PROJECTIVE && o->variety != JL_QUASIPROJECTIVE)
    return fail(JL_INVALID_ARGUMENT, "unknown variety class");
  return JL_OK;
}

}  // namespace

extern "C" {

const char* jl_version(void) { return "1.0.0"; }

void jl_options_init(jl_options* o) {
  if (!o) return;
  o->k = 1;
  o->samples = 200;
  o->seed = jumploci::kDefaultSeed;
  o->torsion_bound = 30;
  o->degree = 4;
  o->variety = JL_QUASIPROJECTIVE;
  o->formal = 0;
  o->max_b1 = 12;
}

const char* jl_last_error(void) { return last_error.message.c_str(); }
size_t jl_last_error_line(void) { return last_error.line; }
size_t jl_last_error_column(void) { return last_error.column; }

jl_status jl_presentation_parse(const char* text, jl_presentation** out) {
  if (!text || !out) return fail(JL_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guard(Stage::input, [&] { *out = new jl_presentation{jumploci::parse_presentation(text)}; });
}

jl_status jl_presentation_from_graph(const jl_graph* graph, jl_presentation** out) {
  if (!graph || !out) return fail(JL_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guard(Stage::input, [&] { *out = new jl_presentation{jumploci::raag_presentation(graph->value)}; });
}

void jl_presentation_free(jl_presentation* p) { delete p; }

size_t jl_presentation_generators(const jl_presentation* p) { return p ? p->value.num_generators() : 0; }
size_t jl_presentation_relators(const jl_presentation* p) { return p ? p->value.num_relators() : 0; }

jl_status jl_graph_parse(const char* text, jl_graph** out) {
  if (!text || !out) return fail(JL_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guard(Stage::input, [&] { *out = new jl_graph{jumploci::parse_graph(text)}; });
}

void jl_graph_free(jl_graph* g) { delete g; }

jl_status jl_resonance(const jl_presentation* p, const char* input, const jl_options* opts, char** json) {
  if (!p || !json) return fail(JL_INVALID_ARGUMENT, "null argument");
  if (auto s = check_options(opts); s != JL_OK) return s;
  return guard(Stage::compute, [&] {
    jumploci::ResonanceOptions o{opts->k, opts->samples, opts->seed, opts->max_b1};
    emit(jumploci::resonance_report(p->value, label(input), o), json);
  });
}

jl_status jl_charvar(const jl_presentation* p, const char* input, const jl_options* opts, char** json) {
  if (!p || !json) return fail(JL_INVALID_ARGUMENT, "null argument");
  if (auto s = check_options(opts); s != JL_OK) return s;
  return guard(Stage::compute, [&] {
    jumploci::CharvarOptions o{opts->k, opts->samples, opts->seed, opts->torsion_bound, opts->max_b1};
    emit(jumploci::charvar_report(p->value, label(input), o), json);
  });
}

jl_status jl_malcev(const jl_presentation* p, const char* input, const jl_options* opts, char** json) {
  if (!p || !json) return fail(JL_INVALID_ARGUMENT, "null argument");
  if (auto s = check_options(opts); s != JL_OK) return s;
  return guard(Stage::compute, [&] { emit(jumploci::malcev_report(p->value, label(input), opts->degree), json); });
}

jl_status jl_obstruct(const jl_presentation* p, const jl_graph* graph, const char* input, const jl_options* opts,
                      char** json) {
  if ((!p && !graph) || !json) return fail(JL_INVALID_ARGUMENT, "null argument");
  if (auto s = check_options(opts); s != JL_OK) return s;
  return guard(Stage::compute, [&] {
    jumploci::BatteryConfig cfg;
    cfg.variety = opts->variety == JL_PROJECTIVE ? jumploci::VarietyClass::projective
                                                 : jumploci::VarietyClass::quasiprojective;
    cfg.formal = opts->formal != 0;
    cfg.seed = opts->seed;
    cfg.samples = opts->samples;
    cfg.truncation_degree = opts->degree;
    cfg.max_b1 = opts->max_b1;
    std::optional<jumploci::SimpleGraph> g;
    if (graph) g = graph->value;
    const auto pres = graph ? jumploci::raag_presentation(graph->value) : p->value;
    emit(jumploci::run_battery(pres, g, label(input), cfg).to_json(), json);
  });
}

jl_status jl_raag(const jl_graph* graph, const char* input, char** json) {
  if (!graph || !json) return fail(JL_INVALID_ARGUMENT, "null argument");
  return guard(Stage::compute, [&] { emit(jumploci::raag_report(graph->value, label(input)), json); });
}

jl_status jl_cover(const jl_presentation* p, const char* input, const int64_t* phi, size_t phi_len, uint64_t order,
                   char** json) {
  if (!p || !json || (!phi && phi_len > 0)) return fail(JL_INVALID_ARGUMENT, "null argument");
  // a bad homomorphism is a usage error, hence Stage::input
  return guard(Stage::input, [&] {
    std::vector<std::int64_t> images(phi, phi + phi_len);
    emit(jumploci::cover_report(p->value, label(input), images, order), json);
  });
}

void jl_string_free(char* s) { std::free(s); }

}  // extern "C"
