#ifndef JUMPLOCI_JUMPLOCI_H
#define JUMPLOCI_JUMPLOCI_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define JL_API __declspec(dllexport)
#else
#define JL_API __attribute__((visibility("default")))
#endif

typedef enum jl_status {
  JL_OK = 0,
  JL_PARSE_ERROR = 1,        /* malformed presentation or graph text */
  JL_INVALID_ARGUMENT = 2,   /* bad option value, null pointer, bad homomorphism */
  JL_COMPUTATION_ERROR = 3,  /* a computation failed or exceeded a resource bound */
  JL_OUT_OF_MEMORY = 4
} jl_status;

typedef enum jl_variety_class { JL_QUASIPROJECTIVE = 0, JL_PROJECTIVE = 1 } jl_variety_class;

typedef struct jl_presentation jl_presentation;
typedef struct jl_graph jl_graph;

typedef struct jl_options {
  uint32_t k;              /* jump level, >= 1 */
  uint32_t samples;        /* random points per level */
  uint64_t seed;
  uint64_t torsion_bound;  /* translate orders scanned by jl_charvar */
  uint32_t degree;         /* Lie truncation degree, 2..5 */
  jl_variety_class variety;
  int formal;              /* nonzero: treat the group as 1-formal */
  uint32_t max_b1;         /* refuse larger first Betti numbers */
} jl_options;

JL_API const char* jl_version(void);
JL_API void jl_options_init(jl_options* opts);

/* Thread-local details of the last failed call on this thread. Line and
   column are 1-based and 0 when not applicable. */
JL_API const char* jl_last_error(void);
JL_API size_t jl_last_error_line(void);
JL_API size_t jl_last_error_column(void);

JL_API jl_status jl_presentation_parse(const char* text, jl_presentation** out);
JL_API jl_status jl_presentation_from_graph(const jl_graph* graph, jl_presentation** out);
JL_API void jl_presentation_free(jl_presentation* p);
JL_API size_t jl_presentation_generators(const jl_presentation* p);
JL_API size_t jl_presentation_relators(const jl_presentation* p);

JL_API jl_status jl_graph_parse(const char* text, jl_graph** out);
JL_API void jl_graph_free(jl_graph* g);

/* Every result is a NUL-terminated JSON document owned by the caller and
   released with jl_string_free. `input` labels the document and may be NULL. */
JL_API jl_status jl_resonance(const jl_presentation* p, const char* input, const jl_options* opts, char** json);
JL_API jl_status jl_charvar(const jl_presentation* p, const char* input, const jl_options* opts, char** json);
JL_API jl_status jl_malcev(const jl_presentation* p, const char* input, const jl_options* opts, char** json);
/* graph may be NULL; when given, p is ignored and the graph group is used */
JL_API jl_status jl_obstruct(const jl_presentation* p, const jl_graph* graph, const char* input,
                             const jl_options* opts, char** json);
JL_API jl_status jl_raag(const jl_graph* graph, const char* input, char** json);
JL_API jl_status jl_cover(const jl_presentation* p, const char* input, const int64_t* phi, size_t phi_len,
                          uint64_t order, char** json);
JL_API void jl_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
