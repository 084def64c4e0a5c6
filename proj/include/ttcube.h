#ifndef TTCUBE_H
#define TTCUBE_H

/* C interface to the ttcube core. All functions return a status code;
 * outputs are opaque handles or heap strings released with the matching
 * free function. Rational arguments use the "p/q" text form, points use
 * "edge:p/q", and structured results come back as JSON or DOT text. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ttcube_status {
  TTCUBE_OK = 0,
  TTCUBE_ERR_PARSE = 1,     /* malformed input text */
  TTCUBE_ERR_INVALID = 2,   /* object violates its invariants */
  TTCUBE_ERR_DOMAIN = 3,    /* argument outside an operation's domain */
  TTCUBE_ERR_LIMIT = 4,     /* iteration or size cap exceeded */
  TTCUBE_ERR_STRUCTURE = 5, /* a guaranteed structural property failed */
  TTCUBE_ERR_BADARG = 6     /* null pointer or malformed argument */
} ttcube_status;

/* Static description of a status code. */
const char *ttcube_status_name(ttcube_status status);

/* Frees any string returned through a char** out parameter. */
void ttcube_string_free(char *s);

typedef struct ttcube_map ttcube_map;
typedef struct ttcube_busts ttcube_busts;
typedef struct ttcube_wall ttcube_wall;
typedef struct ttcube_wallspace ttcube_wallspace;
typedef struct ttcube_complex ttcube_complex;

/* ---- graph maps ---- */

/* Parses the graph-map text format. On failure *err carries a message. */
ttcube_status ttcube_map_parse(const char *text, ttcube_map **out, char **err);
ttcube_status ttcube_map_read_file(const char *path, ttcube_map **out,
                                   char **err);
void ttcube_map_free(ttcube_map *map);

/* Canonical text form of the map. */
ttcube_status ttcube_map_serialize(const ttcube_map *map, char **out);

/* Validation violations as a JSON array (empty array when valid). */
ttcube_status ttcube_map_validate(const ttcube_map *map, char **json);

/* Full analysis: validation, train track verdict, irreducibility,
 * expanding edges, transition matrix, eigenvalue, weights, expansion
 * residual. */
ttcube_status ttcube_map_analyze(const ttcube_map *map, char **json);

/* Collapses the invariant forest; *out is the normalized map. */
ttcube_status ttcube_map_collapse(const ttcube_map *map, ttcube_map **out,
                                  char **report_json, char **err);

/* Preimage tree of depth `depth` rooted at `point` ("edge:p/q" or a
 * vertex name). */
ttcube_status ttcube_map_level_json(const ttcube_map *map, const char *point,
                                    int depth, char **json, char **err);
ttcube_status ttcube_map_level_dot(const ttcube_map *map, const char *point,
                                   int depth, char **dot, char **err);

/* Interior fixed points of the `power`-th iterate on one edge. */
ttcube_status ttcube_map_periodic(const ttcube_map *map, const char *edge,
                                  int power, char **json, char **err);

/* Scaled-distance sequence d_0..d_depth between two points. */
ttcube_status ttcube_map_dmetric_json(const ttcube_map *map, const char *from,
                                      const char *to, int depth, char **json,
                                      char **err);
ttcube_status ttcube_map_dmetric_csv(const ttcube_map *map, const char *from,
                                     const char *to, int depth, char **csv,
                                     char **err);

/* Mapping torus census (optionally with the group presentation). */
ttcube_status ttcube_map_torus_json(const ttcube_map *map, int power,
                                    int with_presentation, char **json,
                                    char **err);

/* ---- busts and walls ---- */

/* Chooses primary busts near the anchors ("edge:p/q", one per edge) for
 * the given tunnel length; eps ("p/q") may be NULL. */
ttcube_status ttcube_busts_choose(const ttcube_map *map, int tunnel_length,
                                  const char *const *anchors, size_t n_anchors,
                                  const char *eps, ttcube_busts **out,
                                  char **err);
void ttcube_busts_free(ttcube_busts *busts);
ttcube_status ttcube_busts_json(const ttcube_map *map,
                                const ttcube_busts *busts, char **json);

/* Bust property checks as JSON: each property, pass/fail, witness. */
ttcube_status ttcube_busts_check(const ttcube_map *map,
                                 const ttcube_busts *busts, char **json);

ttcube_status ttcube_wall_build(const ttcube_map *map,
                                const ttcube_busts *busts, ttcube_wall **out,
                                char **err);
void ttcube_wall_free(ttcube_wall *wall);
ttcube_status ttcube_wall_json(const ttcube_map *map, const ttcube_wall *wall,
                               char **json);
ttcube_status ttcube_wall_dot(const ttcube_map *map, const ttcube_wall *wall,
                              char **dot);
ttcube_status ttcube_wall_check(const ttcube_map *map, const ttcube_wall *wall,
                                char **json);
ttcube_status ttcube_wall_approximation_json(const ttcube_map *map,
                                             const ttcube_wall *wall,
                                             char **json, char **err);
ttcube_status ttcube_wall_approximation_dot(const ttcube_map *map,
                                            const ttcube_wall *wall,
                                            char **dot, char **err);

/* Narrow-zone tunnel-length bound from periodic regular anchors. */
ttcube_status ttcube_map_min_tunnel_length(const ttcube_map *map,
                                           const char *const *anchors,
                                           size_t n_anchors, int *out,
                                           char **err);

/* ---- quantitative constants ---- */

/* out[0] = kappa1, out[1] = kappa2, out[2] = L0. */
ttcube_status ttcube_constants(double l1, double l2, double m1, double m2,
                               double delta, double B, double out[3]);

/* Least integer tunnel length exceeding the narrow-zone bound. */
ttcube_status ttcube_narrow_zone_bound(double eigenvalue,
                                       double max_edge_weight, double chi,
                                       int *out);

/* ---- wallspaces and the dual complex ---- */

/* JSON: {"chambers": [...], "walls": [[[...],[...]], ...]}. */
ttcube_status ttcube_wallspace_parse(const char *json, ttcube_wallspace **out,
                                     char **err);
ttcube_status ttcube_wallspace_read_file(const char *path,
                                         ttcube_wallspace **out, char **err);
void ttcube_wallspace_free(ttcube_wallspace *ws);

ttcube_status ttcube_dual_complex(const ttcube_wallspace *ws, int max_dim,
                                  ttcube_complex **out, char **err);
void ttcube_complex_free(ttcube_complex *complex);
ttcube_status ttcube_complex_json(const ttcube_complex *complex, char **json);
ttcube_status ttcube_complex_dot(const ttcube_complex *complex, char **dot);

/* Unique-median sanity check on the dual 1-skeleton. */
ttcube_status ttcube_complex_is_median(const ttcube_complex *complex,
                                       int *median, char **err);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TTCUBE_H */
