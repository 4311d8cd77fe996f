/* Copyright 2026 the lowtw authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Public C interface of the lowtw shared library.
 *
 * All functions returning lowtw_status follow the same contract: on success
 * they return LOWTW_OK and fill the out parameters; on failure they return a
 * nonzero status and, when err is non-NULL, store a malloc'd human-readable
 * message there.  Strings handed out by the library are released with
 * lowtw_string_free, handles with their matching _free function.  NULL is
 * always safe to pass to the free functions.
 */

#ifndef LOWTW_LOWTW_H_
#define LOWTW_LOWTW_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lowtw_status {
  LOWTW_OK = 0,
  LOWTW_ERR_INVALID_ARGUMENT = 1, /* bad flags, malformed options */
  LOWTW_ERR_PARSE = 2,            /* text inputs that do not parse */
  LOWTW_ERR_SIMULATION = 3,       /* bandwidth or round-limit violations */
  LOWTW_ERR_VERIFY = 4,           /* oracle disagreed with a distributed result */
  LOWTW_ERR_UNSUPPORTED = 5,
  LOWTW_ERR_INTERNAL = 6
} lowtw_status;

/* Stable short name of a status code, e.g. "ok", "verify". */
const char* lowtw_status_name(lowtw_status s);

void lowtw_string_free(char* s);

typedef struct lowtw_graph lowtw_graph;

/* Instance generation.  family is one of: ktree, bipartite-ktree, path,
 * cycle, grid, star.  k is the clique size for the ktree families and the
 * column count for grid.  keep_num/keep_den is the exact edge survival
 * probability.  Generated graphs carry their construction decomposition,
 * retrievable via lowtw_graph_witness.
 */
typedef struct lowtw_gen_options {
  uint32_t n;
  uint32_t k;
  uint64_t keep_num;
  uint64_t keep_den;
  uint64_t weight_min;
  uint64_t weight_max;
  int directed;
  uint64_t seed;
} lowtw_gen_options;

lowtw_status lowtw_graph_generate(const char* family,
                                  const lowtw_gen_options* opt,
                                  lowtw_graph** out, char** err);
lowtw_status lowtw_graph_parse(const char* text, lowtw_graph** out,
                               char** err);
lowtw_status lowtw_graph_serialize(const lowtw_graph* g, char** out,
                                   char** err);
/* Serialized witness decomposition recorded at generation time.
 * Fails with LOWTW_ERR_UNSUPPORTED on parsed graphs. */
lowtw_status lowtw_graph_witness(const lowtw_graph* g, char** out, char** err);
void lowtw_graph_free(lowtw_graph* g);

/* Options shared by every distributed run.  profile selects the algorithm
 * constants ("paper" or "desk"); bandwidth_factor scales the per-edge budget
 * of B = factor * ceil(log2 n) bits per round (0 picks the default, 32);
 * max_rounds of 0 picks the default cap.  When verify is nonzero the
 * centralized oracles recheck the output and a mismatch yields
 * LOWTW_ERR_VERIFY.
 */
typedef struct lowtw_run_options {
  const char* profile;
  uint64_t seed;
  uint64_t max_rounds;
  uint32_t bandwidth_factor;
  int verify;
} lowtw_run_options;

/* Each run returns a single JSON object (as text) describing the inputs,
 * the computed structure, round and message counts, and the verification
 * verdict when requested.
 */
lowtw_status lowtw_run_separator(const lowtw_graph* g,
                                 const lowtw_run_options* opt,
                                 char** record_json, char** err);
lowtw_status lowtw_run_decomposition(const lowtw_graph* g,
                                     const lowtw_run_options* opt,
                                     char** record_json, char** err);
lowtw_status lowtw_run_distance_labels(const lowtw_graph* g,
                                       const lowtw_run_options* opt,
                                       char** record_json, char** err);
lowtw_status lowtw_run_matching(const lowtw_graph* g,
                                const lowtw_run_options* opt,
                                char** record_json, char** err);
lowtw_status lowtw_run_girth(const lowtw_graph* g,
                             const lowtw_run_options* opt,
                             char** record_json, char** err);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LOWTW_LOWTW_H_ */
