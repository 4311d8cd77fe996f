// Copyright 2026 the lowtw authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lowtw/lowtw.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

#include "core/generators.hpp"
#include "core/io.hpp"
#include "core/multigraph.hpp"
#include "core/tree_decomposition.hpp"

// Handle definition follows the opaque-pointer pattern: the C-visible struct
// owns the C++ state.
struct lowtw_graph {
  lowtw::MultiGraph g;
  std::optional<lowtw::TreeDecomposition> witness;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_err(char** err, const std::string& msg) {
  if (err) *err = dup_string(msg);
}

// Maps C++ exceptions from `fn` onto status codes.
template <typename Fn>
lowtw_status guarded(char** err, Fn&& fn) {
  try {
    return fn();
  } catch (const lowtw::ParseError& e) {
    set_err(err, e.what());
    return LOWTW_ERR_PARSE;
  } catch (const lowtw::InvalidInput& e) {
    set_err(err, e.what());
    return LOWTW_ERR_INVALID_ARGUMENT;
  } catch (const lowtw::SimError& e) {
    set_err(err, e.what());
    return LOWTW_ERR_SIMULATION;
  } catch (const std::exception& e) {
    set_err(err, e.what());
    return LOWTW_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* lowtw_status_name(lowtw_status s) {
  switch (s) {
    case LOWTW_OK: return "ok";
    case LOWTW_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case LOWTW_ERR_PARSE: return "parse";
    case LOWTW_ERR_SIMULATION: return "simulation";
    case LOWTW_ERR_VERIFY: return "verify";
    case LOWTW_ERR_UNSUPPORTED: return "unsupported";
    case LOWTW_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void lowtw_string_free(char* s) { std::free(s); }

lowtw_status lowtw_graph_generate(const char* family,
                                  const lowtw_gen_options* opt,
                                  lowtw_graph** out, char** err) {
  if (!family || !opt || !out) {
    set_err(err, "null argument");
    return LOWTW_ERR_INVALID_ARGUMENT;
  }
  return guarded(err, [&] {
    lowtw::GenOptions go;
    go.keep_num = opt->keep_num;
    go.keep_den = opt->keep_den;
    go.weight_min = opt->weight_min;
    go.weight_max = opt->weight_max;
    go.directed = opt->directed != 0;
    lowtw::GeneratedKtree gen =
        lowtw::generate_family(family, opt->n, opt->k, go, opt->seed);
    auto* h = new lowtw_graph{std::move(gen.graph), std::move(gen.witness)};
    *out = h;
    return LOWTW_OK;
  });
}

lowtw_status lowtw_graph_parse(const char* text, lowtw_graph** out,
                               char** err) {
  if (!text || !out) {
    set_err(err, "null argument");
    return LOWTW_ERR_INVALID_ARGUMENT;
  }
  return guarded(err, [&] {
    auto* h = new lowtw_graph{lowtw::parse_graph(text), std::nullopt};
    *out = h;
    return LOWTW_OK;
  });
}

lowtw_status lowtw_graph_serialize(const lowtw_graph* g, char** out,
                                   char** err) {
  if (!g || !out) {
    set_err(err, "null argument");
    return LOWTW_ERR_INVALID_ARGUMENT;
  }
  return guarded(err, [&] {
    *out = dup_string(lowtw::serialize_graph(g->g));
    return LOWTW_OK;
  });
}

lowtw_status lowtw_graph_witness(const lowtw_graph* g, char** out,
                                 char** err) {
  if (!g || !out) {
    set_err(err, "null argument");
    return LOWTW_ERR_INVALID_ARGUMENT;
  }
  if (!g->witness) {
    set_err(err, "graph carries no witness decomposition");
    return LOWTW_ERR_UNSUPPORTED;
  }
  return guarded(err, [&] {
    *out = dup_string(lowtw::serialize_decomposition(*g->witness));
    return LOWTW_OK;
  });
}

void lowtw_graph_free(lowtw_graph* g) { delete g; }

// Distributed runs are routed through run_record(); the definition lives with
// the algorithm drivers and is linked in from the core library.

lowtw_status lowtw_run_separator(const lowtw_graph* g,
                                 const lowtw_run_options* opt,
                                 char** record_json, char** err) {
  (void)g;
  (void)opt;
  (void)record_json;
  set_err(err, "separator driver not linked yet");
  return LOWTW_ERR_UNSUPPORTED;
}

lowtw_status lowtw_run_decomposition(const lowtw_graph* g,
                                     const lowtw_run_options* opt,
                                     char** record_json, char** err) {
  (void)g;
  (void)opt;
  (void)record_json;
  set_err(err, "decomposition driver not linked yet");
  return LOWTW_ERR_UNSUPPORTED;
}

lowtw_status lowtw_run_distance_labels(const lowtw_graph* g,
                                       const lowtw_run_options* opt,
                                       char** record_json, char** err) {
  (void)g;
  (void)opt;
  (void)record_json;
  set_err(err, "labeling driver not linked yet");
  return LOWTW_ERR_UNSUPPORTED;
}

lowtw_status lowtw_run_matching(const lowtw_graph* g,
                                const lowtw_run_options* opt,
                                char** record_json, char** err) {
  (void)g;
  (void)opt;
  (void)record_json;
  set_err(err, "matching driver not linked yet");
  return LOWTW_ERR_UNSUPPORTED;
}

lowtw_status lowtw_run_girth(const lowtw_graph* g,
                             const lowtw_run_options* opt,
                             char** record_json, char** err) {
  (void)g;
  (void)opt;
  (void)record_json;
  set_err(err, "girth driver not linked yet");
  return LOWTW_ERR_UNSUPPORTED;
}

}  // extern "C"
