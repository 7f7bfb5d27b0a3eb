// Copyright 2026 The curres Authors
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

#include "curres/curres.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "curres/acceptance.hpp"
#include "curres/barrier.hpp"
#include "curres/error.hpp"
#include "curres/harness.hpp"
#include "curres/heat_kernel.hpp"
#include "curres/io.hpp"
#include "curres/lattice.hpp"
#include "curres/particles.hpp"
#include "json.hpp"

struct curres_profile {
  curres::MacroProfile value;
};

struct curres_config {
  curres::Configuration value;
};

namespace {

thread_local std::string last_error;

curres_status record(curres_status status, const char* what) {
  last_error = what;
  return status;
}

template <typename F>
curres_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return CURRES_OK;
  } catch (const curres::Error& e) {
    return record(static_cast<curres_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return record(CURRES_SIZE_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return record(CURRES_INTERNAL, e.what());
  } catch (...) {
    return record(CURRES_INTERNAL, "unknown exception");
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) curres::fail(curres::ErrorCode::kInvalidArgument, std::string(name) + " is null");
}

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit_profile(curres::MacroProfile p, curres_profile** out) {
  *out = new curres_profile{std::move(p)};
}

std::string or_empty(const char* s) { return s == nullptr ? std::string() : std::string(s); }

}  // namespace

extern "C" {

const char* curres_version(void) { return curres::library_version(); }

const char* curres_last_error(void) { return last_error.c_str(); }

const char* curres_status_name(curres_status status) {
  switch (status) {
    case CURRES_OK: return "ok";
    case CURRES_INVALID_ARGUMENT: return "invalid argument";
    case CURRES_GRID_MISMATCH: return "grid mismatch";
    case CURRES_NOT_IN_DOMAIN: return "not in domain";
    case CURRES_ASSUMPTION_VIOLATED: return "assumption violated";
    case CURRES_CONFIGURATION: return "configuration error";
    case CURRES_SIZE_LIMIT: return "size limit";
    case CURRES_IO: return "i/o error";
    case CURRES_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void curres_string_free(char* s) { std::free(s); }

curres_status curres_profile_create(double atom, const double* density, size_t cells,
                                    curres_profile** out) {
  return guard([&] {
    need(out, "out");
    need(density, "density");
    emit_profile(curres::MacroProfile(atom, std::vector<double>(density, density + cells)), out);
  });
}

curres_status curres_profile_uniform(size_t cells, double value, curres_profile** out) {
  return guard([&] {
    need(out, "out");
    emit_profile(curres::MacroProfile::uniform(cells, value), out);
  });
}

curres_status curres_profile_from_json(const char* json, size_t cells, curres_profile** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    emit_profile(curres::profile_from_any_json(json, cells), out);
  });
}

curres_status curres_profile_load(const char* path, size_t cells, curres_profile** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    emit_profile(curres::profile_from_any_json(curres::read_text_file(path), cells), out);
  });
}

curres_status curres_profile_save(const curres_profile* p, const char* path) {
  return guard([&] {
    need(p, "profile");
    need(path, "path");
    curres::save_profile(path, p->value);
  });
}

curres_status curres_profile_to_json(const curres_profile* p, char** out) {
  return guard([&] {
    need(p, "profile");
    need(out, "out");
    *out = dup_string(curres::profile_to_json(p->value));
  });
}

void curres_profile_free(curres_profile* p) { delete p; }

curres_status curres_profile_cells(const curres_profile* p, size_t* out) {
  return guard([&] {
    need(p, "profile");
    need(out, "out");
    *out = p->value.cells();
  });
}

curres_status curres_profile_atom(const curres_profile* p, double* out) {
  return guard([&] {
    need(p, "profile");
    need(out, "out");
    *out = p->value.atom_mass();
  });
}

curres_status curres_profile_density(const curres_profile* p, double* buf, size_t len) {
  return guard([&] {
    need(p, "profile");
    need(buf, "buf");
    const auto d = p->value.density();
    std::copy_n(d.begin(), std::min(len, d.size()), buf);
  });
}

curres_status curres_tail_mass(const curres_profile* p, double r, double* out) {
  return guard([&] {
    need(p, "profile");
    need(out, "out");
    *out = curres::tail_mass(p->value, r);
  });
}

curres_status curres_profile_edge(const curres_profile* p, double* edge, int* has_edge) {
  return guard([&] {
    need(p, "profile");
    need(edge, "edge");
    need(has_edge, "has_edge");
    const std::optional<double> e = curres::profile_edge(p->value);
    *has_edge = e.has_value() ? 1 : 0;
    *edge = e.value_or(1.0);
  });
}

curres_status curres_leq(const curres_profile* u, const curres_profile* v, double tol, int* out) {
  return guard([&] {
    need(u, "u");
    need(v, "v");
    need(out, "out");
    *out = curres::leq(u->value, v->value, {tol, true}) ? 1 : 0;
  });
}

curres_status curres_tv_distance(const curres_profile* u, const curres_profile* v, double* out) {
  return guard([&] {
    need(u, "u");
    need(v, "v");
    need(out, "out");
    *out = curres::tv_distance(u->value, v->value);
  });
}

curres_status curres_cut_and_paste(const curres_profile* u, double j, double delta,
                                   curres_profile** out) {
  return guard([&] {
    need(u, "u");
    need(out, "out");
    emit_profile(curres::cut_and_paste(u->value, j, delta), out);
  });
}

curres_status curres_heat_convolve(const curres_profile* u, double t, curres_profile** out) {
  return guard([&] {
    need(u, "u");
    need(out, "out");
    emit_profile(curres::convolve(t, u->value), out);
  });
}

curres_status curres_barrier_evolve(const curres_profile* u, curres_side side, double j,
                                    double delta, long steps, curres_profile** out) {
  return guard([&] {
    need(u, "u");
    need(out, "out");
    const auto s = side == CURRES_UPPER ? curres::BarrierSide::kUpper : curres::BarrierSide::kLower;
    emit_profile(curres::barrier_evolve(u->value, s, j, delta, steps), out);
  });
}

curres_status curres_separating_element(const curres_profile* u, double j, double t, int depth,
                                        double gap_tol, double tau, curres_profile** out,
                                        double* gap, int* depth_out, int* flagged) {
  return guard([&] {
    need(u, "u");
    need(out, "out");
    curres::SeparatingElement se =
        curres::separating_element(u->value, j, t, depth, gap_tol, tau > 0.0 ? tau : 0.0);
    if (gap != nullptr) *gap = se.achieved_gap;
    if (depth_out != nullptr) *depth_out = se.refinement_depth;
    if (flagged != nullptr) *flagged = se.flagged ? 1 : 0;
    emit_profile(std::move(se.profile), out);
  });
}

curres_status curres_explicit_no_edge(const curres_profile* u, double j, double t,
                                      curres_profile** out, int* edge_formed) {
  return guard([&] {
    need(u, "u");
    need(out, "out");
    curres::ExplicitSolution ex = curres::explicit_no_edge(u->value, j, t);
    if (edge_formed != nullptr) *edge_formed = ex.edge_formed ? 1 : 0;
    emit_profile(std::move(ex.profile), out);
  });
}

curres_status curres_config_from_occupations(const int* occ, size_t sites, curres_config** out) {
  return guard([&] {
    need(occ, "occ");
    need(out, "out");
    *out = new curres_config{
        curres::Configuration::from_occupations(std::vector<int>(occ, occ + sites))};
  });
}

curres_status curres_sample_initial(const curres_profile* rho, long n, double j, uint64_t seed,
                                    double t, curres_config** out) {
  return guard([&] {
    need(rho, "rho");
    need(out, "out");
    *out = new curres_config{curres::sample_initial(rho->value, curres::SimParams(n, j, seed, t))};
  });
}

void curres_config_free(curres_config* c) { delete c; }

curres_status curres_config_sites(const curres_config* c, size_t* out) {
  return guard([&] {
    need(c, "config");
    need(out, "out");
    *out = c->value.occupations().size();
  });
}

curres_status curres_config_count(const curres_config* c, long* out) {
  return guard([&] {
    need(c, "config");
    need(out, "out");
    *out = c->value.count();
  });
}

curres_status curres_config_occupations(const curres_config* c, int* buf, size_t len) {
  return guard([&] {
    need(c, "config");
    need(buf, "buf");
    const auto occ = c->value.occupations();
    std::copy_n(occ.begin(), std::min(len, occ.size()), buf);
  });
}

curres_status curres_simulate(const curres_config* init, double j, uint64_t seed, double t,
                              curres_config** out) {
  return guard([&] {
    need(init, "init");
    need(out, "out");
    const curres::SimParams params(init->value.lattice_size(), j, seed, t);
    const curres::ClockBundle clocks(seed, j, params.eps());
    *out = new curres_config{
        curres::step_true(init->value, clocks, 0.0, params.micro_horizon())};
  });
}

curres_status curres_duality_check(const int* occ, size_t sites, const int* walkers,
                                   size_t n_walkers, double t, double* lhs, double* rhs) {
  return guard([&] {
    need(occ, "occ");
    need(lhs, "lhs");
    need(rhs, "rhs");
    if (n_walkers > 0) need(walkers, "walkers");
    const curres::DualityResult r =
        curres::duality_check({occ, sites}, {walkers, n_walkers}, t);
    *lhs = r.lhs;
    *rhs = r.rhs;
  });
}

curres_status curres_run_simulate(const curres_profile* u, long n, double j, double t,
                                  long replicas, uint64_t seed, const char* out_dir,
                                  char** report) {
  return guard([&] {
    need(u, "u");
    need(report, "report");
    *report = dup_string(curres::run_simulate(u->value, n, j, t, replicas, seed, or_empty(out_dir)));
  });
}

curres_status curres_run_barriers(const curres_profile* u, double j, double t, int depth,
                                  const char* out_dir, char** report) {
  return guard([&] {
    need(u, "u");
    need(report, "report");
    *report = dup_string(curres::run_barriers(u->value, j, t, depth, or_empty(out_dir)));
  });
}

curres_status curres_run_separate(const curres_profile* u, double j, double t, int depth,
                                  double gap_tol, double tau, const char* out_dir,
                                  char** report) {
  return guard([&] {
    need(u, "u");
    need(report, "report");
    *report = dup_string(
        curres::run_separate(u->value, j, t, depth, gap_tol, tau, or_empty(out_dir)));
  });
}

curres_status curres_run_couple(const curres_profile* u, long n, double j, double delta,
                                double delta_fine, double t, long samples, uint64_t seed,
                                char** report) {
  return guard([&] {
    need(u, "u");
    need(report, "report");
    *report =
        dup_string(curres::run_couple(u->value, n, j, delta, delta_fine, t, samples, seed));
  });
}

curres_status curres_compare(const char* config_json, char** report) {
  return guard([&] {
    need(config_json, "config_json");
    need(report, "report");
    *report = dup_string(curres::run_compare(config_json));
  });
}

curres_status curres_run_acceptance(const char* suite, char** report, int* all_passed) {
  return guard([&] {
    need(suite, "suite");
    need(report, "report");
    const auto results = curres::run_criteria(suite);
    bool ok = true;
    for (const auto& r : results) ok = ok && r.passed;
    if (all_passed != nullptr) *all_passed = ok ? 1 : 0;
    *report = dup_string(curres::acceptance_json(suite, results));
  });
}

}  // extern "C"
