// Copyright 2026 The qmetric Authors
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

#include "qmetric/qmetric.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "qmetric/errors.hpp"
#include "qmetric/evalrfs.hpp"
#include "qmetric/gospa.hpp"
#include "qmetric/io.hpp"
#include "qmetric/tgospa.hpp"

struct qm_trajset {
  qmetric::TrajectorySet set;
};

struct qm_objset {
  qmetric::ObjectSet set;
};

namespace {

thread_local std::string last_error;

struct NullArgument : qmetric::InputError {
  using InputError::InputError;
};

template <class F>
qm_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return QM_OK;
  } catch (const qmetric::ParseError& e) {
    last_error = e.what();
    return QM_ERR_PARSE;
  } catch (const qmetric::ParameterError& e) {
    last_error = e.what();
    return QM_ERR_PARAM;
  } catch (const qmetric::SizeError& e) {
    last_error = e.what();
    return QM_ERR_SIZE;
  } catch (const qmetric::ContractError& e) {
    last_error = e.what();
    return QM_ERR_CONTRACT;
  } catch (const qmetric::RangeError& e) {
    last_error = e.what();
    return QM_ERR_RANGE;
  } catch (const qmetric::ShapeError& e) {
    last_error = e.what();
    return QM_ERR_SHAPE;
  } catch (const qmetric::InputError& e) {
    last_error = e.what();
    return QM_ERR_INPUT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return QM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QM_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return QM_ERR_INTERNAL;
  }
}

template <class T>
T& deref(T* p, const char* name) {
  if (p == nullptr) throw NullArgument(std::string("null argument: ") + name);
  return *p;
}

const char* cstr(const char* p, const char* name) {
  if (p == nullptr) throw NullArgument(std::string("null argument: ") + name);
  return p;
}

qmetric::BaseDistance base_of(const qm_params& p) {
  switch (p.base) {
    case QM_BASE_EUCLIDEAN: return qmetric::euclidean_distance();
    case QM_BASE_ASYM_SCALE: return qmetric::asym_scale_distance(p.kappa);
  }
  throw qmetric::ParameterError("unknown base distance");
}

qmetric::GospaParams gospa_params(const qm_params& p) {
  qmetric::GospaParams g{p.c, p.p, p.rho};
  g.validate();
  return g;
}

qmetric::TgospaParams tgospa_params(const qm_params& p) {
  qmetric::TgospaParams t{gospa_params(p), p.gamma};
  t.validate();
  return t;
}

qmetric::Solver solver_of(qm_solver s) {
  switch (s) {
    case QM_SOLVER_EXACT: return qmetric::Solver::exact;
    case QM_SOLVER_LP: return qmetric::Solver::lp;
  }
  throw qmetric::ParameterError("unknown solver");
}

qm_report to_c(const qmetric::MetricReport& r) {
  return {r.total, r.total_pth_power, r.localisation, r.missed, r.false_cost, r.switch_cost};
}

qmetric::CorruptionConfig corruption_of(const qm_corruption& c) {
  if (c.num_positions == 0 || c.num_positions > QM_MAX_POSITIONS) {
    throw qmetric::ParameterError("num_positions must lie in [1, " + std::to_string(QM_MAX_POSITIONS) + "]");
  }
  if (!(c.noise_variance >= 0.0)) throw qmetric::ParameterError("noise variance must be >= 0");
  qmetric::CorruptionConfig cfg;
  const std::size_t n = c.num_positions;
  cfg.detection_probability = c.detection_probability;
  cfg.clutter_rate = c.clutter_rate;
  cfg.false_track_fraction = c.false_track_fraction;
  cfg.false_track_min_length = c.false_track_min_length;
  cfg.false_track_max_length = c.false_track_max_length;
  cfg.switch_probability = c.switch_probability;
  cfg.position_indices.assign(c.position_indices, c.position_indices + n);
  cfg.area_min.assign(n, c.area_min);
  cfg.area_max.assign(n, c.area_max);
  cfg.noise_cov.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) cfg.noise_cov[i * n + i] = c.noise_variance;
  cfg.seed = c.seed;
  cfg.validate();
  return cfg;
}

qm_trajset* wrap(qmetric::TrajectorySet set) { return new qm_trajset{std::move(set)}; }

}  // namespace

extern "C" {

const char* qm_version(void) { return "0.1.0"; }

const char* qm_last_error(void) { return last_error.c_str(); }

const char* qm_status_string(qm_status status) {
  switch (status) {
    case QM_OK: return "ok";
    case QM_ERR_INTERNAL: return "internal error";
    case QM_ERR_PARSE: return "parse error";
    case QM_ERR_PARAM: return "parameter error";
    case QM_ERR_SIZE: return "size bound exceeded";
    case QM_ERR_INPUT: return "input error";
    case QM_ERR_CONTRACT: return "contract error";
    case QM_ERR_RANGE: return "range error";
    case QM_ERR_SHAPE: return "shape error";
  }
  return "unknown status";
}

qm_params qm_default_params(void) { return {1.0, 1.0, 0.5, 1.0, QM_BASE_EUCLIDEAN, 2.0}; }

qm_corruption qm_default_corruption(void) {
  const qmetric::CorruptionConfig d;
  qm_corruption c{};
  c.detection_probability = d.detection_probability;
  c.clutter_rate = d.clutter_rate;
  c.false_track_fraction = d.false_track_fraction;
  c.false_track_min_length = d.false_track_min_length;
  c.false_track_max_length = d.false_track_max_length;
  c.switch_probability = d.switch_probability;
  c.noise_variance = d.noise_cov[0];
  c.area_min = d.area_min[0];
  c.area_max = d.area_max[0];
  c.num_positions = d.position_indices.size();
  for (std::size_t i = 0; i < c.num_positions; ++i) c.position_indices[i] = d.position_indices[i];
  c.seed = d.seed;
  return c;
}

qm_status qm_trajset_load(const char* path, qm_trajset** out) {
  return guarded([&] { deref(out, "out") = wrap(qmetric::load_trajectory_set(std::string(cstr(path, "path")))); });
}

qm_status qm_trajset_parse(const char* text, size_t length, qm_trajset** out) {
  return guarded([&] {
    deref(out, "out") = wrap(qmetric::parse_trajectory_set(std::string_view(&deref(text, "text"), length)));
  });
}

qm_status qm_trajset_save(const qm_trajset* set, const char* path) {
  return guarded([&] { qmetric::save_trajectory_set(std::string(cstr(path, "path")), deref(set, "set").set); });
}

qm_status qm_trajset_to_json(const qm_trajset* set, char** out) {
  return guarded([&] {
    const std::string text = qmetric::to_json(deref(set, "set").set);
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    deref(out, "out") = buf;
  });
}

void qm_string_free(char* text) { std::free(text); }

qm_status qm_trajset_create(int window, qm_trajset** out) {
  return guarded([&] { deref(out, "out") = wrap(qmetric::TrajectorySet(window, {})); });
}

qm_status qm_trajset_add(qm_trajset* set, int start, size_t dim, size_t num_states, const double* states) {
  return guarded([&] {
    auto& s = deref(set, "set");
    if (num_states > 0 && dim > 0) deref(states, "states");
    std::vector<qmetric::ObjectState> st;
    st.reserve(num_states);
    for (std::size_t i = 0; i < num_states; ++i) {
      st.emplace_back(std::vector<double>(states + i * dim, states + (i + 1) * dim));
    }
    std::vector<qmetric::Trajectory> all(s.set.begin(), s.set.end());
    all.emplace_back(start, std::move(st));
    s.set = qmetric::TrajectorySet(s.set.window(), std::move(all));
  });
}

qm_status qm_trajset_info(const qm_trajset* set, int* window, size_t* count, size_t* dim, size_t* total_states) {
  return guarded([&] {
    const auto& s = deref(set, "set").set;
    if (window != nullptr) *window = s.window();
    if (count != nullptr) *count = s.size();
    if (dim != nullptr) *dim = s.dim();
    if (total_states != nullptr) *total_states = s.total_states();
  });
}

qm_status qm_trajset_count_at(const qm_trajset* set, int k, size_t* out) {
  return guarded([&] {
    const auto& s = deref(set, "set").set;
    if (k < 1 || k > s.window()) throw qmetric::RangeError("time step outside window");
    deref(out, "out") = s.count_at(k);
  });
}

qm_status qm_trajset_truncate(const qm_trajset* set, int k, qm_trajset** out) {
  return guarded([&] { deref(out, "out") = wrap(qmetric::truncate(deref(set, "set").set, k)); });
}

void qm_trajset_free(qm_trajset* set) { delete set; }

qm_status qm_objset_load(const char* path, int step, qm_objset** out) {
  return guarded([&] {
    deref(out, "out") = new qm_objset{qmetric::load_objects_or_slice(std::string(cstr(path, "path")), step)};
  });
}

qm_status qm_objset_create(size_t dim, size_t count, const double* data, qm_objset** out) {
  return guarded([&] {
    if (count > 0) deref(data, "data");
    std::vector<qmetric::ObjectState> st;
    st.reserve(count);
    for (std::size_t i = 0; i < count; ++i) st.emplace_back(std::vector<double>(data + i * dim, data + (i + 1) * dim));
    deref(out, "out") = new qm_objset{qmetric::ObjectSet(std::move(st))};
  });
}

qm_status qm_objset_size(const qm_objset* set, size_t* out) {
  return guarded([&] { deref(out, "out") = deref(set, "set").set.size(); });
}

void qm_objset_free(qm_objset* set) { delete set; }

qm_status qm_gospa(const qm_objset* x, const qm_objset* y, const qm_params* params, qm_report* out) {
  return guarded([&] {
    const auto& p = deref(params, "params");
    const auto r = qmetric::gospa(deref(x, "x").set, deref(y, "y").set, gospa_params(p), base_of(p));
    deref(out, "out") = to_c(r.report);
  });
}

qm_status qm_gospa_sweep(const qm_objset* x, const qm_objset* y, const qm_params* params, const double* rhos,
                         size_t num_rhos, qm_report* out) {
  return guarded([&] {
    const auto& p = deref(params, "params");
    if (num_rhos > 0) {
      deref(rhos, "rhos");
      deref(out, "out");
    }
    const auto rs = qmetric::gospa_sweep(deref(x, "x").set, deref(y, "y").set, gospa_params(p),
                                         std::span<const double>(rhos, num_rhos), base_of(p));
    for (std::size_t i = 0; i < rs.size(); ++i) out[i] = to_c(rs[i].report);
  });
}

qm_status qm_tgospa(const qm_trajset* x, const qm_trajset* y, const qm_params* params, qm_solver solver,
                    qm_report* out, qm_step* steps, size_t capacity, size_t* num_steps) {
  return guarded([&] {
    const auto& p = deref(params, "params");
    const auto r = qmetric::tgospa(deref(x, "x").set, deref(y, "y").set, tgospa_params(p), base_of(p), solver_of(solver));
    deref(out, "out") = to_c(r.report);
    if (num_steps != nullptr) *num_steps = r.per_step.size();
    if (steps != nullptr) {
      for (std::size_t i = 0; i < r.per_step.size() && i < capacity; ++i) {
        const auto& s = r.per_step[i];
        steps[i] = {s.k, s.localisation, s.missed, s.false_cost, s.switch_cost};
      }
    }
  });
}

qm_status qm_tgospa_sweep(const qm_trajset* x, const qm_trajset* y, const qm_params* params, qm_solver solver,
                          const double* rhos, size_t num_rhos, qm_report* out) {
  return guarded([&] {
    const auto& p = deref(params, "params");
    if (num_rhos > 0) {
      deref(rhos, "rhos");
      deref(out, "out");
    }
    const auto rs = qmetric::tgospa_sweep(deref(x, "x").set, deref(y, "y").set, tgospa_params(p),
                                          std::span<const double>(rhos, num_rhos), base_of(p), solver_of(solver));
    for (std::size_t i = 0; i < rs.size(); ++i) out[i] = to_c(rs[i].report);
  });
}

qm_status qm_fig3_scenario(uint64_t seed, qm_trajset** out) {
  return guarded([&] { deref(out, "out") = wrap(qmetric::generate_fig3_scenario(seed)); });
}

qm_status qm_corrupt(const qm_trajset* truth, const qm_corruption* cfg, size_t run, qm_trajset** out) {
  return guarded([&] {
    const auto c = corruption_of(deref(cfg, "cfg"));
    qmetric::Rng rng(c.seed, run);
    deref(out, "out") = wrap(qmetric::corrupt(deref(truth, "truth").set, c, rng));
  });
}

qm_status qm_montecarlo(const qm_trajset* truth, const qm_corruption* cfg, size_t runs, const qm_params* params,
                        qm_solver solver, int project_positions, const double* rhos, size_t num_rhos, double* out,
                        size_t capacity) {
  return guarded([&] {
    const auto& p = deref(params, "params");
    const auto& t = deref(truth, "truth").set;
    const auto c = corruption_of(deref(cfg, "cfg"));
    const auto tp = tgospa_params(p);
    const auto base = base_of(p);
    if (runs == 0) throw qmetric::ParameterError("number of runs must be >= 1");
    if (num_rhos > 0) deref(rhos, "rhos");
    const auto T = static_cast<std::size_t>(t.window());
    if (capacity < num_rhos * T * QM_MC_FIELDS) throw qmetric::InputError("output buffer too small");
    if (num_rhos > 0) deref(out, "out");
    qmetric::RunBatch batch = qmetric::make_batch(t, c, runs);
    if (project_positions != 0) batch = qmetric::project(batch, c.position_indices);
    const auto profiles =
        qmetric::rms_profile(batch, tp, std::span<const double>(rhos, num_rhos), base, solver_of(solver));
    for (std::size_t r = 0; r < profiles.size(); ++r) {
      for (std::size_t k = 0; k < T; ++k) {
        double* row = out + (r * T + k) * QM_MC_FIELDS;
        row[0] = profiles[r].d[k];
        row[1] = profiles[r].localisation[k];
        row[2] = profiles[r].missed[k];
        row[3] = profiles[r].false_cost[k];
        row[4] = profiles[r].switch_cost[k];
      }
    }
  });
}

qm_status qm_rms_tgospa(const qm_trajset* truth, const qm_trajset* const* estimates, size_t runs,
                        const qm_params* params, qm_solver solver, int k, double* out) {
  return guarded([&] {
    const auto& p = deref(params, "params");
    qmetric::RunBatch batch{deref(truth, "truth").set, {}};
    if (runs > 0) deref(estimates, "estimates");
    for (std::size_t i = 0; i < runs; ++i) batch.estimates.push_back(deref(estimates[i], "estimate").set);
    deref(out, "out") = qmetric::rms_tgospa(batch, tgospa_params(p), base_of(p), k, solver_of(solver));
  });
}

}  // extern "C"
