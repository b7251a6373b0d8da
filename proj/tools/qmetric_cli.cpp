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

// qmetric command-line front end. Links only the C interface.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmetric/qmetric.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitParam = 3;
constexpr int kExitSize = 4;

struct Failure {
  int code;
  std::string message;
};

int exit_code(qm_status s) {
  switch (s) {
    case QM_OK: return 0;
    case QM_ERR_PARSE: return kExitParse;
    case QM_ERR_PARAM:
    case QM_ERR_RANGE: return kExitParam;
    case QM_ERR_SIZE: return kExitSize;
    default: return kExitFailure;
  }
}

void check(qm_status s) {
  if (s == QM_OK) return;
  std::string msg = qm_last_error();
  if (s == QM_ERR_SIZE) msg += " (try --solver lp)";
  throw Failure{exit_code(s), msg};
}

struct TrajDeleter {
  void operator()(qm_trajset* p) const { qm_trajset_free(p); }
};
struct ObjDeleter {
  void operator()(qm_objset* p) const { qm_objset_free(p); }
};
using Traj = std::unique_ptr<qm_trajset, TrajDeleter>;
using Objs = std::unique_ptr<qm_objset, ObjDeleter>;

Traj load_traj(const std::string& path) {
  qm_trajset* p = nullptr;
  check(qm_trajset_load(path.c_str(), &p));
  return Traj(p);
}

Objs load_objs(const std::string& path, int step) {
  qm_objset* p = nullptr;
  check(qm_objset_load(path.c_str(), step, &p));
  return Objs(p);
}

// Shortest text that reads back to the same double; '.' separator always.
std::string num(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    double v = 0.0;
    const auto r = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || r.ec != std::errc() || r.ptr != item.data() + item.size()) {
      throw Failure{kExitParam, std::string(flag) + ": cannot read \"" + item + "\" as a number"};
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

struct MetricFlags {
  qm_params params = qm_default_params();
  std::string base = "euclidean";
  bool json = false;

  void add(CLI::App* app, bool with_gamma) {
    app->add_option("--c", params.c, "cut-off distance")->capture_default_str();
    app->add_option("--p", params.p, "exponent, >= 1")->capture_default_str();
    app->add_option("--rho", params.rho, "share of c^p charged per false object")->capture_default_str();
    if (with_gamma) app->add_option("--gamma", params.gamma, "track-switch penalty")->capture_default_str();
    app->add_option("--base", base, "base distance: euclidean or asym")->capture_default_str();
    app->add_option("--kappa", params.kappa, "scale for the asym base")->capture_default_str();
  }

  qm_params resolve() const {
    qm_params p = params;
    if (base == "euclidean") {
      p.base = QM_BASE_EUCLIDEAN;
    } else if (base == "asym") {
      p.base = QM_BASE_ASYM_SCALE;
    } else {
      throw Failure{kExitParam, "--base: unknown base distance \"" + base + "\""};
    }
    return p;
  }
};

qm_solver solver_of(const std::string& s) {
  if (s == "exact") return QM_SOLVER_EXACT;
  if (s == "lp") return QM_SOLVER_LP;
  throw Failure{kExitParam, "--solver must be exact or lp"};
}

void print_report(std::ostream& out, const qm_report& r, bool with_switch) {
  out << "total          " << num(r.total) << '\n'
      << "total^p        " << num(r.total_pth_power) << '\n'
      << "localisation   " << num(r.localisation) << '\n'
      << "missed         " << num(r.missed) << '\n'
      << "false          " << num(r.false_cost) << '\n';
  if (with_switch) out << "switch         " << num(r.switch_cost) << '\n';
}

std::string report_json(const qm_report& r, bool with_switch) {
  std::string s = "{\"total\": " + num(r.total) + ", \"total_pth_power\": " + num(r.total_pth_power) +
                  ", \"localisation\": " + num(r.localisation) + ", \"missed\": " + num(r.missed) +
                  ", \"false\": " + num(r.false_cost);
  if (with_switch) s += ", \"switch\": " + num(r.switch_cost);
  return s;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Failure{kExitFailure, "cannot open " + path + " for writing"};
  f << text;
  if (!f) throw Failure{kExitFailure, "cannot write " + path};
}

struct GospaCmd {
  std::string truth, estimate;
  int step = 1;
  MetricFlags flags;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("gospa", "GOSPA q-metric between two object sets");
    sub->add_option("truth", truth, "object-set or trajectory file")->required();
    sub->add_option("estimate", estimate, "object-set or trajectory file")->required();
    sub->add_option("--step", step, "time step used for trajectory files")->capture_default_str();
    flags.add(sub, false);
    sub->add_flag("--json", flags.json, "machine-readable output");
    sub->callback([this] { run(); });
  }

  void run() {
    const qm_params p = flags.resolve();
    Objs x = load_objs(truth, step);
    Objs y = load_objs(estimate, step);
    qm_report r{};
    check(qm_gospa(x.get(), y.get(), &p, &r));
    if (flags.json) {
      std::cout << report_json(r, false) << "}\n";
    } else {
      print_report(std::cout, r, false);
    }
  }
};

struct TgospaCmd {
  std::string truth, estimate, solver = "lp";
  bool decompose = false;
  MetricFlags flags;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("tgospa", "T-GOSPA q-metric between two trajectory sets");
    sub->add_option("truth", truth, "trajectory file")->required();
    sub->add_option("estimate", estimate, "trajectory file")->required();
    flags.add(sub, true);
    sub->add_option("--solver", solver, "exact or lp")->capture_default_str();
    sub->add_flag("--decompose", decompose, "per-time-step cost table");
    sub->add_flag("--json", flags.json, "machine-readable output");
    sub->callback([this] { run(); });
  }

  void run() {
    const qm_params p = flags.resolve();
    const qm_solver s = solver_of(solver);
    Traj x = load_traj(truth);
    Traj y = load_traj(estimate);
    int window = 0;
    check(qm_trajset_info(x.get(), &window, nullptr, nullptr, nullptr));
    std::vector<qm_step> steps(static_cast<std::size_t>(window));
    qm_report r{};
    std::size_t n = 0;
    check(qm_tgospa(x.get(), y.get(), &p, s, &r, steps.data(), steps.size(), &n));
    steps.resize(std::min(n, steps.size()));
    if (flags.json) {
      std::string out = report_json(r, true);
      if (decompose) {
        out += ", \"steps\": [";
        for (std::size_t i = 0; i < steps.size(); ++i) {
          const auto& st = steps[i];
          if (i > 0) out += ", ";
          out += "{\"k\": " + std::to_string(st.k) + ", \"localisation\": " + num(st.localisation) +
                 ", \"missed\": " + num(st.missed) + ", \"false\": " + num(st.false_cost) +
                 ", \"switch\": " + num(st.switch_cost) + "}";
        }
        out += "]";
      }
      std::cout << out << "}\n";
      return;
    }
    print_report(std::cout, r, true);
    if (decompose) {
      std::cout << "\nk,localisation,missed,false,switch\n";
      for (const auto& st : steps) {
        std::cout << st.k << ',' << num(st.localisation) << ',' << num(st.missed) << ',' << num(st.false_cost)
                  << ',' << num(st.switch_cost) << '\n';
      }
    }
  }
};

struct SweepCmd {
  std::string truth, estimate, solver = "lp", rho_list = "0.3,0.5,0.7", out;
  MetricFlags flags;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("sweep", "T-GOSPA over several rho values, as CSV");
    sub->add_option("truth", truth, "trajectory file")->required();
    sub->add_option("estimate", estimate, "trajectory file")->required();
    flags.add(sub, true);
    sub->add_option("--rho-list", rho_list, "comma-separated rho values")->capture_default_str();
    sub->add_option("--solver", solver, "exact or lp")->capture_default_str();
    sub->add_option("--out", out, "output CSV (default: standard output)");
    sub->callback([this] { run(); });
  }

  void run() {
    const qm_params p = flags.resolve();
    const qm_solver s = solver_of(solver);
    const std::vector<double> rhos = parse_list(rho_list, "--rho-list");
    Traj x = load_traj(truth);
    Traj y = load_traj(estimate);
    std::vector<qm_report> reports(rhos.size());
    check(qm_tgospa_sweep(x.get(), y.get(), &p, s, rhos.data(), rhos.size(), reports.data()));
    std::string csv = "rho,total,localisation,missed,false,switch\n";
    for (std::size_t i = 0; i < rhos.size(); ++i) {
      const auto& r = reports[i];
      csv += num(rhos[i]) + ',' + num(r.total) + ',' + num(r.localisation) + ',' + num(r.missed) + ',' +
             num(r.false_cost) + ',' + num(r.switch_cost) + '\n';
    }
    emit(out, csv);
  }
};

struct MonteCarloCmd {
  std::string scenario = "fig3", solver = "exact", rho_list = "0.3,0.5,0.7", out, positions;
  std::size_t runs = 20;
  std::uint64_t seed = 1;
  bool no_project = false;
  qm_corruption corruption = qm_default_corruption();
  MetricFlags flags;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("montecarlo", "RMS T-GOSPA per time step over corrupted runs, as CSV");
    flags.params.c = 10.0;
    flags.params.p = 2.0;
    flags.params.gamma = 1.0;
    sub->add_option("--scenario", scenario, "fig3 or a trajectory file")->capture_default_str();
    sub->add_option("--runs", runs, "number of Monte-Carlo runs")->capture_default_str();
    sub->add_option("--seed", seed, "seed for scenario and corruption")->capture_default_str();
    flags.add(sub, true);
    sub->add_option("--rho-list", rho_list, "comma-separated rho values")->capture_default_str();
    sub->add_option("--solver", solver, "exact or lp")->capture_default_str();
    sub->add_option("--pd", corruption.detection_probability, "detection probability")->capture_default_str();
    sub->add_option("--clutter-rate", corruption.clutter_rate, "mean clutter per step")->capture_default_str();
    sub->add_option("--false-track-fraction", corruption.false_track_fraction,
                    "fraction of clutter that becomes a false track")
        ->capture_default_str();
    sub->add_option("--false-track-min-length", corruption.false_track_min_length)->capture_default_str();
    sub->add_option("--false-track-max-length", corruption.false_track_max_length)->capture_default_str();
    sub->add_option("--switch-prob", corruption.switch_probability, "per-step identity swap probability")
        ->capture_default_str();
    sub->add_option("--noise-var", corruption.noise_variance, "position noise variance")->capture_default_str();
    sub->add_option("--area-min", corruption.area_min, "clutter area lower bound")->capture_default_str();
    sub->add_option("--area-max", corruption.area_max, "clutter area upper bound")->capture_default_str();
    sub->add_option("--positions", positions, "position components (default 0,2 for 4-D states, else all)");
    sub->add_flag("--no-project", no_project, "evaluate on full states instead of positions");
    sub->add_option("--out", out, "output CSV (default: standard output)");
    sub->callback([this] { run(); });
  }

  void run() {
    const qm_params p = flags.resolve();
    const qm_solver s = solver_of(solver);
    const std::vector<double> rhos = parse_list(rho_list, "--rho-list");
    if (runs < 1) throw Failure{kExitParam, "--runs must be >= 1"};

    Traj truth;
    if (scenario == "fig3") {
      qm_trajset* t = nullptr;
      check(qm_fig3_scenario(seed, &t));
      truth.reset(t);
    } else {
      truth = load_traj(scenario);
    }
    int window = 0;
    std::size_t dim = 0;
    check(qm_trajset_info(truth.get(), &window, nullptr, &dim, nullptr));

    std::vector<double> idx;
    if (!positions.empty()) {
      idx = parse_list(positions, "--positions");
    } else if (dim == 4 || dim == 0) {
      idx = {0, 2};
    } else {
      for (std::size_t d = 0; d < dim; ++d) idx.push_back(static_cast<double>(d));
    }
    if (idx.empty() || idx.size() > QM_MAX_POSITIONS) throw Failure{kExitParam, "--positions: too many components"};
    corruption.num_positions = idx.size();
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] < 0 || idx[i] != static_cast<double>(static_cast<std::size_t>(idx[i]))) {
        throw Failure{kExitParam, "--positions: components must be nonnegative integers"};
      }
      corruption.position_indices[i] = static_cast<std::size_t>(idx[i]);
    }
    corruption.seed = seed;

    const auto T = static_cast<std::size_t>(window);
    std::vector<double> values(rhos.size() * T * QM_MC_FIELDS);
    check(qm_montecarlo(truth.get(), &corruption, runs, &p, s, no_project ? 0 : 1, rhos.data(), rhos.size(),
                        values.data(), values.size()));
    std::string csv = "rho,k,d,localisation,missed,false,switch\n";
    for (std::size_t r = 0; r < rhos.size(); ++r) {
      for (std::size_t k = 0; k < T; ++k) {
        const double* row = values.data() + (r * T + k) * QM_MC_FIELDS;
        csv += num(rhos[r]) + ',' + std::to_string(k + 1);
        for (int f = 0; f < QM_MC_FIELDS; ++f) csv += ',' + num(row[f]);
        csv += '\n';
      }
    }
    emit(out, csv);
  }
};

struct ValidateCmd {
  std::string file;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("validate", "check a trajectory file");
    sub->add_option("file", file, "trajectory file")->required();
    sub->callback([this] { run(); });
  }

  void run() {
    Traj t = load_traj(file);
    int window = 0;
    std::size_t count = 0, dim = 0, states = 0;
    check(qm_trajset_info(t.get(), &window, &count, &dim, &states));
    std::cout << "ok: T=" << window << " trajectories=" << count << " dim=" << dim << " states=" << states << '\n';
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GOSPA and T-GOSPA quasi-metrics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qm_version()));
  GospaCmd gospa;
  TgospaCmd tgospa;
  SweepCmd sweep;
  MonteCarloCmd montecarlo;
  ValidateCmd validate;
  gospa.add(app);
  tgospa.add(app);
  sweep.add(app);
  montecarlo.add(app);
  validate.add(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParam;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
  return 0;
}
