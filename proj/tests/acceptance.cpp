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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qmetric/evalrfs.hpp"
#include "qmetric/gospa.hpp"
#include "qmetric/io.hpp"
#include "qmetric/tgospa.hpp"

using namespace qmetric;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fixture(const std::string& name) { return std::string(QMETRIC_FIXTURES) + "/" + name; }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const Solver kSolvers[] = {Solver::exact, Solver::lp};

double affine_rhs(const TrajectorySet& X, const TrajectorySet& Y, double rho, double cp) {
  return (rho - 0.5) * cp * (static_cast<double>(Y.total_states()) - static_cast<double>(X.total_states()));
}

// 1. Object-set worked example.
Outcome worked_example_sets() {
  Outcome o;
  const auto x = load_objects_or_slice(fixture("fig1_truth.json"), 1);
  const auto y1 = load_objects_or_slice(fixture("fig1_y1.json"), 1);
  const auto y2 = load_objects_or_slice(fixture("fig1_y2.json"), 1);
  const double c = 1.0;
  const double d1 = std::abs(y1[0][0] - x[0][0]);
  const double d2 = std::abs(y1[1][0] - x[1][0]);
  const auto base = euclidean_distance();
  double worst = 0.0;
  for (int i = 1; i <= 9; ++i) {
    GospaParams g{c, 1.0, 0.1 * i};
    const double v1 = gospa(x, y1, g, base).report.total;
    const double v2 = gospa(x, y2, g, base).report.total;
    worst = std::max({worst, std::abs(v1 - (d1 + d2 + g.rho * c)), std::abs(v2 - (d1 + (1.0 - g.rho) * c))});
  }
  o.require(worst <= 1e-12, "closed-form error " + fmt("%.3g", worst));

  // Preference switches where d(x,y1) = d(x,y2): rho* = 1/2 - d2/(2c).
  const double rho_star = 0.5 - d2 / (2.0 * c);
  for (double rho = 0.02; rho < 0.99; rho += 0.01) {
    if (std::abs(rho - rho_star) < 1e-9) continue;
    GospaParams g{c, 1.0, rho};
    const bool prefers_y1 = gospa(x, y1, g, base).report.total < gospa(x, y2, g, base).report.total;
    o.require(prefers_y1 == (rho < rho_star), "preference at rho=" + fmt("%.2f", rho));
  }
  GospaParams at{c, 1.0, rho_star};
  o.require(std::abs(gospa(x, y1, at, base).report.total - gospa(x, y2, at, base).report.total) <= 1e-12,
            "values differ at the crossover");
  o.require(std::abs(rho_star - 0.35) <= 1e-12, "crossover at " + fmt("%.17g", rho_star));
  if (o.pass) o.detail = "max error " + fmt("%.2g", worst) + ", crossover rho=" + fmt("%.4g", rho_star);
  return o;
}

// 2. Trajectory worked example, both solvers.
Outcome worked_example_trajectories() {
  Outcome o;
  const auto X = load_trajectory_set(fixture("fig2_truth.json"));
  const auto Y1 = load_trajectory_set(fixture("fig2_y1.json"));
  const auto Y2 = load_trajectory_set(fixture("fig2_y2.json"));
  const double c = 1.0, delta = 0.1, gamma = 0.1;
  const auto base = euclidean_distance();
  double worst = 0.0, disagree = 0.0;
  for (int i = 1; i <= 99; ++i) {
    TgospaParams t{{c, 1.0, 0.01 * i}, gamma};
    const double rho = t.gospa.rho;
    double v[2][2];
    for (int s = 0; s < 2; ++s) {
      v[s][0] = tgospa(X, Y1, t, base, kSolvers[s]).report.total;
      v[s][1] = tgospa(X, Y2, t, base, kSolvers[s]).report.total;
      worst = std::max({worst, std::abs(v[s][0] - (5 * delta + rho * c + gamma)),
                        std::abs(v[s][1] - (4 * delta + (1.0 - rho) * c))});
    }
    disagree = std::max({disagree, std::abs(v[0][0] - v[1][0]), std::abs(v[0][1] - v[1][1])});
    if (std::abs(rho - 0.4) > 1e-9) {
      o.require((v[0][1] < v[0][0]) == (rho > 0.4), "ordering at rho=" + fmt("%.2f", rho));
    }
  }
  o.require(worst <= 1e-8, "closed-form error " + fmt("%.3g", worst));
  o.require(disagree <= 1e-8, "exact and LP differ by " + fmt("%.3g", disagree));
  if (o.pass) o.detail = "max error " + fmt("%.2g", worst) + ", exact-LP gap " + fmt("%.2g", disagree) + ", flip at 0.4";
  return o;
}

// 3. Oracle equivalence.
Outcome oracle_equivalence() {
  Outcome o;
  oracle::Gen gen(2024);
  const BaseDistance bases[] = {euclidean_distance(), asym_scale_distance(2.0)};
  double gworst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const auto& base = bases[n % 2];
    const std::size_t dim = n % 2 == 0 ? static_cast<std::size_t>(gen.integer(1, 3)) : 1;
    const auto g = gen.gospa_params();
    const auto x = gen.objects(5, dim, 3.0), y = gen.objects(5, dim, 3.0);
    gworst = std::max(gworst, std::abs(gospa(x, y, g, base).report.total - oracle::gospa(x, y, g, base)));
  }
  o.require(gworst <= 1e-12, "GOSPA error " + fmt("%.3g", gworst));
  double tworst = 0.0;
  for (int n = 0; n < 200; ++n) {
    const auto& base = bases[n % 2];
    const int T = gen.integer(1, 4);
    const std::size_t dim = n % 2 == 0 ? 2 : 1;
    const auto X = gen.trajectories(T, 3, dim, 3.0), Y = gen.trajectories(T, 3, dim, 3.0);
    const auto t = gen.tgospa_params();
    tworst = std::max(tworst, std::abs(tgospa_exact(X, Y, t, base).report.total - oracle::tgospa(X, Y, t, base)));
  }
  o.require(tworst <= 1e-10, "T-GOSPA error " + fmt("%.3g", tworst));
  if (o.pass) o.detail = "1000 GOSPA (max error " + fmt("%.2g", gworst) + "), 200 T-GOSPA (max error " + fmt("%.2g", tworst) + ")";
  return o;
}

// 4. Identity and triangle inequality.
Outcome quasi_metric_axioms() {
  Outcome o;
  oracle::Gen gen(77);
  const auto eu = euclidean_distance();
  const auto as = asym_scale_distance(3.0);

  // Identity on constructed pairs.
  for (int n = 0; n < 200; ++n) {
    const auto g = gen.gospa_params();
    const auto x = gen.objects(5, 1, 3.0);
    o.require(gospa(x, x, g, as).report.total == 0.0, "GOSPA d(x,x) != 0");
    std::vector<ObjectState> moved(x.begin(), x.end());
    moved.push_back(ObjectState{100.0});
    o.require(gospa(x, ObjectSet(moved), g, as).report.total > 0.0, "GOSPA d(x,y) = 0 for x != y");
    const int T = gen.integer(1, 4);
    const auto X = gen.trajectories(T, 3, 1, 3.0);
    const auto t = gen.tgospa_params();
    std::vector<Trajectory> other(X.begin(), X.end());
    other.emplace_back(T, std::vector<ObjectState>{ObjectState{0.5}});
    const TrajectorySet Y(T, std::move(other));
    for (Solver s : kSolvers) {
      o.require(tgospa(X, X, t, as, s).report.total <= 1e-12, "T-GOSPA d(X,X) != 0");
      o.require(tgospa(X, Y, t, as, s).report.total > 1e-9, "T-GOSPA d(X,Y) = 0 for X != Y");
    }
  }

  double gslack = -1e300;
  for (int n = 0; n < 10000; ++n) {
    const auto& base = n % 2 == 0 ? eu : as;
    const auto g = gen.gospa_params();
    const auto x = gen.objects(4, 1, 3.0), y = gen.objects(4, 1, 3.0), z = gen.objects(4, 1, 3.0);
    const double excess = gospa(x, z, g, base).report.total -
                          (gospa(x, y, g, base).report.total + gospa(y, z, g, base).report.total);
    gslack = std::max(gslack, excess);
  }
  o.require(gslack <= 1e-8, "GOSPA triangle violated by " + fmt("%.3g", gslack));

  double tslack[2] = {-1e300, -1e300};
  for (int n = 0; n < 1000; ++n) {
    const auto& base = n % 2 == 0 ? eu : as;
    const int T = gen.integer(1, 4);
    const auto t = gen.tgospa_params();
    const auto X = gen.trajectories(T, 3, 1, 3.0), Y = gen.trajectories(T, 3, 1, 3.0),
               Z = gen.trajectories(T, 3, 1, 3.0);
    for (int s = 0; s < 2; ++s) {
      const double excess = tgospa(X, Z, t, base, kSolvers[s]).report.total -
                            (tgospa(X, Y, t, base, kSolvers[s]).report.total +
                             tgospa(Y, Z, t, base, kSolvers[s]).report.total);
      tslack[s] = std::max(tslack[s], excess);
    }
  }
  o.require(tslack[0] <= 1e-8, "exact T-GOSPA triangle violated by " + fmt("%.3g", tslack[0]));
  o.require(tslack[1] <= 1e-8, "LP T-GOSPA triangle violated by " + fmt("%.3g", tslack[1]));
  if (o.pass) {
    o.detail = "10000 GOSPA + 1000x2 T-GOSPA triples, worst excess " +
               fmt("%.2g", std::max({gslack, tslack[0], tslack[1]}));
  }
  return o;
}

// 5. Symmetry, symmetrisation, affine dependence on rho, constant components.
Outcome rho_identities() {
  Outcome o;
  oracle::Gen gen(99);
  const auto eu = euclidean_distance();
  double sym = 0.0, symm = 0.0, aff = 0.0, comp = 0.0;
  for (int n = 0; n < 300; ++n) {
    const auto g = gen.gospa_params();
    const auto x = gen.objects(5, 2, 3.0), y = gen.objects(5, 2, 3.0);
    GospaParams r = g;
    r.rho = 1.0 - g.rho;
    sym = std::max(sym, std::abs(gospa(x, y, g, eu).report.total - gospa(y, x, r, eu).report.total));
    symm = std::max(symm, std::abs(symmetrise(x, y, g, eu) - gospa_metric(x, y, g.c, g.p, eu).report.total));
    GospaParams h = g;
    h.rho = 0.5;
    const auto a = gospa(x, y, g, eu).report, b = gospa(x, y, h, eu).report;
    const double rhs = (g.rho - 0.5) * g.cp() * (static_cast<double>(y.size()) - static_cast<double>(x.size()));
    aff = std::max(aff, std::abs((a.total_pth_power - b.total_pth_power) - rhs));
    comp = std::max(comp, std::abs(a.localisation - b.localisation));
  }
  for (int n = 0; n < 200; ++n) {
    const int T = gen.integer(1, 5);
    const auto t = gen.tgospa_params();
    const auto X = gen.trajectories(T, 3, 2, 3.0), Y = gen.trajectories(T, 3, 2, 3.0);
    TgospaParams r = t, h = t;
    r.gospa.rho = 1.0 - t.gospa.rho;
    h.gospa.rho = 0.5;
    for (Solver s : kSolvers) {
      const auto a = tgospa(X, Y, t, eu, s).report;
      const auto b = tgospa(X, Y, h, eu, s).report;
      sym = std::max(sym, std::abs(a.total - tgospa(Y, X, r, eu, s).report.total));
      symm = std::max(symm, std::abs(tgospa_symmetrise(X, Y, t, eu, s) - b.total));
      aff = std::max(aff, std::abs((a.total_pth_power - b.total_pth_power) - affine_rhs(X, Y, t.gospa.rho, t.gospa.cp())));
      comp = std::max({comp, std::abs(a.localisation - b.localisation), std::abs(a.switch_cost - b.switch_cost)});
      const double rhos[] = {0.3, 0.5, 0.7};
      const auto sw = tgospa_sweep(X, Y, t, rhos, eu, s);
      for (const auto& e : sw) {
        comp = std::max({comp, std::abs(e.report.localisation - sw[0].report.localisation),
                         std::abs(e.report.switch_cost - sw[0].report.switch_cost)});
      }
    }
  }
  o.require(sym <= 1e-9, "rho symmetry error " + fmt("%.3g", sym));
  o.require(symm <= 1e-8, "symmetrisation error " + fmt("%.3g", symm));
  o.require(aff <= 1e-10, "affine identity error " + fmt("%.3g", aff));
  o.require(comp <= 1e-12, "localisation/switch vary with rho by " + fmt("%.3g", comp));
  if (o.pass) {
    o.detail = "symmetry " + fmt("%.2g", sym) + ", symmetrisation " + fmt("%.2g", symm) + ", affine " +
               fmt("%.2g", aff) + ", component drift " + fmt("%.2g", comp);
  }
  return o;
}

// 6. LP lower bound and decomposition sums.
Outcome lp_bound() {
  Outcome o;
  oracle::Gen gen(2024);
  const BaseDistance bases[] = {euclidean_distance(), asym_scale_distance(2.0)};
  // Same random stream as criterion 3: skip its GOSPA draws first.
  for (int n = 0; n < 1000; ++n) {
    const std::size_t dim = n % 2 == 0 ? static_cast<std::size_t>(gen.integer(1, 3)) : 1;
    gen.gospa_params();
    gen.objects(5, dim, 3.0);
    gen.objects(5, dim, 3.0);
  }
  double gap = -1e300, sums = 0.0;
  for (int n = 0; n < 200; ++n) {
    const auto& base = bases[n % 2];
    const int T = gen.integer(1, 4);
    const std::size_t dim = n % 2 == 0 ? 2 : 1;
    const auto X = gen.trajectories(T, 3, dim, 3.0), Y = gen.trajectories(T, 3, dim, 3.0);
    const auto t = gen.tgospa_params();
    const auto e = tgospa_exact(X, Y, t, base).report;
    const auto l = tgospa_lp(X, Y, t, base).report;
    gap = std::max(gap, l.total - e.total);
    for (const auto& r : {e, l}) {
      sums = std::max(sums, std::abs(r.localisation + r.missed + r.false_cost + r.switch_cost - r.total_pth_power));
    }
  }
  o.require(gap <= 1e-8, "LP exceeds exact by " + fmt("%.3g", gap));
  o.require(sums <= 1e-8, "components miss the objective by " + fmt("%.3g", sums));
  if (o.pass) o.detail = "max(lp - exact) " + fmt("%.2g", gap) + ", component-sum error " + fmt("%.2g", sums);
  return o;
}

// 7. Scenario generator and Monte-Carlo pipeline.
Outcome montecarlo_pipeline() {
  Outcome o;
  const auto truth = generate_fig3_scenario(2024);
  o.require(truth.count_at(1) == 3 && truth.count_at(6) == 4 && truth.count_at(101) == 0, "cardinality profile");
  const int deaths[] = {30, 75, 80, 100};
  for (int d : deaths) o.require(truth.count_at(d) + 1 == truth.count_at(d - 1), "death at " + std::to_string(d));

  const std::size_t pos[] = {0, 2};
  TgospaParams t{{10.0, 2.0, 0.5}, 1.0};
  const double rhos[] = {0.3, 0.5, 0.7};
  const auto eu = euclidean_distance();

  const auto clean = project(make_batch(truth, CorruptionConfig::none(), 20), pos);
  for (const auto& prof : rms_profile(clean, t, rhos, eu)) {
    for (double v : prof.d) o.require(v == 0.0, "nonzero error with zero corruption");
  }

  // Default corruption: more misses (1 - p_D per truth state) than false-track states.
  CorruptionConfig cfg;
  cfg.seed = 2024;
  const double expected_misses = (1.0 - cfg.detection_probability) * static_cast<double>(truth.total_states());
  const double expected_false = cfg.clutter_rate * cfg.false_track_fraction * truth.window() *
                                0.5 * (cfg.false_track_min_length + cfg.false_track_max_length);
  o.require(expected_misses > expected_false, "default corruption does not favour misses");
  const auto batch = project(make_batch(truth, cfg, 20), pos);
  const auto prof = rms_profile(batch, t, rhos, eu);
  int checked = 0;
  for (std::size_t k = 0; k < prof[1].d.size(); ++k) {
    // At rho = 1/2 missed and false objects cost the same, so the components count them.
    if (prof[1].missed[k] <= prof[1].false_cost[k]) continue;
    ++checked;
    o.require(prof[0].d[k] > prof[1].d[k] && prof[0].d[k] > prof[2].d[k],
              "rho=0.3 not highest at k=" + std::to_string(k + 1));
  }
  o.require(prof[1].missed.back() > prof[1].false_cost.back(), "misses do not dominate over the window");
  if (o.pass) {
    o.detail = "20 runs, T=101; rho=0.3 highest at all " + std::to_string(checked) +
               " steps with more misses; d(101) = " + fmt("%.4g", prof[0].d.back()) + " / " +
               fmt("%.4g", prof[1].d.back()) + " / " + fmt("%.4g", prof[2].d.back());
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"1 object-set worked example", worked_example_sets},
      {"2 trajectory worked example", worked_example_trajectories},
      {"3 oracle equivalence", oracle_equivalence},
      {"4 quasi-metric axioms", quasi_metric_axioms},
      {"5 rho identities", rho_identities},
      {"6 LP lower bound", lp_bound},
      {"7 scenario and Monte Carlo", montecarlo_pipeline},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  criterion %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
