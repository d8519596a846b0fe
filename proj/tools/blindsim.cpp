/*
Copyright 2026 The blindsim Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blindsim/io/csv.hpp"
#include "blindsim/io/pgm.hpp"
#include "blindsim/io/report.hpp"
#include "blindsim/scene/scenario.hpp"
#include "blindsim/sim.hpp"

namespace fs = std::filesystem;
using namespace blindsim;

namespace {

struct RunConfig {
  std::string scene_file;
  std::string scenario_id;
  double mesh_h = 0.0;  // 0 keeps the scene's value
  std::string boundary = "sabine";
  std::string open_window = "aperture";
  std::string radiation;
  std::string precond = "automatic";
  unsigned threads = 1;
  std::string out_dir;
  std::vector<double> slice_z;
  bool no_profile = false;
  bool no_crossings = false;
  bool no_report = false;
};

ExchangeModel parse_boundary(const std::string& s) {
  return exchange_model_from_name(s);
}

OpenWindowMode parse_open_window(const std::string& s) {
  if (s == "aperture") return OpenWindowMode::aperture;
  if (s == "absorber") return OpenWindowMode::absorber;
  throw input_error("unknown open-window model: " + s +
                    " (expected aperture or absorber)");
}

Preconditioner parse_precond(const std::string& s) {
  if (s == "automatic") return Preconditioner::automatic;
  if (s == "jacobi") return Preconditioner::jacobi;
  if (s == "multigrid") return Preconditioner::multigrid;
  throw input_error("unknown preconditioner: " + s);
}

Radiation parse_radiation(const std::string& s) {
  if (s == "spherical") return Radiation::spherical;
  if (s == "hemispherical") return Radiation::hemispherical;
  throw input_error("unknown radiation pattern: " + s);
}

SceneSpec load_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open scene file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("scene file is not valid JSON: ") +
                      e.what());
  }
  return scene_from_json(j);
}

SceneSpec resolve_scene(const RunConfig& cfg) {
  const bool have_file = !cfg.scene_file.empty();
  const bool have_id = !cfg.scenario_id.empty();
  if (have_file == have_id)
    throw input_error("provide exactly one of --scene or --scenario");
  SceneSpec scene =
      have_id ? build_scenario(cfg.scenario_id) : load_scene_file(cfg.scene_file);
  if (cfg.mesh_h > 0.0) scene.mesh_h = cfg.mesh_h;
  if (!cfg.radiation.empty()) scene.radiation = parse_radiation(cfg.radiation);
  return scene;
}

RunOptions solve_options(const RunConfig& cfg) {
  RunOptions opt;
  opt.solve.model = parse_boundary(cfg.boundary);
  opt.solve.precond = parse_precond(cfg.precond);
  opt.solve.threads = cfg.threads;
  opt.open_mode = parse_open_window(cfg.open_window);
  return opt;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw io_error("cannot create output directory: " + dir + " (" +
                         ec.message() + ")");
}

std::string slice_tag(double z) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", z);
  std::string s = buf;
  for (auto& c : s)
    if (c == '.' || c == '-') c = '_';
  return s;
}

void print_band_table(const RunResult& r) {
  std::printf("band    iters  residual   imbalance  negatives  seconds\n");
  for (std::size_t b = 0; b < kNumBands; ++b) {
    const auto& i = r.sol.info[b];
    std::printf("%-7s %5zu  %.2e  %7.4f%%  %9zu  %7.2f\n",
                band_label(b).c_str(), i.iterations, i.rel_residual,
                i.imbalance_pct, i.negative_cells, i.seconds);
  }
}

void print_crossings(const RunResult& r) {
  std::printf("crossing distances (m):");
  for (std::size_t b = 0; b < kNumBands; ++b) {
    if (r.crossings.band[b].crossed)
      std::printf(" %s=%.1f", band_label(b).c_str(),
                  r.crossings.band[b].distance_m);
    else
      std::printf(" %s=-", band_label(b).c_str());
  }
  if (r.crossings.overall.crossed)
    std::printf(" overall=%.1f\n", r.crossings.overall.distance_m);
  else
    std::printf(" overall=-\n");
}

int cmd_run(const RunConfig& cfg) {
  const SceneSpec scene = resolve_scene(cfg);
  const RunOptions opt = solve_options(cfg);
  const RunResult r = run_scene(scene, opt);

  const std::string dir = cfg.out_dir.empty() ? "blindsim_out" : cfg.out_dir;
  ensure_dir(dir);
  write_scene_json(dir + "/scene.json", r.scene);
  if (!cfg.no_profile)
    write_profile_csv(dir + "/profile.csv", r.profile, r.scene.bnl_db);
  if (!cfg.no_crossings)
    write_crossings_csv(dir + "/crossings.csv", r.crossings, r.scene.bnl_db);
  if (!cfg.no_report) write_run_report(dir + "/run_report.json", r, opt);
  for (double z : cfg.slice_z) {
    const auto m = overall_slice(r.grid, r.sol, r.scene.air, z);
    const std::string tag = slice_tag(z);
    write_slice_csv(dir + "/slice_z" + tag + ".csv", m);
    write_slice_pgm(dir + "/slice_z" + tag + ".pgm", m);
  }

  std::printf("scene: %s  (h=%.3g, %zux%zux%zu cells)\n", r.scene.name.c_str(),
              r.grid.h, r.grid.n[0], r.grid.n[1], r.grid.n[2]);
  print_band_table(r);
  print_crossings(r);
  std::printf("total: %.2f s, artifacts in %s\n", r.total_seconds,
              dir.c_str());
  return 0;
}

Profile load_profile_arg(const std::string& arg) {
  fs::path p(arg);
  if (fs::is_directory(p)) p /= "profile.csv";
  return read_profile_csv(p.string());
}

int cmd_compare(const std::string& a, const std::string& b,
                const std::string& out_dir) {
  const Profile pa = load_profile_arg(a);
  const Profile pb = load_profile_arg(b);
  const Profile d = profile_delta(pa, pb);

  const double last = d.rows.back().distance_m;
  const double near_end = std::min(10.0, last);
  std::printf("rows: %zu (0 to %.1f m)\n", d.rows.size(), last);
  std::printf("mean delta overall 0-%.0f m: %+.2f dB\n", near_end,
              mean_overall(d, 0.0, near_end));
  std::printf("mean delta overall 0-%.0f m: %+.2f dB\n", last,
              mean_overall(d, 0.0, last));
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    write_delta_csv(out_dir + "/delta.csv", d);
    std::printf("delta table written to %s/delta.csv\n", out_dir.c_str());
  }
  return 0;
}

struct SweepResult {
  std::string id;
  Profile profile;
  CrossingReport crossings;
  double worst_imbalance = 0.0;
};

double overall_at(const Profile& p, double dist) {
  for (const auto& row : p.rows)
    if (std::abs(row.distance_m - dist) < 1e-9) return row.overall_db;
  throw input_error("profile does not sample the requested distance");
}

bool check(const char* label, bool ok, int& failures) {
  std::printf("  [%s] %s\n", ok ? "PASS" : "FAIL", label);
  if (!ok) ++failures;
  return ok;
}

int cmd_reproduce(const RunConfig& cfg) {
  RunConfig run_cfg = cfg;
  std::map<std::string, SweepResult> res;

  std::printf(
      "scenario  overall@1.5m  @10m    @30m   crossings (m, per band)\n");
  for (const auto& id : scenario_ids()) {
    run_cfg.scenario_id = id;
    run_cfg.scene_file.clear();
    const SceneSpec scene = resolve_scene(run_cfg);
    const RunOptions opt = solve_options(run_cfg);
    const RunResult r = run_scene(scene, opt);
    if (!cfg.out_dir.empty()) {
      ensure_dir(cfg.out_dir + "/" + id);
      write_profile_csv(cfg.out_dir + "/" + id + "/profile.csv", r.profile,
                        scene.bnl_db);
      write_crossings_csv(cfg.out_dir + "/" + id + "/crossings.csv",
                          r.crossings, scene.bnl_db);
      write_run_report(cfg.out_dir + "/" + id + "/run_report.json", r, opt);
    }
    SweepResult s;
    s.id = id;
    s.profile = r.profile;
    s.crossings = r.crossings;
    for (const auto& info : r.sol.info)
      s.worst_imbalance = std::max(s.worst_imbalance, info.imbalance_pct);

    std::printf("%-9s %8.1f %9.1f %7.1f  ", id.c_str(),
                overall_at(s.profile, 1.5), overall_at(s.profile, 10.0),
                overall_at(s.profile, 30.0));
    for (std::size_t b = 0; b < kNumBands; ++b)
      if (s.crossings.band[b].crossed)
        std::printf(" %5.1f", s.crossings.band[b].distance_m);
      else
        std::printf("     -");
    std::printf("\n");
    res.emplace(id, std::move(s));
  }

  // Headline comparisons against the bundled expected ranges.
  int failures = 0;
  std::printf("\nexpected-range checks:\n");

  const auto mean_delta = [&](const std::string& a, const std::string& b,
                              double d0, double d1) {
    return mean_overall(profile_delta(res.at(a).profile, res.at(b).profile),
                        d0, d1);
  };

  const double ms_gain = mean_delta("MS01", "SS01", 0.0, 30.0);
  char label[160];
  std::snprintf(label, sizeof(label),
                "MS01 minus SS01 overall, 0-30 m: %+.2f dB (expected 3 +/- 1.5)",
                ms_gain);
  check(label, ms_gain >= 1.5 && ms_gain <= 4.5, failures);

  const double d46 = mean_delta("SS04", "SS06", 0.0, 10.0);
  std::snprintf(label, sizeof(label),
                "SS04 minus SS06 overall, 0-10 m: %+.2f dB (expected 16 +/- 4)",
                d46);
  check(label, d46 >= 12.0 && d46 <= 20.0, failures);

  const double d45 = mean_delta("SS04", "SS05", 0.0, 10.0);
  std::snprintf(label, sizeof(label),
                "SS04 minus SS05 overall, 0-10 m: %+.2f dB (expected 10 +/- 4)",
                d45);
  check(label, d45 >= 6.0 && d45 <= 14.0, failures);

  const auto lining_delta = profile_delta(res.at("SS04").profile,
                                          res.at("SS05").profile);
  double d45_125 = 0.0, d45_4000 = 0.0;
  std::size_t near_count = 0;
  for (const auto& row : lining_delta.rows) {
    if (row.distance_m > 2.0) break;
    d45_125 += row.spl_db[0];
    d45_4000 += row.spl_db[5];
    ++near_count;
  }
  d45_125 /= static_cast<double>(near_count);
  d45_4000 /= static_cast<double>(near_count);
  std::snprintf(label, sizeof(label),
                "lining effect tilts high: delta(4000) - delta(125) = %+.2f dB "
                "near the facade (expected >= 2)",
                d45_4000 - d45_125);
  check(label, d45_4000 - d45_125 >= 2.0, failures);

  const char* ladders[2][5] = {{"SS01", "SS04", "SS05", "SS06", "SS07"},
                               {"MS01", "MS04", "MS05", "MS06", "MS07"}};
  for (const auto& ladder : ladders) {
    bool ordered = true;
    for (int s = 0; s + 1 < 5 && ordered; ++s) {
      const auto& hi = res.at(ladder[s]).profile;
      const auto& lo = res.at(ladder[s + 1]).profile;
      for (std::size_t i = 0; i < hi.rows.size(); ++i)
        if (hi.rows[i].overall_db < lo.rows[i].overall_db - 0.2) {
          ordered = false;
          break;
        }
    }
    std::snprintf(label, sizeof(label),
                  "%s ladder ordered loud-to-quiet at every distance",
                  ladder[0][0] == 'S' ? "SS" : "MS");
    check(label, ordered, failures);
  }

  bool ss07_ok = true;
  for (const auto& c : res.at("SS07").crossings.band)
    ss07_ok = ss07_ok && c.crossed && c.distance_m <= 8.0;
  check("SS07 inaudible in every band within 8 m", ss07_ok, failures);

  bool ms07_ok = true;
  for (const auto& c : res.at("MS07").crossings.band)
    ms07_ok = ms07_ok && c.crossed && c.distance_m <= 11.0;
  check("MS07 inaudible in every band within 11 m", ms07_ok, failures);

  double worst = 0.0;
  for (const auto& [id, s] : res) worst = std::max(worst, s.worst_imbalance);
  std::snprintf(label, sizeof(label),
                "energy balance within 0.5%% everywhere (worst %.4f%%)", worst);
  check(label, worst < 0.5, failures);

  if (failures) {
    std::printf("\n%d check(s) outside the expected ranges\n", failures);
    return 1;
  }
  std::printf("\nall checks passed\n");
  return 0;
}

int cmd_materials(const std::string& action, const std::string& name,
                  const std::string& out_path) {
  const MaterialDb db = MaterialDb::builtin();
  if (action == "list") {
    for (const auto& n : db.names()) std::printf("%s\n", n.c_str());
    return 0;
  }
  if (action == "dump") {
    const std::string body = db.to_json().dump(2) + "\n";
    if (out_path.empty())
      std::fputs(body.c_str(), stdout);
    else
      write_text_file(out_path, body);
    return 0;
  }
  // show
  const Material& m = db.get(name);
  std::printf("%s\n  band:", m.name.c_str());
  for (std::size_t b = 0; b < kNumBands; ++b)
    std::printf(" %6s", band_label(b).c_str());
  std::printf(" Hz\n  alpha:");
  for (std::size_t b = 0; b < kNumBands; ++b)
    std::printf(" %6.2f", m.alpha[b]);
  std::printf("\n");
  if (m.has_tl()) {
    std::printf("  TL:   ");
    for (std::size_t b = 0; b < kNumBands; ++b)
      std::printf(" %6.1f", (*m.tl_db)[b]);
    std::printf(" dB\n");
  }
  return 0;
}

int cmd_scenario(const std::string& action, const std::string& id,
                 const std::string& out_path) {
  if (action == "list") {
    for (const auto& s : scenario_ids()) std::printf("%s\n", s.c_str());
    return 0;
  }
  // dump
  const SceneSpec scene = build_scenario(id);
  const std::string body = scene_to_json(scene).dump(2) + "\n";
  if (out_path.empty())
    std::fputs(body.c_str(), stdout);
  else
    write_text_file(out_path, body);
  return 0;
}

int cmd_validate(const std::string& path) {
  const SceneSpec scene = load_scene_file(path);
  scene.validate();
  const auto grid = voxelize(scene);
  std::printf("ok: %s (%zux%zux%zu cells", scene.name.c_str(), grid.n[0],
              grid.n[1], grid.n[2]);
  if (grid.stats[1].cells)
    std::printf(", interior %.2f m3", grid.stats[1].volume);
  std::printf(")\n");
  for (const auto& msg : grid.log)
    std::printf("note: %s\n", msg.c_str());
  return 0;
}

void print_error(const char* kind, const std::string& message) {
  nlohmann::json j{{"error", kind}, {"message", message}};
  std::fprintf(stderr, "%s\n", j.dump().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "blindsim: steady-state noise propagation from wildlife-watching "
      "shelters"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help message and exit");

  RunConfig cfg;
  int rc = 0;

  const auto add_common = [&cfg](CLI::App* c) {
    // The mesh flag is spelled --h, so help must not claim -h.
    c->set_help_flag("--help", "print this help message and exit");
    c->add_option("--h", cfg.mesh_h, "mesh spacing override (m)");
    c->add_option("--boundary", cfg.boundary,
                  "absorption model: sabine|eyring|modified");
    c->add_option("--open-window", cfg.open_window,
                  "open window treatment: aperture|absorber");
    c->add_option("--radiation", cfg.radiation,
                  "source pattern: spherical|hemispherical");
    c->add_option("--precond", cfg.precond,
                  "solver preconditioner: automatic|jacobi|multigrid");
    c->add_option("--threads", cfg.threads, "bands solved in parallel");
    c->add_option("--out", cfg.out_dir, "output directory");
  };

  auto* run = app.add_subcommand("run", "simulate one scene and export files");
  run->add_option("--scene", cfg.scene_file, "scene JSON file");
  run->add_option("--scenario", cfg.scenario_id, "bundled scenario id");
  add_common(run);
  run->add_option("--slice-z", cfg.slice_z,
                  "export a horizontal slice at this height (repeatable)");
  run->add_flag("--no-profile", cfg.no_profile, "skip profile.csv");
  run->add_flag("--no-crossings", cfg.no_crossings, "skip crossings.csv");
  run->add_flag("--no-report", cfg.no_report, "skip run_report.json");
  run->callback([&] { rc = cmd_run(cfg); });

  std::string cmp_a, cmp_b, cmp_out;
  auto* cmp = app.add_subcommand(
      "compare", "level difference between two run directories");
  cmp->add_option("a", cmp_a, "first run directory or profile.csv")
      ->required();
  cmp->add_option("b", cmp_b, "second run directory or profile.csv")
      ->required();
  cmp->add_option("--out", cmp_out, "directory for delta.csv");
  cmp->callback([&] { rc = cmd_compare(cmp_a, cmp_b, cmp_out); });

  auto* rep = app.add_subcommand(
      "reproduce", "run the bundled scenario matrix and check the findings");
  add_common(rep);
  rep->callback([&] { rc = cmd_reproduce(cfg); });

  std::string mat_name, mat_out;
  auto* mat = app.add_subcommand("materials", "material database");
  auto* mat_list = mat->add_subcommand("list", "names only");
  auto* mat_show = mat->add_subcommand("show", "band table for one material");
  mat_show->add_option("name", mat_name, "material name")->required();
  auto* mat_dump = mat->add_subcommand("dump", "full database as JSON");
  mat_dump->add_option("--out", mat_out, "write to file instead of stdout");
  mat->require_subcommand(1);
  mat_list->callback([&] { rc = cmd_materials("list", "", ""); });
  mat_show->callback([&] { rc = cmd_materials("show", mat_name, ""); });
  mat_dump->callback([&] { rc = cmd_materials("dump", "", mat_out); });

  std::string scn_id, scn_out;
  auto* scn = app.add_subcommand("scenario", "bundled scenarios");
  auto* scn_list = scn->add_subcommand("list", "scenario ids");
  auto* scn_dump =
      scn->add_subcommand("dump", "write a scenario as a scene JSON");
  scn_dump->add_option("id", scn_id, "scenario id")->required();
  scn_dump->add_option("--out", scn_out, "write to file instead of stdout");
  scn->require_subcommand(1);
  scn_list->callback([&] { rc = cmd_scenario("list", "", ""); });
  scn_dump->callback([&] { rc = cmd_scenario("dump", scn_id, scn_out); });

  std::string val_path;
  auto* val =
      app.add_subcommand("validate", "check a scene JSON without solving");
  val->add_option("scene", val_path, "scene JSON file")->required();
  val->callback([&] { rc = cmd_validate(val_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    print_error("input_error", e.what());
    return 2;
  } catch (const input_error& e) {
    print_error("input_error", e.what());
    return 2;
  } catch (const solver_error& e) {
    print_error("solver_error", e.what());
    return 3;
  } catch (const io_error& e) {
    print_error("io_error", e.what());
    return 4;
  } catch (const std::exception& e) {
    print_error("internal_error", e.what());
    return 1;
  }
  return rc;
}
