// Copyright 2026 The sweetspot Authors.
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

#include "sweet/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace sweet {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

RunContext build_context(const ScenarioConfig& config) {
  config.validate();
  SpeakerArray array = config.make_array();
  Position center{};
  for (const auto& p : array.positions) {
    center.x += p.x;
    center.y += p.y;
    center.z += p.z;
  }
  center.x /= array.size();
  center.y /= array.size();
  center.z /= array.size();

  Grid grid =
      generate_grid(config.region_radius, config.grid_spacing, array, config.speaker_clearance);

  std::shared_ptr<HrtfProvider> provider;
  if (config.hrtf_provider == "dataset")
    provider = std::make_shared<HrirDataset>(HrirDataset::load_csv(config.hrir_path, config.c_s));
  else
    provider = std::make_shared<FreeFieldTwoEar>(config.ear_distance, config.c_s);

  LoudnessModel loudness = config.loudness_csv.empty()
                               ? LoudnessModel::flat_default()
                               : LoudnessModel::from_csv(config.loudness_csv);

  const DirectionSet directions = DirectionSet::look_at_source(config.source.position);
  BinauralProblem problem = BinauralProblem::build(array, config.source, grid, *provider,
                                                   directions, config.vdp, loudness);
  ItdLookup lookup = build_itd_lookup(*provider, config.source.f_star, 100.0, 181,
                                      config.ild_gate_db, config.ild_convention, config.c_s);

  return RunContext{config,
                    std::move(array),
                    center,
                    std::move(grid),
                    std::move(provider),
                    std::move(loudness),
                    std::move(problem),
                    std::move(lookup),
                    config.is_focus()};
}

RunArtifacts run_method(const RunContext& ctx, const std::string& method) {
  const ScenarioConfig& c = ctx.config;
  RunArtifacts art;
  art.method = method;

  if (method == "pmm") {
    art.coeffs = pmm_l2(ctx.array, c.source, ctx.problem.grid(), c.c_s, c.baselines.lambda_ridge)
                     .coeffs;
  } else if (method == "wfs") {
    art.coeffs = wfs_25d(ctx.array, c.source, c.c_s, c.baselines);
  } else if (method == "nfc-hoa") {
    art.coeffs = nfc_hoa_25d(ctx.array, c.source, c.c_s, c.baselines);
  } else if (method == "sweet-relu") {
    const SolverSettings settings = resolve_settings(c.solver, ctx.problem.source_gain_mag());
    const DriveCoefficients warm =
        pmm_l2(ctx.array, c.source, ctx.problem.grid(), c.c_s, c.baselines.lambda_ridge).coeffs;
    SweetReport report = sweet_relu(ctx.problem, settings, &warm);
    art.coeffs = std::move(report.coefficients);
    art.history = std::move(report.history);
  } else {
    throw std::invalid_argument("run_method: unknown method '" + method + "'");
  }

  art.thresholds = ctx.problem.thresholds(art.coeffs);
  const EvalThresholds th{c.lss_deg, c.css_db, c.ild_gate_db, c.ild_convention};
  art.report = evaluate_method(art.coeffs, ctx.problem, c.source, ctx.center, ctx.lookup, th,
                               ctx.focus, method, c.c_s);
  return art;
}

namespace {

json report_to_json(const EvalReport& rep, const ScenarioConfig& c) {
  json j;
  j["method"] = rep.method;
  j["lss_fraction"] = rep.lss_fraction;
  j["css_proxy_fraction"] = rep.css_fraction;
  j["sweet_fraction"] = rep.sweet_fraction;
  j["coloration_metric"] = "coloration-proxy(dB)";
  j["css_db"] = c.css_db;
  j["lss_deg"] = c.lss_deg;
  j["invalid_atoms"] = rep.invalid_count;
  if (rep.has_dh) j["lss_dh_fraction"] = rep.lss_dh_fraction;
  return j;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + p.string());
  return out;
}

}  // namespace

void write_artifacts(const RunContext& ctx, const RunArtifacts& art, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const ScenarioConfig& c = ctx.config;

  {
    json j;
    j["method"] = art.method;
    json amps = json::array();
    for (const cplx& a : art.coeffs.amplitudes)
      amps.push_back({{"re", a.real()}, {"im", a.imag()}});
    j["amplitudes"] = amps;
    open_out(fs::path(out_dir) / "coefficients.json") << j.dump(2) << "\n";
  }
  {
    auto out = open_out(fs::path(out_dir) / "field.csv");
    out << "x,y,u_re,u_im,u0_re,u0_im\n";
    const cplx c0{source_gain(c.source.level_db_spl), 0.0};
    for (int l = 0; l < ctx.problem.n_atoms(); ++l) {
      const Position& z = ctx.problem.grid().atoms[l];
      const cplx u = synthesize_field(art.coeffs, ctx.array, c.source.f_star, z, c.c_s);
      const cplx u0 = monopole_pressure(c.source.f_star, c.source.position, c0, z, c.c_s);
      out << fmt_double(z.x) << ',' << fmt_double(z.y) << ',' << fmt_double(u.real()) << ','
          << fmt_double(u.imag()) << ',' << fmt_double(u0.real()) << ',' << fmt_double(u0.imag())
          << "\n";
    }
  }
  {
    auto out = open_out(fs::path(out_dir) / "thresholds.csv");
    out << "x,y,td,tl\n";
    for (int l = 0; l < ctx.problem.n_atoms(); ++l) {
      const Position& z = ctx.problem.grid().atoms[l];
      out << fmt_double(z.x) << ',' << fmt_double(z.y) << ','
          << fmt_double(art.thresholds.t_d[l]) << ',' << fmt_double(art.thresholds.t_l[l])
          << "\n";
    }
  }
  open_out(fs::path(out_dir) / "eval_report.json") << report_to_json(art.report, c).dump(2)
                                                   << "\n";
  {
    auto out = open_out(fs::path(out_dir) / "eval_detail.csv");
    out << "x,y,td,tl,az_err_deg,color_db,in_lss,in_css,in_sweet,halfspace\n";
    for (int l = 0; l < ctx.problem.n_atoms(); ++l) {
      const Position& z = ctx.problem.grid().atoms[l];
      out << fmt_double(z.x) << ',' << fmt_double(z.y) << ','
          << fmt_double(art.thresholds.t_d[l]) << ',' << fmt_double(art.thresholds.t_l[l]) << ','
          << fmt_double(art.report.az_err_deg[l]) << ',' << fmt_double(art.report.color_db[l])
          << ',' << int(art.report.in_lss[l]) << ',' << int(art.report.in_css[l]) << ','
          << int(art.report.in_sweet[l]) << ','
          << (art.report.divergent[l] ? "divergent" : "convergent") << "\n";
    }
  }
  {
    auto out = open_out(fs::path(out_dir) / "history.csv");
    out << "stage,outer,inner,objective,feasibility,active_count\n";
    for (const HistoryRow& r : art.history)
      out << r.stage << ',' << r.outer << ',' << r.inner << ',' << fmt_double(r.objective) << ','
          << fmt_double(r.feasibility) << ',' << r.active_count << "\n";
  }
}

void run_and_write(const ScenarioConfig& config, const std::string& method,
                   const std::string& out_dir) {
  const RunContext ctx = build_context(config);
  const RunArtifacts art = run_method(ctx, method);
  write_artifacts(ctx, art, out_dir);
}

void compare_methods(const ScenarioConfig& config, const std::vector<std::string>& methods,
                     const std::string& out_dir) {
  if (methods.size() < 2)
    throw std::invalid_argument("compare_methods: need at least two methods");
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const RunContext ctx = build_context(config);

  json rows = json::array();
  auto csv = open_out(fs::path(out_dir) / "comparison.csv");
  csv << (ctx.focus ? "method,lss,css_proxy,sweet_fraction,lss_dh\n"
                    : "method,lss,css_proxy,sweet_fraction\n");
  for (const std::string& m : methods) {
    const RunArtifacts art = run_method(ctx, m);
    write_artifacts(ctx, art, (fs::path(out_dir) / m).string());
    csv << m << ',' << fmt_double(art.report.lss_fraction) << ','
        << fmt_double(art.report.css_fraction) << ',' << fmt_double(art.report.sweet_fraction);
    if (ctx.focus) csv << ',' << fmt_double(art.report.lss_dh_fraction);
    csv << "\n";
    rows.push_back(report_to_json(art.report, config));
  }
  json j;
  j["rows"] = rows;
  open_out(fs::path(out_dir) / "comparison.json") << j.dump(2) << "\n";
}

}  // namespace sweet
