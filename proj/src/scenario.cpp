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

#include "sweet/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sweet {

using nlohmann::json;

SpeakerArray ScenarioConfig::make_array() const {
  if (!speaker_positions.empty()) return SpeakerArray{speaker_positions};
  return SpeakerArray::circle(array_radius, n_speakers);
}

bool ScenarioConfig::is_focus() const {
  const SpeakerArray arr = make_array();
  Position c{};
  for (const auto& p : arr.positions) {
    c.x += p.x;
    c.y += p.y;
    c.z += p.z;
  }
  c.x /= arr.size();
  c.y /= arr.size();
  c.z /= arr.size();
  double r = 0.0;
  for (const auto& p : arr.positions) r += distance(p, c);
  r /= arr.size();
  return distance(source.position, c) < r;
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument("scenario." + field + ": " + why);
  };
  if (speaker_positions.empty() && n_speakers < 1) fail("array.count", "must be >= 1");
  if (array_radius <= 0.0) fail("array.radius", "must be > 0");
  if (region_radius <= 0.0) fail("region.radius", "must be > 0");
  if (region_radius >= array_radius) fail("region.radius", "must be < array.radius");
  if (grid_spacing <= 0.0) fail("region.spacing", "must be > 0");
  if (source.f_star <= 0.0) fail("source.f_star", "must be > 0");
  if (source.sigma <= 0.0) fail("source.sigma", "must be > 0");
  if (c_s <= 0.0) fail("medium.c_s", "must be > 0");
  if (vdp.n_bands < 1) fail("perceptual.n_bands", "must be >= 1");
  if (vdp.f_first >= vdp.f_last) fail("perceptual.f_first", "must be < f_last");
  if (vdp.c_a <= 0.0) fail("perceptual.c_a", "must be > 0");
  if (vdp.c_psi_prime <= 0.0) fail("perceptual.c_psi_prime", "must be > 0");
  if (solver.percentile <= 0.0 || solver.percentile > 100.0)
    fail("solver.percentile", "must be in (0, 100]");
  if (solver.n_eps < 1) fail("solver.n_eps", "must be >= 1");
  if (solver.n_max < 1) fail("solver.n_max", "must be >= 1");
  if (solver.max_inner_iters < 1) fail("solver.max_inner_iters", "must be >= 1");
  if (solver.epsilon_min <= 0.0) fail("solver.epsilon_min", "must be > 0");
  if (solver.penalty_rho <= 0.0) fail("solver.penalty_rho", "must be > 0");
  if (baselines.lambda_ridge < 0.0) fail("baselines.lambda_ridge", "must be >= 0");
  if (baselines.wfs_ref_distance <= 0.0) fail("baselines.wfs_ref_distance", "must be > 0");
  if (hrtf_provider != "free_field" && hrtf_provider != "dataset")
    fail("hrtf.provider", "must be free_field or dataset");
  if (hrtf_provider == "dataset" && hrir_path.empty())
    fail("hrtf.dataset_path", "required for the dataset provider");
  if (ear_distance < 0.0) fail("hrtf.ear_distance", "must be >= 0");
  if (lss_deg <= 0.0) fail("thresholds.lss_deg", "must be > 0");
  if (css_db <= 0.0) fail("thresholds.css_db", "must be > 0");
  if (ild_gate_db < 0.0) fail("thresholds.ild_gate_db", "must be >= 0");
}

ScenarioConfig ScenarioConfig::near_field_desk() { return ScenarioConfig{}; }

ScenarioConfig ScenarioConfig::focus_source_desk() {
  ScenarioConfig c;
  c.source.position = {0.82, 0.0, 0.0};
  c.source.level_db_spl = 60.0;
  return c;
}

namespace {

json position_to_json(const Position& p) { return json{{"x", p.x}, {"y", p.y}, {"z", p.z}}; }

Position position_from_json(const json& j) {
  return Position{j.value("x", 0.0), j.value("y", 0.0), j.value("z", 0.0)};
}

std::string erb_name(ErbFormula f) {
  return f == ErbFormula::as_printed ? "as_printed" : "glasberg_moore";
}

std::string ild_name(IldConvention c) {
  return c == IldConvention::conventional ? "conventional" : "paper_verbatim";
}

}  // namespace

std::string serialize_scenario(const ScenarioConfig& c) {
  json j;
  j["array"] = {{"radius", c.array_radius}, {"count", c.n_speakers}};
  if (!c.speaker_positions.empty()) {
    json pos = json::array();
    for (const auto& p : c.speaker_positions) pos.push_back(position_to_json(p));
    j["array"]["positions"] = pos;
  }
  j["region"] = {{"radius", c.region_radius},
                 {"spacing", c.grid_spacing},
                 {"speaker_clearance", c.speaker_clearance}};
  j["source"] = {{"position", position_to_json(c.source.position)},
                 {"level_db_spl", c.source.level_db_spl},
                 {"f_star", c.source.f_star},
                 {"sigma", c.source.sigma}};
  j["medium"] = {{"c_s", c.c_s}};
  j["perceptual"] = {{"n_bands", c.vdp.n_bands},
                     {"f_first", c.vdp.f_first},
                     {"f_last", c.vdp.f_last},
                     {"c_a", c.vdp.c_a},
                     {"c_psi_prime", c.vdp.c_psi_prime},
                     {"c_eta0", c.vdp.c_eta0},
                     {"c_eta1", c.vdp.c_eta1},
                     {"c_eta2", c.vdp.c_eta2},
                     {"c_eta3", c.vdp.c_eta3},
                     {"erb_formula", erb_name(c.vdp.erb_formula)},
                     {"erbs_natural_log", c.vdp.erbs_natural_log},
                     {"loudness_csv", c.loudness_csv},
                     {"ild_convention", ild_name(c.ild_convention)}};
  j["solver"] = {{"gamma_max", c.solver.gamma_max},
                 {"penalty_rho", c.solver.penalty_rho},
                 {"step_c", c.solver.step_c},
                 {"max_inner_iters", c.solver.max_inner_iters},
                 {"tol_rel_obj", c.solver.tol_rel_obj},
                 {"n_eps", c.solver.n_eps},
                 {"percentile", c.solver.percentile},
                 {"epsilon_min", c.solver.epsilon_min},
                 {"n_max", c.solver.n_max},
                 {"log_every", c.solver.log_every}};
  j["baselines"] = {{"lambda_ridge", c.baselines.lambda_ridge},
                    {"hoa_order", c.baselines.hoa_order},
                    {"wfs_ref_distance", c.baselines.wfs_ref_distance}};
  j["hrtf"] = {{"provider", c.hrtf_provider},
               {"ear_distance", c.ear_distance},
               {"dataset_path", c.hrir_path}};
  j["thresholds"] = {
      {"lss_deg", c.lss_deg}, {"css_db", c.css_db}, {"ild_gate_db", c.ild_gate_db}};
  return j.dump(2) + "\n";
}

ScenarioConfig parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario: JSON parse error: ") + e.what());
  }
  ScenarioConfig c;
  if (j.contains("array")) {
    const auto& a = j["array"];
    c.array_radius = a.value("radius", c.array_radius);
    c.n_speakers = a.value("count", c.n_speakers);
    if (a.contains("positions"))
      for (const auto& p : a["positions"]) c.speaker_positions.push_back(position_from_json(p));
  }
  if (j.contains("region")) {
    const auto& r = j["region"];
    c.region_radius = r.value("radius", c.region_radius);
    c.grid_spacing = r.value("spacing", c.grid_spacing);
    c.speaker_clearance = r.value("speaker_clearance", c.speaker_clearance);
  }
  if (j.contains("source")) {
    const auto& s = j["source"];
    if (s.contains("position")) c.source.position = position_from_json(s["position"]);
    c.source.level_db_spl = s.value("level_db_spl", c.source.level_db_spl);
    c.source.f_star = s.value("f_star", c.source.f_star);
    c.source.sigma = s.value("sigma", c.source.sigma);
  }
  if (j.contains("medium")) c.c_s = j["medium"].value("c_s", c.c_s);
  if (j.contains("perceptual")) {
    const auto& p = j["perceptual"];
    c.vdp.n_bands = p.value("n_bands", c.vdp.n_bands);
    c.vdp.f_first = p.value("f_first", c.vdp.f_first);
    c.vdp.f_last = p.value("f_last", c.vdp.f_last);
    c.vdp.c_a = p.value("c_a", c.vdp.c_a);
    c.vdp.c_psi_prime = p.value("c_psi_prime", c.vdp.c_psi_prime);
    c.vdp.c_eta0 = p.value("c_eta0", c.vdp.c_eta0);
    c.vdp.c_eta1 = p.value("c_eta1", c.vdp.c_eta1);
    c.vdp.c_eta2 = p.value("c_eta2", c.vdp.c_eta2);
    c.vdp.c_eta3 = p.value("c_eta3", c.vdp.c_eta3);
    const std::string erb = p.value("erb_formula", erb_name(c.vdp.erb_formula));
    if (erb == "as_printed") c.vdp.erb_formula = ErbFormula::as_printed;
    else if (erb == "glasberg_moore") c.vdp.erb_formula = ErbFormula::glasberg_moore;
    else throw std::invalid_argument("scenario.perceptual.erb_formula: unknown variant " + erb);
    c.vdp.erbs_natural_log = p.value("erbs_natural_log", c.vdp.erbs_natural_log);
    c.loudness_csv = p.value("loudness_csv", c.loudness_csv);
    const std::string ild = p.value("ild_convention", ild_name(c.ild_convention));
    if (ild == "conventional") c.ild_convention = IldConvention::conventional;
    else if (ild == "paper_verbatim") c.ild_convention = IldConvention::paper_verbatim;
    else throw std::invalid_argument("scenario.perceptual.ild_convention: unknown variant " + ild);
  }
  if (j.contains("solver")) {
    const auto& s = j["solver"];
    c.solver.gamma_max = s.value("gamma_max", c.solver.gamma_max);
    c.solver.penalty_rho = s.value("penalty_rho", c.solver.penalty_rho);
    c.solver.step_c = s.value("step_c", c.solver.step_c);
    c.solver.max_inner_iters = s.value("max_inner_iters", c.solver.max_inner_iters);
    c.solver.tol_rel_obj = s.value("tol_rel_obj", c.solver.tol_rel_obj);
    c.solver.n_eps = s.value("n_eps", c.solver.n_eps);
    c.solver.percentile = s.value("percentile", c.solver.percentile);
    c.solver.epsilon_min = s.value("epsilon_min", c.solver.epsilon_min);
    c.solver.n_max = s.value("n_max", c.solver.n_max);
    c.solver.log_every = s.value("log_every", c.solver.log_every);
  }
  if (j.contains("baselines")) {
    const auto& b = j["baselines"];
    c.baselines.lambda_ridge = b.value("lambda_ridge", c.baselines.lambda_ridge);
    c.baselines.hoa_order = b.value("hoa_order", c.baselines.hoa_order);
    c.baselines.wfs_ref_distance = b.value("wfs_ref_distance", c.baselines.wfs_ref_distance);
  }
  if (j.contains("hrtf")) {
    const auto& h = j["hrtf"];
    c.hrtf_provider = h.value("provider", c.hrtf_provider);
    c.ear_distance = h.value("ear_distance", c.ear_distance);
    c.hrir_path = h.value("dataset_path", c.hrir_path);
  }
  if (j.contains("thresholds")) {
    const auto& t = j["thresholds"];
    c.lss_deg = t.value("lss_deg", c.lss_deg);
    c.css_db = t.value("css_db", c.css_db);
    c.ild_gate_db = t.value("ild_gate_db", c.ild_gate_db);
  }
  c.validate();
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_scenario: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

void save_scenario(const ScenarioConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_scenario: cannot open " + path);
  out << serialize_scenario(config);
}

}  // namespace sweet
