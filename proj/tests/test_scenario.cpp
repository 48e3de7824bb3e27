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

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "doctest.h"
#include "sweet/grid.hpp"
#include "sweet/runner.hpp"

using namespace sweet;

TEST_CASE("preset scenarios") {
  const ScenarioConfig nf = ScenarioConfig::near_field_desk();
  CHECK(nf.array_radius == 2.5);
  CHECK(nf.n_speakers == 20);
  CHECK(nf.region_radius == doctest::Approx(2.4975));
  CHECK(nf.grid_spacing == 0.25);
  CHECK(nf.source.position.x == 5.0);
  CHECK(nf.source.level_db_spl == 68.0);
  CHECK(nf.source.f_star == 343.0);
  CHECK(nf.c_s == 343.0);
  CHECK(!nf.is_focus());

  const ScenarioConfig fs = ScenarioConfig::focus_source_desk();
  CHECK(fs.source.position.x == doctest::Approx(0.82));
  CHECK(fs.source.level_db_spl == 60.0);
  CHECK(fs.is_focus());
}

TEST_CASE("json round trip preserves every field") {
  ScenarioConfig cfg = ScenarioConfig::focus_source_desk();
  cfg.n_speakers = 12;
  cfg.grid_spacing = 0.3;
  cfg.source.position = {0.6, -0.2, 0.0};
  cfg.source.sigma = 2.5;
  cfg.vdp.n_bands = 42;
  cfg.vdp.erb_formula = ErbFormula::glasberg_moore;
  cfg.ild_convention = IldConvention::paper_verbatim;
  cfg.solver.n_eps = 3;
  cfg.solver.gamma_max = 7.5;
  cfg.baselines.hoa_order = 4;
  cfg.lss_deg = 6.0;
  cfg.hrtf_provider = "free_field";
  cfg.ear_distance = 0.17;

  const ScenarioConfig back = parse_scenario(serialize_scenario(cfg));
  CHECK(back.n_speakers == 12);
  CHECK(back.grid_spacing == 0.3);
  CHECK(back.source.position.y == -0.2);
  CHECK(back.source.sigma == 2.5);
  CHECK(back.vdp.n_bands == 42);
  CHECK(back.vdp.erb_formula == ErbFormula::glasberg_moore);
  CHECK(back.ild_convention == IldConvention::paper_verbatim);
  CHECK(back.solver.n_eps == 3);
  CHECK(back.solver.gamma_max == 7.5);
  CHECK(back.baselines.hoa_order == 4);
  CHECK(back.lss_deg == 6.0);
  CHECK(back.ear_distance == 0.17);
  // Round trip is idempotent at the byte level.
  CHECK(serialize_scenario(back) == serialize_scenario(cfg));
}

TEST_CASE("missing fields take defaults and bad values are rejected") {
  const ScenarioConfig cfg = parse_scenario("{}");
  CHECK(cfg.array_radius == 2.5);
  CHECK(cfg.n_speakers == 20);
  CHECK(cfg.vdp.n_bands == 100);

  CHECK_THROWS(parse_scenario("{\"perceptual\": {\"erb_formula\": \"bogus\"}}"));
  CHECK_THROWS(parse_scenario("not json"));

  SUBCASE("validation messages carry the field path") {
    ScenarioConfig bad = ScenarioConfig::near_field_desk();
    bad.region_radius = 3.0;
    try {
      bad.validate();
      FAIL("expected validation to throw");
    } catch (const std::exception& e) {
      CHECK(std::string(e.what()).find("region.radius") != std::string::npos);
    }
    bad = ScenarioConfig::near_field_desk();
    bad.n_speakers = 0;
    CHECK_THROWS(bad.validate());
    bad = ScenarioConfig::near_field_desk();
    bad.grid_spacing = -1.0;
    CHECK_THROWS(bad.validate());
  }
}

TEST_CASE("scenario file io") {
  const std::string path = "scenario_io_test.json";
  const ScenarioConfig cfg = ScenarioConfig::near_field_desk();
  save_scenario(cfg, path);
  const ScenarioConfig back = load_scenario(path);
  CHECK(serialize_scenario(back) == serialize_scenario(cfg));
  std::remove(path.c_str());
  CHECK_THROWS(load_scenario(path));
}

TEST_CASE("listening region discretization") {
  const SpeakerArray array = SpeakerArray::circle(2.5, 20);

  SUBCASE("coarse spacing keeps only the center atom") {
    const Grid g = generate_grid(2.4975, 6.0, array);
    CHECK(g.size() == 1);
    CHECK(g.atoms[0].x == 0.0);
    CHECK(g.atoms[0].y == 0.0);
  }

  SUBCASE("quarter meter spacing at desk scale") {
    const Grid g = generate_grid(2.4975, 0.25, array);
    // pi r^2 / h^2 ~ 313 lattice points inside the disk.
    CHECK(g.size() > 290);
    CHECK(g.size() < 330);
    for (const Position& p : g.atoms) {
      CHECK(p.x * p.x + p.y * p.y <= 2.4975 * 2.4975 + 1e-12);
      for (const Position& s : array.positions) CHECK(distance(p, s) >= 0.1);
    }
  }

  SUBCASE("fine spacing approaches the area estimate") {
    const Grid g = generate_grid(2.4975, 0.09, array);
    const double estimate = 3.14159265358979323846 * 2.4975 * 2.4975 / (0.09 * 0.09);
    CHECK(std::abs(g.size() - estimate) < 0.05 * estimate);
  }

  CHECK_THROWS(generate_grid(0.05, 1.0, SpeakerArray::circle(0.01, 4)));
}

TEST_CASE("runner dispatch") {
  ScenarioConfig cfg = ScenarioConfig::near_field_desk();
  cfg.grid_spacing = 1.0;  // keep the smoke test fast
  const RunContext ctx = build_context(cfg);
  CHECK(ctx.array.size() == 20);
  CHECK(!ctx.focus);
  CHECK(ctx.problem.n_atoms() == ctx.grid.size());

  const RunArtifacts pmm = run_method(ctx, "pmm");
  CHECK(pmm.method == "pmm");
  CHECK(pmm.coeffs.size() == 20);
  CHECK(pmm.history.empty());

  CHECK_THROWS(run_method(ctx, "psychic"));
}

TEST_CASE("numeric formatting round trips") {
  for (double v : {0.1, -2.4975, 1e-300, 343.0, 6.0205999132796239}) {
    const std::string s = fmt_double(v);
    CHECK(std::stod(s) == v);
  }
}
