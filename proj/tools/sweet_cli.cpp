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

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sweet/runner.hpp"

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sound field synthesis sweet-spot toolkit"};
  app.require_subcommand(1);

  const std::vector<std::string> known_methods{"sweet-relu", "pmm", "wfs", "nfc-hoa"};

  std::string config_path, method, out_dir, methods_csv;

  CLI::App* run = app.add_subcommand("run", "Run one method and write artifacts");
  run->add_option("--config", config_path, "Scenario JSON path")->required();
  run->add_option("--method", method, "Method name")
      ->required()
      ->check(CLI::IsMember(known_methods));
  run->add_option("--out", out_dir, "Output directory")->required();

  CLI::App* compare = app.add_subcommand("compare", "Run several methods and tabulate");
  compare->add_option("--config", config_path, "Scenario JSON path")->required();
  compare->add_option("--methods", methods_csv, "Comma-separated method names")->required();
  compare->add_option("--out", out_dir, "Output directory")->required();

  CLI::App* grid = app.add_subcommand("grid", "Print the atom count for a scenario");
  grid->add_option("--config", config_path, "Scenario JSON path")->required();

  CLI11_PARSE(app, argc, argv);

  // Thread cap. Evaluation is currently serial, so any cap >= 1 is honored.
  if (const char* threads = std::getenv("SWEET_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(threads, &end, 10);
    if (end == threads || *end != '\0' || n < 1) {
      std::cerr << "error: SWEET_THREADS must be a positive integer\n";
      return 1;
    }
  }

  try {
    if (run->parsed()) {
      sweet::run_and_write(sweet::load_scenario(config_path), method, out_dir);
    } else if (compare->parsed()) {
      const auto methods = split_list(methods_csv);
      for (const auto& m : methods)
        if (std::find(known_methods.begin(), known_methods.end(), m) == known_methods.end())
          throw std::invalid_argument("unknown method '" + m + "'");
      sweet::compare_methods(sweet::load_scenario(config_path), methods, out_dir);
    } else if (grid->parsed()) {
      const sweet::ScenarioConfig cfg = sweet::load_scenario(config_path);
      const sweet::Grid g = sweet::generate_grid(cfg.region_radius, cfg.grid_spacing,
                                                 cfg.make_array(), cfg.speaker_clearance);
      std::cout << g.size() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
