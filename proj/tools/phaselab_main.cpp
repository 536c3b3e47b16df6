// Copyright 2026 The Phaselab Authors
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

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "phaselab/results.hpp"

namespace {

int write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "phaselab: cannot open " << path << " for writing\n";
    return 2;
  }
  out << text;
  return out.good() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "phaselab: simulation and verification lab for randomized "
      "phase-coupling channels"};
  app.set_version_flag("--version", std::string("phaselab 1.0.0 (schema ") +
                                        std::string(phaselab::kSchemaVersion) +
                                        ")");
  app.set_config("--config", "", "read options from an INI file");
  app.require_subcommand(1);

  phaselab::RunConfig cfg;

  const auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("-d,--dim", cfg.d, "qudit dimension")
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "base RNG seed")
        ->envname("PHASELAB_SEED")
        ->capture_default_str();
    sub->add_option("--threads", cfg.threads, "worker threads")
        ->capture_default_str();
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("-o,--output", cfg.output_path,
                    "output file (default: stdout)");
  };
  const auto add_sampling = [&cfg](CLI::App* sub) {
    sub->add_option("-n,--copies", cfg.copies, "channel copies")
        ->capture_default_str();
    sub->add_option("--samples", cfg.samples, "Monte Carlo samples")
        ->capture_default_str();
    sub->add_option("--ensemble", cfg.ensemble, "instance ensemble")
        ->check(CLI::IsMember({"haar", "clifford"}))
        ->capture_default_str();
  };

  CLI::App* bounds = app.add_subcommand(
      "bounds", "exact and sampled output purity/entropy bounds");
  add_common(bounds);
  add_sampling(bounds);

  CLI::App* joint = app.add_subcommand(
      "joint", "joint coherent information with the 1/2-erasure");
  add_common(joint);
  joint->add_option("--instances", cfg.instances, "sampled instances")
      ->capture_default_str();

  CLI::App* holevo = app.add_subcommand(
      "holevo", "sampled Holevo information of input families");
  add_common(holevo);
  add_sampling(holevo);

  CLI::App* backassist = app.add_subcommand(
      "backassist", "sender-corrected protocols over three uses");
  add_common(backassist);
  backassist->add_option("--transcript", cfg.transcript_path,
                         "write protocol transcripts to this file");

  CLI::App* design = app.add_subcommand(
      "design", "Clifford group order and exact twirl comparison");
  add_common(design);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help / --version
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    phaselab::RunOutput out;
    if (bounds->parsed())
      out = phaselab::run_bounds(cfg);
    else if (joint->parsed())
      out = phaselab::run_joint(cfg);
    else if (holevo->parsed())
      out = phaselab::run_holevo(cfg);
    else if (backassist->parsed())
      out = phaselab::run_backassist(cfg);
    else
      out = phaselab::run_design(cfg);

    const std::string text = cfg.format == "csv" ? phaselab::to_csv(out.rows)
                                                 : phaselab::to_json(out.rows);
    if (cfg.output_path.empty()) {
      std::cout << text;
    } else {
      const int rc = write_text(cfg.output_path, text);
      if (rc != 0) return rc;
    }
    if (!cfg.transcript_path.empty() && !out.transcript_text.empty()) {
      const int rc = write_text(cfg.transcript_path, out.transcript_text);
      if (rc != 0) return rc;
    }

    if (!phaselab::all_rows_pass(out.rows)) {
      std::cerr << "phaselab: at least one check failed (seed=" << cfg.seed
                << ")\n";
      return 1;
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
