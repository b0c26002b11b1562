// Copyright 2026 The privbasis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: exact mining, PrivBasis, the TF baseline,
// synthetic data generation and experiment plans.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "privbasis/dataset.hpp"
#include "privbasis/error.hpp"
#include "privbasis/eval/experiment.hpp"
#include "privbasis/eval/records.hpp"
#include "privbasis/miner.hpp"
#include "privbasis/privbasis.hpp"
#include "privbasis/simd/kernels.hpp"
#include "privbasis/synthetic.hpp"
#include "privbasis/tf.hpp"

namespace {

using namespace privbasis;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  std::uint64_t s = 0;
  if (seed) {
    s = *seed;
  } else {
    std::random_device rd;
    s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  std::cerr << "seed: " << s << '\n';
  return s;
}

void emit(const Release& r, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << eval::release_to_json(r);
  } else {
    eval::write_release(r, output);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "1,2,3:0.4" -> itemset {1,2,3} planted at frequency 0.4.
PlantedItemset parse_plant(const std::string& spec) {
  const auto colon = spec.rfind(':');
  if (colon == std::string::npos) throw InvalidArgument("plant must look like 1,2,3:0.4");
  std::vector<ItemId> ids;
  std::stringstream items(spec.substr(0, colon));
  std::string tok;
  while (std::getline(items, tok, ',')) ids.push_back(static_cast<ItemId>(std::stoul(tok)));
  return {Itemset(std::move(ids)), std::stod(spec.substr(colon + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private top-k frequent itemset mining"};
  app.require_subcommand(1);
  bool scalar_only = false;
  app.add_flag("--scalar", scalar_only, "Use the scalar reference kernels");

  // mine-exact
  auto* mine = app.add_subcommand("mine-exact", "Exact (non-private) top-k itemsets");
  std::string mine_path;
  std::size_t mine_k = 100;
  std::size_t mine_max_len = 0;
  mine->add_option("fimi", mine_path, "FIMI dataset")->required()->check(CLI::ExistingFile);
  mine->add_option("--k", mine_k, "Number of itemsets")->required()->check(CLI::PositiveNumber);
  mine->add_option("--max-length", mine_max_len, "Longest itemset considered (0 = unbounded)");

  // privbasis
  auto* pb = app.add_subcommand("privbasis", "Release top-k itemsets with PrivBasis");
  std::string pb_path, pb_config, pb_output;
  std::size_t pb_k = 0;
  double pb_eps = 0;
  std::optional<std::uint64_t> pb_seed;
  bool pb_noise_off = false;
  pb->add_option("fimi", pb_path, "FIMI dataset")->required()->check(CLI::ExistingFile);
  pb->add_option("--k", pb_k, "Number of itemsets")->required()->check(CLI::PositiveNumber);
  pb->add_option("--eps", pb_eps, "Privacy budget")->required()->check(CLI::PositiveNumber);
  pb->add_option("--seed", pb_seed, "Random seed (printed when generated)");
  pb->add_option("--config", pb_config, "JSON file with PrivBasis options")->check(CLI::ExistingFile);
  pb->add_option("--output,-o", pb_output, "Release file (default: stdout)");
  pb->add_flag("--noise-off", pb_noise_off, "NON-PRIVATE: disable all noise (diagnostics only)");

  // tf
  auto* tf = app.add_subcommand("tf", "Release top-k itemsets with the truncated-frequency baseline");
  std::string tf_path, tf_output, tf_selection = "laplace", tf_mode = "pruning";
  TfConfig tf_cfg;
  std::optional<std::uint64_t> tf_seed;
  tf->add_option("fimi", tf_path, "FIMI dataset")->required()->check(CLI::ExistingFile);
  tf->add_option("--k", tf_cfg.k, "Number of itemsets")->required()->check(CLI::PositiveNumber);
  tf->add_option("--eps", tf_cfg.eps, "Privacy budget")->required()->check(CLI::PositiveNumber);
  tf->add_option("--m", tf_cfg.m, "Maximum itemset length")->required()->check(CLI::PositiveNumber);
  tf->add_option("--rho", tf_cfg.rho, "Error probability bound")->required();
  tf->add_option("--seed", tf_seed, "Random seed (printed when generated)");
  tf->add_option("--selection", tf_selection, "laplace | exponential")
      ->check(CLI::IsMember({"laplace", "exponential"}));
  tf->add_option("--universe-mode", tf_mode, "pruning | explicit")->check(CLI::IsMember({"pruning", "explicit"}));
  tf->add_option("--explicit-guard", tf_cfg.explicit_guard, "Largest universe enumerated explicitly");
  tf->add_option("--output,-o", tf_output, "Release file (default: stdout)");

  // gen-synthetic
  auto* gen = app.add_subcommand("gen-synthetic", "Generate a dataset with exactly planted itemsets");
  SyntheticOptions gen_opts;
  std::vector<std::string> plants;
  std::string gen_output;
  std::optional<std::uint64_t> gen_seed;
  gen->add_option("--n", gen_opts.n_transactions, "Number of transactions")->required();
  gen->add_option("--universe", gen_opts.universe_size, "Items are 0..universe-1")->required();
  gen->add_option("--plant", plants, "Planted itemset, e.g. 1,2:0.4 (repeatable)");
  gen->add_option("--background", gen_opts.background_rate, "Independent item probability");
  gen->add_option("--seed", gen_seed, "Random seed (printed when generated)");
  gen->add_option("--output,-o", gen_output, "FIMI file (default: stdout)");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run an experiment plan");
  std::string plan_path, out_dir = "experiment-out";
  exp->add_option("plan", plan_path, "JSON plan file")->required()->check(CLI::ExistingFile);
  exp->add_option("--out", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);
  if (scalar_only) simd::set_active_isa(simd::Isa::kScalar);

  try {
    if (*mine) {
      const auto d = load_fimi(mine_path);
      for (const auto& r : exact_top_k(d, mine_k, mine_max_len)) {
        std::cout << fmt::format("{}\t{}\t{:.6f}\t{}\n", r.rank, r.support,
                                 static_cast<double>(r.support) / static_cast<double>(d.size()),
                                 r.itemset.to_string());
      }
    } else if (*pb) {
      PrivBasisConfig cfg;
      if (!pb_config.empty()) cfg = eval::parse_privbasis_config(read_file(pb_config));
      cfg.k = pb_k;
      cfg.eps = pb_eps;
      const auto d = load_fimi(pb_path);
      dp::NoiseSource src = pb_noise_off ? dp::NoiseSource::NoiseOff() : dp::NoiseSource(resolve_seed(pb_seed));
      if (pb_noise_off) std::cerr << "warning: noise disabled; the output is NOT differentially private\n";
      auto res = privbasis_main(d, cfg, src);
      std::cerr << res.log.describe() << '\n';
      emit(res.released, pb_output);
    } else if (*tf) {
      tf_cfg.selection =
          tf_selection == "laplace" ? TfSelection::kLaplaceOnTruncated : TfSelection::kExponentialSampling;
      tf_cfg.universe_mode = tf_mode == "pruning" ? TfUniverseMode::kTruncatedPruning : TfUniverseMode::kExplicit;
      const auto d = load_fimi(tf_path);
      dp::NoiseSource src(resolve_seed(tf_seed));
      auto res = tf_select_and_release(d, tf_cfg, src);
      std::cerr << fmt::format("m={} f_k={:.6g} gamma={:.6g} |U|={} pruning_disabled={} enumerated={} pool={}\n",
                               res.log.m, res.log.f_k, res.log.gamma, res.log.universe_size,
                               res.log.pruning_disabled, res.log.enumerated, res.log.residual_pool);
      emit(res.released, tf_output);
    } else if (*gen) {
      for (const auto& p : plants) gen_opts.planted.push_back(parse_plant(p));
      gen_opts.seed = resolve_seed(gen_seed);
      const auto d = generate_synthetic(gen_opts);
      if (gen_output.empty() || gen_output == "-") {
        write_fimi(d, std::cout);
      } else {
        save_fimi(d, gen_output);
      }
    } else if (*exp) {
      const auto plan = eval::load_plan(plan_path);
      const auto rows = eval::run_experiments(plan, out_dir);
      std::cerr << fmt::format("{} rows written to {}/results.csv\n", rows.size(), out_dir);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
