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

#include "privbasis/eval/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "privbasis/error.hpp"
#include "privbasis/eval/metrics.hpp"
#include "privbasis/eval/records.hpp"
#include "privbasis/miner.hpp"

namespace privbasis::eval {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known, std::string_view where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw InvalidArgument(fmt::format("unknown key '{}' in {}", key, where));
  }
}

PrivBasisConfig config_from(const json& j, PrivBasisConfig cfg) {
  if (!j.is_object()) throw InvalidArgument("privbasis config must be a JSON object");
  reject_unknown(j, {"eps", "k", "alpha1", "alpha2", "alpha3", "eta", "lambda_cap", "l_max", "freq_mode",
                     "clique_retries"},
                 "privbasis config");
  if (j.contains("eps")) cfg.eps = j["eps"].get<double>();
  if (j.contains("k")) cfg.k = j["k"].get<std::size_t>();
  if (j.contains("alpha1")) cfg.alpha1 = dp::fraction_from_decimal(j["alpha1"].get<double>());
  if (j.contains("alpha2")) cfg.alpha2 = dp::fraction_from_decimal(j["alpha2"].get<double>());
  if (j.contains("alpha3")) cfg.alpha3 = dp::fraction_from_decimal(j["alpha3"].get<double>());
  if (j.contains("eta")) cfg.eta = j["eta"].get<double>();
  if (j.contains("lambda_cap")) cfg.lambda_single_basis_cap = j["lambda_cap"].get<std::size_t>();
  if (j.contains("l_max")) cfg.l_max = j["l_max"].get<std::size_t>();
  if (j.contains("clique_retries")) cfg.clique_retries = j["clique_retries"].get<std::size_t>();
  if (j.contains("freq_mode")) {
    const auto mode = j["freq_mode"].get<std::string>();
    if (mode == "support") {
      cfg.freq_mode = FreqElementsMode::kSupport;
    } else if (mode == "literal") {
      cfg.freq_mode = FreqElementsMode::kLiteralFrequency;
    } else {
      throw InvalidArgument("freq_mode must be 'support' or 'literal'");
    }
  }
  return cfg;
}

std::string fmt_opt(const std::optional<double>& v) {
  if (!v || std::isnan(*v)) return "";
  return fmt::format("{}", *v);
}

template <typename T>
std::string fmt_opt(const std::optional<T>& v) {
  return v ? fmt::format("{}", *v) : "";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

struct MeanSe {
  std::optional<double> mean;
  std::optional<double> se;
};

MeanSe mean_se(const std::vector<double>& v) {
  if (v.empty()) return {};
  double sum = 0;
  for (double x : v) sum += x;
  const double mean = sum / static_cast<double>(v.size());
  if (v.size() < 2) return {mean, std::nullopt};
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return {mean, sd / std::sqrt(static_cast<double>(v.size()))};
}

std::string run_file_name(const RunRow& row) {
  return fmt::format("{}_k{}_eps{}_{}_rep{}.json", row.dataset, row.k, row.eps, row.method, row.rep);
}

struct Outcome {
  Release release;
  RunRow diag;
};

Outcome run_pb(const TransactionDataset& d, const ExperimentPlan& plan, std::size_t k, double eps,
               dp::NoiseSource src) {
  PrivBasisConfig cfg = plan.privbasis;
  cfg.k = k;
  cfg.eps = eps;
  auto res = privbasis_main(d, cfg, src);
  Outcome out;
  out.release = std::move(res.released);
  out.diag.lambda = res.log.lambda;
  out.diag.lambda2 = res.log.lambda2;
  out.diag.width = res.log.basis.width();
  out.diag.length = res.log.basis.length();
  return out;
}

Outcome run_tf(const TransactionDataset& d, const ExperimentPlan& plan, std::size_t k, double eps,
               std::uint64_t seed, std::span<const Itemset> actual) {
  std::optional<Outcome> best;
  double best_fnr = 2.0;
  std::string last_error;
  for (std::size_t m : plan.tf.m_values) {
    if (m > d.universe().size()) continue;
    TfConfig cfg;
    cfg.k = k;
    cfg.m = m;
    cfg.eps = eps;
    cfg.rho = plan.tf.rho;
    cfg.selection = plan.tf.selection;
    cfg.universe_mode = plan.tf.universe_mode;
    cfg.explicit_guard = plan.tf.explicit_guard;
    dp::NoiseSource src(seed);
    try {
      auto res = tf_select_and_release(d, cfg, src);
      const double f = fnr(itemsets_of(res.released), actual);
      if (f < best_fnr) {
        best_fnr = f;
        Outcome o;
        o.release = std::move(res.released);
        o.diag.m = m;
        o.diag.gamma = res.log.gamma;
        best = std::move(o);
      }
    } catch (const Error& e) {
      last_error = fmt::format("m={}: {}", m, e.what());
    }
  }
  if (!best) throw Error(last_error.empty() ? "no admissible m" : last_error);
  return std::move(*best);
}

}  // namespace

PrivBasisConfig parse_privbasis_config(std::string_view json_text, PrivBasisConfig base) {
  try {
    return config_from(json::parse(json_text), std::move(base));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed privbasis config: ") + e.what());
  }
}

void ExperimentPlan::validate() const {
  if (datasets.empty()) throw InvalidArgument("plan lists no datasets");
  if (k_values.empty() || eps_values.empty()) throw InvalidArgument("plan needs at least one k and one eps");
  if (repetitions == 0) throw InvalidArgument("repetitions must be at least 1");
  if (methods.empty()) throw InvalidArgument("plan lists no methods");
  std::set<std::string> ids;
  for (const auto& ds : datasets) {
    if (!ids.insert(ds.id).second) throw InvalidArgument("duplicate dataset id '" + ds.id + "'");
  }
  for (const auto& m : methods) {
    if (m != "pb" && m != "tf" && m != "pb-noise-off") throw InvalidArgument("unknown method '" + m + "'");
  }
  for (std::size_t k : k_values) {
    if (k == 0) throw InvalidArgument("k must be at least 1");
  }
  for (double e : eps_values) {
    if (!(e > 0) || !std::isfinite(e)) throw InvalidArgument("eps values must be positive");
  }
  if (tf.m_values.empty()) throw InvalidArgument("tf.m must list at least one value");
}

ExperimentPlan parse_plan(std::string_view json_text, const std::filesystem::path& base_dir) {
  ExperimentPlan plan;
  try {
    const json j = json::parse(json_text);
    reject_unknown(j, {"datasets", "k", "eps", "repetitions", "methods", "seed", "tf", "privbasis", "record_timing"},
                   "plan");
    for (const auto& ds : j.at("datasets")) {
      std::filesystem::path p = ds.at("path").get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      plan.datasets.push_back({ds.value("id", p.stem().string()), p});
    }
    plan.k_values = j.at("k").get<std::vector<std::size_t>>();
    plan.eps_values = j.at("eps").get<std::vector<double>>();
    plan.repetitions = j.value("repetitions", std::size_t{3});
    plan.methods = j.value("methods", std::vector<std::string>{"pb", "tf"});
    plan.seed = j.at("seed").get<std::uint64_t>();
    plan.record_timing = j.value("record_timing", true);
    if (j.contains("privbasis")) plan.privbasis = config_from(j["privbasis"], plan.privbasis);
    if (j.contains("tf")) {
      const json& t = j["tf"];
      reject_unknown(t, {"m", "rho", "selection", "universe_mode", "explicit_guard"}, "tf plan");
      if (t.contains("m")) plan.tf.m_values = t["m"].get<std::vector<std::size_t>>();
      plan.tf.rho = t.value("rho", plan.tf.rho);
      plan.tf.explicit_guard = t.value("explicit_guard", plan.tf.explicit_guard);
      const auto sel = t.value("selection", std::string("laplace"));
      if (sel == "laplace") {
        plan.tf.selection = TfSelection::kLaplaceOnTruncated;
      } else if (sel == "exponential") {
        plan.tf.selection = TfSelection::kExponentialSampling;
      } else {
        throw InvalidArgument("tf.selection must be 'laplace' or 'exponential'");
      }
      const auto mode = t.value("universe_mode", std::string("pruning"));
      if (mode == "pruning") {
        plan.tf.universe_mode = TfUniverseMode::kTruncatedPruning;
      } else if (mode == "explicit") {
        plan.tf.universe_mode = TfUniverseMode::kExplicit;
      } else {
        throw InvalidArgument("tf.universe_mode must be 'pruning' or 'explicit'");
      }
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed plan: ") + e.what());
  }
  plan.validate();
  return plan;
}

ExperimentPlan load_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read plan " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_plan(ss.str(), path.parent_path());
}

std::string csv_line(const RunRow& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", csv_field(r.dataset), r.k, r.eps,
                     csv_field(r.method), r.rep, fmt_opt(r.seed), fmt_opt(r.fnr), fmt_opt(r.re), fmt_opt(r.wall_ms),
                     fmt_opt(r.lambda), fmt_opt(r.lambda2), fmt_opt(r.width), fmt_opt(r.length), fmt_opt(r.m),
                     fmt_opt(r.gamma), fmt_opt(r.zero_support), fmt_opt(r.fnr_se), fmt_opt(r.re_se),
                     csv_field(r.status));
}

std::uint64_t run_seed(std::uint64_t plan_seed, std::string_view dataset, std::size_t k, double eps,
                       std::string_view method, std::size_t rep) {
  return dp::NoiseSource(plan_seed).derive(fmt::format("{}|{}|{}|{}|{}", dataset, k, eps, method, rep)).seed();
}

std::vector<RunRow> run_experiments(const ExperimentPlan& plan, const std::filesystem::path& out_dir) {
  plan.validate();
  std::filesystem::create_directories(out_dir / "runs");
  std::vector<RunRow> rows;

  for (const auto& ds : plan.datasets) {
    const TransactionDataset d = load_fimi(ds.path);
    for (std::size_t k : plan.k_values) {
      // Shared ground truth for every method and repetition of this cell.
      const std::vector<Itemset> actual = [&] {
        std::vector<Itemset> v;
        for (auto& r : exact_top_k(d, k)) v.push_back(std::move(r.itemset));
        return v;
      }();
      for (double eps : plan.eps_values) {
        for (const auto& method : plan.methods) {
          std::vector<double> fnrs, res, times;
          for (std::size_t rep = 0; rep < plan.repetitions; ++rep) {
            RunRow row;
            row.dataset = ds.id;
            row.k = k;
            row.eps = eps;
            row.method = method;
            row.rep = std::to_string(rep);
            const std::uint64_t seed = run_seed(plan.seed, ds.id, k, eps, method, rep);
            row.seed = seed;
            const auto start = std::chrono::steady_clock::now();
            try {
              Outcome o;
              if (method == "pb") {
                o = run_pb(d, plan, k, eps, dp::NoiseSource(seed));
              } else if (method == "pb-noise-off") {
                o = run_pb(d, plan, k, eps, dp::NoiseSource::NoiseOff());
              } else {
                o = run_tf(d, plan, k, eps, seed, actual);
              }
              const double ms =
                  std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
              row.lambda = o.diag.lambda;
              row.lambda2 = o.diag.lambda2;
              row.width = o.diag.width;
              row.length = o.diag.length;
              row.m = o.diag.m;
              row.gamma = o.diag.gamma;
              row.fnr = fnr(itemsets_of(o.release), actual);
              const auto re = relative_error(o.release, d);
              row.re = re.median;
              row.zero_support = re.zero_support;
              if (plan.record_timing) row.wall_ms = ms;
              write_release(o.release, out_dir / "runs" / run_file_name(row));
              fnrs.push_back(*row.fnr);
              if (!std::isnan(re.median)) res.push_back(re.median);
              times.push_back(ms);
            } catch (const Error& e) {
              row.status = std::string("error: ") + e.what();
            }
            rows.push_back(std::move(row));
          }
          RunRow agg;
          agg.dataset = ds.id;
          agg.k = k;
          agg.eps = eps;
          agg.method = method;
          agg.rep = "mean";
          const auto f = mean_se(fnrs);
          const auto r = mean_se(res);
          agg.fnr = f.mean;
          agg.fnr_se = f.se;
          agg.re = r.mean;
          agg.re_se = r.se;
          if (plan.record_timing) agg.wall_ms = mean_se(times).mean;
          agg.status = fmt::format("aggregate of {}/{} runs", fnrs.size(), plan.repetitions);
          rows.push_back(std::move(agg));
        }
      }
    }
  }

  std::ofstream csv(out_dir / "results.csv");
  if (!csv) throw Error("cannot write " + (out_dir / "results.csv").string());
  csv << kCsvHeader << '\n';
  for (const auto& row : rows) csv << csv_line(row) << '\n';
  return rows;
}

}  // namespace privbasis::eval
