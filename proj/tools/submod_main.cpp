// Copyright 2026 The Authors.
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

// Command-line front end: maximize | reduce | curvature | brute | imc-bench.
// Exit codes: 0 success, 2 configuration or input error, 3 solver fault.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "submod/submod.hpp"

namespace {

using nlohmann::json;

void write_output(const json& out, const std::string& path) {
  if (path.empty()) {
    std::cout << out.dump(2) << std::endl;
  } else {
    std::ofstream file(path);
    if (!file) throw submod::ConfigError("cannot write output file: " + path);
    file << out.dump(2) << std::endl;
  }
}

json trace_to_json(const submod::GreedyTrace& trace) {
  json chain = json::array();
  for (const auto& step : trace.chain)
    chain.push_back({{"k", step.k},
                     {"element", step.element},
                     {"f", step.f_value},
                     {"g", step.g_value},
                     {"psi", step.psi_value}});
  return {{"chain", std::move(chain)}, {"selected_k", trace.selected_k}};
}

submod::ApproxSolver make_inner_solver(const std::string& name,
                                       submod::ApproxSolver::Kind kind,
                                       const submod::SetFunction& g) {
  if (name == "brute") return submod::brute_force_solver(kind);
  if (name == "greedy") {
    // Greedy carries the curvature-based guarantee with
    // alpha = 1 - e^(c_g - 1); shifts and scales of g leave c_g unchanged.
    submod::ApproxSolver solver;
    solver.kind = kind;
    solver.alpha = 1.0 - std::exp(submod::curvature(g) - 1.0);
    const submod::Combiner psi = kind == submod::ApproxSolver::Kind::kRatio
                                     ? submod::ratio_combiner()
                                     : submod::difference_combiner();
    solver.solve = [psi](const submod::SetFunction& f, const submod::SetFunction& gg) {
      return submod::psi_greedy(f, gg, psi).selected;
    };
    return solver;
  }
  throw submod::ConfigError("unknown inner solver '" + name + "' (use brute or greedy)");
}

int run(int argc, char** argv) {
  CLI::App app{"maximization of ratio/difference-style objectives of two "
               "monotone submodular set functions"};
  app.require_subcommand(1);

  // maximize -------------------------------------------------------------
  auto* maximize = app.add_subcommand("maximize", "run a greedy or ModMod maximizer");
  std::string mx_instance, mx_psi = "diff", mx_algo = "greedy", mx_out;
  bool mx_lazy = false;
  std::optional<double> mx_budget;
  double mx_eps = 0.1;
  std::uint64_t mx_seed = 1;
  int mx_max_iters = 100;
  maximize->add_option("--instance", mx_instance, "instance JSON file")->required();
  maximize->add_option("--psi", mx_psi, "objective: diff|ratio|diff-sqrt|ratio-sqrt");
  maximize->add_option("--algo", mx_algo, "algorithm: greedy|modmod");
  maximize->add_flag("--lazy", mx_lazy, "lazy marginal evaluations");
  maximize->add_option("--budget", mx_budget, "knapsack budget on g");
  maximize->add_option("--eps", mx_eps, "budget level granularity");
  maximize->add_option("--seed", mx_seed, "seed (modmod permutations)");
  maximize->add_option("--max-iters", mx_max_iters, "modmod iteration cap");
  maximize->add_option("--out", mx_out, "write the JSON result here instead of stdout");

  // reduce ---------------------------------------------------------------
  auto* reduce = app.add_subcommand("reduce", "approximate one problem via a solver for the other");
  std::string rd_instance, rd_from, rd_to, rd_inner = "brute", rd_out;
  double rd_alpha = 1.0, rd_eps = 1e-3;
  reduce->add_option("--instance", rd_instance, "instance JSON file")->required();
  reduce->add_option("--from", rd_from, "problem the inner solver answers: ratio|diff")->required();
  reduce->add_option("--to", rd_to, "problem to solve: diff|ratio")->required();
  reduce->add_option("--alpha", rd_alpha, "inner solver approximation factor");
  reduce->add_option("--eps", rd_eps, "additive tolerance");
  reduce->add_option("--inner", rd_inner, "inner solver: brute|greedy");
  reduce->add_option("--out", rd_out, "output file");

  // curvature ------------------------------------------------------------
  auto* curv = app.add_subcommand("curvature", "curvature of the instance's f and g");
  std::string cv_instance, cv_out;
  curv->add_option("--instance", cv_instance, "instance JSON file")->required();
  curv->add_option("--out", cv_out, "output file");

  // brute ----------------------------------------------------------------
  auto* brute = app.add_subcommand("brute", "exact optimum by subset enumeration (n <= 24)");
  std::string br_instance, br_objective = "diff", br_out;
  brute->add_option("--instance", br_instance, "instance JSON file")->required();
  brute->add_option("--objective", br_objective, "ratio|diff");
  brute->add_option("--out", br_out, "output file");

  // imc-bench ------------------------------------------------------------
  auto* bench = app.add_subcommand("imc-bench", "influence-maximization-with-costs benchmark");
  std::string bc_config, bc_graph, bc_out, bc_lambdas, bc_algos;
  std::optional<int> bc_n, bc_T, bc_runs, bc_workers, bc_max_iters;
  std::optional<double> bc_p, bc_wlo, bc_whi, bc_clo, bc_chi;
  std::optional<std::uint64_t> bc_seed;
  bool bc_undirected = false;
  bench->add_option("--config", bc_config, "key = value config file");
  bench->add_option("--graph", bc_graph, "'synthetic' or an edge-list path");
  bench->add_flag("--undirected", bc_undirected, "treat the edge list as undirected");
  bench->add_option("--n", bc_n, "synthetic vertex count");
  bench->add_option("--p", bc_p, "synthetic edge probability");
  bench->add_option("--weight-lo", bc_wlo, "edge weight range low end");
  bench->add_option("--weight-hi", bc_whi, "edge weight range high end");
  bench->add_option("--T", bc_T, "live-edge samples per instance");
  bench->add_option("--cost-lo", bc_clo, "cost range low end");
  bench->add_option("--cost-hi", bc_chi, "cost range high end");
  bench->add_option("--lambdas", bc_lambdas, "comma-separated cost scales");
  bench->add_option("--runs", bc_runs, "runs per lambda");
  bench->add_option("--seed", bc_seed, "master seed");
  bench->add_option("--algos", bc_algos, "comma-separated algorithms");
  bench->add_option("--out", bc_out, "output directory");
  bench->add_option("--workers", bc_workers, "parallel workers");
  bench->add_option("--max-iters", bc_max_iters, "modmod iteration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help text or the parse error
    return code == 0 ? 0 : 2;
  }

  if (*maximize) {
    const submod::ProblemInstance inst = submod::load_instance(mx_instance);
    json out{{"command", "maximize"}, {"n", inst.n}, {"algo", mx_algo}};
    if (mx_algo == "modmod") {
      const auto result = submod::modmod(inst.f, inst.g, mx_seed, mx_max_iters);
      out["selected"] = submod::mask_to_json(result.selected);
      out["objective"] = inst.f(result.selected) - inst.g(result.selected);
      out["iterations"] = result.iterations;
      out["converged"] = result.converged;
      out["objective_trace"] = result.objectives;
    } else if (mx_algo == "greedy") {
      const submod::Combiner psi = submod::combiner_from_name(mx_psi);
      out["psi"] = psi.name();
      if (mx_budget) {
        if (inst.n > 40)
          std::cerr << "warning: knapsack enumeration is cubic in n; n = " << inst.n
                    << " may take a while" << std::endl;
        const auto result =
            submod::knapsack_psi_greedy(inst.f, inst.g, psi, *mx_budget, mx_eps);
        out["selected"] = submod::mask_to_json(result.selected);
        out["psi_value"] = result.psi_value;
        out["f"] = result.f_value;
        out["g"] = result.g_value;
        out["budget"] = *mx_budget;
        out["eps"] = mx_eps;
      } else {
        submod::GreedyOptions options;
        options.lazy = mx_lazy;
        const auto result = submod::psi_greedy(inst.f, inst.g, psi, options);
        const auto& best = result.trace.chain[static_cast<std::size_t>(result.trace.selected_k)];
        out["selected"] = submod::mask_to_json(result.selected);
        out["psi_value"] = best.psi_value;
        out["f"] = best.f_value;
        out["g"] = best.g_value;
        out["oracle_calls"] = {{"f", result.f_evals}, {"g", result.g_evals}};
        out["trace"] = trace_to_json(result.trace);
      }
    } else {
      throw submod::ConfigError("unknown algorithm '" + mx_algo + "'");
    }
    write_output(out, mx_out);
    return 0;
  }

  if (*reduce) {
    const submod::ProblemInstance inst = submod::load_instance(rd_instance);
    const bool to_diff = rd_to == "diff" && rd_from == "ratio";
    const bool to_ratio = rd_to == "ratio" && rd_from == "diff";
    if (!to_diff && !to_ratio)
      throw submod::ConfigError("reduce: supported directions are ratio->diff and diff->ratio");
    const auto kind = to_diff ? submod::ApproxSolver::Kind::kRatio
                              : submod::ApproxSolver::Kind::kDifference;
    submod::ApproxSolver inner = make_inner_solver(rd_inner, kind, inst.g);
    if (rd_inner == "brute") inner.alpha = rd_alpha;  // declared, not enforced
    const submod::ReductionResult result =
        to_diff ? submod::difference_from_ratio(inner, inst.f, inst.g, rd_eps)
                : submod::ratio_from_difference(inner, inst.f, inst.g, rd_eps);
    json out{{"command", "reduce"},
             {"from", rd_from},
             {"to", rd_to},
             {"alpha", inner.alpha},
             {"eps", rd_eps},
             {"x", submod::mask_to_json(result.x)},
             {"objective", result.objective},
             {"iterations", result.iterations},
             {"certified_lower", result.lower},
             {"certified_upper", result.upper}};
    write_output(out, rd_out);
    return 0;
  }

  if (*curv) {
    const submod::ProblemInstance inst = submod::load_instance(cv_instance);
    json out{{"command", "curvature"},
             {"c_f", submod::curvature(inst.f)},
             {"c_g", submod::curvature(inst.g)}};
    write_output(out, cv_out);
    return 0;
  }

  if (*brute) {
    const submod::ProblemInstance inst = submod::load_instance(br_instance);
    const auto kind = br_objective == "ratio" ? submod::ApproxSolver::Kind::kRatio
                                              : submod::ApproxSolver::Kind::kDifference;
    if (br_objective != "ratio" && br_objective != "diff")
      throw submod::ConfigError("brute: objective must be ratio or diff");
    const submod::SubsetMask x = submod::brute_force_solver(kind).solve(inst.f, inst.g);
    const double value = br_objective == "ratio" ? inst.f(x) / inst.g(x)
                                                 : inst.f(x) - inst.g(x);
    json out{{"command", "brute"},
             {"objective", br_objective},
             {"x", submod::mask_to_json(x)},
             {"value", value}};
    write_output(out, br_out);
    return 0;
  }

  // imc-bench
  submod::ExperimentConfig config;
  if (!bc_config.empty()) config = submod::config_from_file(bc_config);
  if (!bc_graph.empty()) config.graph_source = bc_graph;
  if (bc_undirected) config.undirected = true;
  if (bc_n) config.synthetic_n = *bc_n;
  if (bc_p) config.synthetic_p = *bc_p;
  if (bc_wlo) config.weight_lo = *bc_wlo;
  if (bc_whi) config.weight_hi = *bc_whi;
  if (bc_T) config.cascade_samples = *bc_T;
  if (bc_clo) config.cost_lo = *bc_clo;
  if (bc_chi) config.cost_hi = *bc_chi;
  if (!bc_lambdas.empty()) {
    config.lambdas.clear();
    for (const auto& part : submod::detail::split_list(bc_lambdas))
      config.lambdas.push_back(submod::detail::parse_double(part, "lambdas"));
  }
  if (bc_runs) config.runs_per_lambda = *bc_runs;
  if (bc_seed) config.master_seed = *bc_seed;
  if (!bc_algos.empty()) config.algorithms = submod::detail::split_list(bc_algos);
  if (!bc_out.empty()) config.output_dir = bc_out;
  if (bc_workers) config.workers = *bc_workers;
  if (bc_max_iters) config.modmod_max_iters = *bc_max_iters;
  if (const char* env_seed = std::getenv("SUBMOD_SEED")) {
    config.master_seed =
        static_cast<std::uint64_t>(submod::detail::parse_int(env_seed, "SUBMOD_SEED"));
  }
  config.validate();
  const auto records = submod::run_experiment(config);
  submod::emit_outputs(records, config.output_dir);
  std::ofstream(config.output_dir + "/config.txt") << submod::serialize_config(config);
  std::cout << json{{"command", "imc-bench"},
                    {"records", records.size()},
                    {"out", config.output_dir}}
                   .dump(2)
            << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const submod::SolverFault& e) {
    std::cerr << "solver fault: " << e.what() << std::endl;
    return 3;
  } catch (const submod::ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return 2;
  } catch (const submod::FileParseError& e) {
    std::cerr << "parse error: " << e.what() << std::endl;
    return 2;
  } catch (const submod::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << std::endl;
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << std::endl;
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << std::endl;
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << std::endl;
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
