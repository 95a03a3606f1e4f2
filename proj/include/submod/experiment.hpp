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

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "submod/combiner.hpp"
#include "submod/greedy.hpp"
#include "submod/influence.hpp"
#include "submod/modmod.hpp"
#include "submod/random.hpp"
#include "submod/set_function.hpp"
#include "submod/subset.hpp"

namespace submod {

/// Raised on invalid experiment configuration or config files.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Everything one benchmark campaign needs: instance generation parameters,
/// the lambda sweep, algorithms, seeding, and output placement. Serializes
/// to a plain "key = value" file and parses back to an equal value.
struct ExperimentConfig {
  std::string graph_source = "synthetic";  // "synthetic" or an edge-list path
  bool undirected = false;                 // for edge-list loading
  int synthetic_n = 50;
  double synthetic_p = 0.08;
  double weight_lo = 0.0;
  double weight_hi = 0.1;
  int cascade_samples = 10;  // T
  double cost_lo = 0.0;
  double cost_hi = 1.0;
  std::vector<double> lambdas = {0.25, 0.5, 1.0, 2.0, 4.0};
  int runs_per_lambda = 50;
  std::uint64_t master_seed = 1;
  std::vector<std::string> algorithms = {"greedy", "modmod"};
  std::string output_dir = "results";
  int workers = 1;
  int modmod_max_iters = 100;

  bool operator==(const ExperimentConfig&) const = default;

  void validate() const {
    if (runs_per_lambda < 1) throw ConfigError("config: runs must be >= 1");
    if (cascade_samples < 1) throw ConfigError("config: T must be >= 1");
    if (!(weight_lo >= 0.0 && weight_hi <= 1.0 && weight_lo <= weight_hi))
      throw ConfigError("config: weight range must lie within [0,1]");
    if (!(cost_lo >= 0.0 && cost_lo <= cost_hi))
      throw ConfigError("config: cost range must be non-negative");
    if (lambdas.empty()) throw ConfigError("config: need at least one lambda");
    for (double l : lambdas)
      if (!(l >= 0.0)) throw ConfigError("config: lambdas must be >= 0");
    if (algorithms.empty()) throw ConfigError("config: need at least one algorithm");
    for (const auto& a : algorithms)
      if (a != "greedy" && a != "greedy-eager" && a != "modmod")
        throw ConfigError("config: unknown algorithm '" + a + "'");
    if (workers < 1) throw ConfigError("config: workers must be >= 1");
    if (modmod_max_iters < 1) throw ConfigError("config: modmod_max_iters must be >= 1");
    if (graph_source == "synthetic") {
      if (synthetic_n < 1) throw ConfigError("config: n must be >= 1");
      if (!(synthetic_p >= 0.0 && synthetic_p <= 1.0))
        throw ConfigError("config: p must lie in [0,1]");
    }
  }
};

namespace detail {

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out;
}

inline std::string join_strings(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i];
  }
  return out;
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    parts.push_back(item.substr(b, e - b + 1));
  }
  return parts;
}

inline double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number '" + s + "' for key " + key);
  }
}

inline long long parse_int(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer '" + s + "' for key " + key);
  }
}

}  // namespace detail

inline std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "graph = " << c.graph_source << "\n";
  out << "undirected = " << (c.undirected ? "true" : "false") << "\n";
  out << "n = " << c.synthetic_n << "\n";
  out << "p = " << detail::format_double(c.synthetic_p) << "\n";
  out << "weight_lo = " << detail::format_double(c.weight_lo) << "\n";
  out << "weight_hi = " << detail::format_double(c.weight_hi) << "\n";
  out << "T = " << c.cascade_samples << "\n";
  out << "cost_lo = " << detail::format_double(c.cost_lo) << "\n";
  out << "cost_hi = " << detail::format_double(c.cost_hi) << "\n";
  out << "lambdas = " << detail::join_doubles(c.lambdas) << "\n";
  out << "runs = " << c.runs_per_lambda << "\n";
  out << "seed = " << c.master_seed << "\n";
  out << "algos = " << detail::join_strings(c.algorithms) << "\n";
  out << "out = " << c.output_dir << "\n";
  out << "workers = " << c.workers << "\n";
  out << "modmod_max_iters = " << c.modmod_max_iters << "\n";
  return out.str();
}

/// Parses "key = value" lines; '#' comments and blank lines are skipped.
/// Unknown keys are errors (typos should not silently change a campaign).
inline ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig c;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": expected 'key = value'");
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "graph") c.graph_source = value;
    else if (key == "undirected") c.undirected = value == "true" || value == "1";
    else if (key == "n") c.synthetic_n = static_cast<int>(detail::parse_int(value, key));
    else if (key == "p") c.synthetic_p = detail::parse_double(value, key);
    else if (key == "weight_lo") c.weight_lo = detail::parse_double(value, key);
    else if (key == "weight_hi") c.weight_hi = detail::parse_double(value, key);
    else if (key == "T") c.cascade_samples = static_cast<int>(detail::parse_int(value, key));
    else if (key == "cost_lo") c.cost_lo = detail::parse_double(value, key);
    else if (key == "cost_hi") c.cost_hi = detail::parse_double(value, key);
    else if (key == "lambdas") {
      c.lambdas.clear();
      for (const auto& part : detail::split_list(value))
        c.lambdas.push_back(detail::parse_double(part, key));
    } else if (key == "runs") c.runs_per_lambda = static_cast<int>(detail::parse_int(value, key));
    else if (key == "seed") c.master_seed = static_cast<std::uint64_t>(detail::parse_int(value, key));
    else if (key == "algos") c.algorithms = detail::split_list(value);
    else if (key == "out") c.output_dir = value;
    else if (key == "workers") c.workers = static_cast<int>(detail::parse_int(value, key));
    else if (key == "modmod_max_iters") c.modmod_max_iters = static_cast<int>(detail::parse_int(value, key));
    else throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  return c;
}

inline ExperimentConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  return parse_config(in);
}

/// Directed Erdos-Renyi graph: each ordered pair (u, v), u != v, is an edge
/// independently with probability p.
inline DirectedGraph erdos_renyi(int n, double p, std::uint64_t seed) {
  DirectedGraph graph;
  graph.n = n;
  std::mt19937_64 rng(mix_seed(seed));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && canonical_unit(rng) < p) graph.edges.emplace_back(u, v);
  return graph;
}

/// One benchmark measurement; the objective is recomputable from the
/// instance (derivable from config + lambda + seed) and the stored set.
struct RunRecord {
  double lambda = 0.0;
  std::uint64_t seed = 0;  // per-run derived seed
  std::string algorithm;
  double objective = 0.0;  // f(S) - g(S)
  int set_size = 0;
  std::uint64_t oracle_calls = 0;
  double wall_time_s = 0.0;
  SubsetMask selected;
};

/// The cascade instance for run (lambda, run_seed) under a config: weights,
/// costs and live graphs all derive from the run seed.
inline CascadeInstance build_run_instance(const ExperimentConfig& config, double lambda,
                                          std::uint64_t run_seed) {
  DirectedGraph base;
  if (config.graph_source == "synthetic") {
    base = erdos_renyi(config.synthetic_n, config.synthetic_p,
                       mix_seed(run_seed, 0xE5));
  } else {
    base = load_edge_list(config.graph_source, config.undirected).graph;
  }
  std::mt19937_64 rng(mix_seed(run_seed, 0xC0));
  std::vector<double> weights(base.edges.size());
  for (auto& w : weights) w = uniform_in(rng, config.weight_lo, config.weight_hi);
  std::vector<double> costs(static_cast<std::size_t>(base.n));
  for (auto& c : costs) c = uniform_in(rng, config.cost_lo, config.cost_hi);
  return make_cascade_instance(std::move(base), std::move(weights),
                               config.cascade_samples, mix_seed(run_seed, 0x11),
                               std::move(costs), lambda);
}

namespace detail {

inline RunRecord run_one_algorithm(const std::string& algorithm,
                                   const CascadeInstance& instance, double lambda,
                                   std::uint64_t run_seed, int modmod_max_iters) {
  const SetFunction f = make_spread_function(instance);
  const SetFunction g = make_cost_function(instance.costs, instance.lambda);
  RunRecord record;
  record.lambda = lambda;
  record.seed = run_seed;
  record.algorithm = algorithm;
  const std::uint64_t calls0 = f.eval_count() + g.eval_count();
  const auto start = std::chrono::steady_clock::now();
  SubsetMask selected(instance.graph.n);
  if (algorithm == "greedy" || algorithm == "greedy-eager") {
    GreedyOptions options;
    options.lazy = algorithm == "greedy";
    selected = psi_greedy(f, g, difference_combiner(), options).selected;
  } else if (algorithm == "modmod") {
    selected = modmod(f, g, mix_seed(run_seed, 0xA1), modmod_max_iters).selected;
  } else {
    throw ConfigError("unknown algorithm '" + algorithm + "'");
  }
  const auto stop = std::chrono::steady_clock::now();
  record.wall_time_s = std::chrono::duration<double>(stop - start).count();
  record.oracle_calls = f.eval_count() + g.eval_count() - calls0;
  record.objective = f(selected) - g(selected);
  record.set_size = selected.cardinality();
  record.selected = std::move(selected);
  return record;
}

}  // namespace detail

/// Runs every configured algorithm on every (lambda, run) cell. Fully
/// deterministic under the master seed: per-run seeds are derived from
/// (master, lambda index, run index), so cells are independent of worker
/// scheduling and of each other. Records come back canonically sorted by
/// (lambda, seed, algorithm).
inline std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  struct Cell {
    double lambda;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (std::size_t li = 0; li < config.lambdas.size(); ++li)
    for (int ri = 0; ri < config.runs_per_lambda; ++ri)
      cells.push_back({config.lambdas[li],
                       mix_seed(config.master_seed, li, static_cast<std::uint64_t>(ri))});

  std::vector<RunRecord> records(cells.size() * config.algorithms.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t c = next.fetch_add(1);
      if (c >= cells.size()) return;
      try {
        const CascadeInstance instance =
            build_run_instance(config, cells[c].lambda, cells[c].seed);
        for (std::size_t a = 0; a < config.algorithms.size(); ++a)
          records[c * config.algorithms.size() + a] = detail::run_one_algorithm(
              config.algorithms[a], instance, cells[c].lambda, cells[c].seed,
              config.modmod_max_iters);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (config.workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < config.workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    if (a.seed != b.seed) return a.seed < b.seed;
    return a.algorithm < b.algorithm;
  });
  return records;
}

/// Linear-interpolation quantile, midpoint convention (h = m*q + 0.5):
/// the quartiles of {1,2,3,4} are 1.5 / 2.5 / 3.5.
inline double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile: empty sample");
  std::sort(values.begin(), values.end());
  const double m = static_cast<double>(values.size());
  double h = m * q + 0.5;
  h = std::clamp(h, 1.0, m);
  const std::size_t lo = static_cast<std::size_t>(h) - 1;
  const double frac = h - std::floor(h);
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

namespace detail {

struct SummaryRow {
  double lambda;
  std::string algorithm;
  std::vector<double> objectives;
  std::vector<double> times;
};

inline std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  std::map<std::pair<double, std::string>, SummaryRow> rows;
  for (const auto& r : records) {
    auto& row = rows[{r.lambda, r.algorithm}];
    row.lambda = r.lambda;
    row.algorithm = r.algorithm;
    row.objectives.push_back(r.objective);
    row.times.push_back(r.wall_time_s);
  }
  std::vector<SummaryRow> out;
  out.reserve(rows.size());
  for (auto& [key, row] : rows) out.push_back(std::move(row));
  return out;
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Minimal static box plot of the per-(lambda, algorithm) objectives.
inline std::string render_box_plot_svg(const std::vector<SummaryRow>& rows) {
  const int width = 640, height = 360;
  const int margin_left = 60, margin_right = 20, margin_top = 30, margin_bottom = 50;
  double lo = 0.0, hi = 1.0;
  bool first = true;
  for (const auto& row : rows)
    for (double v : row.objectives) {
      if (first) {
        lo = hi = v;
        first = false;
      } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  if (hi - lo < 1e-12) hi = lo + 1.0;
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  auto y_of = [&](double v) {
    return margin_top + (hi - v) / (hi - lo) * (height - margin_top - margin_bottom);
  };

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='"
      << height << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<text x='" << width / 2
      << "' y='18' text-anchor='middle' font-size='14'>objective f(S) - g(S) by "
         "lambda</text>\n";
  const double slot = static_cast<double>(width - margin_left - margin_right) /
                      std::max<std::size_t>(1, rows.size());
  const char* colors[] = {"#4878d0", "#ee854a", "#6acc64", "#d65f5f"};
  std::map<std::string, int> color_of;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (!color_of.count(row.algorithm))
      color_of[row.algorithm] = static_cast<int>(color_of.size()) % 4;
    const double x = margin_left + slot * (static_cast<double>(i) + 0.5);
    const double box_w = std::min(40.0, slot * 0.6);
    auto sorted = row.objectives;
    std::sort(sorted.begin(), sorted.end());
    const double q1 = quantile(sorted, 0.25), med = quantile(sorted, 0.5),
                 q3 = quantile(sorted, 0.75);
    const double vmin = sorted.front(), vmax = sorted.back(), avg = mean(sorted);
    const char* color = colors[color_of[row.algorithm]];
    svg << "<line x1='" << x << "' y1='" << y_of(vmin) << "' x2='" << x << "' y2='"
        << y_of(vmax) << "' stroke='" << color << "'/>\n";
    svg << "<rect x='" << x - box_w / 2 << "' y='" << y_of(q3) << "' width='" << box_w
        << "' height='" << y_of(q1) - y_of(q3) << "' fill='" << color
        << "' fill-opacity='0.4' stroke='" << color << "'/>\n";
    svg << "<line x1='" << x - box_w / 2 << "' y1='" << y_of(med) << "' x2='"
        << x + box_w / 2 << "' y2='" << y_of(med) << "' stroke='" << color
        << "' stroke-width='2'/>\n";
    svg << "<text x='" << x << "' y='" << y_of(avg) + 4
        << "' text-anchor='middle' font-size='12'>+</text>\n";
    std::ostringstream label;
    label << row.algorithm << " l=" << row.lambda;
    svg << "<text x='" << x << "' y='" << height - margin_bottom + 16
        << "' text-anchor='middle' font-size='10'>" << label.str() << "</text>\n";
  }
  for (int tick = 0; tick <= 4; ++tick) {
    const double v = lo + (hi - lo) * tick / 4.0;
    svg << "<text x='" << margin_left - 6 << "' y='" << y_of(v) + 4
        << "' text-anchor='end' font-size='10'>";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    svg << buf << "</text>\n";
    svg << "<line x1='" << margin_left << "' y1='" << y_of(v) << "' x2='"
        << width - margin_right << "' y2='" << y_of(v)
        << "' stroke='#dddddd' stroke-width='0.5'/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace detail

/// Writes records.csv (one row per record), summary.csv (per-lambda,
/// per-algorithm objective and time statistics), and summary.svg (box plot).
inline void emit_outputs(const std::vector<RunRecord>& records, const std::string& dir) {
  if (records.empty()) throw std::invalid_argument("emit_outputs: no records");
  std::filesystem::create_directories(dir);

  {
    std::ofstream out(dir + "/records.csv");
    if (!out) throw std::runtime_error("emit_outputs: cannot write to " + dir);
    out << "lambda,seed,algorithm,objective,set_size,oracle_calls,wall_time_s,selected_set\n";
    for (const auto& r : records) {
      out << detail::format_double(r.lambda) << ',' << r.seed << ',' << r.algorithm
          << ',' << detail::format_double(r.objective) << ',' << r.set_size << ','
          << r.oracle_calls << ',' << detail::format_double(r.wall_time_s) << ',';
      bool first = true;
      r.selected.for_each([&](int i) {
        if (!first) out << ' ';
        out << i;
        first = false;
      });
      out << '\n';
    }
  }

  const auto rows = detail::summarize(records);
  {
    std::ofstream out(dir + "/summary.csv");
    out << "lambda,algorithm,runs,objective_mean,objective_q1,objective_median,"
           "objective_q3,time_mean_s,time_q1_s,time_median_s,time_q3_s\n";
    for (const auto& row : rows) {
      out << detail::format_double(row.lambda) << ',' << row.algorithm << ','
          << row.objectives.size() << ',' << detail::format_double(detail::mean(row.objectives))
          << ',' << detail::format_double(quantile(row.objectives, 0.25)) << ','
          << detail::format_double(quantile(row.objectives, 0.5)) << ','
          << detail::format_double(quantile(row.objectives, 0.75)) << ','
          << detail::format_double(detail::mean(row.times)) << ','
          << detail::format_double(quantile(row.times, 0.25)) << ','
          << detail::format_double(quantile(row.times, 0.5)) << ','
          << detail::format_double(quantile(row.times, 0.75)) << '\n';
    }
  }

  std::ofstream svg(dir + "/summary.svg");
  svg << detail::render_box_plot_svg(rows);
}

}  // namespace submod
