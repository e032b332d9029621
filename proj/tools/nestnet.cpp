// Copyright 2026 The nestnet authors
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

#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nestnet/nestnet.hpp"

namespace {

using namespace nestnet;

struct RunContext {
  std::string command_line;
  std::optional<std::uint64_t> seed;
  bool no_header = false;
  int threads = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Artifacts carry their producing command (and seed, when randomized) as
// comment lines; the timestamp line is suppressed by --no-header so that
// reruns are byte-identical.
void write_artifact(const std::string& path, const std::string& body,
                    const RunContext& ctx) {
  std::ostringstream os;
  os << "# " << ctx.command_line << '\n';
  if (ctx.seed) os << "# seed " << *ctx.seed << '\n';
  if (!ctx.no_header) {
    char buf[64];
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    os << "# written " << buf << '\n';
  }
  os << body;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << os.str();
  if (!out) throw Error("write to '" + path + "' failed");
}

Graph load_graph_file(const std::string& path) {
  return load_graph(read_file(path), path);
}

RoutingTable load_table_file(const std::string& path, const Graph& g) {
  return load_table(read_file(path), g);
}

std::string decimal2(const Rational& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << to_double(r);
  return os.str();
}

std::string loads_report(const std::vector<std::int64_t>& d) {
  std::ostringstream os;
  for (std::size_t i = 0; i < d.size(); ++i) os << i << ' ' << d[i] << '\n';
  os << "objective " << to_string(objective_of_loads(d)) << '\n';
  return os.str();
}

BisectionMode parse_bisection_mode(const std::string& s) {
  if (s == "auto") return BisectionMode::kAuto;
  if (s == "exact") return BisectionMode::kExact;
  if (s == "heuristic") return BisectionMode::kHeuristic;
  throw Error("unknown bisection mode '" + s + "'");
}

void emit(const std::string& key, const std::string& value) {
  std::cout << key << '=' << value << '\n';
}

// ---------------------------------------------------------------------------

int run_gen(const std::string& name, std::optional<int> m,
            const std::string& out, const RunContext& ctx) {
  const Graph g = named_graph(name, m);
  write_artifact(out, save_graph(g), ctx);
  emit("command", "gen");
  emit("name", g.name);
  emit("n", std::to_string(g.n));
  const auto k = g.regular_degree();
  emit("k", k ? std::to_string(*k) : "-1");
  emit("out", out);
  return 0;
}

int run_search(SearchConfig cfg, const std::string& out, RunContext ctx) {
  ctx.seed = cfg.seed;
  cfg.threads = ctx.threads;
  const SearchResult result = search_optimal(cfg);
  write_artifact(out, save_graph(result.graph), ctx);
  emit("command", "search");
  emit("n", std::to_string(cfg.n));
  emit("k", std::to_string(cfg.k));
  emit("seed", std::to_string(cfg.seed));
  emit("budget", std::to_string(cfg.budget));
  emit("restarts", std::to_string(cfg.restarts));
  emit("mpl", to_string(result.mpl));
  emit("mpl_decimal", decimal2(result.mpl));
  emit("diameter", std::to_string(result.diameter));
  emit("moore_bound", to_string(moore_mpl_bound(cfg.n, cfg.k)));
  emit("hit_lower_bound", result.hit_lower_bound ? "true" : "false");
  emit("evaluations_used", std::to_string(result.evaluations_used));
  emit("out", out);
  return 0;
}

int run_metrics(const std::string& in, const std::string& bisection,
                std::uint64_t seed, const RunContext& ctx) {
  const Graph g = load_graph_file(in);
  const GraphMetrics m =
      compute_metrics(g, parse_bisection_mode(bisection), seed, ctx.threads);
  emit("command", "metrics");
  emit("in", in);
  emit("n", std::to_string(g.n));
  const auto k = g.regular_degree();
  emit("k", k ? std::to_string(*k) : "-1");
  emit("diameter", std::to_string(m.diameter));
  emit("mpl", to_string(m.mpl));
  emit("mpl_decimal", decimal2(m.mpl));
  emit("bisection_width", std::to_string(m.bisection_width));
  emit("bisection_exact", m.bisection_exact ? "true" : "false");
  return 0;
}

int run_product(const std::vector<std::string>& ins, int alpha,
                const std::string& out, const std::string& labels_out,
                bool verify, const RunContext& ctx) {
  std::vector<Graph> factors;
  for (const auto& path : ins) factors.push_back(load_graph_file(path));
  if (alpha > 1) {
    if (factors.size() != 1)
      throw Error("--alpha applies to exactly one input graph");
    factors.assign(static_cast<std::size_t>(alpha), factors[0]);
  }
  if (factors.size() < 2)
    throw Error("product needs at least two factors (or --alpha >= 2)");
  const ProductGraph pg = product_many(factors);
  write_artifact(out, save_graph(pg.graph), ctx);
  if (!labels_out.empty()) write_artifact(labels_out, save_label_map(pg), ctx);
  emit("command", "product");
  emit("n", std::to_string(pg.graph.n));
  emit("factors", std::to_string(pg.factors.size()));
  const auto k = pg.graph.regular_degree();
  emit("k", k ? std::to_string(*k) : "-1");
  emit("out", out);
  if (verify) {
    const auto report = verify_product_properties(pg, ctx.threads);
    emit("laws_ok", report.all_ok() ? "true" : "false");
    for (const auto& v : report.violations) emit("violation", v);
    if (!report.all_ok()) return 2;
  }
  return 0;
}

int run_route(const std::string& in, const std::string& algo,
              const std::string& mode_str, const std::string& solver,
              std::uint64_t seed, long long cap, std::int64_t moves,
              int restarts, const std::string& out,
              const std::string& loads_out, RunContext ctx) {
  const Graph g = load_graph_file(in);
  const DemandMode mode = parse_demand_mode(mode_str);
  RoutingTable table;
  std::string solver_used = "none";
  if (algo == "floyd") {
    table = floyd_routing(g, mode);
  } else if (algo == "balanced") {
    ctx.seed = seed;
    const RoutingModel model = build_model(g, mode, cap, ctx.threads);
    Selection selection;
    if (solver == "exact") {
      selection = solve_exact(model).first;
      solver_used = "exact";
    } else if (solver == "local") {
      LocalSchedule sched;
      sched.max_moves = moves;
      sched.restarts = restarts;
      selection = solve_local(model, seed, sched, ctx.threads).selection;
      solver_used = "local";
    } else if (solver == "auto") {
      try {
        selection = solve_exact(model).first;
        solver_used = "exact";
      } catch (const TooLarge&) {
        LocalSchedule sched;
        sched.max_moves = moves;
        sched.restarts = restarts;
        selection = solve_local(model, seed, sched, ctx.threads).selection;
        solver_used = "local";
      }
    } else {
      throw Error("unknown solver '" + solver + "'");
    }
    table = make_table(model, selection);
  } else {
    throw Error("unknown routing algorithm '" + algo + "'");
  }
  write_artifact(out, save_table(table), ctx);
  const auto d = interior_loads(table);
  if (!loads_out.empty()) write_artifact(loads_out, loads_report(d), ctx);
  std::int64_t max_d = 0, min_d = d.empty() ? 0 : d[0];
  for (std::int64_t v : d) {
    max_d = std::max(max_d, v);
    min_d = std::min(min_d, v);
  }
  emit("command", "route");
  emit("in", in);
  emit("algo", algo);
  emit("mode", mode_str);
  emit("solver", solver_used);
  if (algo == "balanced") emit("seed", std::to_string(seed));
  emit("routes", std::to_string(table.routes.size()));
  emit("objective", to_string(objective_of_loads(d)));
  emit("max_load", std::to_string(max_d));
  emit("min_load", std::to_string(min_d));
  emit("out", out);
  return 0;
}

int run_compose(const std::string& factor1, const std::string& factor2,
                const std::string& table1, const std::string& table2,
                const std::string& order_str, const std::string& out,
                const std::string& product_out, const std::string& labels_out,
                const RunContext& ctx) {
  const Graph g1 = load_graph_file(factor1);
  const Graph g2 = load_graph_file(factor2);
  const RoutingTable r1 = load_table_file(table1, g1);
  const RoutingTable r2 = load_table_file(table2, g2);
  const ProductGraph pg = cartesian_product(g1, g2);
  const RoutingTable composed =
      compose_product_routing(r1, r2, pg, parse_compose_order(order_str));
  write_artifact(out, save_table(composed), ctx);
  if (!product_out.empty())
    write_artifact(product_out, save_graph(pg.graph), ctx);
  if (!labels_out.empty()) write_artifact(labels_out, save_label_map(pg), ctx);
  const auto d = interior_loads(composed);
  emit("command", "compose");
  emit("n", std::to_string(pg.graph.n));
  emit("order", order_str);
  emit("routes", std::to_string(composed.routes.size()));
  emit("objective", to_string(objective_of_loads(d)));
  emit("out", out);
  return 0;
}

int run_simulate(const std::string& graph_path, const std::string& table_path,
                 const TrafficSpec& spec, double message_size,
                 const std::string& nodes_csv, const std::string& links_csv,
                 const RunContext& ctx) {
  const Graph g = load_graph_file(graph_path);
  const RoutingTable table = load_table_file(table_path, g);
  const SimReport report = simulate(table, g, spec, message_size);
  emit("command", "simulate");
  emit("graph", graph_path);
  emit("table", table_path);
  std::cout << render_kv(report, "");
  if (!nodes_csv.empty())
    write_artifact(nodes_csv, loads_csv(report.node_load), ctx);
  if (!links_csv.empty())
    write_artifact(links_csv, loads_csv(report.link_load), ctx);
  return 0;
}

int run_compare(const std::string& graph_path, const std::string& a_path,
                const std::string& b_path, const TrafficSpec& spec,
                double message_size, const std::string& label_a,
                const std::string& label_b) {
  const Graph g = load_graph_file(graph_path);
  const RoutingTable a = load_table_file(a_path, g);
  const RoutingTable b = load_table_file(b_path, g);
  const Comparison c =
      compare_report(a, b, g, spec, message_size, label_a, label_b);
  emit("command", "compare");
  std::cout << render_comparison(c);
  std::cout << render_kv(c.a, label_a + ".");
  std::cout << render_kv(c.b, label_b + ".");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nestnet: nested interconnection networks, load-balanced "
               "shortest-path routing, and flow-level evaluation"};
  app.require_subcommand(1);

  RunContext ctx;
  {
    std::ostringstream os;
    for (int i = 0; i < argc; ++i) os << (i ? " " : "") << argv[i];
    ctx.command_line = os.str();
  }
  app.add_option("--threads", ctx.threads,
                 "worker threads (never changes results)")
      ->capture_default_str();
  app.add_flag("--no-header", ctx.no_header,
               "omit the timestamp comment from artifacts");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a named graph");
  std::string gen_name, gen_out;
  int gen_m = -1;
  gen->add_option("--name", gen_name,
                  "petersen|heawood|levi|hypercube|complete|cycle")
      ->required();
  gen->add_option("--m", gen_m, "size parameter for parametric families");
  gen->add_option("--out", gen_out, "edge-list output path")->required();

  // search
  auto* search = app.add_subcommand(
      "search", "search for an (n,k)-regular graph of minimal mean path length");
  SearchConfig scfg;
  std::string search_out;
  search->add_option("--n", scfg.n, "vertex count")->required();
  search->add_option("--k", scfg.k, "degree")->required();
  search->add_option("--budget", scfg.budget, "objective evaluations")
      ->capture_default_str();
  search->add_option("--restarts", scfg.restarts)->capture_default_str();
  search->add_option("--seed", scfg.seed)->capture_default_str();
  search->add_option("--t0", scfg.schedule.initial_temp, "initial temperature")
      ->capture_default_str();
  search->add_option("--decay", scfg.schedule.decay, "geometric decay")
      ->capture_default_str();
  search->add_option("--steps-per-temp", scfg.schedule.steps_per_temp)
      ->capture_default_str();
  search->add_option("--out", search_out, "edge-list output path")->required();

  // metrics
  auto* metrics = app.add_subcommand("metrics",
                                     "diameter, mean path length, bisection");
  std::string metrics_in, metrics_bisection = "auto";
  std::uint64_t metrics_seed = 1;
  metrics->add_option("--in", metrics_in, "edge-list input")->required();
  metrics->add_option("--bisection", metrics_bisection, "auto|exact|heuristic")
      ->capture_default_str();
  metrics->add_option("--seed", metrics_seed, "heuristic bisection seed")
      ->capture_default_str();

  // product
  auto* product = app.add_subcommand("product", "Cartesian product of graphs");
  std::vector<std::string> product_ins;
  std::string product_out, product_labels;
  int product_alpha = 1;
  bool product_verify = false;
  product->add_option("--in", product_ins, "factor edge-list (repeatable)")
      ->required();
  product->add_option("--alpha", product_alpha, "folded power exponent")
      ->capture_default_str();
  product->add_option("--out", product_out, "edge-list output")->required();
  product->add_option("--labels", product_labels, "label-map sidecar output");
  product->add_flag("--verify", product_verify, "check the product laws");

  // route
  auto* route = app.add_subcommand("route", "build a routing table");
  std::string route_in, route_algo = "balanced", route_mode = "unordered";
  std::string route_solver = "auto", route_out, route_loads;
  std::uint64_t route_seed = 1;
  long long route_cap = 4096;
  std::int64_t route_moves = 400'000;
  int route_restarts = 4;
  route->add_option("--in", route_in, "graph edge-list input")->required();
  route->add_option("--algo", route_algo, "balanced|floyd")
      ->capture_default_str();
  route->add_option("--mode", route_mode, "unordered|ordered")
      ->capture_default_str();
  route->add_option("--solver", route_solver, "auto|exact|local")
      ->capture_default_str();
  route->add_option("--seed", route_seed)->capture_default_str();
  route->add_option("--cap", route_cap, "per-pair shortest path cap")
      ->capture_default_str();
  route->add_option("--moves", route_moves, "local-search move budget")
      ->capture_default_str();
  route->add_option("--solver-restarts", route_restarts)->capture_default_str();
  route->add_option("--out", route_out, "routing table output")->required();
  route->add_option("--loads", route_loads, "per-node load report output");

  // compose
  auto* compose = app.add_subcommand(
      "compose", "scale two factor routings to their Cartesian product");
  std::string c_f1, c_f2, c_t1, c_t2, c_order = "g1_first", c_out;
  std::string c_product_out, c_labels_out;
  compose->add_option("--factor1", c_f1, "first factor edge-list")->required();
  compose->add_option("--factor2", c_f2, "second factor edge-list")->required();
  compose->add_option("--table1", c_t1, "ordered routing table over factor1")
      ->required();
  compose->add_option("--table2", c_t2, "ordered routing table over factor2")
      ->required();
  compose->add_option("--order", c_order, "g1_first|g2_first")
      ->capture_default_str();
  compose->add_option("--out", c_out, "composed table output")->required();
  compose->add_option("--product-out", c_product_out,
                      "also write the product edge-list");
  compose->add_option("--labels", c_labels_out, "label-map sidecar output");

  // simulate / compare share traffic flags
  TrafficSpec spec;
  double message_size = 512.0 * 1024;
  auto add_traffic_flags = [&](CLI::App* cmd) {
    cmd->add_option("--flow", spec.flow, "flow units per demand")
        ->capture_default_str();
    cmd->add_option("--capacity", spec.link_capacity, "link units/second")
        ->capture_default_str();
    cmd->add_option("--latency", spec.per_hop_latency, "seconds per hop")
        ->capture_default_str();
    cmd->add_option("--message-size", message_size,
                    "units per node pair for the all-to-all estimate")
        ->capture_default_str();
  };

  auto* simulate_cmd =
      app.add_subcommand("simulate", "evaluate a routing table under "
                                     "uniform all-to-all traffic");
  std::string sim_graph, sim_table, sim_nodes_csv, sim_links_csv;
  simulate_cmd->add_option("--graph", sim_graph)->required();
  simulate_cmd->add_option("--table", sim_table)->required();
  add_traffic_flags(simulate_cmd);
  simulate_cmd->add_option("--nodes-csv", sim_nodes_csv,
                           "per-node load CSV output");
  simulate_cmd->add_option("--links-csv", sim_links_csv,
                           "per-link load CSV output");

  auto* compare_cmd =
      app.add_subcommand("compare", "run two tables side by side");
  std::string cmp_graph, cmp_a, cmp_b, cmp_label_a = "a", cmp_label_b = "b";
  compare_cmd->add_option("--graph", cmp_graph)->required();
  compare_cmd->add_option("--table-a", cmp_a)->required();
  compare_cmd->add_option("--table-b", cmp_b)->required();
  compare_cmd->add_option("--label-a", cmp_label_a)->capture_default_str();
  compare_cmd->add_option("--label-b", cmp_label_b)->capture_default_str();
  add_traffic_flags(compare_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed())
      return run_gen(gen_name,
                     gen->count("--m") ? std::optional<int>(gen_m)
                                       : std::nullopt,
                     gen_out, ctx);
    if (search->parsed()) return run_search(scfg, search_out, ctx);
    if (metrics->parsed())
      return run_metrics(metrics_in, metrics_bisection, metrics_seed, ctx);
    if (product->parsed())
      return run_product(product_ins, product_alpha, product_out,
                         product_labels, product_verify, ctx);
    if (route->parsed())
      return run_route(route_in, route_algo, route_mode, route_solver,
                       route_seed, route_cap, route_moves, route_restarts,
                       route_out, route_loads, ctx);
    if (compose->parsed())
      return run_compose(c_f1, c_f2, c_t1, c_t2, c_order, c_out, c_product_out,
                         c_labels_out, ctx);
    if (simulate_cmd->parsed())
      return run_simulate(sim_graph, sim_table, spec, message_size,
                          sim_nodes_csv, sim_links_csv, ctx);
    if (compare_cmd->parsed())
      return run_compare(cmp_graph, cmp_a, cmp_b, spec, message_size,
                         cmp_label_a, cmp_label_b);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
