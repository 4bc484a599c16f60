// Batch front-end: solve / evaluate / bounds / convergence over JSON
// problem configs.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcone/commands.hpp"
#include "pcone/errors.hpp"

namespace {

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

std::vector<std::vector<int>> parse_nest(const std::string& text) {
  std::vector<std::vector<int>> out;
  std::stringstream ss(text);
  std::string level;
  while (std::getline(ss, level, '|'))
    if (!level.empty()) out.push_back(parse_index_list(level));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted cone-volume measures of C-pseudo-cones"};
  app.require_subcommand(1);

  std::string config_path;
  pcone::CommandOptions opts;
  std::string routes = "facet";
  std::string omega_text;
  std::string nest_text;
  std::uint64_t seed = 0;
  int threads = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "problem config (JSON)")->required();
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", seed, "override the config seed");
    cmd->add_option("--threads", threads, "worker threads for per-facet work");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve the Minkowski problem");
  add_common(solve);

  CLI::App* evaluate = app.add_subcommand("evaluate", "measures of a given K");
  add_common(evaluate);
  evaluate->add_option("--routes", routes,
                       "comma list of facet,radial,mc routes to compute");

  CLI::App* bounds = app.add_subcommand("bounds", "growth-bound audit");
  add_common(bounds);
  CLI::Option* omega_opt =
      bounds->add_option("--omega", omega_text, "comma list of atom indices");
  bounds->add_flag("--sweep", opts.sweep, "per-atom (delta, V, bound) CSV");

  CLI::App* convergence =
      app.add_subcommand("convergence", "nested-target stabilization sweep");
  add_common(convergence);
  convergence->add_option("--nest", nest_text,
                          "levels as '0,1|0,1,2|...' (overrides config)");

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* active = app.get_subcommands().front();
    if (active->count("--seed")) opts.seed = seed;
    if (active->count("--threads")) opts.threads = threads;
    opts.route_radial = routes.find("radial") != std::string::npos ||
                        routes.find("all") != std::string::npos;
    opts.route_mc = routes.find("mc") != std::string::npos ||
                    routes.find("all") != std::string::npos;
    opts.omega_given = omega_opt->count() > 0;
    if (!omega_text.empty()) opts.omega = parse_index_list(omega_text);
    if (!nest_text.empty()) opts.nest = parse_nest(nest_text);
  } catch (const std::exception& e) {
    std::cerr << "bad option: " << e.what() << '\n';
    return 1;
  }

  if (solve->parsed()) return pcone::cmd_solve(config_path, opts);
  if (evaluate->parsed()) return pcone::cmd_evaluate(config_path, opts);
  if (bounds->parsed()) return pcone::cmd_bounds(config_path, opts);
  if (convergence->parsed()) return pcone::cmd_convergence(config_path, opts);
  return 1;
}
