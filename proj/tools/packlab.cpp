#include "packlab/harness.hpp"
#include "packlab/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace packlab;

nlohmann::json rational_json(const Rational& r) {
  return {{"fraction", r.fraction_str()}, {"decimal", r.decimal_str(9)}};
}

nlohmann::json game_json(const GameResult& g, const PolicySpec& ps, long long S,
                         long long s, long long l) {
  nlohmann::json j{{"S", S},
                   {"s", s},
                   {"l", l},
                   {"policy", ps.id()},
                   {"alg_cost", g.alg_cost},
                   {"opt_cost", g.opt_cost},
                   {"ratio", rational_json(g.ratio)},
                   {"adjusted_ratio", rational_json(g.adjusted_ratio)},
                   {"range", std::string(to_string(classify_range(s, l)))},
                   {"sigma", g.sigma},
                   {"trace", trace_to_json(g.alg_trace)}};
  if (s + l >= 1) j["lower_bound"] = rational_json(lower_bound_ratio(s, l));
  return j;
}

int cmd_opt(const std::string& in_path) {
  nlohmann::json j;
  if (in_path == "-") {
    std::cin >> j;
  } else {
    std::ifstream in(in_path);
    if (!in) throw std::invalid_argument("cannot open " + in_path);
    in >> j;
  }
  Trace instance = trace_from_json(j);
  std::vector<long long> sigma;
  for (const TraceEntry& e : instance.entries) sigma.push_back(e.bin_size);
  auto witness = opt_trace(sigma, instance.initial_s, instance.initial_l, instance.params);
  nlohmann::json out;
  if (!witness) {
    out = {{"feasible", false}};
  } else {
    out = {{"feasible", true},
           {"cost", trace_cost(*witness)},
           {"trace", trace_to_json(*witness)}};
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_game(const std::string& policy_id, const std::string& adversary, long long S,
             long long s, long long l, bool best_response) {
  const Params p(S);
  const PolicySpec ps = PolicySpec::parse(policy_id);
  OnlinePolicy policy(ps, p, s, l);
  nlohmann::json out;
  if (adversary == "theorem2") {
    AdaptiveGameResult res = run_game_adaptive(policy, best_response);
    out = game_json(res.game, ps, S, s, l);
    out["adversary"] = adversary;
    out["k"] = res.k;
    out["regime"] = std::string(to_string(res.regime));
    out["branch"] = std::string(to_string(res.branch));
    out["best_response"] = res.best_response;
  } else if (adversary.starts_with("example") && adversary.size() == 8) {
    const int id = adversary[7] - '0';
    GameResult res = run_game(policy, example_sequence(id, s, l, p));
    out = game_json(res, ps, S, s, l);
    out["adversary"] = adversary;
  } else {
    throw CLI::ValidationError("adversary must be theorem2 or example1..example4");
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_sweep(const std::string& config_path) {
  SweepConfig cfg = SweepConfig::from_file(config_path);
  auto rows = sweep(cfg);
  if (cfg.out_path.empty()) {
    write_csv(rows, std::cout);
  } else {
    std::ofstream out(cfg.out_path);
    if (!out) throw std::invalid_argument("cannot open " + cfg.out_path + " for writing");
    write_csv(rows, out);
  }
  return 0;
}

int cmd_verify(unsigned long long seed, long long trials) {
  auto report = run_verification(seed, trials);
  write_report(report, std::cout);
  return all_pass(report) ? 0 : 1;
}

int cmd_curve(long long S, const std::string& step, const std::string& max_x,
              long long scale, const std::string& out_path) {
  size_t slash = step.find('/');
  Rational step_r = slash == std::string::npos
                        ? Rational(std::stoll(step))
                        : Rational(std::stoll(step.substr(0, slash)),
                                   std::stoll(step.substr(slash + 1)));
  slash = max_x.find('/');
  Rational max_r = slash == std::string::npos
                       ? Rational(std::stoll(max_x))
                       : Rational(std::stoll(max_x.substr(0, slash)),
                                  std::stoll(max_x.substr(slash + 1)));
  auto rows = ratio_curve(S, step_r, max_r, scale);
  if (out_path.empty()) {
    write_curve(rows, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open " + out_path + " for writing");
    write_curve(rows, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"packlab: online two-size bin packing lab"};
  app.require_subcommand(1);

  auto* opt_cmd = app.add_subcommand("opt", "exact offline optimum for an instance");
  std::string opt_in = "-";
  opt_cmd->add_option("--in", opt_in, "instance JSON file, - for stdin");

  auto* game_cmd = app.add_subcommand("game", "play one policy against a bin source");
  std::string policy_id = "two-phase", adversary = "theorem2";
  long long S = 10, s = 4, l = 2;
  bool best_response = false;
  game_cmd->add_option("--policy", policy_id, "two-phase|always-s|always-l|ratio:<p>/<q>");
  game_cmd->add_option("--adversary", adversary, "theorem2|example1..example4");
  game_cmd->add_option("--S", S, "item size S (>= 2)")->required();
  game_cmd->add_option("--s", s, "number of small items")->required();
  game_cmd->add_option("--l", l, "number of large items")->required();
  game_cmd->add_flag("--best-response", best_response,
                     "let the adaptive adversary pick the worse continuation");

  auto* sweep_cmd = app.add_subcommand("sweep", "run a configured sweep, emit CSV");
  std::string config_path;
  sweep_cmd->add_option("--config", config_path, "key = value config file")->required();

  auto* verify_cmd = app.add_subcommand("verify", "run the property suites");
  unsigned long long seed = 1;
  long long trials = 1000;
  verify_cmd->add_option("--seed", seed, "random seed");
  verify_cmd->add_option("--trials", trials, "cases per property");

  auto* curve_cmd = app.add_subcommand("curve", "ratio curve data over l/s");
  long long curve_S = 1000, scale = 600;
  std::string step = "1/10", max_x = "2";
  curve_cmd->add_option("--S", curve_S, "item size S")->required();
  curve_cmd->add_option("--step", step, "grid step for l/s, p/q or integer");
  curve_cmd->add_option("--max", max_x, "largest l/s value");
  curve_cmd->add_option("--scale", scale, "s per grid point; l = round(x*scale)");
  std::string curve_out;
  curve_cmd->add_option("--out", curve_out, "output file, stdout when absent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(opt_cmd)) return cmd_opt(opt_in);
    if (app.got_subcommand(game_cmd))
      return cmd_game(policy_id, adversary, S, s, l, best_response);
    if (app.got_subcommand(sweep_cmd)) return cmd_sweep(config_path);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(seed, trials);
    if (app.got_subcommand(curve_cmd))
      return cmd_curve(curve_S, step, max_x, scale, curve_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const packlab::GameError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
