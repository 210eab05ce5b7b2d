#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "stateq/engine.hpp"
#include "stateq/oracle.hpp"
#include "stateq/output.hpp"
#include "stateq/parse.hpp"

namespace {

using namespace stateq;

constexpr int kExitReachable = 0;
constexpr int kExitUnreachable = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct ProblemFlags {
  std::string problem_path;
  std::vector<std::string> final_items;
  std::vector<std::string> require_items;
  bool cover = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--problem", problem_path, "problem file");
    cmd->add_option("--final", final_items,
                    "final marking entry place[:count] (repeatable)");
    cmd->add_option("--require", require_items,
                    "side constraint transition[:count] (repeatable)");
    cmd->add_flag("--cover", cover, "coverability mode (final counts are lower bounds)");
  }

  bool has_flag_source() const {
    return !final_items.empty() || !require_items.empty() || cover;
  }
};

std::pair<std::string, Int> split_item(const std::string& item) {
  auto pos = item.find(':');
  if (pos == std::string::npos) return {item, Int(1)};
  std::string name = item.substr(0, pos);
  std::string count = item.substr(pos + 1);
  if (name.empty() || count.empty() ||
      count.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError("malformed item (want name[:count]): " + item);
  return {name, Int(count)};
}

ReachabilityProblem resolve_problem(const ProblemFlags& flags,
                                    const NetFile& netfile) {
  if (!flags.problem_path.empty() && flags.has_flag_source())
    throw UsageError("give either --problem or --final/--require/--cover, not both");
  if (flags.problem_path.empty() && !flags.has_flag_source())
    throw UsageError("no problem source: use --problem or --final/--require/--cover");
  if (!flags.problem_path.empty())
    return parse_problem(read_file(flags.problem_path), netfile);

  ReachabilityProblem problem;
  problem.net = netfile.net;
  problem.initial = netfile.initial;
  problem.mode = flags.cover ? Mode::cover : Mode::reach;
  const PetriNet& net = *netfile.net;
  for (const std::string& item : flags.final_items) {
    auto [name, count] = split_item(item);
    auto s = net.find_place(name);
    if (!s) throw UsageError("unknown place: " + name);
    problem.final_counts.add(*s, count);
  }
  for (const std::string& item : flags.require_items) {
    auto [name, count] = split_item(item);
    auto t = net.find_transition(name);
    if (!t) throw UsageError("unknown transition: " + name);
    if (count < 1) throw UsageError("required count must be at least 1: " + item);
    problem.required.emplace_back(*t, count);
  }
  return problem;
}

std::vector<NodeIndex> read_witness(const std::string& path, const PetriNet& net) {
  std::istringstream in(read_file(path));
  std::vector<NodeIndex> sigma;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    std::string name = line.substr(a, b - a + 1);
    auto t = net.find_transition(name);
    if (!t) throw UsageError("unknown transition in witness: " + name);
    sigma.push_back(*t);
  }
  return sigma;
}

void print_witness(const std::vector<NodeIndex>& witness, const PetriNet& net) {
  for (NodeIndex t : witness) std::cout << net.transition_name(t) << "\n";
}

int run_solve(const ProblemFlags& flags, const std::string& net_path,
              const EngineConfig& config, bool stats, bool structured,
              const std::string& graph_path) {
  NetFile netfile = parse_net(read_file(net_path));
  ReachabilityProblem problem = resolve_problem(flags, netfile);
  Outcome outcome = cegar_solve(problem, config);

  if (structured) {
    std::cout << structured_output(outcome, *problem.net, config.seed);
  } else {
    switch (outcome.verdict) {
      case Outcome::Verdict::reachable:
        print_witness(outcome.witness, *problem.net);
        if (stats) std::cerr << stats_text(outcome.stats);
        break;
      case Outcome::Verdict::unreachable:
        std::cout << render_text(outcome.diagnostics, *problem.net);
        if (stats) std::cerr << stats_text(outcome.stats);
        break;
      case Outcome::Verdict::inconclusive:
        std::cout << "inconclusive: " << outcome.reason << "\n"
                  << stats_text(outcome.stats);
        break;
    }
  }
  if (!graph_path.empty() && outcome.verdict != Outcome::Verdict::reachable) {
    std::ofstream out(graph_path, std::ios::binary);
    if (!out) throw UsageError("cannot write file: " + graph_path);
    out << render_graph(outcome.diagnostics, *problem.net);
  }
  switch (outcome.verdict) {
    case Outcome::Verdict::reachable: return kExitReachable;
    case Outcome::Verdict::unreachable: return kExitUnreachable;
    case Outcome::Verdict::inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

int run_oracle(const ProblemFlags& flags, const std::string& net_path,
               const OracleBudget& budget, bool structured) {
  NetFile netfile = parse_net(read_file(net_path));
  ReachabilityProblem problem = resolve_problem(flags, netfile);
  OracleOutcome outcome = bfs_reach(problem, budget);
  if (structured) {
    std::cout << structured_output(outcome, *problem.net);
  } else {
    switch (outcome.verdict) {
      case OracleOutcome::Verdict::reachable:
        print_witness(outcome.witness, *problem.net);
        break;
      case OracleOutcome::Verdict::unreachable:
        std::cout << "unreachable\n";
        break;
      case OracleOutcome::Verdict::inconclusive:
        std::cout << "inconclusive\n";
        break;
    }
  }
  switch (outcome.verdict) {
    case OracleOutcome::Verdict::reachable: return kExitReachable;
    case OracleOutcome::Verdict::unreachable: return kExitUnreachable;
    case OracleOutcome::Verdict::inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

int run_check_witness(const ProblemFlags& flags, const std::string& net_path,
                      const std::string& witness_path) {
  NetFile netfile = parse_net(read_file(net_path));
  ReachabilityProblem problem = resolve_problem(flags, netfile);
  std::vector<NodeIndex> sigma = read_witness(witness_path, *problem.net);
  WitnessCheck check = validate_witness(problem, sigma);
  std::cout << check.describe(*problem.net) << "\n";
  return check.ok() ? kExitReachable : kExitUnreachable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Petri net reachability via the state equation and "
               "constraint refinement"};
  app.require_subcommand(1);

  std::string net_path, witness_path, format = "text", graph_path;
  bool stats = false;
  EngineConfig config;
  OracleBudget oracle_budget;
  ProblemFlags solve_flags, oracle_flags, check_flags;

  CLI::App* solve = app.add_subcommand("solve", "decide reachability");
  solve->add_option("net", net_path, "net file")->required();
  solve_flags.attach(solve);
  solve->add_option("--ilp-nodes", config.ilp_budget.max_nodes,
                    "branch-and-bound node budget per solve");
  solve->add_option("--ilp-pivots", config.ilp_budget.max_pivots,
                    "simplex pivot budget per relaxation");
  solve->add_option("--search-nodes", config.realize_node_budget,
                    "realization search node budget per call");
  solve->add_option("--max-steps", config.max_steps,
                    "maximum partial solutions to process");
  solve->add_option("--max-queue", config.max_queue, "job queue size limit");
  solve->add_option("--workers", config.workers, "worker thread count");
  solve->add_option("--seed", config.seed, "seed echoed in structured output");
  bool no_stubborn = false, no_subtree = false, no_prune = false, no_memo = false;
  solve->add_flag("--no-stubborn", no_stubborn, "disable stubborn-set reduction");
  solve->add_flag("--no-subtree-cut", no_subtree,
                  "disable visited-subtree cutting");
  solve->add_flag("--no-prune", no_prune, "disable no-progress leaf pruning");
  solve->add_flag("--no-memo", no_memo, "disable partial-solution memoization");
  solve->add_flag("--stats", stats, "print engine statistics");
  solve->add_option("--format", format, "output format: text|structured")
      ->check(CLI::IsMember({"text", "structured"}));
  solve->add_option("--graph", graph_path,
                    "write a region-tagged node/edge list on non-reachable verdicts");

  CLI::App* oracle = app.add_subcommand("oracle", "breadth-first ground truth");
  oracle->add_option("net", net_path, "net file")->required();
  oracle_flags.attach(oracle);
  oracle->add_option("--markings", oracle_budget.max_markings,
                     "explored state budget");
  oracle->add_option("--format", format, "output format: text|structured")
      ->check(CLI::IsMember({"text", "structured"}));

  CLI::App* check = app.add_subcommand("check-witness", "replay a witness file");
  check->add_option("net", net_path, "net file")->required();
  check->add_option("witness", witness_path, "witness file, one transition per line")
      ->required();
  check_flags.attach(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    config.use_stubborn = !no_stubborn;
    config.use_subtree_cut = !no_subtree;
    config.use_prune = !no_prune;
    config.use_memo = !no_memo;
    bool structured = format == "structured";
    if (solve->parsed())
      return run_solve(solve_flags, net_path, config, stats, structured,
                       graph_path);
    if (oracle->parsed())
      return run_oracle(oracle_flags, net_path, oracle_budget, structured);
    return run_check_witness(check_flags, net_path, witness_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
}
