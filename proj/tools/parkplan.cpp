// parkplan: command-line frontend for the batch parking planner.
//
//   parkplan solve <matrix-file>
//   parkplan gen   --kind clustered --n-vehicles 100 --n-spaces 10000 --seed 7 [--out file]
//   parkplan plan  (--scenario file | generator flags) --m 20 [--exact] [--greedy] [--out file]
//   parkplan bench {waste|runtime|subset} [generator flags] [--m 1,2,5] [--seeds 30] [--out file]

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "parkplan/parkplan.hpp"

namespace {

using namespace parkplan;

struct GenFlags {
  std::string kind = "clustered";
  std::size_t n_vehicles = 100;
  std::size_t n_spaces = 10000;
  std::size_t lot_size = kDefaultLotSize;
  double world_extent = kDefaultWorldExtent;
  std::uint64_t seed = 1;

  void attach(CLI::App& app) {
    app.add_option("--kind", kind, "scenario family")
        ->check(CLI::IsMember({"uniform", "clustered", "adversarial"}))
        ->capture_default_str();
    app.add_option("--n-vehicles", n_vehicles, "vehicles in the arrival stream")->capture_default_str();
    app.add_option("--n-spaces", n_spaces, "parking spaces")->capture_default_str();
    app.add_option("--lot-size", lot_size, "spaces per lot (clustered)")->capture_default_str();
    app.add_option("--world-extent", world_extent, "side of the square world")->capture_default_str();
    app.add_option("--seed", seed, "generator seed (first seed for bench)")->capture_default_str();
  }

  ScenarioConfig config() const {
    ScenarioConfig c;
    c.kind = parse_kind(kind);
    c.n_vehicles = n_vehicles;
    c.n_spaces = n_spaces;
    c.lot_size = lot_size;
    c.world_extent = world_extent;
    c.seed = seed;
    return c;
  }
};

// Writes to --out when given, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw Error("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

CostMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_matrix(in, path);
}

Scenario read_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_scenario(in, path);
}

// Padding to cols x cols is only worth it while the square matrix is small.
constexpr std::size_t kPaddedSolveMaxCols = 2048;

int cmd_solve(const std::string& path) {
  const CostMatrix m = read_matrix_file(path);
  std::ostream& out = std::cout;

  if (m.rows() <= m.cols()) {
    const Assignment a = m.cols() <= kPaddedSolveMaxCols ? solve_rectangular(m) : exact_rectangular(m);
    for (const Placement& p : a.pairs) {
      out << "assign " << index(p.vehicle) << ' ' << index(p.space) << ' ' << format_number(p.distance) << '\n';
    }
    out << "cost " << format_number(a.total_cost) << '\n';
    return 0;
  }

  // More vehicles than spaces: the earliest rows are served, the rest turned away.
  std::vector<double> head(m.data().begin(), m.data().begin() + static_cast<std::ptrdiff_t>(m.cols() * m.cols()));
  const CostMatrix served(m.cols(), m.cols(), std::move(head));
  const SquareSolution sol = solve_square(served);
  for (std::size_t r = 0; r < served.rows(); ++r) {
    out << "assign " << r << ' ' << sol.perm[r] << ' ' << format_number(served(r, sol.perm[r])) << '\n';
  }
  for (std::size_t r = served.rows(); r < m.rows(); ++r) {
    out << "reject " << r << " no more available parking spaces\n";
  }
  out << "cost " << format_number(sol.total_cost) << '\n';
  return 0;
}

int cmd_plan(const std::optional<std::string>& scenario_path, const GenFlags& gen, std::optional<std::size_t> m,
             bool exact, bool greedy, const std::string& out_path) {
  if (!greedy && !m) throw ConfigError("plan needs --m (or --greedy)");
  if (greedy && m && *m != 1) throw ConfigError("--greedy plans one query at a time; drop --m or use --m 1");
  const Scenario s = scenario_path ? read_scenario_file(*scenario_path) : generate(gen.config());
  if (exact && !exact_feasible(s.vehicle_count(), s.space_count())) {
    throw CapacityError("--exact refused: " + std::to_string(s.vehicle_count()) + " vehicles x " +
                        std::to_string(s.space_count()) + " spaces is outside the exact-solve size guard");
  }

  const PlanRun run = run_plan(s, m.value_or(1), exact, greedy);
  write_guidance(std::cout, run.outcome);

  Output out(out_path);
  out.stream() << kRunRecordHeader << '\n';
  write_run_record(out.stream(), run.record);
  return 0;
}

int cmd_gen(const GenFlags& gen, const std::string& out_path) {
  const Scenario s = generate(gen.config());
  Output out(out_path);
  write_scenario(out.stream(), s);
  return 0;
}

int cmd_bench(const std::string& suite, const GenFlags& gen, std::vector<std::size_t> m_values, std::size_t seeds,
              const std::string& out_path) {
  BenchConfig cfg;
  cfg.suite = parse_suite(suite);
  cfg.base = gen.config();
  if (m_values.empty()) {
    m_values = cfg.suite == BenchSuite::runtime ? std::vector<std::size_t>{25, 50, 100, 200}
                                                : std::vector<std::size_t>{1, 2, 5, 10, 20};
  }
  cfg.m_values = std::move(m_values);
  cfg.seeds = seeds;
  cfg.threads = bench_threads_from_env();

  const std::vector<BenchRow> rows = run_bench(cfg);
  Output out(out_path);
  out.stream() << kBenchHeader << '\n';
  for (const BenchRow& r : rows) write_bench_row(out.stream(), r);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch parking planner: minimum-total-distance vehicle to space assignment"};
  app.require_subcommand(1);

  std::string matrix_path;
  auto* solve = app.add_subcommand("solve", "exact assignment for an explicit distance matrix");
  solve->add_option("matrix", matrix_path, "matrix file: 'rows cols' then one line per row")->required();

  GenFlags plan_gen;
  std::optional<std::string> scenario_path;
  std::optional<std::size_t> plan_m;
  bool exact = false;
  bool greedy = false;
  std::string plan_out;
  auto* plan = app.add_subcommand("plan", "plan a scenario stream in batches of --m");
  plan_gen.attach(*plan);
  plan->add_option("--scenario", scenario_path, "scenario file (overrides generator flags)");
  plan->add_option("--m", plan_m, "queries held per batch")->check(CLI::PositiveNumber);
  plan->add_flag("--exact", exact, "also solve the whole stream exactly and report waste");
  plan->add_flag("--greedy", greedy, "nearest-available-space baseline");
  plan->add_option("--out", plan_out, "write the run record CSV here instead of stdout");

  GenFlags gen_flags;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a scenario file");
  gen_flags.attach(*gen);
  gen->add_option("--out", gen_out, "output file (default stdout)");

  GenFlags bench_gen;
  std::string suite;
  std::vector<std::size_t> bench_m;
  std::size_t seeds = 30;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "sweep m over seeded scenarios and emit a CSV table");
  bench->add_option("suite", suite, "waste | runtime | subset")
      ->required()
      ->check(CLI::IsMember({"waste", "runtime", "subset"}));
  bench_gen.attach(*bench);
  bench->add_option("--m", bench_m, "m values to sweep (repeat or comma-separate)")->delimiter(',');
  bench->add_option("--seeds", seeds, "seeds per aggregate row")->capture_default_str();
  bench->add_option("--out", bench_out, "CSV output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "parkplan: error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*solve) return cmd_solve(matrix_path);
    if (*plan) return cmd_plan(scenario_path, plan_gen, plan_m, exact, greedy, plan_out);
    if (*gen) return cmd_gen(gen_flags, gen_out);
    if (*bench) return cmd_bench(suite, bench_gen, bench_m, seeds, bench_out);
  } catch (const std::exception& e) {
    std::cerr << "parkplan: error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
