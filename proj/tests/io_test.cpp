#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "parkplan/io.hpp"
#include "parkplan/scenarios.hpp"

namespace parkplan {
namespace {

CostMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix(in, "m.txt");
}

std::string parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

TEST(ParseMatrix, HeaderThenRows) {
  std::ostringstream text;
  text << "6 6\n";
  for (int i = 0; i < 6; ++i) text << "1 2 3 4 5 6\n";
  const CostMatrix m = parse(text.str());
  EXPECT_EQ(m.rows(), 6u);
  EXPECT_EQ(m.cols(), 6u);
  EXPECT_EQ(m(5, 5), 6.0);
  EXPECT_EQ(parse("1 1\n7\n"), (CostMatrix{{7}}));
  EXPECT_EQ(parse("\n2 2\n 0.5\t1e3 \n\n3 4\n\n"), (CostMatrix{{0.5, 1000}, {3, 4}}));
}

TEST(ParseMatrix, ErrorsNameLineAndColumn) {
  EXPECT_EQ(parse_error(""), "m.txt:1:1: empty matrix file");
  EXPECT_EQ(parse_error("2 3\n1 2 3\n4 5\n"), "m.txt:3:3: row has 2 entries, expected 3");
  EXPECT_EQ(parse_error("1 2\n1 2 3\n"), "m.txt:2:5: row has 3 entries, expected 2");
  EXPECT_EQ(parse_error("1 2\n1 x\n"), "m.txt:2:3: expected a number, got 'x'");
  EXPECT_EQ(parse_error("1 2\n1 -4\n"), "m.txt:2:3: distance must be finite and non-negative");
  EXPECT_EQ(parse_error("2 1\n1\n"), "m.txt:3:1: expected 2 rows, found 1");
  EXPECT_EQ(parse_error("2\n1\n"), "m.txt:1:1: header must be 'rows cols'");
  EXPECT_EQ(parse_error("0 2\n"), "m.txt:1:1: matrix dimensions must be positive");
  EXPECT_EQ(parse_error("1 1\n1\n2\n"), "m.txt:3:1: unexpected data after the last row");
}

TEST(WriteMatrix, RoundTrip) {
  const CostMatrix eq6 = adversarial_matrix(6);
  std::ostringstream out;
  write_matrix(out, eq6);
  EXPECT_EQ(out.str().substr(0, 16), "6 6\n1 2 3 4 5 6\n");
  EXPECT_EQ(parse(out.str()), eq6);

  // Real values survive exactly.
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> entry(0.0, 1e6);
  std::vector<double> data(5 * 7);
  for (auto& x : data) x = entry(gen);
  const CostMatrix real(5, 7, data);
  std::ostringstream out2;
  write_matrix(out2, real);
  EXPECT_EQ(parse(out2.str()), real);
}

TEST(FormatNumber, Shortest) {
  EXPECT_EQ(format_number(209), "209");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(46656), "46656");
}

TEST(Scenario, RoundTrip) {
  for (const auto kind : {ScenarioKind::uniform, ScenarioKind::clustered, ScenarioKind::adversarial}) {
    ScenarioConfig c;
    c.kind = kind;
    c.n_vehicles = 6;
    c.n_spaces = 6;
    c.lot_size = 4;
    c.seed = 99;
    if (kind != ScenarioKind::adversarial) c.n_spaces = 40;
    const Scenario s = generate(c);
    std::stringstream buf;
    write_scenario(buf, s);
    EXPECT_EQ(parse_scenario(buf, "s.txt"), s) << to_string(kind);
  }
}

TEST(Scenario, ParseErrors) {
  auto error_of = [](const std::string& text) -> std::string {
    std::istringstream in(text);
    try {
      parse_scenario(in, "s.txt");
    } catch (const ParseError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_EQ(error_of(""), "s.txt:1:1: empty scenario file");
  EXPECT_EQ(error_of("kind uniform\n"), "s.txt:1:1: scenario must start with [config]");
  EXPECT_EQ(error_of("[config]\nkind grid\n"), "s.txt:2:6: unknown scenario kind 'grid'");
  EXPECT_EQ(error_of("[config]\ncolour red\n"), "s.txt:2:1: unknown key 'colour'");
  EXPECT_EQ(error_of("[config]\nkind uniform\nn_vehicles 1\nn_spaces 1\n[vehicles]\n0 0\n[spaces]\n"),
            "s.txt:7:1: scenario holds 1 vehicles and 0 spaces, config declares 1 and 1");
  EXPECT_EQ(error_of("[config]\nkind uniform\n[spaces]\n1 2 3\n"), "s.txt:4:1: expected 'x y'");
}

TEST(RunRecordCsv, FixedColumns) {
  RunRecord r;
  r.config.kind = ScenarioKind::adversarial;
  r.config.n_vehicles = 6;
  r.config.n_spaces = 6;
  r.config.seed = 0;
  r.m = 6;
  r.batches = 1;
  r.assigned = 6;
  r.cumulative_cost = 209;
  r.exact_cost = 209;
  r.waste = 0;
  r.mean_subset_size = 6;
  r.subset_ratio = 1;
  r.wall_time = 0.5;
  std::ostringstream out;
  write_results(out, {r});
  EXPECT_EQ(out.str(), std::string(kRunRecordHeader) + "\nadversarial,0,6,6,300,10000,6,1,6,0,209,209,0,6,1,0.5\n");

  r.exact_cost.reset();
  r.waste.reset();
  std::ostringstream out2;
  write_run_record(out2, r);
  EXPECT_EQ(out2.str(), "adversarial,0,6,6,300,10000,6,1,6,0,209,,,6,1,0.5\n");
}

}  // namespace
}  // namespace parkplan
