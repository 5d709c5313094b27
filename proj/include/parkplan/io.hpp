#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "parkplan/cost_matrix.hpp"
#include "parkplan/errors.hpp"
#include "parkplan/scenarios.hpp"

namespace parkplan {

/// Shortest text that reads back to the same double (never more than 17
/// significant digits; integers print without a fraction).
inline std::string format_number(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline double parse_double(const Token& tok, const std::string& source, std::size_t line) {
  double value = 0.0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw ParseError(source, line, tok.column, "expected a number, got '" + std::string(tok.text) + "'");
  }
  return value;
}

inline std::uint64_t parse_count(const Token& tok, const std::string& source, std::size_t line) {
  std::uint64_t value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw ParseError(source, line, tok.column, "expected a non-negative integer, got '" + std::string(tok.text) + "'");
  }
  return value;
}

// Line reader that tracks 1-based line numbers and skips blank lines.
class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  bool next(std::vector<Token>& tokens) {
    while (std::getline(in_, current_)) {
      ++line_;
      tokens = tokenize(current_);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::size_t line() const noexcept { return line_; }
  const std::string& source() const noexcept { return source_; }

 private:
  std::istream& in_;
  std::string source_;
  std::string current_;
  std::size_t line_ = 0;
};

inline CostMatrix read_matrix_body(LineReader& reader, const std::vector<Token>& header) {
  const std::string& src = reader.source();
  if (header.size() != 2) {
    throw ParseError(src, reader.line(), header.empty() ? 1 : header.front().column,
                     "header must be 'rows cols'");
  }
  const auto rows = parse_count(header[0], src, reader.line());
  const auto cols = parse_count(header[1], src, reader.line());
  if (rows == 0 || cols == 0) throw ParseError(src, reader.line(), 1, "matrix dimensions must be positive");

  std::vector<double> data;
  data.reserve(rows * cols);
  std::vector<Token> tokens;
  for (std::uint64_t r = 0; r < rows; ++r) {
    if (!reader.next(tokens)) {
      throw ParseError(src, reader.line() + 1, 1,
                       "expected " + std::to_string(rows) + " rows, found " + std::to_string(r));
    }
    if (tokens.size() != cols) {
      const std::size_t col = tokens.size() > cols ? tokens[cols].column : tokens.back().column;
      throw ParseError(src, reader.line(), col,
                       "row has " + std::to_string(tokens.size()) + " entries, expected " + std::to_string(cols));
    }
    for (const Token& tok : tokens) {
      const double value = parse_double(tok, src, reader.line());
      if (!std::isfinite(value) || value < 0.0) {
        throw ParseError(src, reader.line(), tok.column, "distance must be finite and non-negative");
      }
      data.push_back(value);
    }
  }
  return CostMatrix(rows, cols, std::move(data));
}

}  // namespace detail

/// Reads "rows cols" followed by `rows` lines of `cols` numbers.
inline CostMatrix parse_matrix(std::istream& in, const std::string& source = "<matrix>") {
  detail::LineReader reader(in, source);
  std::vector<detail::Token> header;
  if (!reader.next(header)) throw ParseError(source, 1, 1, "empty matrix file");
  CostMatrix m = detail::read_matrix_body(reader, header);
  std::vector<detail::Token> extra;
  if (reader.next(extra)) throw ParseError(source, reader.line(), 1, "unexpected data after the last row");
  return m;
}

inline void write_matrix(std::ostream& out, const CostMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << format_number(m(r, c));
    }
    out << '\n';
  }
}

// Scenario files:
//
//   [config]
//   kind clustered
//   n_vehicles 20
//   ...
//   [vehicles]
//   x y            (one line per vehicle)
//   [spaces]
//   x y            (one line per space)
//
// Adversarial scenarios carry a [matrix] section in the matrix format instead
// of coordinates.

inline void write_scenario(std::ostream& out, const Scenario& s) {
  const ScenarioConfig& c = s.config;
  out << "[config]\n"
      << "kind " << to_string(c.kind) << '\n'
      << "n_vehicles " << c.n_vehicles << '\n'
      << "n_spaces " << c.n_spaces << '\n'
      << "lot_size " << c.lot_size << '\n'
      << "world_extent " << format_number(c.world_extent) << '\n'
      << "seed " << c.seed << '\n';
  if (s.matrix) {
    out << "[matrix]\n";
    write_matrix(out, *s.matrix);
    return;
  }
  out << "[vehicles]\n";
  for (const Point& p : s.vehicles) out << format_number(p.x) << ' ' << format_number(p.y) << '\n';
  out << "[spaces]\n";
  for (const Point& p : s.spaces) out << format_number(p.x) << ' ' << format_number(p.y) << '\n';
}

inline Scenario parse_scenario(std::istream& in, const std::string& source = "<scenario>") {
  detail::LineReader reader(in, source);
  std::vector<detail::Token> tokens;
  if (!reader.next(tokens)) throw ParseError(source, 1, 1, "empty scenario file");
  if (tokens.size() != 1 || tokens[0].text != "[config]") {
    throw ParseError(source, reader.line(), tokens[0].column, "scenario must start with [config]");
  }

  Scenario s;
  ScenarioConfig& c = s.config;
  std::vector<Point>* points = nullptr;
  bool have_kind = false;

  while (reader.next(tokens)) {
    const std::size_t line = reader.line();
    const std::string_view head = tokens[0].text;
    if (head == "[vehicles]") {
      points = &s.vehicles;
      continue;
    }
    if (head == "[spaces]") {
      points = &s.spaces;
      continue;
    }
    if (head == "[matrix]") {
      std::vector<detail::Token> header;
      if (!reader.next(header)) throw ParseError(source, reader.line() + 1, 1, "missing matrix header");
      s.matrix = detail::read_matrix_body(reader, header);
      points = nullptr;
      continue;
    }
    if (points) {
      if (tokens.size() != 2) throw ParseError(source, line, tokens[0].column, "expected 'x y'");
      points->push_back({detail::parse_double(tokens[0], source, line), detail::parse_double(tokens[1], source, line)});
      continue;
    }
    if (tokens.size() != 2) throw ParseError(source, line, tokens[0].column, "expected 'key value'");
    const detail::Token& value = tokens[1];
    if (head == "kind") {
      try {
        c.kind = parse_kind(value.text);
      } catch (const ConfigError& e) {
        throw ParseError(source, line, value.column, e.what());
      }
      have_kind = true;
    } else if (head == "n_vehicles") {
      c.n_vehicles = detail::parse_count(value, source, line);
    } else if (head == "n_spaces") {
      c.n_spaces = detail::parse_count(value, source, line);
    } else if (head == "lot_size") {
      c.lot_size = detail::parse_count(value, source, line);
    } else if (head == "world_extent") {
      c.world_extent = detail::parse_double(value, source, line);
    } else if (head == "seed") {
      c.seed = detail::parse_count(value, source, line);
    } else {
      throw ParseError(source, line, tokens[0].column, "unknown key '" + std::string(head) + "'");
    }
  }

  if (!have_kind) throw ParseError(source, reader.line(), 1, "config is missing 'kind'");
  if (s.vehicle_count() != c.n_vehicles || s.space_count() != c.n_spaces) {
    throw ParseError(source, reader.line(), 1,
                     "scenario holds " + std::to_string(s.vehicle_count()) + " vehicles and " +
                         std::to_string(s.space_count()) + " spaces, config declares " +
                         std::to_string(c.n_vehicles) + " and " + std::to_string(c.n_spaces));
  }
  return s;
}

/// One planning run, as written to results CSVs.
struct RunRecord {
  ScenarioConfig config;
  std::size_t m = 1;
  std::size_t batches = 0;
  std::size_t assigned = 0;
  std::size_t rejected = 0;
  double cumulative_cost = 0.0;
  std::optional<double> exact_cost;
  std::optional<double> waste;  // present iff exact_cost is
  double mean_subset_size = 0.0;
  double subset_ratio = 0.0;
  double wall_time = 0.0;  // seconds, planning call only
};

inline constexpr std::string_view kRunRecordHeader =
    "kind,seed,n_vehicles,n_spaces,lot_size,world_extent,m,batches,assigned,rejected,"
    "cumulative_cost,exact_cost,waste,mean_subset_size,subset_ratio,wall_time_s";

inline void write_run_record(std::ostream& out, const RunRecord& r) {
  const ScenarioConfig& c = r.config;
  out << to_string(c.kind) << ',' << c.seed << ',' << c.n_vehicles << ',' << c.n_spaces << ',' << c.lot_size << ','
      << format_number(c.world_extent) << ',' << r.m << ',' << r.batches << ',' << r.assigned << ',' << r.rejected
      << ',' << format_number(r.cumulative_cost) << ',' << (r.exact_cost ? format_number(*r.exact_cost) : "") << ','
      << (r.waste ? format_number(*r.waste) : "") << ',' << format_number(r.mean_subset_size) << ','
      << format_number(r.subset_ratio) << ',' << format_number(r.wall_time) << '\n';
}

inline void write_results(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kRunRecordHeader << '\n';
  for (const RunRecord& r : records) write_run_record(out, r);
}

}  // namespace parkplan
