#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qwmatch/classical_walk.hpp"
#include "qwmatch/graph.hpp"
#include "qwmatch/quantum_walk.hpp"
#include "qwmatch/verifier.hpp"

namespace qwmatch {

// Locale-independent, 17 significant digits: enough to round-trip any double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

// Graph plus the original vertex labels of the file it came from;
// labels[id] is ascending, so id order matches sorted label order.
struct LabeledGraph {
  Graph graph;
  std::vector<long long> labels;

  static LabeledGraph trivial(const Graph& g) {
    LabeledGraph lg{g, {}};
    lg.labels.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
      lg.labels[v] = v;
    }
    return lg;
  }
};

namespace detail {

inline long long parse_vertex_label(const std::string& token, int line) {
  long long value = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size() || value < 0) {
    throw std::runtime_error("edge list line " + std::to_string(line) +
                             ": invalid vertex label '" + token + "'");
  }
  return value;
}

}  // namespace detail

// Edge-list text format: one `u v` pair per line, whitespace-separated,
// `#` starts a comment. Labels are nonnegative integers, not necessarily
// dense; they are mapped to ids 0..n-1 in ascending label order.
inline LabeledGraph load_edge_list(std::istream& in) {
  std::vector<std::pair<long long, long long>> raw;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
      const auto start = line.find_first_not_of(" \t\r", pos);
      if (start == std::string::npos) {
        break;
      }
      const auto end = line.find_first_of(" \t\r", start);
      tokens.push_back(line.substr(start, end - start));
      pos = (end == std::string::npos) ? line.size() : end;
    }
    if (tokens.empty()) {
      continue;
    }
    if (tokens.size() != 2) {
      throw std::runtime_error("edge list line " + std::to_string(line_number) + ": expected 2 " +
                               "vertex labels, got " + std::to_string(tokens.size()));
    }
    raw.emplace_back(detail::parse_vertex_label(tokens[0], line_number),
                     detail::parse_vertex_label(tokens[1], line_number));
  }
  if (raw.empty()) {
    throw std::runtime_error("edge list: no edges");
  }

  std::vector<long long> labels;
  for (const auto& [u, v] : raw) {
    labels.push_back(u);
    labels.push_back(v);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  const auto id_of = [&labels](long long label) {
    return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), label) -
                            labels.begin());
  };
  std::vector<std::pair<int, int>> edges;
  edges.reserve(raw.size());
  for (const auto& [u, v] : raw) {
    edges.emplace_back(id_of(u), id_of(v));
  }
  return {build_graph(edges), std::move(labels)};
}

inline LabeledGraph load_edge_list_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open edge list file " + path.string());
  }
  return load_edge_list(in);
}

struct WalkSpec {
  StochasticSchedule schedule;
  ProbabilityVector initial;
};

namespace detail {

inline RealMatrix parse_column_major_matrix(const nlohmann::json& j, int n) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(n) * n) {
    throw std::runtime_error("walk spec: matrix must be a flat column-major array of " +
                             std::to_string(n) + "*" + std::to_string(n) + " numbers");
  }
  std::vector<double> data;
  data.reserve(j.size());
  for (const auto& entry : j) {
    data.push_back(entry.get<double>());
  }
  return RealMatrix(n, n, std::move(data));
}

}  // namespace detail

// Walk-spec JSON: {"mode": "homogeneous"|"sequence"|"generator",
// "matrix": [...] | "matrices": [[...], ...] | "generator": {"kind":
// "random", "seed": <int>}, "initial": [...]}. Matrices are dense
// column-major; vertex order is the graph's id order.
inline WalkSpec parse_walk_spec(const nlohmann::json& j, const Graph& g) {
  const int n = g.vertex_count();
  if (!j.contains("initial")) {
    throw std::runtime_error("walk spec: missing 'initial' distribution");
  }
  if (!j.at("initial").is_array() || j.at("initial").size() != static_cast<std::size_t>(n)) {
    throw std::runtime_error("walk spec: 'initial' must be an array of " + std::to_string(n) +
                             " numbers");
  }
  ProbabilityVector initial(j.at("initial").get<std::vector<double>>());

  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "homogeneous") {
    return {StochasticSchedule::homogeneous(detail::parse_column_major_matrix(j.at("matrix"), n)),
            std::move(initial)};
  }
  if (mode == "sequence") {
    const auto& ms = j.at("matrices");
    if (!ms.is_array() || ms.empty()) {
      throw std::runtime_error("walk spec: 'matrices' must be a non-empty array");
    }
    std::vector<RealMatrix> matrices;
    matrices.reserve(ms.size());
    for (const auto& m : ms) {
      matrices.push_back(detail::parse_column_major_matrix(m, n));
    }
    return {StochasticSchedule::sequence(std::move(matrices)), std::move(initial)};
  }
  if (mode == "generator") {
    const auto& gen = j.at("generator");
    const std::string kind = gen.at("kind").get<std::string>();
    if (kind != "random") {
      throw std::runtime_error("walk spec: unknown generator kind '" + kind + "'");
    }
    return {StochasticSchedule::random_generator(g, gen.at("seed").get<std::uint64_t>()),
            std::move(initial)};
  }
  throw std::runtime_error("walk spec: unknown mode '" + mode + "'");
}

inline WalkSpec load_walk_spec(std::istream& in, const Graph& g) {
  nlohmann::json j;
  in >> j;
  return parse_walk_spec(j, g);
}

inline WalkSpec load_walk_spec_file(const std::filesystem::path& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open walk spec file " + path.string());
  }
  try {
    return load_walk_spec(in, g);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("walk spec file " + path.string() + ": " + e.what());
  }
}

// Trajectory rows t, vertex, pi, mu, abs_diff; (horizon + 1) * |V| data rows
// under one header line.
inline void write_trajectory_csv(std::ostream& out, const std::vector<ProbabilityVector>& pi,
                                 const std::vector<ProbabilityVector>& mu,
                                 const std::vector<long long>& labels) {
  if (pi.size() != mu.size()) {
    throw std::invalid_argument("write_trajectory_csv: trajectory length mismatch");
  }
  out << "t,vertex,pi,mu,abs_diff\n";
  for (std::size_t t = 0; t < pi.size(); ++t) {
    for (int v = 0; v < pi[t].size(); ++v) {
      out << t << ',' << labels[v] << ',' << format_double(pi[t][v]) << ','
          << format_double(mu[t][v]) << ',' << format_double(std::abs(pi[t][v] - mu[t][v]))
          << '\n';
    }
  }
}

inline nlohmann::ordered_json report_to_json(const MatchReport& report) {
  nlohmann::ordered_json j;
  j["horizon"] = report.horizon;
  j["max_abs_deviation"] = report.max_abs_deviation;
  j["per_step_deviation"] = report.per_step_deviation;
  j["unitarity_worst"] = report.unitarity_worst;
  j["norm_worst"] = report.norm_worst;
  j["closed_form_worst"] = report.closed_form_worst;
  j["oracle_worst"] = report.oracle_worst;
  j["oracle_checked"] = report.oracle_checked;
  j["passed"] = report.passed;
  j["failure"] = report.failure;
  j["tolerances"] = {{"matching", report.tolerances.matching},
                     {"unitarity", report.tolerances.unitarity},
                     {"norm", report.tolerances.norm},
                     {"closed_form", report.tolerances.closed_form},
                     {"oracle", report.tolerances.oracle},
                     {"dense_oracle_cap", report.tolerances.dense_oracle_cap}};
  return j;
}

// One dump per step: the (time-independent) shift permutation and the coin
// blocks of W(t) as row-major nested arrays of [re, im] pairs.
inline nlohmann::ordered_json operator_dump_to_json(int t, const ShiftPermutation& shift,
                                                    const CoinOperator& coin) {
  nlohmann::ordered_json j;
  j["t"] = t;
  j["shift"] = shift.permutation;
  nlohmann::ordered_json coins = nlohmann::ordered_json::array();
  for (const ComplexMatrix& block : coin.blocks) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < block.rows(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (std::size_t jcol = 0; jcol < block.cols(); ++jcol) {
        row.push_back({block(i, jcol).real(), block(i, jcol).imag()});
      }
      rows.push_back(std::move(row));
    }
    coins.push_back(std::move(rows));
  }
  j["coins"] = std::move(coins);
  return j;
}

}  // namespace qwmatch
