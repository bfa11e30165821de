#pragma once

#include <functional>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

#include "voterct/criteria.hpp"
#include "voterct/report.hpp"

namespace voterct {

// ---------------------------------------------------------------------------
// Generic family sweep: classify over a parameter x threshold grid.
// ---------------------------------------------------------------------------

struct SweepCell {
  int param = 0;
  int tau = 0;
  Verdict verdict = Verdict::Unknown;
  bool fluctuates = false;
  std::string s_value;
  std::string s_reg_value;
};

struct FamilySweep {
  std::string family;
  std::string param_name;
  int star_branches = 0;
  std::vector<SweepCell> cells;
};

inline OpinionGraph family_member(const std::string& family, int param, int b) {
  if (family == "path") return path_graph(param);
  if (family == "cycle") return cycle_graph(param);
  if (family == "star") return star_graph(b, param);
  if (family == "hypercube") return hypercube_graph(param);
  throw std::invalid_argument("sweepable families: path, cycle, star, hypercube");
}

inline FamilySweep sweep_family(const std::string& family, int param_lo,
                                int param_hi, int tau_lo, int tau_hi, int b = 3) {
  if (param_lo > param_hi || tau_lo > tau_hi || tau_lo < 0)
    throw std::invalid_argument("bad sweep ranges");
  FamilySweep sweep;
  sweep.family = family;
  sweep.param_name =
      family == "star" ? "r" : (family == "hypercube" ? "d" : "F");
  sweep.star_branches = family == "star" ? b : 0;
  for (int param = param_lo; param <= param_hi; ++param) {
    const auto graph = family_member(family, param, b);
    const auto table = check_distance_regular(graph);
    for (int tau = tau_lo; tau <= tau_hi; ++tau) {
      const auto rep = classify(ThresholdModel(graph, tau), &table);
      SweepCell cell;
      cell.param = param;
      cell.tau = tau;
      cell.verdict = rep.verdict;
      cell.fluctuates = rep.fluctuation.found();
      if (rep.s_value) cell.s_value = rational_to_string(*rep.s_value);
      if (rep.s_reg_value) cell.s_reg_value = rational_to_string(*rep.s_reg_value);
      sweep.cells.push_back(cell);
    }
  }
  return sweep;
}

inline Json to_json(const FamilySweep& sweep) {
  Json j;
  j["family"] = sweep.family;
  j["param"] = sweep.param_name;
  if (sweep.star_branches) j["b"] = sweep.star_branches;
  Json rows = Json::array();
  for (const auto& cell : sweep.cells) {
    Json row;
    row[sweep.param_name] = cell.param;
    row["tau"] = cell.tau;
    row["verdict"] = verdict_name(cell.verdict);
    row["fluctuation"] = cell.fluctuates;
    row["S"] = cell.s_value.empty() ? Json(nullptr) : Json(cell.s_value);
    row["S_reg"] = cell.s_reg_value.empty() ? Json(nullptr) : Json(cell.s_reg_value);
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

// ---------------------------------------------------------------------------
// Closed-form hypercube functionals (dimensions far beyond explicit graphs)
// ---------------------------------------------------------------------------

// S(hypercube(d), tau) / 2^d; the positive factor 2^d never affects the sign.
inline Rational hypercube_s_scaled(int d, int tau) {
  BigInt total = 0;
  BigInt coeff = 1;  // C(d, s), updated incrementally
  for (int s = 1; s <= d; ++s) {
    coeff *= d - s + 1;
    coeff /= s;
    total += coeff * (ceil_div(s, tau) - 2);
  }
  return Rational(total);
}

inline std::optional<Rational> hypercube_s_reg(int d, int tau) {
  return s_reg_from_table(HypercubeTable(d), tau);
}

// ---------------------------------------------------------------------------
// Summary-table preset: the classifier re-derives, for ten standard opinion
// graphs, the known fluctuation regions, the tau = 1 fixation regions, and
// the large-threshold fixation regions evaluated concretely at tau = 100.
//
// The large-tau columns are asymptotic ratio conditions (the degree-two parts
// of the exact polynomial conditions).  At tau = 100 the exact integer
// boundary computed here sits within one step of the ratio root; the preset
// asserts the exact boundary two-sided and the one-step consistency.
// ---------------------------------------------------------------------------

struct RowOutcome {
  std::string row;
  int checks = 0;
  std::vector<std::string> failures;
  // Large-tau boundaries (parameterized families only).
  int exact_threshold = -1;
  int ratio_threshold = -1;

  bool ok() const { return failures.empty(); }
};

struct Table1Report {
  std::vector<RowOutcome> rows;
  bool all_ok = true;
};

namespace table1_detail {

constexpr int kLargeTau = 100;

inline void expect(RowOutcome& row, bool condition, const std::string& what) {
  ++row.checks;
  if (!condition) row.failures.push_back(what);
}

template <class Fn>
void expect_region(RowOutcome& row, const std::vector<int>& grid,
                   const Fn& verdict_holds, const std::function<bool(int)>& stated,
                   const std::string& label) {
  for (int param : grid) {
    std::ostringstream what;
    what << label << " disagrees at " << param;
    expect(row, verdict_holds(param) == stated(param), what.str());
  }
}

inline std::vector<int> around(int center, int halfwidth) {
  std::vector<int> grid;
  for (int v = center - halfwidth; v <= center + halfwidth; ++v) grid.push_back(v);
  return grid;
}

inline std::vector<int> merge(std::initializer_list<std::vector<int>> parts) {
  std::set<int> values;
  for (const auto& part : parts) values.insert(part.begin(), part.end());
  return {values.begin(), values.end()};
}

// First parameter at/above `from` where quad(param) > 0.
inline int first_positive(const std::function<BigInt(long)>& quad, long from) {
  for (long v = from;; ++v)
    if (quad(v) > 0) return static_cast<int>(v);
}

}  // namespace table1_detail

inline RowOutcome table1_path_row() {
  using namespace table1_detail;
  RowOutcome row;
  row.row = "path";
  const long tau = kLargeTau;

  for (int f = 2; f <= 41; ++f) {
    const auto g = path_graph(f);
    const auto table = check_distance_regular(g);
    expect(row, g.eccentricity_profile() == std::pair<int, int>{f / 2, f - 1},
           "radius/diameter at F=" + std::to_string(f));
    for (int t = 1; t <= 5; ++t) {
      const auto rep = classify(ThresholdModel(g, t), &table);
      expect(row, rep.fluctuation.found() == (f <= 2 * t + 1),
             "fluctuation at F=" + std::to_string(f) + " tau=" + std::to_string(t));
      if (t == 1)
        expect(row, (rep.verdict == Verdict::Fixates) == (f >= 6),
               "fixation(tau=1) at F=" + std::to_string(f));
    }
  }

  // Exact condition: 3F^2 - (20 tau + 3) F + 10 (3 tau + 1) tau > 0 on the
  // branch above the vertex.  Ratio condition: 3X^2 - 20X + 30 > 0, X = F/tau.
  row.exact_threshold = first_positive(
      [&](long f) {
        return BigInt(3 * f * f - (20 * tau + 3) * f + 10 * (3 * tau + 1) * tau);
      },
      (20 * tau + 3) / 6 + 1);
  row.ratio_threshold = first_positive(
      [&](long f) { return BigInt(3 * f * f - 20 * tau * f + 30 * tau * tau); },
      10 * tau / 3 + 1);
  expect(row, std::abs(row.exact_threshold - row.ratio_threshold) <= 1,
         "ratio root vs exact threshold");

  const auto grid = merge({around(201, 6), around(row.exact_threshold, 6),
                           {390, 410, 430, 460, 480, 520}});
  std::map<int, CriteriaReport> reports;
  for (int f : grid)
    reports.emplace(f, classify(ThresholdModel(path_graph(f), kLargeTau)));
  expect_region(
      row, grid, [&](int f) { return reports.at(f).fluctuation.found(); },
      [](int f) { return f <= 2 * kLargeTau + 1; }, "fluctuation(tau=100)");
  expect_region(
      row, grid, [&](int f) { return reports.at(f).verdict == Verdict::Fixates; },
      [&](int f) { return f >= row.exact_threshold; }, "fixation(tau=100)");
  return row;
}

inline RowOutcome table1_star_row(int b) {
  using namespace table1_detail;
  RowOutcome row;
  row.row = "star(b=" + std::to_string(b) + ")";
  const long tau = kLargeTau;

  for (int r = 1; r <= 10; ++r) {
    const auto g = star_graph(b, r);
    const auto table = check_distance_regular(g);
    expect(row, g.eccentricity_profile() == std::pair<int, int>{r, 2 * r},
           "radius/diameter at r=" + std::to_string(r));
    for (int t = 1; t <= 5; ++t) {
      const auto rep = classify(ThresholdModel(g, t), &table);
      expect(row, rep.fluctuation.found() == (r <= t),
             "fluctuation at r=" + std::to_string(r) + " tau=" + std::to_string(t));
      if (t == 1)
        expect(row, (rep.verdict == Verdict::Fixates) == (r >= 2),
               "fixation(tau=1) at r=" + std::to_string(r));
    }
  }

  // Exact: 4(b-1) r^2 + 2((4-5b) tau + b - 1) r + (6b-5) tau^2 + (1-2b) tau > 0
  // with 2r > 3 tau.  Ratio (X = 2r/tau): 2X^2-11X+13 (b=3), 4X^2-21X+25 (b=5).
  row.exact_threshold = first_positive(
      [&](long r) {
        return BigInt(4 * (b - 1) * r * r + 2 * ((4 - 5 * b) * tau + b - 1) * r +
                      (6 * b - 5) * tau * tau + (1 - 2 * b) * tau);
      },
      3 * tau / 2 + 1);
  row.ratio_threshold = first_positive(
      [&](long r) {
        return b == 3 ? BigInt(8 * r * r - 22 * tau * r + 13 * tau * tau)
                      : BigInt(16 * r * r - 42 * tau * r + 25 * tau * tau);
      },
      b == 3 ? 11 * tau / 8 + 1 : 21 * tau / 16 + 1);
  expect(row, std::abs(row.exact_threshold - row.ratio_threshold) <= 1,
         "ratio root vs exact threshold");

  const auto grid = merge({around(100, 5), around(row.exact_threshold, 6),
                           {150, 160, 180, 200, 220, 240}});
  std::map<int, CriteriaReport> reports;
  for (int r : grid)
    reports.emplace(r, classify(ThresholdModel(star_graph(b, r), kLargeTau)));
  expect_region(
      row, grid, [&](int r) { return reports.at(r).fluctuation.found(); },
      [](int r) { return r <= kLargeTau; }, "fluctuation(tau=100)");
  expect_region(
      row, grid, [&](int r) { return reports.at(r).verdict == Verdict::Fixates; },
      [&](int r) { return r >= row.exact_threshold; }, "fixation(tau=100)");
  return row;
}

inline RowOutcome table1_cycle_row() {
  using namespace table1_detail;
  RowOutcome row;
  row.row = "cycle";

  for (int f = 3; f <= 41; ++f) {
    const auto g = cycle_graph(f);
    const auto table = check_distance_regular(g);
    expect(row, g.eccentricity_profile() == std::pair<int, int>{f / 2, f / 2},
           "radius/diameter at F=" + std::to_string(f));
    for (int t = 1; t <= 5; ++t) {
      const auto rep = classify(ThresholdModel(g, t), &table);
      expect(row, rep.fluctuation.found() == (f <= 2 * t + 2),
             "fluctuation at F=" + std::to_string(f) + " tau=" + std::to_string(t));
      if (t == 1)
        expect(row, (rep.verdict == Verdict::Fixates) == (f >= 6),
               "fixation(tau=1) at F=" + std::to_string(f));
    }
  }

  // Exact condition F >= 4 tau + 2; ratio condition F/tau > 4.
  row.exact_threshold = 4 * kLargeTau + 2;
  row.ratio_threshold = 4 * kLargeTau + 1;
  expect(row, std::abs(row.exact_threshold - row.ratio_threshold) <= 1,
         "ratio root vs exact threshold");

  const auto grid = merge({around(202, 6), around(row.exact_threshold, 6),
                           {390, 420, 450, 480, 520}});
  std::map<int, CriteriaReport> reports;
  for (int f : grid)
    reports.emplace(f, classify(ThresholdModel(cycle_graph(f), kLargeTau)));
  expect_region(
      row, grid, [&](int f) { return reports.at(f).fluctuation.found(); },
      [](int f) { return f <= 2 * kLargeTau + 2; }, "fluctuation(tau=100)");
  expect_region(
      row, grid, [&](int f) { return reports.at(f).verdict == Verdict::Fixates; },
      [&](int f) { return f >= row.exact_threshold; }, "fixation(tau=100)");
  return row;
}

inline RowOutcome table1_hypercube_row() {
  using namespace table1_detail;
  RowOutcome row;
  row.row = "hypercube";

  for (int d = 1; d <= 10; ++d) {
    const auto g = hypercube_graph(d);
    const auto table = check_distance_regular(g);
    expect(row, g.eccentricity_profile() == std::pair<int, int>{d, d},
           "radius/diameter at d=" + std::to_string(d));
    for (int t = 1; t <= 5; ++t) {
      const auto rep = classify(ThresholdModel(g, t), &table);
      expect(row, rep.fluctuation.found() == (d <= t + 1),
             "fluctuation at d=" + std::to_string(d) + " tau=" + std::to_string(t));
      if (t == 1)
        expect(row, (rep.verdict == Verdict::Fixates) == (d >= 3),
               "fixation(tau=1) at d=" + std::to_string(d));
    }
  }

  // First clause, d/tau > 3, checked through the sign of S (closed form; the
  // explicit graph would need 2^d vertices).
  const int s_threshold = first_positive(
      [&](long d) {
        const Rational s = hypercube_s_scaled(static_cast<int>(d), kLargeTau);
        return s > 0 ? BigInt(1) : BigInt(0);
      },
      2 * kLargeTau + 1);
  row.exact_threshold = s_threshold;
  row.ratio_threshold = 3 * kLargeTau + 1;
  expect(row, std::abs(s_threshold - row.ratio_threshold) <= 1,
         "S-clause threshold vs d/tau > 3");
  for (int d : around(3 * kLargeTau + 1, 4))
    expect(row, (hypercube_s_scaled(d, kLargeTau) > 0) == (d >= s_threshold),
           "S sign at d=" + std::to_string(d));

  // Second clause, d/tau > 2 with tau large: at tau = 100 the exact S_reg
  // boundary lands one step above the ratio root, like every other row.
  const std::vector<int> s_reg_grid = {120, 150, 180, 195, 199, 200,
                                       201, 202, 203, 204, 210};
  int s_reg_threshold = -1;
  for (int d : s_reg_grid) {
    const auto value = hypercube_s_reg(d, kLargeTau);
    const bool positive = value && *value > 0;
    if (positive && s_reg_threshold < 0) s_reg_threshold = d;
    expect(row, positive == (d >= 202),
           "S_reg sign at d=" + std::to_string(d));
  }
  expect(row, s_reg_threshold == 202, "S_reg boundary at tau=100");
  expect(row, std::abs(s_reg_threshold - (2 * kLargeTau + 1)) <= 1,
         "S_reg-clause threshold vs d/tau > 2");
  return row;
}

inline RowOutcome table1_platonic_row(const OpinionGraph& g, int radius,
                                      int diameter, int fluct_from,
                                      int fix_up_to) {
  using namespace table1_detail;
  RowOutcome row;
  row.row = g.name();
  expect(row, g.eccentricity_profile() == std::pair<int, int>{radius, diameter},
         "radius/diameter");
  const auto table = check_distance_regular(g);
  for (int tau = 0; tau <= 6; ++tau) {
    const auto rep = classify(ThresholdModel(g, tau), &table);
    const bool should_fluctuate = tau >= fluct_from;
    const bool should_fixate = tau <= fix_up_to;
    expect(row, (rep.verdict == Verdict::FluctuatesAndClusters) == should_fluctuate,
           "fluctuation at tau=" + std::to_string(tau));
    expect(row, (rep.verdict == Verdict::Fixates) == should_fixate,
           "fixation at tau=" + std::to_string(tau));
    if (!should_fluctuate && !should_fixate)
      expect(row, rep.verdict == Verdict::Unknown,
             "open case at tau=" + std::to_string(tau));
  }
  return row;
}

inline Table1Report run_table1_preset() {
  Table1Report report;
  report.rows.push_back(table1_path_row());
  report.rows.push_back(table1_star_row(3));
  report.rows.push_back(table1_star_row(5));
  report.rows.push_back(table1_cycle_row());
  report.rows.push_back(table1_hypercube_row());
  report.rows.push_back(table1_platonic_row(tetrahedron_graph(), 1, 1, 1, 0));
  report.rows.push_back(table1_platonic_row(cube_graph(), 3, 3, 2, 1));
  report.rows.push_back(table1_platonic_row(octahedron_graph(), 2, 2, 1, 0));
  report.rows.push_back(table1_platonic_row(dodecahedron_graph(), 5, 5, 4, 2));
  report.rows.push_back(table1_platonic_row(icosahedron_graph(), 3, 3, 2, 1));
  for (const auto& row : report.rows)
    if (!row.ok()) report.all_ok = false;
  return report;
}

inline Json to_json(const Table1Report& report) {
  Json j;
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json r;
    r["row"] = row.row;
    r["checks"] = row.checks;
    r["ok"] = row.ok();
    if (row.exact_threshold >= 0) {
      r["large_tau_exact_threshold"] = row.exact_threshold;
      r["large_tau_ratio_threshold"] = row.ratio_threshold;
    }
    if (!row.failures.empty()) r["failures"] = row.failures;
    rows.push_back(r);
  }
  j["table1"] = rows;
  j["all_ok"] = report.all_ok;
  return j;
}

}  // namespace voterct
