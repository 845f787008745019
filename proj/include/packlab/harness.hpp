#pragma once

#include "packlab/adversary.hpp"
#include "packlab/oracle.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace packlab {

// Parsed sweep configuration. Flat key=value text file, '#' comments:
//   S = 10,100             item sizes to sweep
//   pairs = 40:10, 30:20   (s, l) cells, s:l
//   ratios = 0.5, 1.0      alternative to pairs; realized as s=scale,
//   scale = 600            l=round(x*scale)
//   policies = two-phase, always-s, always-l, ratio:1/1
//   adversary = theorem2 | example1..example4
//   best_response = false
//   seed = 1
//   trials = 1000          reserved for fuzz-style sources
//   out = sweep.csv        optional; stdout when absent
struct SweepConfig {
  enum class Source { Adaptive, Example1, Example2, Example3, Example4 };

  std::vector<long long> S_values;
  std::vector<std::pair<long long, long long>> cells;  // (s, l)
  std::vector<PolicySpec> policies;
  Source source = Source::Adaptive;
  bool best_response = false;
  unsigned long long seed = 1;
  long long trials = 1000;
  std::string out_path;

  static SweepConfig from_file(const std::string& path);
  static SweepConfig from_stream(std::istream& in);
};

struct SweepRow {
  long long S = 0;
  long long s = 0;
  long long l = 0;
  std::string policy;
  std::optional<long long> alg_cost;
  std::optional<long long> opt_cost;
  std::optional<Rational> ratio;
  std::optional<Rational> adjusted_ratio;
  Rational lower_bound;
  Range range = Range::LowL;
  std::string note;  // reason a cell has no numbers; not part of the CSV
};

// One row per (S, s, l, policy), ordered by that key. Cells whose source
// rejects the item counts are kept with empty numbers.
std::vector<SweepRow> sweep(const SweepConfig& cfg);

// Header: S,s,l,policy,alg_cost,opt_cost,ratio,adjusted_ratio,lower_bound,range
// Ratios are exact "p/q" strings; missing numbers print as NA.
void write_csv(std::span<const SweepRow> rows, std::ostream& out);

struct CurveRow {
  Rational x;         // l/s
  Rational adjusted;  // measured adjusted ratio of the two-phase policy
  Rational bound;     // lower_bound_ratio at the realized (s, l)
};

// Plays the two-phase policy against the best-response adaptive adversary at
// l/s = step, 2*step, ..., max_x, realized as s = scale, l = round(x*scale).
std::vector<CurveRow> ratio_curve(long long S, const Rational& step,
                                  const Rational& max_x, long long scale,
                                  const StepHook& hook = {});

// Whitespace-separated plot data, one row per grid point, decimals to 9
// places: l_over_s adjusted_ratio lower_bound.
void write_curve(std::span<const CurveRow> rows, std::ostream& out);

struct PropertyReport {
  std::string name;
  bool pass = true;
  long long cases = 0;
  long long skipped = 0;
  std::string detail;  // first counterexample when failing
};

// Seeded randomized property suites covering the fill enumerations, the
// predicates, the oracles and their structural inequalities, the two-phase
// counter relations, and the game-level ratio bounds. trials scales the case
// count per property; trials = 0 yields an empty report.
std::vector<PropertyReport> run_verification(unsigned long long seed, long long trials);

void write_report(std::span<const PropertyReport> report, std::ostream& out);
bool all_pass(std::span<const PropertyReport> report);

}  // namespace packlab
