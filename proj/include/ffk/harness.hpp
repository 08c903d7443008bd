#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ffk/bilinear.hpp"
#include "ffk/report.hpp"

namespace ffk {

enum class Format { json, csv, pretty };

Format parse_format(const std::string& name);

/// Fixed CSV header line (without trailing newline).
const std::string& csv_header();
/// Serialises records. CSV and JSON use shortest round-trip float text, so
/// identical inputs give identical bytes.
std::string render(const std::vector<BoundReport>& records, Format format);

/// Options shared by check and scan. Empty fields select each check's
/// default family.
struct CheckConfig {
  std::string field = "3";
  std::string modulus;
  unsigned max_deg = 0;
  std::vector<std::string> a;
  WeightKind weights = WeightKind::ones;
  std::uint64_t seed = 0;
  unsigned seeds = 1;
  std::string s0;
  std::string t0;
  /// Worker threads; 0 picks default_jobs().
  unsigned jobs = 0;
  /// Refuse runs estimated above this many inner character evaluations.
  double cost_limit = 1e9;
};

/// FFK_JOBS if set to a positive integer, else 1.
unsigned default_jobs();

/// A unit of work with its cost estimate (inner character evaluations).
struct Task {
  double cost = 0;
  std::function<std::vector<BoundReport>()> run;
};

/// Runs tasks on up to jobs threads; the output keeps task order.
std::vector<BoundReport> run_tasks(const std::vector<Task>& tasks, unsigned jobs);

/// Names accepted by run_check, in the order "all" runs them.
const std::vector<std::string>& check_names();
/// Runs one named check ("all" runs every check on its defaults). Throws
/// CostLimitExceeded before any work if the estimate is over the limit.
std::vector<BoundReport> run_check(const std::string& name, const CheckConfig& config);

struct GridAxis {
  std::string name;
  std::vector<long long> values;
};

/// "m=1..3,n=2,k=1..2" (also "seed=0..9"). Values may be lists "1;3".
std::vector<GridAxis> parse_grid(const std::string& spec);
/// Checks accepted by run_scan.
const std::vector<std::string>& scan_names();
/// One record per (a, grid point), a outermost and the last axis fastest.
std::vector<BoundReport> run_scan(const std::string& check, const CheckConfig& config,
                                  const std::vector<GridAxis>& grid);

/// P^j with deg P in {1, 2} and j deg P <= max_deg, then three squarefree
/// composites.
std::vector<Poly> prime_power_family(const PolyRing& ring, unsigned max_deg);

/// Largest finite slack_log_q per check name.
std::map<std::string, double> max_slack(const std::vector<BoundReport>& records);

/// The fixed comparator grid used for slack regression: q = 3,
/// F in {T^2+1, T^3+2T+1}, a in {1, T}, all sizes 1..r, plus offset intervals.
std::vector<BoundReport> standard_lemma_grid(unsigned jobs);
/// Theorem grid: the same moduli, all m, n, a in {1, T} plus a = 0 where the
/// theorem allows it, weights ones and random_unit seeds 0..9.
std::vector<BoundReport> standard_theorem_grid(unsigned jobs);

}  // namespace ffk
