// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. `--write-golden` regenerates the slack golden file.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ffk/harness.hpp"
#include "json.hpp"

#ifndef FFK_GOLDEN_DIR
#define FFK_GOLDEN_DIR "tests/golden"
#endif

namespace {

using namespace ffk;

struct Outcome {
  bool ok = false;
  std::string detail;
};

unsigned width() { return std::max(1u, std::thread::hardware_concurrency()); }

CheckConfig config(const std::string& field, unsigned max_deg = 0) {
  CheckConfig c;
  c.field = field;
  c.max_deg = max_deg;
  c.jobs = width();
  c.cost_limit = std::numeric_limits<double>::infinity();
  return c;
}

// Runs one check per field; passes when every record passed and at least
// min_records were produced.
Outcome all_pass(const std::string& check, const std::vector<std::string>& fields, unsigned max_deg,
                 std::size_t min_records = 1) {
  std::size_t n = 0;
  for (const auto& f : fields) {
    const auto recs = run_check(check, config(f, max_deg));
    for (const auto& r : recs) {
      if (!r.passed) return {false, "failing record: " + render({r}, Format::pretty)};
    }
    n += recs.size();
  }
  return {n >= min_records, std::to_string(n) + " records"};
}

std::string golden_path() { return std::string(FFK_GOLDEN_DIR) + "/slack_max.json"; }

std::map<std::string, double> read_golden() {
  std::ifstream in(golden_path());
  if (!in) throw std::runtime_error("cannot read " + golden_path());
  const auto j = nlohmann::json::parse(in);
  std::map<std::string, double> out;
  for (const auto& [k, v] : j.items()) out[k] = v.get<double>();
  return out;
}

std::map<std::string, double> current_slack() {
  std::vector<BoundReport> recs = standard_lemma_grid(width());
  const auto thm = standard_theorem_grid(width());
  recs.insert(recs.end(), thm.begin(), thm.end());
  const auto ts = run_check("tsum-cases", config("3"));
  recs.insert(recs.end(), ts.begin(), ts.end());
  return max_slack(recs);
}

Outcome c1() { return all_pass("charsum", {"3", "5"}, 3); }
Outcome c2() { return all_pass("residue", {"3", "5", "9"}, 0, 3); }
Outcome c3() { return all_pass("gauss-mag", {"3", "5"}, 3); }

Outcome c4() {
  auto o = all_pass("gauss-sign", {"3", "5", "7", "9"}, 3, 12);
  return o;
}

Outcome c5() { return all_pass("twisted", {"3"}, 0, 2); }
Outcome c6() { return all_pass("prime-power", {"3", "5"}, 4); }

Outcome c7() {
  auto a = all_pass("weil", {"3"}, 3);
  if (!a.ok) return a;
  auto b = all_pass("weil", {"5"}, 2);
  return {b.ok, a.detail + " (q=3), " + b.detail + " (q=5)"};
}

Outcome c8() { return all_pass("mobius", {"3"}, 3); }

Outcome c9() {
  const auto recs = run_check("tsum-cases", config("3"));
  std::size_t identities = 0;
  for (const auto& r : recs) {
    if (!r.passed) return {false, "failing record: " + render({r}, Format::pretty)};
    if (r.check != "tsum-bound") ++identities;
  }
  const double now = max_slack(recs).at("tsum-bound");
  const double gold = read_golden().at("tsum-bound");
  std::ostringstream d;
  d << identities << " identity records, bound slack " << now << " (golden " << gold << ")";
  return {identities > 0 && now <= gold + 1e-6, d.str()};
}

Outcome c10() { return all_pass("dirichlet", {"3"}, 4); }
Outcome c11() { return all_pass("energy-oracle", {"3"}, 3); }

Outcome c12() {
  auto recs = standard_theorem_grid(width());
  // thm1 to thm3 also on a composite modulus, where a = T and a = T^2 + 1
  // share a factor with F.
  for (const char* thm : {"thm1", "thm2", "thm3"}) {
    CheckConfig c = config("3");
    c.modulus = "0,1,0,1";
    c.a = {"1", "0,1", "1,0,1"};
    c.weights = WeightKind::random_unit;
    const auto extra = run_scan(thm, c, parse_grid("m=1..3,n=1..3,seed=0..9"));
    recs.insert(recs.end(), extra.begin(), extra.end());
  }
  std::map<std::string, double> worst;
  for (const auto& r : recs) {
    if (!r.passed) return {false, "failing record: " + render({r}, Format::pretty)};
    if (r.rhs_exact && *r.rhs_exact > 0) worst[r.check] = std::max(worst[r.check], r.lhs / *r.rhs_exact);
  }
  std::ostringstream d;
  d << recs.size() << " records; max lhs/rhs_exact:";
  for (const auto& [k, v] : worst) d << ' ' << k << '=' << std::setprecision(3) << v;
  return {true, d.str()};
}

Outcome c13() {
  const auto now = current_slack();
  const auto gold = read_golden();
  std::set<std::string> keys;
  for (const auto& [k, _] : now) keys.insert(k);
  for (const auto& [k, _] : gold) keys.insert(k);
  std::string bad;
  for (const auto& k : keys) {
    const auto a = now.find(k), b = gold.find(k);
    if (a == now.end() || b == gold.end() || std::abs(a->second - b->second) > 1e-6) bad += ' ' + k;
  }
  if (!bad.empty()) return {false, "drift in:" + bad};
  return {true, std::to_string(keys.size()) + " slack maxima match"};
}

Outcome c14() {
  CheckConfig c = config("3");
  c.cost_limit = 1e9;
  const auto first = run_check("all", c);
  const auto second = run_check("all", c);
  c.jobs = 1;
  const auto serial = run_check("all", c);
  for (Format f : {Format::csv, Format::json}) {
    const auto a = render(first, f);
    if (a != render(second, f)) return {false, "repeat run differs"};
    if (a != render(serial, f)) return {false, "output depends on worker count"};
  }
  return {true, std::to_string(first.size()) + " records, CSV and JSON byte-identical"};
}

int write_golden() {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : current_slack()) j[k] = v;
  std::ofstream(golden_path()) << j.dump(2) << '\n';
  std::cout << "wrote " << golden_path() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1 && std::string(argv[1]) == "--write-golden") return write_golden();

  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "character sums over intervals", 10, c1},
      {2, "residue coefficient vs Laurent division", 5, c2},
      {3, "Gauss sum magnitude", 30, c3},
      {4, "Gauss sum sign constant", 10, c4},
      {5, "twisted multiplicativity", 10, c5},
      {6, "explicit vs brute-force Kloosterman", 120, c6},
      {7, "Weil-Estermann envelope", 60, c7},
      {8, "Ramanujan sums", 10, c8},
      {9, "T-sum case identities and bound slack", 60, c9},
      {10, "Dirichlet approximation", 30, c10},
      {11, "counting oracles", 60, c11},
      {12, "theorem inequalities on the grid", 300, c12},
      {13, "slack regression", 120, c13},
      {14, "determinism", 600, c14},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.budget_s) {
      o.ok = false;
      o.detail += "; over time budget";
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << std::setw(2) << c.id << ": " << c.name << " ["
              << std::fixed << std::setprecision(2) << secs << "s] " << std::defaultfloat << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
