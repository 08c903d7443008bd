#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ffk/bilinear.hpp"
#include "ffk/expsum.hpp"
#include "ffk/harness.hpp"

namespace {

using namespace ffk;

struct Opts {
  std::string field = "3";
  std::string modulus;
  std::string s = "0", t = "0", u = "0", v = "0";
  std::vector<std::string> a;
  unsigned m = 1, n = 1, k = 1;
  std::string s0, t0;
  std::string weights = "ones";
  std::uint64_t seed = 0;
  unsigned seeds = 1;
  unsigned max_deg = 0;
  unsigned jobs = 0;
  std::string format = "pretty";
  std::string grid;
};

/// Errors that mean "the request was malformed or outside a hypothesis".
struct UsageError {
  std::string message;
};

struct Context {
  PolyRing ring;
  CharContext ctx;
};

Context make_context(const Opts& o) {
  if (o.modulus.empty()) throw UsageError{"--modulus is required"};
  PolyRing R(FieldSpec::parse(o.field));
  const Poly F = R.parse(o.modulus);
  if (F.degree() < Degree(1)) throw UsageError{"modulus must have degree >= 1"};
  return {R, CharContext(R, F)};
}

Poly single_a(const PolyRing& R, const Opts& o) { return o.a.empty() ? R.one() : R.parse(o.a.front()); }

Interval interval(const PolyRing& R, const std::string& offset, unsigned size) {
  return Interval{offset.empty() ? Poly{} : R.parse(offset), size};
}

Params base(const CharContext& ctx) {
  return {{"field", ctx.field().to_string()}, {"F", ctx.ring().format(ctx.modulus().poly())}};
}

void add_interval(Params& p, const PolyRing& R, const std::string& key, const Interval& I) {
  p.emplace_back(key, std::to_string(I.size_exp));
  if (!I.is_initial()) p.emplace_back(key + "_offset", R.format(I.offset));
}

BoundReport value_record(std::string name, Params p, std::complex<long double> z, std::string note) {
  // Round-off from summing roots of unity is cleared from exactly real or imaginary values.
  const long double tiny = 1e-12L * std::max(1.0L, std::abs(z));
  const auto clean = [&](long double v) { return std::abs(v) < tiny ? 0.0 : static_cast<double>(v); };
  const std::complex<double> zd(clean(z.real()), clean(z.imag()));
  BoundReport r = identity_report(std::move(name), std::move(p), true, std::abs(zd), zd);
  r.note = std::move(note);
  return r;
}

std::vector<BoundReport> run_sum(const std::string& kind, const Opts& o) {
  const auto [R, ctx] = make_context(o);
  Params p = base(ctx);
  const Poly s = R.parse(o.s), t = R.parse(o.t);
  if (kind == "tsum") {
    const Poly u = R.parse(o.u), v = R.parse(o.v), a = single_a(R, o);
    p.insert(p.end(), {{"u", R.format(u)}, {"v", R.format(v)}, {"a", R.format(a)}});
    const CycValue z = t_sum(ctx, u, v, a);
    return {value_record(kind, p, z.to_complex(), z.to_string())};
  }
  p.emplace_back("s", R.format(s));
  if (kind == "ramanujan") {
    const CycValue z = ramanujan(ctx, s);
    return {value_record(kind, p, z.to_complex(), z.to_string())};
  }
  p.emplace_back("t", R.format(t));
  if (kind == "kloosterman") {
    const CycValue z = kloosterman(ctx, s, t);
    return {value_record(kind, p, z.to_complex(), z.to_string())};
  }
  if (kind == "gauss") {
    const CycValue z = gauss(ctx, s, t);
    return {value_record(kind, p, z.to_complex(), z.to_string())};
  }
  if (kind == "gauss-reduced") {
    const CycValue z = gauss_reduced(ctx, s, t);
    return {value_record(kind, p, z.to_complex(), z.to_string())};
  }
  throw UsageError{"unknown sum '" + kind + "'"};
}

std::vector<BoundReport> run_count(const std::string& kind, const Opts& o) {
  const auto [R, ctx] = make_context(o);
  Params p = base(ctx);
  const Interval Im = interval(R, o.s0, o.m);
  const Poly a = single_a(R, o);
  auto record = [&](std::uint64_t count) {
    return std::vector{identity_report(kind, p, true, static_cast<double>(count))};
  };
  if (kind == "Esqrt") {
    p.emplace_back("m", std::to_string(o.m));
    return record(energy_sqrt(ctx, o.m));
  }
  if (kind == "Einv" || kind == "Esq") {
    add_interval(p, R, "m", Im);
    return record(kind == "Einv" ? energy_inv(ctx, Im) : energy_sq(ctx, Im));
  }
  p.emplace_back("a", R.format(a));
  add_interval(p, R, "m", Im);
  if (kind == "H") {
    const Interval In = interval(R, o.t0, o.n);
    add_interval(p, R, "n", In);
    return record(hyperbola_count(ctx, a, Im, In));
  }
  if (kind == "I") return record(inverse_pair_count(ctx, a, Im));
  if (kind == "A") {
    p.emplace_back("k", std::to_string(o.k));
    return record(inverse_avg_count(ctx, a, Im, o.k));
  }
  throw UsageError{"unknown count '" + kind + "'"};
}

std::vector<BoundReport> run_bilinear(const std::string& kind, const Opts& o) {
  const auto [R, ctx] = make_context(o);
  const Interval Im = interval(R, o.s0, o.m), In = interval(R, o.t0, o.n);
  if (static_cast<int>(o.m) > ctx.r() || static_cast<int>(o.n) > ctx.r()) {
    throw InvalidParameter("interval size exceeds deg F");
  }
  const double cost = std::pow(static_cast<double>(ctx.q()), static_cast<double>(o.m + o.n + ctx.r()));
  if (cost > 1e9) throw CostLimitExceeded("estimated " + std::to_string(cost) + " character evaluations", cost);
  const Poly a = single_a(R, o);
  const WeightKind wk = parse_weight_kind(o.weights);
  Params p = base(ctx);
  p.emplace_back("a", R.format(a));
  add_interval(p, R, "m", Im);
  add_interval(p, R, "n", In);
  if (kind == "bk-plain") {
    const BilinearValue b = bk_plain(ctx, a, Im, In);
    return {value_record(kind, p, b.value, b.exact ? b.exact->to_string() : std::string())};
  }
  p.emplace_back("weights", to_string(wk));
  p.emplace_back("seed", std::to_string(o.seed));
  const WeightSeq alpha = make_weights(ctx, wk, interval_elements(R, Im), o.seed);
  std::complex<double> z;
  if (kind == "bk-type1") {
    z = bk_type1_set(ctx, a, alpha, In);
  } else if (kind == "bk-type1-interval") {
    z = bk_type1_interval(ctx, a, alpha, Im, In);
  } else if (kind == "bg-type1") {
    z = bg_type1(ctx, a, alpha, In);
  } else if (kind == "bg-type2" || kind == "bg-type2-interval") {
    const WeightSeq beta = make_weights(ctx, wk, interval_elements(R, In), o.seed + 1);
    z = kind == "bg-type2" ? bg_type2_set(ctx, a, alpha, beta, In) : bg_type2_interval(ctx, a, alpha, Im, beta, In);
  } else {
    throw UsageError{"unknown bilinear form '" + kind + "'"};
  }
  return {value_record(kind, p, z, {})};
}

CheckConfig check_config(const Opts& o) {
  CheckConfig c;
  c.field = o.field;
  c.modulus = o.modulus;
  c.max_deg = o.max_deg;
  c.a = o.a;
  c.weights = parse_weight_kind(o.weights);
  c.seed = o.seed;
  c.seeds = o.seeds;
  c.s0 = o.s0;
  c.t0 = o.t0;
  c.jobs = o.jobs;
  return c;
}

int emit(const std::vector<BoundReport>& records, Format format) {
  std::cout << render(records, format);
  for (const auto& r : records) {
    if (!r.passed) {
      std::cerr << "first failing record:\n" << render({r}, Format::pretty);
      return 1;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kloosterman, Gauss and Ramanujan sums over F_q[T] with a bound-verification harness"};
  app.require_subcommand(1);
  Opts o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--field", o.field, "q as p or p^ell")->capture_default_str();
    sub->add_option("--modulus", o.modulus, "F as coefficients c0,c1,...");
    sub->add_option("--format", o.format, "json, csv or pretty")->capture_default_str();
  };
  auto ranges = [&](CLI::App* sub) {
    sub->add_option("--a", o.a, "twist a (repeatable for check and scan)");
    sub->add_option("--m", o.m, "size exponent of the first interval")->capture_default_str();
    sub->add_option("--n", o.n, "size exponent of the second interval")->capture_default_str();
    sub->add_option("--k", o.k, "averaging exponent")->capture_default_str();
    sub->add_option("--s0", o.s0, "offset of the first interval");
    sub->add_option("--t0", o.t0, "offset of the second interval");
  };
  auto weights = [&](CLI::App* sub) {
    sub->add_option("--weights", o.weights, "ones, random_unit or random_sign")->capture_default_str();
    sub->add_option("--seed", o.seed, "weight seed")->capture_default_str();
  };
  auto harness = [&](CLI::App* sub) {
    sub->add_option("--seeds", o.seeds, "number of consecutive seeds")->capture_default_str();
    sub->add_option("--max-deg", o.max_deg, "largest deg F in default families");
    sub->add_option("--jobs", o.jobs, "worker threads (default FFK_JOBS or 1)");
  };

  std::string kind;
  auto* sum = app.add_subcommand("sum", "evaluate one exponential sum");
  sum->add_option("kind", kind, "kloosterman, gauss, gauss-reduced, ramanujan or tsum")->required();
  common(sum);
  sum->add_option("--s", o.s, "first argument")->capture_default_str();
  sum->add_option("--t", o.t, "second argument")->capture_default_str();
  sum->add_option("--u", o.u, "tsum u")->capture_default_str();
  sum->add_option("--v", o.v, "tsum v")->capture_default_str();
  sum->add_option("--a", o.a, "tsum twist");

  auto* count = app.add_subcommand("count", "evaluate a counting function");
  count->add_option("kind", kind, "H, I, A, Einv, Esq or Esqrt")->required();
  common(count);
  ranges(count);

  auto* bilinear = app.add_subcommand("bilinear", "evaluate a bilinear form");
  bilinear->add_option("kind", kind,
                       "bk-plain, bk-type1, bk-type1-interval, bg-type1, bg-type2 or bg-type2-interval")
      ->required();
  common(bilinear);
  ranges(bilinear);
  weights(bilinear);

  auto* check = app.add_subcommand("check", "run a named verification check ('all' for every check)");
  check->add_option("name", kind, "check name")->required();
  common(check);
  check->add_option("--a", o.a, "twist a (repeatable)");
  check->add_option("--s0", o.s0, "offset of the first interval");
  check->add_option("--t0", o.t0, "offset of the second interval");
  weights(check);
  harness(check);

  auto* scan = app.add_subcommand("scan", "evaluate one check over a parameter grid");
  scan->add_option("name", kind, "theorem or comparator name")->required();
  common(scan);
  scan->add_option("--grid", o.grid, "axes such as m=1..3,n=2,k=1;3,seed=0..9")->required();
  scan->add_option("--a", o.a, "twist a (repeatable)");
  scan->add_option("--s0", o.s0, "offset of the first interval");
  scan->add_option("--t0", o.t0, "offset of the second interval");
  weights(scan);
  harness(scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  auto usage_fail = [&](const std::string& msg) {
    std::cerr << "error: " << msg << "\n\n" << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return 2;
  };

  try {
    const Format format = parse_format(o.format);
    std::vector<BoundReport> records;
    if (*sum) {
      records = run_sum(kind, o);
    } else if (*count) {
      records = run_count(kind, o);
    } else if (*bilinear) {
      records = run_bilinear(kind, o);
    } else if (*check) {
      records = run_check(kind, check_config(o));
    } else {
      records = run_scan(kind, check_config(o), parse_grid(o.grid));
    }
    return emit(records, format);
  } catch (const UsageError& e) {
    return usage_fail(e.message);
  } catch (const HypothesisViolation& e) {
    return usage_fail("hypothesis violated: " + e.clause());
  } catch (const CostLimitExceeded& e) {
    return usage_fail(e.what());
  } catch (const Error& e) {
    return usage_fail(e.what());
  }
}
