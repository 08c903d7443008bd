#include "ffk/report.hpp"

#include <cmath>
#include <limits>

namespace ffk {

BoundReport make_report(std::string check, Params params, double lhs, std::optional<double> rhs_exact,
                        std::optional<double> rhs_main, unsigned q) {
  BoundReport r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs_exact = rhs_exact;
  r.rhs_main = rhs_main;
  if (rhs_main) {
    r.slack_log_q = lhs <= 0 ? -std::numeric_limits<double>::infinity()
                             : std::log(lhs / *rhs_main) / std::log(static_cast<double>(q));
  }
  r.passed = !rhs_exact || lhs <= *rhs_exact * (1 + kRelTol);
  return r;
}

BoundReport identity_report(std::string check, Params params, bool passed, double lhs,
                            std::optional<std::complex<double>> value) {
  BoundReport r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.lhs = lhs;
  r.passed = passed;
  r.value = value;
  return r;
}

}  // namespace ffk
