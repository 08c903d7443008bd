#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ffk {

using Params = std::vector<std::pair<std::string, std::string>>;

/// One verification record.
struct BoundReport {
  std::string check;
  Params params;
  double lhs = 0;
  /// Exact proof-level right-hand side; absent for pure comparators and
  /// identity checks.
  std::optional<double> rhs_exact;
  /// Main term of the displayed bound with q^{o(r)} set to 1; absent for
  /// identity checks.
  std::optional<double> rhs_main;
  /// log_q(lhs / rhs_main); -inf when lhs is 0, absent without rhs_main.
  std::optional<double> slack_log_q;
  bool passed = true;
  std::optional<std::complex<double>> value;
  /// Free-form diagnostic shown only in pretty output.
  std::string note;
};

inline constexpr double kRelTol = 1e-9;

/// Fills slack_log_q and passed (lhs <= rhs_exact (1 + 1e-9) when an exact
/// bound is present).
BoundReport make_report(std::string check, Params params, double lhs, std::optional<double> rhs_exact,
                        std::optional<double> rhs_main, unsigned q);

/// Identity record: passed carries the comparison result.
BoundReport identity_report(std::string check, Params params, bool passed, double lhs = 0,
                            std::optional<std::complex<double>> value = std::nullopt);

}  // namespace ffk
