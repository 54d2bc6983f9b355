#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "markoff/cli/run.hpp"
#include "markoff/realfield/precision.hpp"

namespace markoff::cli::detail {

struct Context {
  const matseq::MarkoffSequence& seq;
  const RunConfig& config;
  std::ostream& err;

  /// The scheduled policy, or --bits with a warning when it is below the schedule.
  realfield::PrecisionPolicy policy(const realfield::PrecisionPolicy& scheduled) const;
};

struct SeedsArgs {
  int bound = 2;
};
struct GenArgs {
  int k_max = 20;
};
struct VerifyArgs {
  int k_max = 30;
};
struct AuditArgs {
  std::optional<std::string> id;
  int k_lo = 8;
  int k_hi = 20;
  std::optional<std::string> baseline;
  std::optional<std::string> write_baseline;
};
struct DeltaArgs {
  std::string R = "0,0,0,1";
  int k_lo = 8;
  int k_hi = 20;
};
struct ConvergentsArgs {
  int ell = 1;
  int k_max = 17;
};
struct MjArgs {
  std::optional<int> j;
  long m_bound = 4000;
  int k_lo = 6;
  int k_hi = 16;
  double threshold = 1e4;
};
struct Deg6Args {
  int k_lo = 8;
  int k_hi = 18;
};
struct ScanArgs {
  std::string mode = "r";
  int d = 3;
  long H = 12;
  std::string R = "0,0,0,1";
  long budget = 20'000'000;
};
struct LagrangeArgs {
  long n_max = 1'000'000;
};
struct ReportArgs {
  std::optional<std::string> dir;
};

CommandReport run_seeds(const Context& c, const SeedsArgs& a);
CommandReport run_gen(const Context& c, const GenArgs& a);
CommandReport run_verify(const Context& c, const VerifyArgs& a);
CommandReport run_audit(const Context& c, const AuditArgs& a);
CommandReport run_delta(const Context& c, const DeltaArgs& a);
CommandReport run_convergents(const Context& c, const ConvergentsArgs& a);
CommandReport run_mj(const Context& c, const MjArgs& a);
CommandReport run_deg6(const Context& c, const Deg6Args& a);
CommandReport run_scan(const Context& c, const ScanArgs& a);
CommandReport run_lagrange(const Context& c, const LagrangeArgs& a);
CommandReport run_report(const Context& c, const ReportArgs& a);

}  // namespace markoff::cli::detail
