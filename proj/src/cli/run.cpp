#include "markoff/cli/run.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include "commands.hpp"
#include "markoff/error.hpp"
#include "markoff/matseq/cache_io.hpp"
#include "markoff/matseq/seed_search.hpp"

namespace markoff::cli {

namespace {

std::vector<BigInt> parse_triple(const std::string& text) {
  std::vector<BigInt> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    BigInt v;
    if (item.empty() || v.set_str(item, 10) != 0) throw FormatError("bad seed entry '" + item + "'");
    out.push_back(v);
  }
  if (out.size() != 3) throw FormatError("seed matrix '" + text + "' needs three entries a,b,c");
  return out;
}

ExitStatus status_for(const Error& e) {
  const std::string& n = e.name();
  if (n == "PrecisionExhausted" || n == "RadiusTooLarge" || n == "CapExceeded") return ExitStatus::precision;
  if (n == "FormatError") return ExitStatus::usage;
  return ExitStatus::check_failed;
}

}  // namespace

matseq::SeedPair parse_seed(const std::string& spec) {
  if (spec == "canonical") return matseq::canonical_seed();
  const auto semi = spec.find(';');
  if (semi == std::string::npos) throw FormatError("seed must be 'canonical' or 'a,b,c;d,e,f', got '" + spec + "'");
  const auto a = parse_triple(spec.substr(0, semi));
  const auto b = parse_triple(spec.substr(semi + 1));
  return matseq::assess_seed(matseq::SymMat2::checked(a[0], a[1], a[2]), matseq::SymMat2::checked(b[0], b[1], b[2]));
}

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Markoff extremal number laboratory", argv.empty() ? "markoff_lab" : argv.front()};
  app.require_subcommand(1);

  RunConfig config;
  std::optional<int> k_max;
  if (const char* env = std::getenv(kOutputEnv); env && *env) {
    config.out_dir = env;
  } else {
    config.out_dir = kDefaultOutputDir;
  }
  bool no_write = false;
  app.add_option("--seed", config.seed, "'canonical' or a,b,c;d,e,f")->capture_default_str();
  app.add_option("--k-max", k_max, "largest sequence index (hard cap 40)");
  app.add_flag("--allow-large-k", config.allow_large_k, "lift the k-max cap");
  app.add_option("--bits", config.bits, "precision override in bits");
  app.add_option("--out", config.out_dir, "report directory (default $MARKOFF_LAB_OUT)");
  app.add_option("--cache", config.cache, "sequence cache file");
  app.add_flag("--no-write", no_write, "print checks without writing reports");

  detail::SeedsArgs seeds;
  detail::GenArgs gen;
  detail::VerifyArgs verify;
  detail::AuditArgs audit;
  detail::DeltaArgs delta;
  detail::ConvergentsArgs conv;
  detail::MjArgs mj;
  detail::Deg6Args deg6;
  detail::ScanArgs scan;
  detail::LagrangeArgs lag;
  detail::ReportArgs report;

  std::function<CommandReport(const detail::Context&)> action;
  auto sub = [&](const char* name, const char* help, auto fn) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    s->callback([&action, fn] { action = fn; });
    return s;
  };

  auto* s = sub("seeds", "search commuting seed pairs", [&](const auto& c) { return detail::run_seeds(c, seeds); });
  s->add_option("--bound", seeds.bound, "entry bound")->check(CLI::Range(1, 4))->capture_default_str();

  sub("gen", "generate terms and check growth", [&](const auto& c) { return detail::run_gen(c, gen); });
  sub("verify", "run the exact identity suite", [&](const auto& c) { return detail::run_verify(c, verify); });

  s = sub("audit", "audit asymptotic estimates", [&](const auto& c) { return detail::run_audit(c, audit); });
  s->add_option("--id", audit.id, "single estimate id");
  s->add_option("--k-lo", audit.k_lo)->capture_default_str();
  s->add_option("--k-hi", audit.k_hi)->capture_default_str();
  s->add_option("--baseline", audit.baseline, "compare against a stored baseline");
  s->add_option("--write-baseline", audit.write_baseline, "store the constants of this run");

  s = sub("delta", "accumulation points of {x_k0 R(xi)}", [&](const auto& c) { return detail::run_delta(c, delta); });
  s->add_option("--R", delta.R, "coefficients c0,c1,...")->capture_default_str();
  s->add_option("--k-lo", delta.k_lo)->capture_default_str();
  s->add_option("--k-hi", delta.k_hi)->capture_default_str();

  s = sub("convergents", "convergents of delta_l(xi^3)",
          [&](const auto& c) { return detail::run_convergents(c, conv); });
  s->add_option("--ell", conv.ell)->check(CLI::Range(1, 3))->capture_default_str();
  s->add_option("--k-table", conv.k_max, "largest k matched against denominators")->capture_default_str();

  s = sub("mj", "search the m_j constants", [&](const auto& c) { return detail::run_mj(c, mj); });
  s->add_option("--j", mj.j)->check(CLI::Range(1, 6));
  s->add_option("--m-bound", mj.m_bound)->check(CLI::PositiveNumber)->capture_default_str();
  s->add_option("--k-lo", mj.k_lo)->capture_default_str();
  s->add_option("--k-hi", mj.k_hi)->capture_default_str();
  s->add_option("--threshold", mj.threshold)->capture_default_str();

  s = sub("deg6", "degree-6 approximation pipeline", [&](const auto& c) { return detail::run_deg6(c, deg6); });
  s->add_option("--k-lo", deg6.k_lo)->check(CLI::Range(4, 60))->capture_default_str();
  s->add_option("--k-hi", deg6.k_hi)->capture_default_str();

  s = sub("scan", "brute-force lower-bound scans", [&](const auto& c) { return detail::run_scan(c, scan); });
  s->add_option("--mode", scan.mode, "r (R only) or rp (R plus P)")
      ->check(CLI::IsMember({"r", "rp"}))
      ->capture_default_str();
  s->add_option("--d", scan.d)->check(CLI::Range(1, 6))->capture_default_str();
  s->add_option("--H", scan.H)->check(CLI::Range(1L, 1000L))->capture_default_str();
  s->add_option("--R", scan.R, "fixed R for mode rp")->capture_default_str();
  s->add_option("--budget", scan.budget)->capture_default_str();

  s = sub("lagrange", "minimum of n ||n xi||", [&](const auto& c) { return detail::run_lagrange(c, lag); });
  s->add_option("--n-max", lag.n_max)->capture_default_str();

  s = sub("report", "summarize the reports in a directory",
          [&](const auto& c) { return detail::run_report(c, report); });
  s->add_option("--dir", report.dir);

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return static_cast<int>(ExitStatus::usage);
  }
  config.write_reports = !no_write;

  const std::string command = app.get_subcommands().front()->get_name();
  if (k_max) {
    if (*k_max < 2) {
      err << "usage error: --k-max must be at least 2\n";
      return static_cast<int>(ExitStatus::usage);
    }
    if (*k_max > kHardKMax && !config.allow_large_k) {
      err << "usage error: --k-max " << *k_max << " exceeds the hard cap " << kHardKMax
          << " (pass --allow-large-k to lift it)\n";
      return static_cast<int>(ExitStatus::usage);
    }
    config.k_max = *k_max;
    if (command == "gen") gen.k_max = *k_max;
    if (command == "verify") verify.k_max = *k_max;
  }
  const int cap = std::max(config.k_max, kHardKMax);

  try {
    matseq::SeedPair seed;
    std::unique_ptr<matseq::MarkoffSequence> seq;
    if (config.cache && std::filesystem::exists(*config.cache)) {
      seq = std::make_unique<matseq::MarkoffSequence>(matseq::read_sequence_cache(*config.cache, cap));
      seed = seq->seed();
    } else {
      try {
        seed = parse_seed(config.seed);
      } catch (const Error& e) {
        err << "usage error: --seed: " << e.what() << "\n";
        return static_cast<int>(ExitStatus::usage);
      }
      if (!seed.admissible) err << "warning: seed " << seed.to_string() << " is not flagged admissible\n";
      seq = std::make_unique<matseq::MarkoffSequence>(seed, cap);
    }

    const detail::Context ctx{*seq, config, err};
    CommandReport rep = action(ctx);
    rep.config["seed_spec"] = config.seed;
    if (config.k_max) rep.config["k_max"] = config.k_max;
    if (config.bits) rep.config["bits"] = *config.bits;

    for (const auto& line : rep.lines) out << line << "\n";
    if (config.write_reports) {
      write_report(rep, seed, config.out_dir);
      out << "report: " << (std::filesystem::path(config.out_dir) / (rep.name + ".json")).string() << "\n";
    }
    if (config.cache) matseq::write_sequence_cache(*seq, *config.cache);
    return static_cast<int>(rep.failures.empty() ? ExitStatus::ok : ExitStatus::check_failed);
  } catch (const Error& e) {
    err << "error in " << command << ": " << e.what() << "\n";
    return static_cast<int>(status_for(e));
  } catch (const std::exception& e) {
    err << "error in " << command << ": " << e.what() << "\n";
    return static_cast<int>(ExitStatus::check_failed);
  }
}

}  // namespace markoff::cli
