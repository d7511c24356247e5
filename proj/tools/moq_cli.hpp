#pragma once

// Command-line driver. run() holds all logic so tests can call it in-process.
//
// Exit codes:
//   0  success
//   1  verify: at least one check failed
//   2  usage error, unreadable or invalid spec, unknown check name
//   3  evaluation or output error (domain, survival underflow, envelope, I/O)
//   4  a required parameter condition does not hold
//   5  a series or quadrature did not converge

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moq/moq.hpp"

namespace moq::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,
  kEvaluation = 3,
  kCondition = 4,
  kNonconvergence = 5,
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConditionViolated: return kCondition;
    case ErrorKind::Nonconvergence:
    case ErrorKind::ToleranceNotMet: return kNonconvergence;
    case ErrorKind::NonPositiveParameter:
    case ErrorKind::LengthMismatch: return kUsage;
    default: return kEvaluation;
  }
}

inline constexpr std::uint64_t kDefaultSeed = 42;

/// --seed, then the spec's seed, then MOQ_SEED, then 42.
inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, const std::optional<std::uint64_t>& spec_seed) {
  if (flag) return *flag;
  if (spec_seed) return *spec_seed;
  if (const char* env = std::getenv("MOQ_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || env[0] == '-') throw std::invalid_argument("MOQ_SEED must be a non-negative integer");
    return v;
  }
  return kDefaultSeed;
}

namespace detail {

struct Output {
  std::ofstream file;
  std::ostream* stream;
};

inline bool open_output(const std::string& path, std::ostream& fallback, Output& out) {
  if (path.empty() || path == "-") {
    out.stream = &fallback;
    return true;
  }
  out.file.open(path, std::ios::binary);
  out.stream = &out.file;
  return static_cast<bool>(out.file);
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Distributions built on a baseline cdf through a q-parameter transform"};
  app.name("moq");
  app.require_subcommand(1);

  std::string spec_path, out_path;
  std::optional<std::uint64_t> seed;

  auto* curve = app.add_subcommand("curve", "evaluate cdf, sf, pdf or hazard on a grid and write CSV");
  std::string quantity = "hazard";
  double lo = 0.0, hi = 0.0, step = 0.0;
  curve->add_option("--spec", spec_path, "distribution spec (JSON)")->required();
  curve->add_option("--quantity", quantity, "cdf, sf, pdf or hazard")
      ->check(CLI::IsMember({"cdf", "sf", "pdf", "hazard"}))
      ->capture_default_str();
  curve->add_option("--lo", lo, "first grid point")->required();
  curve->add_option("--hi", hi, "last grid point")->required();
  curve->add_option("--step", step, "grid spacing")->required();
  curve->add_option("--out", out_path, "output file (default stdout)");

  auto* sample_cmd = app.add_subcommand("sample", "draw a sample, one value per line");
  std::string sampler_name = "inverse-cdf";
  std::size_t n = 0;
  sample_cmd->add_option("--spec", spec_path, "distribution spec (JSON)")->required();
  sample_cmd->add_option("--sampler", sampler_name, "accept-reject, random-maxima or inverse-cdf")
      ->check(CLI::IsMember({"accept-reject", "random-maxima", "inverse-cdf"}))
      ->capture_default_str();
  sample_cmd->add_option("--n", n, "sample size")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", seed, "RNG seed (overrides the spec and MOQ_SEED)");
  sample_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* moment_cmd = app.add_subcommand("moment", "compute E(X^r)");
  double r = 1.0, tol = 1e-12;
  std::string method_name = "auto";
  moment_cmd->add_option("--spec", spec_path, "distribution spec (JSON)")->required();
  moment_cmd->add_option("--r", r, "moment order")->required();
  moment_cmd->add_option("--method", method_name, "series-c, series-d, closed-form, scaling, quadrature or auto")
      ->check(CLI::IsMember({"series-c", "series-d", "closed-form", "scaling", "quadrature", "auto"}))
      ->capture_default_str();
  moment_cmd->add_option("--tol", tol, "relative tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  moment_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "run the verification checks and print a TSV table");
  std::vector<std::string> check_names;
  double budget = 1.0;
  std::string inject = "none";
  bool list = false;
  verify_cmd->add_option("--spec", spec_path, "spec file to check, or 'all' for the built-in battery");
  verify_cmd->add_option("--check", check_names, "run only the named check (repeatable)");
  verify_cmd->add_option("--budget", budget, "scale for sample sizes and case counts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify_cmd->add_option("--seed", seed, "RNG seed (overrides the spec and MOQ_SEED)");
  verify_cmd->add_option("--inject", inject, "fault injection: none or envelope-half")
      ->check(CLI::IsMember({"none", "envelope-half"}))
      ->capture_default_str();
  verify_cmd->add_flag("--list", list, "list check names and exit");
  verify_cmd->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  if (curve->parsed() && !(lo < hi && step > 0.0)) {
    err << "moq curve: need --lo < --hi and --step > 0\n" << curve->help();
    return kUsage;
  }

  if (verify_cmd->parsed() && list) {
    for (const auto& e : verify::registry()) out << e.name << '\t' << e.description << '\n';
    return kOk;
  }

  std::optional<DistributionSpec> spec;
  const bool needs_spec = !verify_cmd->parsed() || (!spec_path.empty() && spec_path != "all");
  if (needs_spec) {
    try {
      spec = load_spec(spec_path);
    } catch (const SpecError& e) {
      err << "moq: spec error: " << e.what() << '\n';
      return kUsage;
    }
  }

  std::uint64_t resolved_seed = kDefaultSeed;
  try {
    resolved_seed = resolve_seed(seed, spec ? spec->seed : std::nullopt);
  } catch (const std::invalid_argument& e) {
    err << "moq: " << e.what() << '\n';
    return kUsage;
  }

  detail::Output sink{};
  if (!detail::open_output(out_path, out, sink)) {
    err << "moq: cannot open output file '" << out_path << "'\n";
    return kEvaluation;
  }
  std::ostream& os = *sink.stream;

  try {
    if (curve->parsed()) {
      const auto q = *parse_quantity(quantity);
      os << curve_csv(spec->distribution(), q, lo, hi, step);
    } else if (sample_cmd->parsed()) {
      const auto kind = *parse_sampler(sampler_name);
      RandomSource rng(resolved_seed);
      const SampleBatch batch = sample(spec->distribution(), kind, rng, n);
      std::string text = "# sampler=" + std::string(to_string(kind)) + " rng=" + RandomSource::kAlgorithm +
                         " seed=" + std::to_string(resolved_seed) + " n=" + std::to_string(batch.values.size());
      if (kind == SamplerKind::AcceptReject) {
        text += " n_proposed=" + std::to_string(batch.n_proposed) +
                " acceptance_rate=" + format_real(batch.acceptance_rate());
      }
      text += '\n';
      for (double v : batch.values) {
        text += format_real(v);
        text += '\n';
      }
      os << text;
    } else if (moment_cmd->parsed()) {
      const auto method = *parse_moment_method(method_name);
      const MomentResult res = moment(spec->distribution(), {r, method, tol});
      os << "value=" << format_real(res.value) << " method=" << to_string(res.method_used)
         << " terms_used=" << res.terms_used << " error_estimate=" << format_real(res.error_estimate) << '\n';
    } else if (verify_cmd->parsed()) {
      for (const auto& name : check_names) {
        if (verify::find_check(name) == nullptr) {
          err << "moq verify: unknown check '" << name << "' (see --list)\n";
          return kUsage;
        }
      }
      verify::VerifyOptions opt;
      opt.budget = budget;
      opt.seed = resolved_seed;
      opt.inject = inject == "envelope-half" ? verify::Injection::EnvelopeHalf : verify::Injection::None;
      opt.spec = spec;
      const auto results = verify::run_checks(check_names, opt);
      std::size_t pass = 0, fail = 0, skip = 0;
      os << "check\tstatus\tseconds\tdetail\n";
      for (const auto& res : results) {
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.2f", res.seconds);
        os << res.name << '\t' << verify::to_string(res.status) << '\t' << secs << '\t' << res.detail << '\n';
        (res.status == verify::Status::Pass ? pass : res.status == verify::Status::Fail ? fail : skip)++;
      }
      os << "# seed=" << resolved_seed << " budget=" << format_real(budget) << " pass=" << pass << " fail=" << fail
         << " skip=" << skip << '\n';
      os.flush();
      return fail == 0 ? kOk : kVerifyFailed;
    }
  } catch (const Error& e) {
    err << "moq: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  os.flush();
  if (!os) {
    err << "moq: write failed\n";
    return kEvaluation;
  }
  return kOk;
}

}  // namespace moq::cli
