// Runs the acceptance battery at full budget and prints one line per criterion.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "moq/moq.hpp"
#include "moq_cli.hpp"

namespace fs = std::filesystem;
using namespace moq;

namespace {

struct Criterion {
  int id;
  const char* label;
  const char* check;
};

const std::vector<Criterion> kCriteria = {
    {1, "mo-reduction", "mo-reduction"},
    {2, "g-properties", "g-properties"},
    {3, "series-fidelity", "series-fidelity"},
    {4, "moment-cross-validation", "series-vs-quadrature"},
    {5, "closed-form", "closed-form"},
    {6, "sampler-correctness", "sampler-ks"},
    {7, "logistic-convolution", "logistic-convolution"},
    {8, "expectation-bound", "expectation-bound"},
    {9, "hazard-extrema", "hazard-extrema"},
    {10, "composition", "composition"},
    {11, "envelope-dominance", "envelope"},
};

// Two runs of `moq curve` on the two-parameter spec must produce identical bytes and
// the expected extrema counts.
verify::CheckOutcome curve_through_cli() {
  const fs::path dir = fs::temp_directory_path() / "moq_acceptance";
  fs::create_directories(dir);
  const std::string base = (dir / "base.json").string();
  const std::string ext = (dir / "ext.json").string();
  std::ofstream(base) << R"({"baseline": {"family": "weibull", "scale": 2, "shape": 2}, "a": [1]})";
  std::ofstream(ext) << R"({"baseline": {"family": "weibull", "scale": 2, "shape": 2}, "a": [1e-6, 0.15]})";

  auto run = [](const std::string& spec, std::string& csv) {
    const char* argv[] = {"moq", "curve", "--spec", spec.c_str(), "--quantity", "hazard",
                          "--lo", "0.01", "--hi", "6", "--step", "0.01"};
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(std::size(argv)), argv, out, err);
    csv = out.str();
    return code;
  };
  std::string b1, b2, e1, e2;
  const bool ran = run(base, b1) == 0 && run(base, b2) == 0 && run(ext, e1) == 0 && run(ext, e2) == 0;
  fs::remove_all(dir);
  if (!ran) return {verify::Status::Fail, "curve command failed"};

  const auto vb = verify::csv_values(b1);
  const auto ve = verify::csv_values(e1);
  const std::size_t nb = count_interior_extrema(vb);
  const std::size_t ne = count_interior_extrema(ve);
  const bool stable = b1 == b2 && e1 == e2;
  const bool ok = stable && vb.size() == 600 && ve.size() == 600 && nb == 0 && ne >= 2;
  return {ok ? verify::Status::Pass : verify::Status::Fail,
          "cli: baseline extrema " + std::to_string(nb) + ", extension extrema " + std::to_string(ne) +
              (stable ? ", byte-identical reruns" : ", reruns differ")};
}

}  // namespace

int main() {
  verify::VerifyOptions opt;
  opt.budget = 1.0;
  opt.seed = 42;

  std::vector<std::string> names;
  for (const auto& c : kCriteria) names.push_back(c.check);

  const auto t0 = std::chrono::steady_clock::now();
  const auto results = verify::run_checks(names, opt);
  int failed = 0;
  for (std::size_t i = 0; i < kCriteria.size(); ++i) {
    const auto& c = kCriteria[i];
    const auto& r = results[i];
    bool pass = r.status == verify::Status::Pass;
    std::string detail = r.detail;
    if (c.id == 9) {
      const auto via_cli = curve_through_cli();
      pass = pass && via_cli.first == verify::Status::Pass;
      detail += "; " + via_cli.second;
    }
    failed += pass ? 0 : 1;
    std::printf("AC%d %s %s (%.2fs) %s\n", c.id, c.label, pass ? "PASS" : "FAIL", r.seconds, detail.c_str());
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("# %zu criteria, %d failed, %.1fs, seed %llu\n", kCriteria.size(), failed, total,
              static_cast<unsigned long long>(opt.seed));
  return failed == 0 ? 0 : 1;
}
