// One line per acceptance criterion; exit status 0 iff every line passes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "eisen/parallel.hpp"
#include "eisen_verify/suites.hpp"

namespace {

using eisen::verify::Check;
using eisen::verify::Relation;
using eisen::verify::SuiteResult;

struct Timed {
  SuiteResult result;
  double seconds{0};
};

Timed run(const std::string& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r = eisen::verify::run_suite(suite, {});
  return {std::move(r), std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const char* symbol(Relation r) {
  switch (r) {
    case Relation::AtMost: return "<=";
    case Relation::AtLeast: return ">=";
    case Relation::Equal: return "==";
  }
  return "?";
}

class Report {
 public:
  void line(const std::string& name, const SuiteResult& suite, std::initializer_list<const char*> checks,
            std::vector<std::pair<std::string, bool>> extra = {}) {
    bool pass = true;
    std::string detail;
    for (const char* c : checks) {
      const Check& k = suite.check(c);
      pass = pass && k.pass;
      detail += (detail.empty() ? "" : "; ") + k.name + " " + fmt(k.measured) + " " + symbol(k.relation) + " " +
                fmt(k.limit);
    }
    for (const auto& [text, ok] : extra) {
      pass = pass && ok;
      detail += (detail.empty() ? "" : "; ") + text;
    }
    emit(name, pass, detail);
  }

  void emit(const std::string& name, bool pass, const std::string& detail) {
    all_ = all_ && pass;
    std::cout << (pass ? "PASS  " : "FAIL  ") << name << ": " << detail << std::endl;
  }

  bool all() const { return all_; }

 private:
  bool all_ = true;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Exit status of `eisen verify all` writing its report to `out`.
int verify_all(const std::string& cli, const std::string& out, int threads) {
  const std::string cmd = "\"" + cli + "\" verify all --seed 0 --threads " + std::to_string(threads) + " --out \"" +
                          out + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : EISEN_CLI_PATH;
  const std::string scratch = argc > 2 ? argv[2] : EISEN_ACCEPTANCE_SCRATCH;
  eisen::set_thread_budget(0);
  Report report;

  const Timed transformation = run("transformation");
  report.line("transformation law", transformation.result,
              {"residual_over_summed_tails", "residual_abs", "pi_homomorphism"},
              {{"runtime " + fmt(transformation.seconds) + " s <= 120 s", transformation.seconds <= 120.0}});

  const Timed laplacian = run("laplacian");
  report.line("laplacian eigenfunction", laplacian.result, {"eigenvalue_relative"});

  const Timed scattering = run("scattering");
  report.line("classical oracle agreement", scattering.result,
              {"sl2_oracle_vs_lattice", "sl2_coefficients_relative", "sl2_constant_term"});
  report.line("functional equation", scattering.result,
              {"sl2_functional_equation", "gamma0_11_functional_equation", "gamma0_11_scattering_vs_closed_form"});

  const Timed order = run("order");
  report.line("order structure", order.result,
              {"annihilates_1_0", "shorter_survives_1_0", "annihilates_1_1", "shorter_survives_1_1"});

  const Timed heights = run("heights");
  report.line("invariant heights", heights.result,
              {"sl2_c_gamma", "sl2_height_at_rho", "sl2_upper_bound_violations", "sl2_lower_bound_violations",
               "gamma0_11_upper_bound_violations", "gamma0_11_lower_bound_violations"});

  const Timed bessel = run("bessel");
  report.line("bessel package", bessel.result,
              {"recurrence_relative", "swapped_sign_rejected", "library_error_reported", "kappa_bound_violations",
               "whittaker_bound_held_out", "tail_lemma_held_out"});

  report.line("Q/E conversion", transformation.result, {"q_direct_vs_converted", "qe_round_trip"});

  const Timed resolvent = run("resolvent");
  report.line("resolvent identity", resolvent.result,
              {"relative_agreement", "relative_agreement_doubled_grid", "relative_tail", "other_sign_rejected"},
              {{"runtime " + fmt(resolvent.seconds) + " s <= 60 s", resolvent.seconds <= 60.0}});

  report.line("coefficient bound", scattering.result, {"bound_margin_0_0", "bound_margin_1_0"});

  // Different thread budgets on purpose: the report must not depend on them.
  const std::string first = scratch + "/verify_all_1.json", second = scratch + "/verify_all_2.json";
  const int status1 = verify_all(cli, first, 1);
  const int status2 = verify_all(cli, second, 2);
  const std::string a = slurp(first), b = slurp(second);
  report.emit("reproducibility", !a.empty() && a == b && status1 == status2,
              "two `verify all` reports (" + std::to_string(a.size()) + " bytes, exit " + std::to_string(status1) +
                  "/" + std::to_string(status2) + ") " + (a == b ? "byte-identical" : "differ"));

  return report.all() ? 0 : 1;
}
