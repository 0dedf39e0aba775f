#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eisen/errors.hpp"
#include "eisen/parallel.hpp"
#include "output.hpp"

namespace {

using namespace eisen;
using namespace eisen::cli;

constexpr int kExitOk = 0;
constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;

// Single-line machine-readable diagnostic on stderr.
void diagnose(const std::string& kind, const std::string& message) {
  std::cerr << Json{{"error", kind}, {"message", message}}.dump() << '\n';
}

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

template <class T>
T parse_env(const char* name, const std::string& text) {
  std::istringstream is(text);
  T value{};
  if (!(is >> value) || !is.eof()) throw ConfigError(std::string(name) + " is not a valid number: " + text);
  return value;
}

struct Flags {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
  std::optional<double> tail_target;
  std::string suite;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const Flags& flags, const std::string& text) {
  if (flags.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(flags.out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + flags.out_path);
  out << text;
}

RunConfig resolve(const Flags& flags, Command command) {
  Overrides o;
  if (auto v = env("EISEN_TAIL_TARGET")) o.tail_target = parse_env<double>("EISEN_TAIL_TARGET", *v);
  if (flags.tail_target) o.tail_target = flags.tail_target;
  o.seed = flags.seed;

  unsigned threads = 0;
  if (auto v = env("EISEN_THREADS")) threads = parse_env<unsigned>("EISEN_THREADS", *v);
  if (flags.threads) threads = *flags.threads;
  set_thread_budget(threads);

  std::string text = "{}";
  if (!flags.config_path.empty())
    text = read_file(flags.config_path);
  else if (command != Command::Verify)
    throw ConfigError("--config is required");
  return load_config(text, command, o);
}

int run_evaluate(const Flags& flags, Format format) {
  const RunConfig cfg = resolve(flags, Command::Evaluate);
  for (const auto& r : cfg.requests)
    if (!(r.s.real() > 1.0)) throw DomainError("Re(s) must exceed 1 for every request");
  std::vector<EvalRecord> records;
  records.reserve(cfg.requests.size());
  for (const auto& r : cfg.requests)
    records.push_back({r, eval_e(*cfg.system, {r.m, r.n, r.cusp}, r.z, r.s)});
  write_output(flags, render_evaluate(cfg, records, format));
  return kExitOk;
}

int run_fourier(const Flags& flags, Format format) {
  const RunConfig cfg = resolve(flags, Command::Fourier);
  const FourierRequest& req = *cfg.fourier;
  const std::int64_t K = std::max<std::int64_t>({1, -req.k_min, req.k_max});
  const FourierLine line = extract_line(*cfg.system, req.m, req.n, req.a, req.b, req.s, K, req.constant_heights);
  std::optional<double> residual;
  if (req.verify_expansion) residual = verify_expansion(*cfg.system, line, req.verify_points);
  write_output(flags, render_fourier(cfg, line, residual, format));
  return kExitOk;
}

int run_verify(const Flags& flags, Format format) {
  const RunConfig cfg = resolve(flags, Command::Verify);
  std::vector<std::string> names;
  if (flags.suite == "all")
    names = verify::suite_names();
  else
    names.push_back(flags.suite);
  const auto known = verify::suite_names();
  for (const auto& n : names)
    if (std::find(known.begin(), known.end(), n) == known.end()) throw CLI::ValidationError("unknown suite " + n);

  verify::Options options;
  options.seed = cfg.seed;
  options.tail_target = cfg.tail_target;
  std::vector<verify::SuiteResult> results;
  const auto start = std::chrono::steady_clock::now();
  bool all = true;
  for (const auto& n : names) {
    const auto t0 = std::chrono::steady_clock::now();
    results.push_back(verify::run_suite(n, options));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && results.back().pass();
    std::cerr << n << ": " << (results.back().pass() ? "pass" : "FAIL") << " (" << secs << " s)\n";
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "runtime: " << total << " s on " << thread_budget() << " thread(s)\n";
  write_output(flags, render_verify(cfg, results, format));
  return all ? kExitOk : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher-order Eisenstein series: evaluation, Fourier extraction and verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--config", flags.config_path, "JSON run configuration");
  app.add_option("--out", flags.out_path, "write output here instead of stdout");
  app.add_option("--format", flags.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", flags.threads, "worker threads, 0 = hardware concurrency");
  app.add_option("--seed", flags.seed, "seed for sampled checks (default 0)");
  app.add_option("--tail-target", flags.tail_target, "truncation tail target")->check(CLI::PositiveNumber);

  auto* evaluate = app.add_subcommand("evaluate", "evaluate E_a^{m,n}(z, s) for the configured requests");
  auto* fourier = app.add_subcommand("fourier", "extract one line of Fourier coefficients");
  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  verify_cmd->add_option("suite", flags.suite, "suite name or all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    diagnose("usage", e.what());
    return kExitUsage;
  }

  const Format format = flags.format == "csv" ? Format::Csv : Format::Json;
  try {
    if (evaluate->parsed()) return run_evaluate(flags, format);
    if (fourier->parsed()) return run_fourier(flags, format);
    return run_verify(flags, format);
  } catch (const CLI::ValidationError& e) {
    diagnose("usage", e.what());
    return kExitUsage;
  } catch (const ConfigError& e) {
    diagnose("config", e.what());
    return kExitUsage;
  } catch (const std::domain_error& e) {
    diagnose("domain", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    diagnose("invalid_argument", e.what());
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    diagnose("out_of_range", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    // Numerical failures (insufficient truncation, lost precision).
    diagnose("numeric", e.what());
    return kExitCheck;
  }
}
