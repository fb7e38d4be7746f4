// Command-line driver: emits the gain/disturbance and lossy-channel curves
// as CSV/JSON data, runs the aggregated verification suite, and runs single
// Monte Carlo estimators against their analytic references.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.
// All randomness derives from --seed: curve row i uses seed + i (channel
// curves use seed + 3i + k for strategy k), and the verify suite derives one
// substream per check.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qclone/channels.hpp"
#include "qclone/emit.hpp"
#include "qclone/povm.hpp"
#include "qclone/tradeoff.hpp"
#include "qclone/verify.hpp"

namespace {

using namespace qclone;

// Writes to the path, or to stdout when the path is empty.  Returns 0 or 2.
int writeOutput(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fputs(content.c_str(), stdout);
    return 0;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    std::fprintf(stderr, "error: cannot open '%s' for writing\n",
                 path.c_str());
    return 2;
  }
  file << content;
  file.flush();
  if (!file.good()) {
    std::fprintf(stderr, "error: failed while writing '%s'\n", path.c_str());
    return 2;
  }
  return 0;
}

int emitTable(const emit::Table& table, const nlohmann::json& config,
              const std::string& format, const std::string& out) {
  return writeOutput(
      out, format == "json" ? emit::toJson(table, config)
                            : emit::toCsv(table));
}

// Inverts the (strictly increasing) estimation gain G(mu) on [0, mu*].
double invertAsymG(double g) {
  const double muStar = std::sqrt(2.0 / 3.0);
  double lo = 0.0, hi = muStar;
  if (g <= tradeoff::asymGAnalytic(lo)) return lo;
  if (g >= tradeoff::asymGAnalytic(hi)) return hi;
  while (hi - lo > 1e-12) {
    const double mid = (lo + hi) / 2.0;
    (tradeoff::asymGAnalytic(mid) < g ? lo : hi) = mid;
  }
  return (lo + hi) / 2.0;
}

int cmdTradeoffCurve(long long samples, std::uint64_t seed, int grid,
                     const std::string& format, const std::string& out) {
  emit::Table table;
  table.columns = {"G", "F_banaszek", "F_asym_analytic", "F_sym_analytic",
                   "F_mc", "mc_stderr"};
  for (int i = 0; i < grid; ++i) {
    const double g = 0.5 + (2.0 / 3.0 - 0.5) * i / (grid - 1);
    const double mu = invertAsymG(g);
    const double xi = 3.0 * std::sqrt(std::max(0.0, g - 1.0 / 3.0));
    const tradeoff::McEstimate mc =
        tradeoff::symFMonteCarlo(xi, samples, seed + i);
    table.rows.push_back({g, tradeoff::banaszekF(g), 1.0 - mu * mu / 2.0,
                          tradeoff::symGF(xi).f, mc.mean, mc.stdError});
  }
  const nlohmann::json config = {{"command", "tradeoff-curve"},
                                 {"samples", samples},
                                 {"seed", seed},
                                 {"grid", grid},
                                 {"format", format}};
  return emitTable(table, config, format, out);
}

int cmdChannelCurves(long long samples, bool withMc, std::uint64_t seed,
                     int grid, const std::string& format,
                     const std::string& out) {
  emit::Table table;
  table.columns = {"p", "F_dir", "F_cl", "G_opt", "F_qm"};
  if (withMc)
    for (const char* name : {"F_dir_mc", "F_dir_mc_stderr", "F_cl_mc",
                             "F_cl_mc_stderr", "F_qm_mc", "F_qm_mc_stderr"})
      table.columns.push_back(name);

  for (int i = 0; i < grid; ++i) {
    const double p = static_cast<double>(i) / (grid - 1);
    std::vector<double> row = {p, channels::fDirect(p),
                               channels::fClassical(p), 2.0 / 3.0,
                               channels::fQuantumMemory(p)};
    if (withMc) {
      int k = 0;
      for (const channels::Strategy strategy :
           {channels::Strategy::Direct, channels::Strategy::ClassicalAssist,
            channels::Strategy::QuantumMemory}) {
        const tradeoff::McEstimate mc = channels::simulateStrategy(
            strategy, p, samples, seed + 3 * i + k++);
        row.push_back(mc.mean);
        row.push_back(mc.stdError);
      }
    }
    table.rows.push_back(std::move(row));
  }
  nlohmann::json config = {{"command", "channel-curves"},
                           {"seed", seed},
                           {"grid", grid},
                           {"format", format},
                           {"mc", withMc}};
  if (withMc) config["samples"] = samples;
  return emitTable(table, config, format, out);
}

int cmdStorageCurve(int grid, const std::string& format,
                    const std::string& out) {
  emit::Table table;
  table.columns = {"p", "F_S", "F_C", "advantage"};
  for (int i = 0; i < grid; ++i) {
    const double p = static_cast<double>(i) / (grid - 1);
    table.rows.push_back({p, channels::fStoragePlain(p),
                          channels::fStorageCloned(p),
                          channels::storageAdvantage(p)});
  }
  const nlohmann::json config = {
      {"command", "storage-curve"}, {"grid", grid}, {"format", format}};
  return emitTable(table, config, format, out);
}

int cmdVerify(long long samples, std::uint64_t seed, int grid,
              std::optional<double> tolerance, const std::string& out) {
  const verify::Report report =
      verify::runSuite(samples, seed, grid, tolerance);
  const int io = writeOutput(out, verify::formatReport(report));
  if (io != 0) return io;
  return report.allPassed() ? 0 : 1;
}

struct McRequest {
  std::string strategy;
  std::optional<double> p, mu, xi;
  long long samples;
  std::uint64_t seed;
};

// Runs one estimator and prints mean/stderr, the analytic reference, and a
// 3-sigma verdict.  Throws std::invalid_argument on a parameter/strategy
// mismatch (exit 2 via main).
int cmdMc(const McRequest& req, const std::string& out) {
  const auto need = [&](bool p, bool mu, bool xi) {
    if (p != req.p.has_value() || mu != req.mu.has_value() ||
        xi != req.xi.has_value())
      throw std::invalid_argument(
          "mc: strategy '" + req.strategy + "' takes exactly" +
          std::string(p ? " --p" : "") + std::string(mu ? " --mu" : "") +
          std::string(xi ? " --xi" : "") +
          (p || mu || xi ? "" : " no parameter"));
  };

  tradeoff::McEstimate est{0.0, 0.0, 0, 0};
  double reference = 0.0;
  std::string paramLine;
  if (req.strategy == "direct") {
    need(true, false, false);
    est = channels::simulateStrategy(channels::Strategy::Direct, *req.p,
                                     req.samples, req.seed);
    reference = channels::fDirect(*req.p);
    paramLine = "p=" + emit::formatDouble(*req.p);
  } else if (req.strategy == "classicalAssist") {
    if (!req.p || req.xi)
      throw std::invalid_argument(
          "mc: strategy 'classicalAssist' takes --p and optionally --mu");
    est = channels::simulateStrategy(channels::Strategy::ClassicalAssist,
                                     *req.p, req.samples, req.seed, req.mu);
    reference = req.mu ? channels::fClassicalAt(*req.p, *req.mu)
                       : channels::fClassical(*req.p);
    paramLine = "p=" + emit::formatDouble(*req.p);
    if (req.mu) paramLine += " mu=" + emit::formatDouble(*req.mu);
  } else if (req.strategy == "quantumMemory") {
    need(true, false, false);
    est = channels::simulateStrategy(channels::Strategy::QuantumMemory,
                                     *req.p, req.samples, req.seed);
    reference = channels::fQuantumMemory(*req.p);
    paramLine = "p=" + emit::formatDouble(*req.p);
  } else if (req.strategy == "storage") {
    need(true, false, false);
    est = channels::simulateStorage(*req.p, req.samples, req.seed);
    reference = channels::fStorageCloned(*req.p);
    paramLine = "p=" + emit::formatDouble(*req.p);
  } else if (req.strategy == "asymG") {
    need(false, true, false);
    est = tradeoff::asymGMonteCarlo(*req.mu, req.samples, req.seed);
    reference = tradeoff::asymGAnalytic(*req.mu);
    paramLine = "mu=" + emit::formatDouble(*req.mu);
  } else if (req.strategy == "symG") {
    need(false, false, true);
    est = tradeoff::symGMonteCarlo(*req.xi, req.samples, req.seed);
    reference = tradeoff::symGF(*req.xi).g;
    paramLine = "xi=" + emit::formatDouble(*req.xi);
  } else if (req.strategy == "symF") {
    need(false, false, true);
    est = tradeoff::symFMonteCarlo(*req.xi, req.samples, req.seed);
    reference = tradeoff::symGF(*req.xi).f;
    paramLine = "xi=" + emit::formatDouble(*req.xi);
  } else {
    throw std::invalid_argument("mc: unknown strategy '" + req.strategy +
                                "'");
  }

  // Zero-variance estimators (exact branches) get an absolute slack.
  const double slack = std::max(3.0 * est.stdError, 1e-9);
  const bool pass = std::abs(est.mean - reference) <= slack;
  std::string text;
  text += "strategy=" + req.strategy + " " + paramLine + "\n";
  text += "n=" + std::to_string(est.n) +
          " seed=" + std::to_string(est.seed) + "\n";
  text += "mean=" + emit::formatDouble(est.mean) +
          " stderr=" + emit::formatDouble(est.stdError) + "\n";
  text += "reference=" + emit::formatDouble(reference) + "\n";
  text += std::string("verdict: ") + (pass ? "PASS" : "FAIL") + " (3 sigma)\n";
  const int io = writeOutput(out, text);
  if (io != 0) return io;
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qclone: 1->2 qubit cloning, optimal estimation, and the protocols "
      "they enable (gain/disturbance curves, lossy-channel strategies, "
      "memory-erasure protection)"};
  app.require_subcommand(1);

  long long samples = 100000;
  std::uint64_t seed = 42;
  int grid = 101;
  std::string format = "csv";
  std::string out;
  std::optional<double> tolerance;
  McRequest mcReq;

  const auto addCommon = [&](CLI::App* cmd, bool withSamples,
                             bool withGrid, bool withFormat) {
    if (withSamples)
      cmd->add_option("--samples", samples,
                      "Monte Carlo samples per estimate")
          ->check(CLI::Range(static_cast<long long>(100),
                             static_cast<long long>(2000000000)))
          ->capture_default_str();
    cmd->add_option("--seed", seed, "root RNG seed")->capture_default_str();
    if (withGrid)
      cmd->add_option("--grid", grid, "number of grid points")
          ->check(CLI::Range(2, 1000000))
          ->capture_default_str();
    if (withFormat)
      cmd->add_option("--format", format, "output format")
          ->check(CLI::IsMember({"csv", "json"}))
          ->capture_default_str();
    cmd->add_option("--out", out, "output path (default: stdout)");
  };

  CLI::App* tc = app.add_subcommand(
      "tradeoff-curve",
      "estimation gain G vs quantum fidelity F along the optimal bound");
  addCommon(tc, true, true, true);

  CLI::App* cc = app.add_subcommand(
      "channel-curves",
      "lossy-channel strategy fidelities vs transmittivity p");
  addCommon(cc, true, true, true);

  CLI::App* sc = app.add_subcommand(
      "storage-curve", "memory-erasure protection advantage vs p");
  addCommon(sc, false, true, true);

  CLI::App* vf = app.add_subcommand(
      "verify", "run every module invariant and agreement check");
  addCommon(vf, true, true, false);
  vf->add_option("--tolerance", tolerance,
                 "override the tolerance of every check");

  CLI::App* mc = app.add_subcommand(
      "mc", "run one Monte Carlo estimator against its analytic reference");
  addCommon(mc, true, false, false);
  mc->add_option("--strategy", mcReq.strategy, "estimator to run")
      ->required()
      ->check(CLI::IsMember({"direct", "classicalAssist", "quantumMemory",
                             "storage", "asymG", "symG", "symF"}));
  mc->add_option("--p", mcReq.p, "transmittivity / survival probability")
      ->check(CLI::Range(0.0, 1.0));
  mc->add_option("--mu", mcReq.mu, "cloner asymmetry")
      ->check(CLI::Range(0.0, 1.0));
  mc->add_option("--xi", mcReq.xi,
                 "clone-pair measurement family parameter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 2;
  }

  try {
    if (tc->parsed()) return cmdTradeoffCurve(samples, seed, grid, format, out);
    if (cc->parsed())
      return cmdChannelCurves(samples, cc->count("--samples") > 0, seed,
                              grid, format, out);
    if (sc->parsed()) return cmdStorageCurve(grid, format, out);
    if (vf->parsed()) return cmdVerify(samples, seed, grid, tolerance, out);
    mcReq.samples = samples;
    mcReq.seed = seed;
    return cmdMc(mcReq, out);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "verification error: %s\n", e.what());
    return 1;
  }
}
