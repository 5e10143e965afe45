#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "dhsp/dhsp.hpp"

namespace dhsp::cli {

namespace {

struct Common {
  std::uint64_t n = 0;
  int k = 0;
  std::size_t samples = 10000;
  std::uint64_t seed = Rng::kDefaultSeed;
  unsigned threads = 0;
  std::string output;
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Check failures are reported through the exit code, not an exception.
struct Outcome {
  bool passed = true;
};

std::vector<int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  auto parse_int = [&](std::string_view s) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw UsageError("bad k range \"" + text + "\"; expected a or a..b");
    }
    return value;
  };
  int lo = 0;
  int hi = 0;
  if (dots == std::string::npos) {
    lo = hi = parse_int(text);
  } else {
    lo = parse_int(std::string_view(text).substr(0, dots));
    hi = parse_int(std::string_view(text).substr(dots + 2));
  }
  if (lo < 1) throw UsageError("k must be >= 1");
  if (hi < lo) throw UsageError("empty k range \"" + text + "\"");
  if (hi > kMaxCopies) throw UsageError("k must be <= 64");
  std::vector<int> ks;
  for (int k = lo; k <= hi; ++k) ks.push_back(k);
  return ks;
}

void require_n(std::uint64_t n) {
  if (n < 2) throw UsageError("N must be >= 2");
}

void require_k(int k) {
  if (k < 1) throw UsageError("k must be >= 1");
  if (k > kMaxCopies) throw UsageError("k must be <= 64");
}

/// Writes to the --output file when given, otherwise to out.
template <typename F>
void emit(const std::string& path, std::ostream& out, F write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + path);
  write(file);
}

void add_common(CLI::App* cmd, Common& c, bool with_k, bool with_samples) {
  cmd->add_option("--N", c.n, "Group parameter N")->required();
  if (with_k) cmd->add_option("--k", c.k, "Number of copies")->required();
  if (with_samples) {
    cmd->add_option("--samples", c.samples, "Monte Carlo samples")->capture_default_str();
    cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    cmd->add_option("--threads", c.threads, "Worker threads (0: all cores)")->capture_default_str();
  }
  cmd->add_option("--output", c.output, "Output file (default: stdout)");
}

std::string status(bool ok) { return ok ? "PASS" : "FAIL"; }

Outcome cmd_sweep(const Common& c, const std::string& range, bool exact, std::ostream& out) {
  require_n(c.n);
  const auto ks = parse_range(range);
  if (c.samples < 2) throw UsageError("samples must be >= 2");
  const auto points = threshold_sweep(c.n, ks, c.samples, c.seed, exact, Parallelism{c.threads});
  emit(c.output, out, [&](std::ostream& o) { write_sweep_csv(o, points); });
  return {};
}

Outcome cmd_verify(const Common& c, bool perturb, double tol, std::ostream& out) {
  require_n(c.n);
  require_k(c.k);
  oracle_dimension(c.n, c.k);
  std::ostringstream text;
  bool passed = true;

  const auto pgm = certify_dihedral_pgm(c.n, c.k, tol, perturb);
  text << pgm.to_text(perturb ? "pgm_permuted" : "pgm");
  passed = passed && pgm.passed;

  const double gap = pgm_closed_form_gap(c.n, c.k);
  const double gap_tol = 1e-10;
  fmt::print(text, "closed_form gap {:.6e} {:.1e} {}\n", gap, gap_tol, status(gap <= gap_tol));
  passed = passed && gap <= gap_tol;

  if (c.n % 2 == 0) {
    const auto lsb = certify_lsb_pgm(c.n, c.k, tol);
    text << lsb.to_text("lsb");
    passed = passed && lsb.passed;
  }

  double worst = 0.0;
  for (std::uint64_t d = 0; d < c.n; ++d) worst = std::max(worst, equivalence_check(c.n, d).distance);
  const double eq_tol = 1e-9;
  fmt::print(text, "irrep_equivalence distance {:.6e} {:.1e} {}\n", worst, eq_tol,
             status(worst <= eq_tol));
  passed = passed && worst <= eq_tol;

  emit(c.output, out, [&](std::ostream& o) { o << text.str(); });
  return {passed};
}

Outcome cmd_simulate(const Common& c, const std::string& hidden_text, const std::string& log,
                     std::ostream& out) {
  require_n(c.n);
  require_k(c.k);
  Hidden hidden = Hidden::trivial();
  if (hidden_text != "trivial") {
    std::uint64_t d = 0;
    const auto [ptr, ec] = std::from_chars(hidden_text.data(), hidden_text.data() + hidden_text.size(), d);
    if (ec != std::errc() || ptr != hidden_text.data() + hidden_text.size() || d >= c.n) {
      throw UsageError("--hidden must be an integer in [0, N) or \"trivial\"");
    }
    hidden = Hidden::shift(d);
  }
  const auto summary = run_trials(c.n, c.k, hidden, c.samples, c.seed, Parallelism{c.threads}, !log.empty());
  if (!log.empty()) {
    std::ofstream file(log, std::ios::binary);
    if (!file) throw UsageError("cannot open log file " + log);
    write_trials_csv(file, summary.records);
  }
  emit(c.output, out, [&](std::ostream& o) { write_trial_summary(o, summary); });
  return {};
}

Outcome cmd_subsetsum(const Common& c, const std::string& path, std::ostream& out) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open " + path);
  std::vector<SubsetSumInstance> instances;
  std::string line;
  for (std::size_t number = 1; std::getline(file, line); ++number) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      instances.push_back(parse_instance(line));
    } catch (const std::invalid_argument& e) {
      throw UsageError(fmt::format("{}:{}: {}", path, number, e.what()));
    }
  }
  std::ostringstream text;
  const Rng root(c.seed);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    if (inst.x.k() > kMaxEnumerationBits) {
      throw GuardError("instance " + std::to_string(i + 1) + ": k exceeds 24");
    }
    const SubsetSumTable table(inst.x);
    if (table.solutions(inst.target) == 0) {
      text << "no solution\n";
      continue;
    }
    Rng rng = root.split(i);
    for (std::size_t s = 0; s < c.samples; ++s) text << format_bits(table.sample(inst.target, rng), inst.x.k()) << '\n';
  }
  emit(c.output, out, [&](std::ostream& o) { o << text.str(); });
  return {};
}

Outcome cmd_lsb(const Common& c, bool exact, std::ostream& out) {
  require_n(c.n);
  require_k(c.k);
  if (c.n % 2 != 0) throw UsageError("N must be even");
  double p = 0.0;
  double se = 0.0;
  std::string method;
  if (exact) {
    p = lsb_success_exact(c.n, c.k);
    method = "EXACT";
  } else {
    const auto est = lsb_success_mc(c.n, c.k, c.samples, c.seed, Parallelism{c.threads});
    p = est.mean;
    se = est.stderr_mean;
    method = "MC";
  }
  const double bound = lsb_upper_bound(c.n, c.k);
  const bool within = p <= bound + 4.0 * se;
  emit(c.output, out, [&](std::ostream& o) {
    o << "N,k,p_lsb,stderr,bound,within_bound,method\n";
    fmt::print(o, "{},{},{:.12g},{:.6g},{:.12g},{},{}\n", c.n, c.k, p, se, bound, within ? 1 : 0, method);
  });
  return {within};
}

Outcome cmd_infobound(const Common& c, const std::vector<double>& ps, std::ostream& out) {
  require_n(c.n);
  std::vector<InfoBoundResult> rows;
  for (double p : ps) {
    if (!(p > 0.0 && p <= 1.0)) throw UsageError("p must be in (0, 1]");
    rows.push_back(info_lower_bound(c.n, p));
  }
  emit(c.output, out, [&](std::ostream& o) { write_infobound_csv(o, rows); });
  return {};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal measurement toolkit for dihedral hidden subgroup states", "dhsp"};
  app.require_subcommand(1);

  Common sweep_opts;
  std::string k_range;
  bool sweep_exact = false;
  auto* sweep = app.add_subcommand("sweep", "Success probability across k (CSV N,k,nu,p,stderr,method)");
  add_common(sweep, sweep_opts, false, true);
  sweep->add_option("--k", k_range, "Range a..b of copy counts")->required();
  sweep->add_flag("--exact", sweep_exact, "Enumerate every label instead of sampling");

  Common verify_opts;
  bool perturb = false;
  double tol = 1e-9;
  auto* verify = app.add_subcommand("verify", "Certify the optimality conditions at oracle scale");
  add_common(verify, verify_opts, true, false);
  verify->add_flag("--perturb", perturb, "Pair rho_j with E_{j+1} (negative control)");
  verify->add_option("--tol", tol, "Tolerance")->capture_default_str();

  Common sim_opts;
  std::string hidden = "0";
  std::string log;
  auto* simulate = app.add_subcommand("simulate", "Simulate measurement trials");
  add_common(simulate, sim_opts, true, true);
  simulate->get_option("--samples")->description("Number of trials");
  simulate->add_option("--hidden", hidden, "Hidden shift d, or \"trivial\"")->capture_default_str();
  simulate->add_option("--log", log, "Per-trial CSV (trial,hidden,outcome,correct)");

  Common subset_opts;
  subset_opts.samples = 1;
  std::string instance_file;
  auto* subsetsum = app.add_subcommand("subsetsum", "Sample uniform subset-sum solutions");
  subsetsum->add_option("--file", instance_file, "Instances, one \"N k t x_1 ... x_k\" per line")->required();
  subsetsum->add_option("--samples", subset_opts.samples, "Solutions per instance")->capture_default_str();
  subsetsum->add_option("--seed", subset_opts.seed, "Random seed")->capture_default_str();
  subsetsum->add_option("--output", subset_opts.output, "Output file (default: stdout)");

  Common lsb_opts;
  bool lsb_exact = false;
  auto* lsb = app.add_subcommand("lsb", "Least-significant-bit success probability and bound");
  add_common(lsb, lsb_opts, true, true);
  lsb->add_flag("--exact", lsb_exact, "Enumerate every label instead of sampling");

  Common info_opts;
  std::vector<double> ps;
  auto* infobound = app.add_subcommand("infobound", "Copy lower bound from accessible information (CSV N,p,k_min)");
  infobound->add_option("--N", info_opts.n, "Group parameter N")->required();
  infobound->add_option("--p", ps, "Target success probabilities")->required();
  infobound->add_option("--output", info_opts.output, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    // Subcommand help requests surface as CallForHelp from the parent app.
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    Outcome result;
    if (*sweep) result = cmd_sweep(sweep_opts, k_range, sweep_exact, out);
    else if (*verify) result = cmd_verify(verify_opts, perturb, tol, out);
    else if (*simulate) result = cmd_simulate(sim_opts, hidden, log, out);
    else if (*subsetsum) result = cmd_subsetsum(subset_opts, instance_file, out);
    else if (*lsb) result = cmd_lsb(lsb_opts, lsb_exact, out);
    else if (*infobound) result = cmd_infobound(info_opts, ps, out);
    return result.passed ? kOk : kCheckFailed;
  } catch (const GuardError& e) {
    err << "guard: " << e.what() << '\n';
    return kGuard;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace dhsp::cli
