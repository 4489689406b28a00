#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hivelab/determinantal.hpp"
#include "hivelab/harness.hpp"
#include "hivelab/octahedron.hpp"
#include "hivelab/rmt.hpp"

using namespace hivelab;

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

spectra::SpecTuple spectrum_from_file(const std::string& path) {
  std::istringstream in(harness::read_file(path));
  std::vector<double> vals;
  double v;
  while (in >> v) vals.push_back(v);
  return spectra::SpecTuple(std::move(vals));
}

int cmd_concentration(const std::string& config_path,
                      harness::ExperimentConfig overrides,
                      const std::vector<bool>& has_override) {
  harness::ExperimentConfig cfg;
  if (!config_path.empty()) cfg = harness::ExperimentConfig::from_file(config_path);
  // Flag overrides win over file values.
  if (has_override[0]) cfg.n_values = overrides.n_values;
  if (has_override[1]) cfg.trials = overrides.trials;
  if (has_override[2]) cfg.sigma_lambda = overrides.sigma_lambda;
  if (has_override[3]) cfg.sigma_mu = overrides.sigma_mu;
  if (has_override[4]) cfg.seed = overrides.seed;
  if (has_override[5]) cfg.probes = overrides.probes;
  if (has_override[6]) cfg.output_path = overrides.output_path;
  if (has_override[7]) cfg.format = overrides.format;

  const harness::ConcentrationResult res = harness::run_concentration(cfg);
  const std::string table = cfg.format == "json" ? harness::emit_json(res.rows)
                                                 : harness::emit_csv(res.rows);
  if (cfg.output_path.empty())
    std::cout << table;
  else
    harness::write_file(cfg.output_path, table);
  if (res.failed_trials > 0) {
    std::cerr << res.failed_trials << "/" << res.total_trials
              << " trials failed\n";
    for (const auto& e : res.errors) std::cerr << "  " << e << "\n";
  }
  return res.pass() ? 0 : 1;
}

int cmd_equivalence(int max_n, int trials, std::uint64_t seed) {
  const harness::EquivalenceReport rep =
      harness::run_equivalence_suite(max_n, trials, seed);
  std::cout << rep.to_string();
  return rep.pass() ? 0 : 1;
}

int cmd_oct(const std::string& g1_path, const std::string& g2_path, double gap,
            const std::string& out_hive, const std::string& out_gt) {
  const hive::GTPattern g1 = hive::gt_from_text(harness::read_file(g1_path));
  const hive::GTPattern g2 = hive::gt_from_text(harness::read_file(g2_path));
  if (gap <= 0.0) gap = oct::default_gap_constant(g1, g2);
  const oct::PackedGTPair packed = oct::gt_pair_to_square(g1, g2, gap);
  const hive::AugmentedHive aug =
      oct::unpack_to_augmented(oct::excavate(packed.k_tilde), packed.gamma_sum);
  harness::write_file(out_hive, hive::to_text(aug.h));
  harness::write_file(out_gt, hive::to_text(aug.pattern));
  const hive::HiveBoundary b = hive_boundary(aug.h);
  std::cout << "wrote " << out_hive << " and " << out_gt
            << " (gap constant " << fmt17(gap) << ", trace residual "
            << fmt17(b.nu.sum() - b.lambda.sum() - b.mu.sum()) << ")\n";
  return 0;
}

int cmd_tilings(int n, int vi, int vj, const std::string& ktilde_path,
                long long budget, long long max_print) {
  const oct::Hexagon hex = oct::build_hexagon(n, vi, vj);
  std::cout << "hexagon vertices:";
  for (const auto& v : hex.vertex) std::cout << " (" << v[0] << "," << v[1] << ")";
  std::cout << "\n";

  bool have_k = !ktilde_path.empty();
  oct::SquareFunction kt(n);
  if (have_k) {
    kt = oct::square_from_text(harness::read_file(ktilde_path));
    if (kt.n() != n) throw std::invalid_argument("tilings: grid size mismatch");
  }

  long long printed = 0;
  double best = -HUGE_VAL;
  const long long total = oct::enumerate_tilings(
      hex,
      [&](const oct::LozengeTiling& t) {
        double w = 0.0;
        if (have_k) {
          w = oct::tiling_weight(t, kt);
          best = std::max(best, w);
        }
        if (printed < max_print) {
          std::cout << "tiling " << printed << ":";
          for (const auto& l : t.lozenges) {
            const char* kind = l.kind == oct::LozengeKind::type_i     ? "i"
                               : l.kind == oct::LozengeKind::type_ii  ? "ii"
                                                                      : "iii";
            const char* color = l.color() == oct::Color::blue    ? "blue"
                                : l.color() == oct::Color::red   ? "red"
                                                                 : "green";
            std::cout << " " << color << "(" << kind << "@" << l.ai << ","
                      << l.aj << ")";
          }
          for (const auto& b : t.triangles)
            std::cout << " " << (b.upward ? "up" : "down") << "@" << b.edge;
          if (have_k) std::cout << " | weight " << fmt17(w);
          std::cout << "\n";
        }
        ++printed;
        return true;
      },
      budget);
  std::cout << "total tilings: " << total << "\n";
  if (have_k) std::cout << "max weight: " << fmt17(best) << "\n";
  return 0;
}

int cmd_sample(int n, long long trials, double sigma, std::uint64_t seed,
               const std::string& prefix) {
  for (long long t = 0; t < trials; ++t) {
    rmt::RngStream rng(seed, t);
    const rmt::HermitianMatrix a = rmt::sample_gue(n, sigma, rng);
    harness::write_file(prefix + std::to_string(t) + ".txt",
                        hive::to_text(rmt::minor_process(a)));
  }
  std::cout << "wrote " << trials << " patterns with prefix " << prefix << "\n";
  return 0;
}

int cmd_moments(const std::string& spectrum_path, long long mc,
                std::uint64_t seed, const std::string& out) {
  const spectra::SpecTuple lam = spectrum_from_file(spectrum_path);
  const int n = static_cast<int>(lam.size());
  std::string csv = mc > 0 ? "kind,i,j,value,mc,mc_se\n" : "kind,i,j,value\n";
  det::GapMoments moments;
  if (mc > 0) moments = det::mc_gap_moments(lam, mc, seed);
  for (int i = 1; i <= n - 1; ++i) {
    csv += "gap," + std::to_string(i) + ",," + fmt17(det::expected_gap(lam, i));
    if (mc > 0)
      csv += "," + fmt17(moments.mean[i - 1]) + "," + fmt17(moments.mean_se[i - 1]);
    csv += "\n";
  }
  for (int i = 1; i <= n - 1; ++i) {
    for (int j = i + 1; j <= n - 1; ++j) {
      csv += "cov," + std::to_string(i) + "," + std::to_string(j) + "," +
             fmt17(det::gap_covariance(lam, i, j));
      if (mc > 0)
        csv += "," + fmt17(moments.covariance(i, j)) + "," +
               fmt17(moments.covariance_se(i, j));
      csv += "\n";
    }
  }
  if (out.empty())
    std::cout << csv;
  else
    harness::write_file(out, csv);
  return 0;
}

int cmd_rigidity(int n, long long trials, double sigma, std::uint64_t seed,
                 double flag_constant, const std::string& out) {
  std::vector<spectra::SpecTuple> samples;
  samples.reserve(trials);
  for (long long t = 0; t < trials; ++t) {
    rmt::RngStream rng(seed, t);
    // sigma scales the unit-variance ensemble, so spectra track
    // sigma * sqrt(n) * gamma_i.
    const rmt::HermitianMatrix m =
        rmt::sample_gue(n, sigma / std::sqrt(static_cast<double>(n)), rng);
    samples.push_back(rmt::eigh(m).values);
  }
  const auto rows = rmt::rigidity_report(samples, sigma, flag_constant);
  std::string csv = "i,gamma_i,max_norm_dev,flag\n";
  bool any_flag = false;
  for (const auto& r : rows) {
    csv += std::to_string(r.i) + "," + fmt17(r.gamma_i) + "," +
           fmt17(r.max_norm_dev) + "," + (r.flag ? "1" : "0") + "\n";
    any_flag = any_flag || r.flag;
  }
  if (out.empty())
    std::cout << csv;
  else
    harness::write_file(out, csv);
  return any_flag ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hive/minor-process laboratory"};
  app.require_subcommand(1);

  // concentration
  auto* conc = app.add_subcommand("concentration",
                                  "variance decay experiment over the full pipeline");
  std::string config_path;
  harness::ExperimentConfig ov;
  std::vector<int> ov_n;
  std::vector<std::string> ov_probes;
  conc->add_option("--config", config_path, "key=value config file");
  conc->add_option("--n", ov_n, "matrix sizes");
  conc->add_option("--trials", ov.trials);
  conc->add_option("--sigma-lambda", ov.sigma_lambda);
  conc->add_option("--sigma-mu", ov.sigma_mu);
  conc->add_option("--seed", ov.seed);
  conc->add_option("--probes", ov_probes);
  conc->add_option("--out", ov.output_path);
  conc->add_option("--format", ov.format);

  // equivalence
  auto* equiv = app.add_subcommand("equivalence", "oracle and property batteries");
  int max_n = 6, eq_trials = 100;
  std::uint64_t eq_seed = 7;
  equiv->add_option("--max-n", max_n);
  equiv->add_option("--trials", eq_trials);
  equiv->add_option("--seed", eq_seed);

  // oct
  auto* octc = app.add_subcommand("oct", "map two patterns to an augmented hive");
  std::string g1_path, g2_path, out_hive = "out.hive.txt", out_gt = "out.gt.txt";
  double gap = 0.0;
  octc->add_option("--g1", g1_path)->required();
  octc->add_option("--g2", g2_path)->required();
  octc->add_option("--gap", gap, "gap constant (default: combined spread + 1)");
  octc->add_option("--out-hive", out_hive);
  octc->add_option("--out-gt", out_gt);

  // tilings
  auto* til = app.add_subcommand("tilings", "enumerate tilings of a hexagon");
  int tn = 4, tvi = 1, tvj = 1;
  std::string ktilde_path;
  long long budget = 10'000'000, max_print = 50;
  til->add_option("--n", tn)->required();
  til->add_option("--vi", tvi)->required();
  til->add_option("--vj", tvj)->required();
  til->add_option("--ktilde", ktilde_path, "square-function file for weights");
  til->add_option("--budget", budget);
  til->add_option("--max-print", max_print);

  // sample
  auto* smp = app.add_subcommand("sample", "write minor-process patterns");
  int sn = 8;
  long long s_trials = 10;
  double s_sigma = 1.0;
  std::uint64_t s_seed = 1;
  std::string prefix = "pattern_";
  smp->add_option("--n", sn);
  smp->add_option("--trials", s_trials);
  smp->add_option("--sigma", s_sigma);
  smp->add_option("--seed", s_seed);
  smp->add_option("--out-prefix", prefix);

  // moments
  auto* mom = app.add_subcommand("moments", "exact and Monte Carlo gap moments");
  std::string spectrum_path, mom_out;
  long long mc = 0;
  std::uint64_t mom_seed = 1;
  mom->add_option("--spectrum", spectrum_path)->required();
  mom->add_option("--mc", mc, "Monte Carlo trials (0 = exact only)");
  mom->add_option("--seed", mom_seed);
  mom->add_option("--out", mom_out);

  // rigidity
  auto* rig = app.add_subcommand("rigidity", "classical-location deviations");
  int rn = 64;
  long long r_trials = 200;
  double r_sigma = 1.0, r_flag = 10.0;
  std::uint64_t r_seed = 1;
  std::string rig_out;
  rig->add_option("--n", rn);
  rig->add_option("--trials", r_trials);
  rig->add_option("--sigma", r_sigma);
  rig->add_option("--seed", r_seed);
  rig->add_option("--flag-constant", r_flag);
  rig->add_option("--out", rig_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (conc->parsed()) {
      ov.n_values = ov_n;
      ov.probes = ov_probes;
      const std::vector<bool> has = {
          conc->count("--n") > 0,     conc->count("--trials") > 0,
          conc->count("--sigma-lambda") > 0, conc->count("--sigma-mu") > 0,
          conc->count("--seed") > 0,  conc->count("--probes") > 0,
          conc->count("--out") > 0,   conc->count("--format") > 0};
      return cmd_concentration(config_path, ov, has);
    }
    if (equiv->parsed()) return cmd_equivalence(max_n, eq_trials, eq_seed);
    if (octc->parsed()) return cmd_oct(g1_path, g2_path, gap, out_hive, out_gt);
    if (til->parsed())
      return cmd_tilings(tn, tvi, tvj, ktilde_path, budget, max_print);
    if (smp->parsed()) return cmd_sample(sn, s_trials, s_sigma, s_seed, prefix);
    if (mom->parsed()) return cmd_moments(spectrum_path, mc, mom_seed, mom_out);
    if (rig->parsed())
      return cmd_rigidity(rn, r_trials, r_sigma, r_seed, r_flag, rig_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
