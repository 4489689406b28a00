#include "hivelab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hivelab/parallel.hpp"
#include "hivelab/rmt.hpp"

namespace hivelab::harness {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n_values.empty()) throw std::invalid_argument("config: no n values");
  for (int n : n_values)
    if (n < 2) throw std::invalid_argument("config: n must be >= 2");
  if (trials < 2) throw std::invalid_argument("config: trials must be >= 2");
  if (!(sigma_lambda > 0.0) || !(sigma_mu > 0.0))
    throw std::invalid_argument("config: sigmas must be > 0");
  if (probes.empty()) throw std::invalid_argument("config: no probes");
  if (format != "csv" && format != "json")
    throw std::invalid_argument("config: format must be csv or json");
  for (int n : n_values)
    for (const auto& p : probes) resolve_probe(p, n);  // throws on bad tokens
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "n_values") {
      cfg.n_values.clear();
      for (const auto& tok : split(value, ',')) cfg.n_values.push_back(std::stoi(tok));
    } else if (key == "trials") {
      cfg.trials = std::stoll(value);
    } else if (key == "sigma_lambda") {
      cfg.sigma_lambda = std::stod(value);
    } else if (key == "sigma_mu") {
      cfg.sigma_mu = std::stod(value);
    } else if (key == "seed") {
      cfg.seed = std::stoull(value);
    } else if (key == "probes") {
      cfg.probes = split(value, ',');
    } else if (key == "output") {
      cfg.output_path = value;
    } else if (key == "format") {
      cfg.format = value;
    } else if (key == "trace_tol_unit") {
      cfg.trace_tol_unit = std::stod(value);
    } else if (key == "workers") {
      cfg.workers = std::stoi(value);
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  return from_text(read_file(path));
}

std::pair<int, int> resolve_probe(const std::string& token, int n) {
  int vi, vj;
  if (token == "nu-mid") {
    vi = n / 2;
    vj = n / 2;
  } else if (token == "centroid") {
    vi = n / 3;
    vj = 2 * n / 3;
  } else if (token == "corner") {
    vi = 1;
    vj = n - 1;
  } else {
    const auto colon = token.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("probe: unknown token '" + token + "'");
    const double fi = std::stod(token.substr(0, colon));
    const double fj = std::stod(token.substr(colon + 1));
    vi = static_cast<int>(fi * n);
    vj = static_cast<int>(fj * n);
  }
  vi = std::clamp(vi, 1, n - 1);
  vj = std::clamp(vj, 1, n - 1);
  if (vi > vj)
    throw std::invalid_argument("probe: position must lie on the i <= j triangle");
  return {vi, vj};
}

namespace {

struct TrialSlot {
  bool ok = false;
  std::string error;
  std::vector<double> values;
};

double sample_variance(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return acc / (n - 1.0);
}

}  // namespace

ConcentrationResult run_concentration(const ExperimentConfig& cfg) {
  cfg.validate();
  ConcentrationResult result;

  for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
    const int n = cfg.n_values[ni];
    std::vector<std::pair<int, int>> probe_pts;
    for (const auto& p : cfg.probes) probe_pts.push_back(resolve_probe(p, n));

    std::vector<TrialSlot> slots(cfg.trials);
    const std::uint64_t stream_base =
        2ULL * static_cast<std::uint64_t>(ni) * cfg.trials;

    parallel_for(
        cfg.trials,
        [&](long long t) {
          TrialSlot& slot = slots[t];
          try {
            rmt::RngStream rng_a(cfg.seed, stream_base + 2 * t);
            rmt::RngStream rng_b(cfg.seed, stream_base + 2 * t + 1);
            const rmt::HermitianMatrix a = rmt::sample_gue(n, cfg.sigma_lambda, rng_a);
            const rmt::HermitianMatrix b = rmt::sample_gue(n, cfg.sigma_mu, rng_b);
            const hive::GTPattern g1 = rmt::minor_process(a);
            const hive::GTPattern g2 = rmt::minor_process(b);
            const double gap = oct::default_gap_constant(g1, g2);
            const oct::PackedGTPair packed = oct::gt_pair_to_square(g1, g2, gap);
            const oct::SquareFunction h_tilde = oct::excavate(packed.k_tilde);
            const hive::AugmentedHive aug =
                oct::unpack_to_augmented(h_tilde, packed.gamma_sum);

            // Per-trial bookkeeping: the trace identity and additivity of the
            // diagonal tuples.
            const hive::HiveBoundary hb = hive_boundary(aug.h);
            const double scale = std::max(
                {1.0, hb.lambda.max_abs(), hb.mu.max_abs(), hb.nu.max_abs()});
            const double tol = cfg.trace_tol_unit * n * scale;
            const double trace_res =
                hb.nu.sum() - hb.lambda.sum() - hb.mu.sum();
            if (std::abs(trace_res) > tol)
              throw std::runtime_error("trace identity violated: residual " +
                                       fmt17(trace_res));
            const hive::GTBoundary out_b = gt_boundary(aug.pattern);
            const std::vector<double> da = a.diagonal();
            const std::vector<double> db = b.diagonal();
            for (int i = 0; i < n; ++i) {
              if (std::abs(out_b.a[i] - da[i] - db[i]) > tol)
                throw std::runtime_error("diagonal additivity violated at " +
                                         std::to_string(i));
            }

            slot.values.reserve(probe_pts.size());
            for (const auto& [vi, vj] : probe_pts)
              slot.values.push_back(aug.h.at(vi, vj));
            slot.ok = true;
          } catch (const std::exception& e) {
            slot.ok = false;
            slot.error = std::string("n=") + std::to_string(n) + " trial " +
                         std::to_string(t) + ": " + e.what();
          }
        },
        cfg.workers);

    std::vector<std::vector<double>> per_probe(probe_pts.size());
    for (long long t = 0; t < cfg.trials; ++t) {
      ++result.total_trials;
      if (!slots[t].ok) {
        ++result.failed_trials;
        result.errors.push_back(slots[t].error);
        continue;
      }
      for (std::size_t pi = 0; pi < probe_pts.size(); ++pi)
        per_probe[pi].push_back(slots[t].values[pi]);
    }

    const double n4 = std::pow(static_cast<double>(n), 4);
    for (std::size_t pi = 0; pi < probe_pts.size(); ++pi) {
      const std::vector<double>& vals = per_probe[pi];
      if (vals.size() < 2) continue;
      ProbeStat st;
      st.n = n;
      st.vi = probe_pts[pi].first;
      st.vj = probe_pts[pi].second;
      st.trials = static_cast<long long>(vals.size());
      for (double v : vals) st.mean += v;
      st.mean /= static_cast<double>(vals.size());
      st.var = sample_variance(vals);
      st.var_over_n4 = st.var / n4;
      st.seed = cfg.seed;

      constexpr int kResamples = 1000;
      rmt::RngStream boot(cfg.seed ^ 0xB00757A9ULL,
                          ni * cfg.probes.size() + pi);
      std::vector<double> boot_vars(kResamples);
      std::vector<double> resample(vals.size());
      for (int r = 0; r < kResamples; ++r) {
        for (std::size_t k = 0; k < vals.size(); ++k)
          resample[k] = vals[boot.next_u64() % vals.size()];
        boot_vars[r] = sample_variance(resample) / n4;
      }
      std::sort(boot_vars.begin(), boot_vars.end());
      st.ci_lo = boot_vars[static_cast<int>(0.025 * (kResamples - 1))];
      st.ci_hi = boot_vars[static_cast<int>(0.975 * (kResamples - 1))];
      result.rows.push_back(st);
    }
  }
  return result;
}

std::string emit_csv(const std::vector<ProbeStat>& rows) {
  std::string out = "n,v_i,v_j,N,mean,var,var_over_n4,ci_lo,ci_hi,seed\n";
  for (const ProbeStat& r : rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.vi) + "," +
           std::to_string(r.vj) + "," + std::to_string(r.trials) + "," +
           fmt17(r.mean) + "," + fmt17(r.var) + "," + fmt17(r.var_over_n4) +
           "," + fmt17(r.ci_lo) + "," + fmt17(r.ci_hi) + "," +
           std::to_string(r.seed) + "\n";
  }
  return out;
}

std::string emit_json(const std::vector<ProbeStat>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ProbeStat& r : rows) {
    nlohmann::ordered_json obj;
    obj["n"] = r.n;
    obj["v_i"] = r.vi;
    obj["v_j"] = r.vj;
    obj["N"] = r.trials;
    obj["mean"] = r.mean;
    obj["var"] = r.var;
    obj["var_over_n4"] = r.var_over_n4;
    obj["ci_lo"] = r.ci_lo;
    obj["ci_hi"] = r.ci_hi;
    obj["seed"] = r.seed;
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::vector<ProbeStat> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("parse_csv: empty");
  if (trim(line) != "n,v_i,v_j,N,mean,var,var_over_n4,ci_lo,ci_hi,seed")
    throw std::invalid_argument("parse_csv: unexpected header");
  std::vector<ProbeStat> rows;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 10) throw std::invalid_argument("parse_csv: bad row");
    ProbeStat r;
    r.n = std::stoi(f[0]);
    r.vi = std::stoi(f[1]);
    r.vj = std::stoi(f[2]);
    r.trials = std::stoll(f[3]);
    r.mean = std::stod(f[4]);
    r.var = std::stod(f[5]);
    r.var_over_n4 = std::stod(f[6]);
    r.ci_lo = std::stod(f[7]);
    r.ci_hi = std::stod(f[8]);
    r.seed = std::stoull(f[9]);
    rows.push_back(r);
  }
  return rows;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

hive::GTPattern random_interlacing_pattern(int n, rmt::RngStream& rng,
                                           double lo, double hi) {
  hive::GTPattern g(n);
  std::vector<double> top(n);
  for (int i = 0; i < n; ++i) top[i] = lo + (hi - lo) * rng.uniform();
  std::sort(top.begin(), top.end(), std::greater<double>());
  for (int j = 1; j <= n; ++j) g.at(j, n) = top[j - 1];
  for (int k = n - 1; k >= 1; --k) {
    for (int j = 1; j <= k; ++j) {
      const double upper = g.at(j, k + 1);
      const double lower = g.at(j + 1, k + 1);
      g.at(j, k) = lower + (upper - lower) * rng.uniform();
    }
  }
  return g;
}

oct::SquareFunction random_square(int n, rmt::RngStream& rng, double lo,
                                  double hi) {
  oct::SquareFunction s(n);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) s.at(i, j) = lo + (hi - lo) * rng.uniform();
  return s;
}

namespace {

struct ValidityWorst {
  double rhombus = 0.0;
  double interlacing = 0.0;
  double trace = 0.0;  // residual / (n * scale)
  double weyl = 0.0;
};

}  // namespace

EquivalenceReport run_equivalence_suite(int max_n, int trials,
                                        std::uint64_t seed,
                                        oct::BorderWeightSign sign) {
  if (max_n < 2 || max_n > 8)
    throw std::invalid_argument("run_equivalence_suite: need 2 <= max_n <= 8");
  if (trials < 1) throw std::invalid_argument("run_equivalence_suite: trials >= 1");

  EquivalenceReport rep;
  rep.max_n = max_n;
  rep.trials = trials;
  rep.seed = seed;

  std::uint64_t stream = 0;

  // Battery A: tiling-maximum form against the excavation recurrence.
  const int oracle_max_n = std::min(max_n, 6);
  for (int n = 2; n <= oracle_max_n; ++n) {
    oct::SpeyerEvaluator ev(n, 10'000'000, sign);
    for (int t = 0; t < trials; ++t) {
      rmt::RngStream rng(seed, stream++);
      const hive::GTPattern g1 = random_interlacing_pattern(n, rng);
      const hive::GTPattern g2 = random_interlacing_pattern(n, rng);
      const oct::PackedGTPair packed =
          oct::gt_pair_to_square(g1, g2, oct::default_gap_constant(g1, g2));
      const oct::SquareFunction ht = oct::excavate(packed.k_tilde);
      for (int vi = 1; vi <= n - 1; ++vi) {
        for (int vj = 1; vj <= n - 1; ++vj) {
          const double dev =
              std::abs(ev.value(vi, vj, packed.k_tilde) - ht.at(vi, vj));
          rep.worst_oracle_dev = std::max(rep.worst_oracle_dev, dev);
        }
      }
    }
  }
  rep.oracle_ok = rep.worst_oracle_dev < 1e-9;

  // Battery B: bijectivity of the excavation on arbitrary square data.
  for (int n = 2; n <= max_n; ++n) {
    for (int t = 0; t < trials; ++t) {
      rmt::RngStream rng(seed, stream++);
      const oct::SquareFunction k = random_square(n, rng);
      const oct::SquareFunction back = oct::inverse_excavate(oct::excavate(k));
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
          rep.worst_roundtrip_dev = std::max(
              rep.worst_roundtrip_dev, std::abs(back.at(i, j) - k.at(i, j)));
    }
  }
  rep.roundtrip_ok = rep.worst_roundtrip_dev < 1e-9;

  // Battery C: the gap constant must not leak into the output.
  for (int n = 2; n <= max_n; ++n) {
    for (int t = 0; t < trials; ++t) {
      rmt::RngStream rng(seed, stream++);
      const hive::GTPattern g1 = random_interlacing_pattern(n, rng);
      const hive::GTPattern g2 = random_interlacing_pattern(n, rng);
      const double g0 = oct::default_gap_constant(g1, g2);
      auto run = [&](double gap) {
        const oct::PackedGTPair packed = oct::gt_pair_to_square(g1, g2, gap);
        return oct::unpack_to_augmented(oct::excavate(packed.k_tilde),
                                        packed.gamma_sum);
      };
      const hive::AugmentedHive o1 = run(g0);
      const hive::AugmentedHive o2 = run(2.0 * g0);
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= j; ++i)
          rep.worst_gamma_dev = std::max(
              rep.worst_gamma_dev, std::abs(o1.h.at(i, j) - o2.h.at(i, j)));
      for (int k = 1; k <= n; ++k)
        for (int j = 1; j <= k; ++j)
          rep.worst_gamma_dev =
              std::max(rep.worst_gamma_dev,
                       std::abs(o1.pattern.at(j, k) - o2.pattern.at(j, k)));
    }
  }
  rep.gamma_ok = rep.worst_gamma_dev < 1e-8;

  // Battery D: outputs are genuine augmented hives.
  ValidityWorst vw;
  for (int n = 2; n <= max_n; ++n) {
    for (int t = 0; t < trials; ++t) {
      rmt::RngStream rng(seed, stream++);
      const hive::GTPattern g1 = random_interlacing_pattern(n, rng);
      const hive::GTPattern g2 = random_interlacing_pattern(n, rng);
      const oct::PackedGTPair packed =
          oct::gt_pair_to_square(g1, g2, oct::default_gap_constant(g1, g2));
      const hive::AugmentedHive aug =
          oct::unpack_to_augmented(oct::excavate(packed.k_tilde),
                                   packed.gamma_sum);
      for (const auto& v : hive::check_rhombus_concave(aug.h, 0.0))
        vw.rhombus = std::max(vw.rhombus, v.excess);
      vw.interlacing =
          std::max(vw.interlacing, aug.pattern.interlacing_violation());
      const hive::HiveBoundary hb = hive_boundary(aug.h);
      const double scale = std::max(
          {1.0, hb.lambda.max_abs(), hb.mu.max_abs(), hb.nu.max_abs()});
      vw.trace = std::max(
          vw.trace, std::abs(hb.nu.sum() - hb.lambda.sum() - hb.mu.sum()) /
                        (n * scale));
      const spectra::WeylTraceReport wr =
          spectra::weyl_trace_check(hb.lambda, hb.mu, hb.nu);
      vw.weyl = std::max(vw.weyl, wr.worst_weyl_excess);
    }
  }
  rep.worst_rhombus_excess = vw.rhombus;
  rep.worst_interlacing = vw.interlacing;
  rep.worst_trace_residual = vw.trace;
  rep.worst_weyl_excess = vw.weyl;
  rep.validity_ok = vw.rhombus < 1e-9 && vw.interlacing < 1e-9 &&
                    vw.trace < 1e-8 && vw.weyl < 1e-9;
  return rep;
}

std::string EquivalenceReport::to_string() const {
  std::string s;
  s += "equivalence suite: max_n=" + std::to_string(max_n) +
       " trials=" + std::to_string(trials) + " seed=" + std::to_string(seed) +
       "\n";
  s += "  oracle      " + std::string(oracle_ok ? "pass" : "FAIL") +
       "  worst_dev=" + fmt17(worst_oracle_dev) + "\n";
  s += "  round-trip  " + std::string(roundtrip_ok ? "pass" : "FAIL") +
       "  worst_dev=" + fmt17(worst_roundtrip_dev) + "\n";
  s += "  gamma-indep " + std::string(gamma_ok ? "pass" : "FAIL") +
       "  worst_dev=" + fmt17(worst_gamma_dev) + "\n";
  s += "  validity    " + std::string(validity_ok ? "pass" : "FAIL") +
       "  rhombus=" + fmt17(worst_rhombus_excess) +
       " interlacing=" + fmt17(worst_interlacing) +
       " trace=" + fmt17(worst_trace_residual) +
       " weyl=" + fmt17(worst_weyl_excess) + "\n";
  return s;
}

}  // namespace hivelab::harness
