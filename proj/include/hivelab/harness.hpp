#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hivelab/octahedron.hpp"
#include "hivelab/rng.hpp"

namespace hivelab::harness {

struct ExperimentConfig {
  std::vector<int> n_values{8, 16, 32};
  long long trials = 200;
  double sigma_lambda = 1.0;
  double sigma_mu = 1.0;
  std::uint64_t seed = 1;
  // Probe tokens: "nu-mid" = (n/2,n/2), "centroid" = (n/3,2n/3),
  // "corner" = (1,n-1), or "<fi>:<fj>" fractions of n (clamped interior,
  // kept on the i <= j triangle).
  std::vector<std::string> probes{"nu-mid", "centroid", "corner"};
  std::string output_path;
  std::string format = "csv";
  double trace_tol_unit = 1e-7;  // per-trial bookkeeping tolerance, times n*scale
  int workers = -1;

  void validate() const;
  static ExperimentConfig from_file(const std::string& path);
  /// "key=value" text; unknown keys are rejected.
  static ExperimentConfig from_text(const std::string& text);
};

std::pair<int, int> resolve_probe(const std::string& token, int n);

struct ProbeStat {
  int n = 0;
  int vi = 0, vj = 0;
  long long trials = 0;
  double mean = 0.0;
  double var = 0.0;
  double var_over_n4 = 0.0;
  double ci_lo = 0.0;  // 95% bootstrap interval for var/n^4
  double ci_hi = 0.0;
  std::uint64_t seed = 0;
};

struct ConcentrationResult {
  std::vector<ProbeStat> rows;
  long long total_trials = 0;
  long long failed_trials = 0;
  std::vector<std::string> errors;  // one message per failed trial
  bool pass() const {
    return total_trials > 0 && failed_trials * 100 < total_trials;
  }
};

/// Full pipeline per trial: sample two spectra ensembles, minor process,
/// pack, excavate, unpack, record the hive at each probe. Trials run on
/// per-trial streams and merge by index.
ConcentrationResult run_concentration(const ExperimentConfig& cfg);

// Stable column order (n, v_i, v_j, N, mean, var, var_over_n4, ci_lo,
// ci_hi, seed); 17 significant digits.
std::string emit_csv(const std::vector<ProbeStat>& rows);
std::string emit_json(const std::vector<ProbeStat>& rows);
std::vector<ProbeStat> parse_csv(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

struct EquivalenceReport {
  int max_n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double worst_oracle_dev = 0.0;     // tiling-max vs excavation, n <= 6
  double worst_roundtrip_dev = 0.0;  // inverse_excavate(excavate(.)) vs id
  double worst_gamma_dev = 0.0;      // outputs at G vs 2G
  double worst_rhombus_excess = 0.0;
  double worst_interlacing = 0.0;
  double worst_trace_residual = 0.0;  // normalized by n * scale
  double worst_weyl_excess = 0.0;
  bool oracle_ok = false, roundtrip_ok = false, gamma_ok = false,
       validity_ok = false;
  bool pass() const { return oracle_ok && roundtrip_ok && gamma_ok && validity_ok; }
  std::string to_string() const;
};

EquivalenceReport run_equivalence_suite(
    int max_n, int trials, std::uint64_t seed,
    oct::BorderWeightSign sign = oct::BorderWeightSign::apex_minus_a);

/// Valid pattern with rows drawn uniformly inside the interlacing bounds,
/// top row uniform in [lo,hi].
hive::GTPattern random_interlacing_pattern(int n, rmt::RngStream& rng,
                                           double lo = -1.0, double hi = 1.0);

oct::SquareFunction random_square(int n, rmt::RngStream& rng, double lo = -1.0,
                                  double hi = 1.0);

}  // namespace hivelab::harness
