#include <doctest.h>

#include <cmath>

#include "hivelab/harness.hpp"
#include "hivelab/octahedron.hpp"
#include "hivelab/rmt.hpp"

using namespace hivelab;
using namespace hivelab::harness;

TEST_CASE("config parsing and validation") {
  const ExperimentConfig cfg = ExperimentConfig::from_text(
      "# comment\n"
      "n_values = 4, 8\n"
      "trials=25\n"
      "sigma_lambda = 2.0\n"
      "seed = 99\n"
      "probes = centroid, 0.5:0.75\n"
      "format = json\n");
  CHECK(cfg.n_values == std::vector<int>{4, 8});
  CHECK(cfg.trials == 25);
  CHECK(cfg.sigma_lambda == 2.0);
  CHECK(cfg.sigma_mu == 1.0);
  CHECK(cfg.seed == 99);
  CHECK(cfg.format == "json");
  cfg.validate();

  CHECK_THROWS(ExperimentConfig::from_text("bogus_key = 1\n"));
  ExperimentConfig bad;
  bad.trials = 1;
  CHECK_THROWS(bad.validate());

  CHECK(resolve_probe("nu-mid", 8) == std::pair<int, int>{4, 4});
  CHECK(resolve_probe("centroid", 8) == std::pair<int, int>{2, 5});
  CHECK(resolve_probe("corner", 8) == std::pair<int, int>{1, 7});
  CHECK(resolve_probe("0.5:0.75", 8) == std::pair<int, int>{4, 6});
  CHECK_THROWS(resolve_probe("0.9:0.1", 8));
  CHECK_THROWS(resolve_probe("midpoint", 8));
}

TEST_CASE("near-zero scale collapses the recorded values") {
  ExperimentConfig cfg;
  cfg.n_values = {4};
  cfg.trials = 50;
  cfg.sigma_lambda = 1e-12;
  cfg.sigma_mu = 1e-12;
  cfg.seed = 3;
  const ConcentrationResult res = run_concentration(cfg);
  CHECK(res.failed_trials == 0);
  for (const auto& row : res.rows) {
    CHECK(std::abs(row.mean) < 1e-9);
    CHECK(row.var < 1e-18);
  }
}

TEST_CASE("n=2 trials match the closed-form maximum trial by trial") {
  const std::uint64_t seed = 411;
  const int trials = 10000;
  ExperimentConfig cfg;
  cfg.n_values = {2};
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.probes = {"nu-mid"};  // (1,1), the single interior point
  const ConcentrationResult res = run_concentration(cfg);
  CHECK(res.failed_trials == 0);
  REQUIRE(res.rows.size() == 1);

  // Replay the streams and evaluate the closed form directly.
  double acc = 0.0;
  for (int t = 0; t < trials; ++t) {
    rmt::RngStream ra(seed, 2 * t), rb(seed, 2 * t + 1);
    const rmt::HermitianMatrix a = rmt::sample_gue(2, 1.0, ra);
    const rmt::HermitianMatrix b = rmt::sample_gue(2, 1.0, rb);
    const hive::GTPattern g1 = rmt::minor_process(a);
    const hive::GTPattern g2 = rmt::minor_process(b);
    const double gap = oct::default_gap_constant(g1, g2);
    const oct::PackedGTPair packed = oct::gt_pair_to_square(g1, g2, gap);
    const oct::SquareFunction ht = oct::excavate(packed.k_tilde);

    const hive::GTBoundary b1 = gt_boundary(g1);
    const hive::GTBoundary b2 = gt_boundary(g2);
    const double sigma1 = gap + b1.a[0];
    const double pi1 = gap + b1.a[0] + b2.a[0];
    const double nu1 = std::max(b1.lambda.sum() + b2.lambda[0] + gap - sigma1,
                                b1.lambda[0] + pi1 - sigma1);
    REQUIRE(std::abs(ht.at(1, 1) - nu1) < 1e-9);
    acc += ht.at(1, 1);
  }
  CHECK(res.rows[0].mean == doctest::Approx(acc / trials).epsilon(1e-12));
}

TEST_CASE("identical configs produce identical emitted bytes") {
  ExperimentConfig cfg;
  cfg.n_values = {4, 6};
  cfg.trials = 40;
  cfg.seed = 2024;
  const std::string a = emit_csv(run_concentration(cfg).rows);
  const std::string b = emit_csv(run_concentration(cfg).rows);
  CHECK(a == b);
  CHECK(a.substr(0, a.find('\n')) ==
        "n,v_i,v_j,N,mean,var,var_over_n4,ci_lo,ci_hi,seed");
}

TEST_CASE("doubling the scales doubles the recorded means") {
  ExperimentConfig cfg;
  cfg.n_values = {4};
  cfg.trials = 400;
  cfg.seed = 5;
  cfg.probes = {"centroid"};
  const ConcentrationResult r1 = run_concentration(cfg);
  cfg.sigma_lambda = 2.0;
  cfg.sigma_mu = 2.0;
  const ConcentrationResult r2 = run_concentration(cfg);
  const double se1 = std::sqrt(r1.rows[0].var / cfg.trials);
  const double se2 = std::sqrt(r2.rows[0].var / cfg.trials);
  CHECK(std::abs(r2.rows[0].mean - 2.0 * r1.rows[0].mean) <
        4.0 * (se2 + 2.0 * se1));
}

TEST_CASE("emit: empty table, round-trip, and json key order") {
  CHECK(emit_csv({}) == "n,v_i,v_j,N,mean,var,var_over_n4,ci_lo,ci_hi,seed\n");

  ProbeStat st;
  st.n = 8;
  st.vi = 2;
  st.vj = 5;
  st.trials = 10;
  st.mean = 1.0 / 3.0;
  st.var = 0.123456789012345678;
  st.var_over_n4 = st.var / 4096.0;
  st.ci_lo = 0.9e-5;
  st.ci_hi = 1.1e-5;
  st.seed = 7;
  const std::string csv = emit_csv({st});
  const auto rows = parse_csv(csv);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].mean == st.mean);
  CHECK(rows[0].var == st.var);
  CHECK(rows[0].ci_lo == st.ci_lo);
  CHECK(emit_csv(rows) == csv);

  const std::string json = emit_json({st});
  CHECK(json.find("\"n\"") < json.find("\"v_i\""));
  CHECK(json.find("\"var_over_n4\"") < json.find("\"ci_lo\""));
}

TEST_CASE("schema golden check on a fixed-seed miniature run") {
  ExperimentConfig cfg;
  cfg.n_values = {4};
  cfg.trials = 20;
  cfg.seed = 31337;
  const ConcentrationResult res = run_concentration(cfg);
  const std::string csv = emit_csv(res.rows);
  const auto rows = parse_csv(csv);
  REQUIRE(rows.size() == 3);  // three default probes
  CHECK(rows[0].n == 4);
  CHECK(rows[0].vi == 2);  // nu-mid
  CHECK(rows[0].vj == 2);
  CHECK(rows[1].vi == 1);  // centroid at n=4
  CHECK(rows[1].vj == 2);
  CHECK(rows[2].vi == 1);  // corner
  CHECK(rows[2].vj == 3);
  for (const auto& r : rows) {
    CHECK(r.trials == 20);
    CHECK(r.seed == 31337);
    CHECK(r.ci_lo <= r.var_over_n4);
    CHECK(r.ci_hi >= r.var_over_n4);
  }
}

TEST_CASE("equivalence suite passes, reruns identically, and detects mutation") {
  const EquivalenceReport rep = run_equivalence_suite(4, 10, 55);
  CHECK(rep.pass());
  CHECK(rep.worst_oracle_dev < 1e-9);
  CHECK(rep.worst_roundtrip_dev < 1e-9);
  CHECK(rep.worst_gamma_dev < 1e-8);

  const EquivalenceReport rep2 = run_equivalence_suite(4, 10, 55);
  CHECK(rep.to_string() == rep2.to_string());

  const EquivalenceReport bad =
      run_equivalence_suite(3, 5, 55, oct::BorderWeightSign::a_minus_apex);
  CHECK(!bad.pass());
  CHECK(!bad.oracle_ok);
  CHECK(bad.to_string().find("FAIL") != std::string::npos);
}

TEST_CASE("file helpers surface path context") {
  CHECK_THROWS_WITH_AS(read_file("/nonexistent/абс/file.txt"),
                       doctest::Contains("/nonexistent"), std::runtime_error);
}
