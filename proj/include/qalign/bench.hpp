#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qalign/metrics.hpp"
#include "qalign/point_set.hpp"
#include "qalign/rotation_basis.hpp"
#include "qalign/samplers.hpp"

namespace qalign::bench {

struct SamplerSettings {
  enum class Type { Exhaustive, Sa };
  Type type = Type::Exhaustive;
  int sweeps = 5000;
  int restarts = 64;
};

struct ThetaSweep {
  double start = 0.0;
  double end = 6.283185307179586476925286766559;
  double step = 0.087266462599716478846184538424431;  // pi / 36
};

// Mirrors the JSON config accepted by the CLI.
struct ExperimentConfig {
  std::string dataset = "fish";  // builtin name or file path
  std::string mode = "te";       // "te" | "psr", single-instance commands
  int link_degree = 10;          // k for single-instance psr commands
  double noise_ratio = 0.0;      // single-instance commands
  std::vector<int> k_list = {1, 10, 20, 30};
  int trials = 100;
  ThetaSweep theta_sweep;
  std::vector<double> noise_ratios = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  int noise_runs = 50;
  SamplerSettings sampler;
  std::uint64_t seed = 1;
  std::string out_dir = ".";

  void validate() const;
};

struct BenchRow {
  int k;
  double mean_e2d, sigma_e2d, mean_eR, sigma_eR;
  int trials;
};

struct ThetaRow {
  double theta;
  int k;
  double e2d, eR;
};

struct NoiseRow {
  double ratio;
  int k;
  double mean_e2d, sigma_e2d, mean_eR, sigma_eR;
  int runs;
};

struct TrialResult {
  Solutiond solution;
  RigidTransformd transform;  // raw affine decode
  double e2d, eR;
};

PointSetd load_dataset(const std::string& name_or_path);

// One misalignment trial on the centered dataset: rotate the template by
// theta, optionally append outliers, build and solve the QUBO, decode and
// score against the clean template. k == 1 without noise is transformation
// estimation with index links; everything else links by brute-force KNN.
TrialResult run_trial(const PointSetd& centered, const RotationBasisd& basis, int k, double theta,
                      double noise_ratio, const SamplerSettings& sampler,
                      std::uint64_t sampler_seed, std::uint64_t noise_seed);

std::vector<BenchRow> run_misalignment_bench(const ExperimentConfig& config);
std::vector<ThetaRow> run_theta_sweep(const ExperimentConfig& config);
std::vector<NoiseRow> run_noise_sweep(const ExperimentConfig& config);

// Gap study: SA traces with decoded per-event alignment error for
// theta in {pi/8, pi/4, pi/2} x k in {1, 30}, plus the exhaustive spectrum
// head of each instance. Trace CSVs land in config.out_dir.
struct GapStudyInstance {
  double theta;
  int k;
  double ground_energy;
  double second_energy;
  double gap;
  std::size_t trace_events;
  std::string trace_path;
};
std::vector<GapStudyInstance> run_gap_study(const ExperimentConfig& config);

// Dense P export with generator labels plus the machine-checked zero-block
// report over the 2D generator families.
struct ZeroBlockReport {
  std::string csv_path;
  double max_cross_abs = 0.0;  // largest |P_ij| over identity-vs-skew pairs
  bool all_cross_zero = false; // max_cross_abs <= 1e-12
  double min_diagonal = 0.0;
};
ZeroBlockReport export_p_heatmap_data(const ExperimentConfig& config);

// Shrinkage demonstration: largest singular value of the decoded affine map
// under full linking versus TE linking at theta = pi/4.
struct ShrinkageReport {
  double sigma_max_te = 0.0;
  double sigma_max_full = 0.0;
  bool degenerate_full = false;
  bool shrinks = false;  // sigma_max_full < sigma_max_te
};
ShrinkageReport run_shrinkage_demo(const ExperimentConfig& config);

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows);
void write_theta_csv(const std::string& path, const std::vector<ThetaRow>& rows);
void write_noise_csv(const std::string& path, const std::vector<NoiseRow>& rows);

// Seed derivation shared by the benches; exposed so tests can predict it.
std::uint64_t theta_seed(std::uint64_t master, int trial);
std::uint64_t sampler_seed(std::uint64_t master, int k, int trial);
std::uint64_t noise_seed(std::uint64_t master, int k, int ratio_index, int trial);

}  // namespace qalign::bench
