#include "qalign/bench.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "qalign/csv.hpp"
#include "qalign/datasets.hpp"
#include "qalign/point_set_io.hpp"
#include "qalign/qubo.hpp"
#include "qalign/unembedding.hpp"

namespace qalign::bench {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

struct Stats {
  double mean = 0.0;
  double sigma = 0.0;
};

Stats stats_of(const std::vector<double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - s.mean) * (x - s.mean);
  s.sigma = std::sqrt(var / static_cast<double>(xs.size()));
  return s;
}

std::vector<double> sweep_thetas(const ThetaSweep& sweep) {
  std::vector<double> out;
  for (double t = sweep.start; t < sweep.end - 1e-12; t += sweep.step) out.push_back(t);
  return out;
}

double sigma_max(const Eigen::MatrixXd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path);
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw Error("trials must be >= 1");
  if (noise_runs < 1) throw Error("noise runs must be >= 1");
  if (!(theta_sweep.step > 0)) throw Error("theta step must be positive");
  if (k_list.empty()) throw Error("k list must not be empty");
  for (int k : k_list)
    if (k < 1) throw Error("every k must be >= 1");
  for (double r : noise_ratios)
    if (!(r >= 0.0 && r <= 0.5)) throw InvalidRatio("noise ratios must lie in [0, 0.5]");
  if (sampler.sweeps < 1 || sampler.restarts < 1) throw Error("sampler settings must be >= 1");
  if (link_degree < 1) throw Error("link degree must be >= 1");
  if (!(noise_ratio >= 0.0 && noise_ratio <= 0.5))
    throw InvalidRatio("noise ratio must lie in [0, 0.5]");
}

PointSetd load_dataset(const std::string& name_or_path) {
  if (datasets::is_builtin(name_or_path)) return datasets::by_name(name_or_path);
  return load_point_set(name_or_path);
}

std::uint64_t theta_seed(std::uint64_t master, int trial) {
  return split_seed(master, 0x100000ull + static_cast<std::uint64_t>(trial));
}

std::uint64_t sampler_seed(std::uint64_t master, int k, int trial) {
  return split_seed(master, 0x200000ull + static_cast<std::uint64_t>(k) * 0x10000ull +
                                static_cast<std::uint64_t>(trial));
}

std::uint64_t noise_seed(std::uint64_t master, int k, int ratio_index, int trial) {
  return split_seed(master, 0x300000ull + static_cast<std::uint64_t>(k) * 0x100000ull +
                                static_cast<std::uint64_t>(ratio_index) * 0x10000ull +
                                static_cast<std::uint64_t>(trial));
}

namespace {

// A misalignment instance. The template in its clean pose is the reference
// shape itself (plus any appended outliers); the misalignment rotates that
// whole set. Links are shape neighbourhoods: they pair each reference point
// with the template indices that are its nearest neighbours in the clean
// pose, and are carried through the misalignment by index. Linking in the
// misaligned pose instead cannot reproduce the reference accuracy table:
// at large theta the nearest misaligned points are not near-correspondences
// and the linked objective no longer prefers the true rotation.
struct ProblemSetup {
  PointSetd solver_template;       // centered, misaligned, outliers included
  Eigen::VectorXd tmpl_centroid;   // removed by the centering step
  Eigen::MatrixXd misaligned_clean;  // rotation * reference, for scoring
  Eigen::MatrixXd phi;
};

ProblemSetup setup_problem(const PointSetd& reference, const RotationBasisd& basis, int k,
                           double theta, double noise_ratio, std::uint64_t noise_seed_value) {
  ProblemSetup setup;
  const bool noisy = noise_ratio > 0.0;
  PointSetd clean_pose = reference;
  if (noisy) clean_pose = add_uniform_outliers(reference, noise_ratio, noise_seed_value);

  const Eigen::MatrixXd rot = rotation_2d(theta).rotation;
  PointSetd misaligned;
  misaligned.points = rot * clean_pose.points;
  auto centered_tmpl = center(misaligned);
  setup.solver_template = std::move(centered_tmpl.set);
  setup.tmpl_centroid = std::move(centered_tmpl.centroid);
  setup.misaligned_clean = rot * reference.points;

  if (k == 1 && !noisy) {
    setup.phi = build_phi_te(reference, setup.solver_template, basis);
  } else {
    const LinkSet links = knn_links(reference, clean_pose, k);
    setup.phi = build_phi_psr(reference, setup.solver_template, links, basis);
  }
  return setup;
}

}  // namespace

TrialResult run_trial(const PointSetd& centered, const RotationBasisd& basis, int k, double theta,
                      double noise_ratio, const SamplerSettings& sampler,
                      std::uint64_t sampler_seed_value, std::uint64_t noise_seed_value) {
  const PointSetd& reference = centered;
  auto setup = setup_problem(reference, basis, k, theta, noise_ratio, noise_seed_value);
  const auto qubo = build_qubo(setup.phi, static_cast<int>(reference.dim()));
  const auto reduced = reduce_clamped(qubo);

  Solutiond solution;
  if (sampler.type == SamplerSettings::Type::Exhaustive) {
    solution = exhaustive_min(reduced);
  } else {
    SaSchedule schedule = default_schedule(reduced);
    schedule.sweeps = sampler.sweeps;
    schedule.restarts = sampler.restarts;
    solution = solve_sa(reduced, schedule, sampler_seed_value).solution;
  }

  TrialResult result;
  result.transform = unembed(solution, basis, Eigen::VectorXd::Zero(reference.dim()).eval(),
                             setup.tmpl_centroid);
  result.solution = std::move(solution);

  // Score against the clean template with ground-truth index correspondences.
  // e2d compares rotations over centered sets; the clean part of the template
  // is centered already, so the translation never enters the metric and the
  // outlier-induced centroid shift cannot masquerade as rotation error.
  const Eigen::MatrixXd mapped = result.transform.rotation * setup.misaligned_clean;
  result.e2d = (mapped - reference.points).norm() / reference.points.norm();
  result.eR = transformation_discrepancy<double>(result.transform.rotation);
  return result;
}

std::vector<BenchRow> run_misalignment_bench(const ExperimentConfig& config) {
  config.validate();
  const PointSetd data = center(load_dataset(config.dataset)).set;
  const auto basis = build_basis_2d<double>();

  std::vector<BenchRow> rows;
  for (int k : config.k_list) {
    std::vector<double> e2d, eR;
    for (int t = 0; t < config.trials; ++t) {
      SplitMix64 rng(theta_seed(config.seed, t));
      const double theta = rng.uniform(0.0, 2.0 * kPi);
      const auto trial = run_trial(data, basis, k, theta, 0.0, config.sampler,
                                   sampler_seed(config.seed, k, t), 0);
      e2d.push_back(trial.e2d);
      eR.push_back(trial.eR);
    }
    const Stats s2d = stats_of(e2d), sR = stats_of(eR);
    rows.push_back({k, s2d.mean, s2d.sigma, sR.mean, sR.sigma, config.trials});
  }
  return rows;
}

std::vector<ThetaRow> run_theta_sweep(const ExperimentConfig& config) {
  config.validate();
  const PointSetd data = center(load_dataset(config.dataset)).set;
  const auto basis = build_basis_2d<double>();
  const auto thetas = sweep_thetas(config.theta_sweep);

  std::vector<ThetaRow> rows;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (int k : config.k_list) {
      const auto trial = run_trial(data, basis, k, thetas[i], 0.0, config.sampler,
                                   sampler_seed(config.seed, k, static_cast<int>(i)), 0);
      rows.push_back({thetas[i], k, trial.e2d, trial.eR});
    }
  }
  return rows;
}

std::vector<NoiseRow> run_noise_sweep(const ExperimentConfig& config) {
  config.validate();
  const PointSetd data = center(load_dataset(config.dataset)).set;
  const auto basis = build_basis_2d<double>();

  std::vector<NoiseRow> rows;
  for (std::size_t ri = 0; ri < config.noise_ratios.size(); ++ri) {
    const double ratio = config.noise_ratios[ri];
    for (int k : config.k_list) {
      std::vector<double> e2d, eR;
      for (int t = 0; t < config.noise_runs; ++t) {
        SplitMix64 rng(theta_seed(config.seed, t));
        const double theta = rng.uniform(0.0, 2.0 * kPi);
        const auto trial =
            run_trial(data, basis, k, theta, ratio, config.sampler,
                      sampler_seed(config.seed, k, t),
                      noise_seed(config.seed, k, static_cast<int>(ri), t));
        e2d.push_back(trial.e2d);
        eR.push_back(trial.eR);
      }
      const Stats s2d = stats_of(e2d), sR = stats_of(eR);
      rows.push_back({ratio, k, s2d.mean, s2d.sigma, sR.mean, sR.sigma, config.noise_runs});
    }
  }
  return rows;
}

std::vector<GapStudyInstance> run_gap_study(const ExperimentConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.out_dir);
  const PointSetd data = center(load_dataset(config.dataset)).set;
  const auto basis = build_basis_2d<double>();

  const struct { double theta; const char* tag; } angles[] = {
      {kPi / 8.0, "pi8"}, {kPi / 4.0, "pi4"}, {kPi / 2.0, "pi2"}};
  const int ks[] = {1, 30};

  std::vector<GapStudyInstance> out;
  for (const auto& angle : angles) {
    for (int k : ks) {
      const auto setup = setup_problem(data, basis, k, angle.theta, 0.0, 0);
      const auto qubo = build_qubo(setup.phi, 2);
      const auto reduced = reduce_clamped(qubo);

      SaSchedule schedule = default_schedule(reduced);
      schedule.sweeps = config.sampler.sweeps;
      schedule.restarts = config.sampler.restarts;
      const auto sa = solve_sa(reduced, schedule, sampler_seed(config.seed, k, 0));

      const auto exhaustive = solve_exhaustive(reduced);
      const auto& levels = exhaustive.spectrum.levels;

      GapStudyInstance inst;
      inst.theta = angle.theta;
      inst.k = k;
      inst.ground_energy = levels[0].energy;
      inst.second_energy = levels.size() > 1 ? levels[1].energy : levels[0].energy;
      inst.gap = exhaustive.spectrum.gap;
      inst.trace_events = sa.trace.events.size();
      inst.trace_path = config.out_dir + "/trace_k" + std::to_string(k) + "_" + angle.tag + ".csv";

      auto csv = open_csv(inst.trace_path);
      csv << "step,energy,bitstring_hex,e2d\n";
      const Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
      for (const auto& event : sa.trace.events) {
        Solutiond decoded{event.bits, event.energy};
        const auto transform = unembed(decoded, basis, zero, setup.tmpl_centroid);
        const double e2d = (transform.rotation * setup.misaligned_clean - data.points).norm() /
                           data.points.norm();
        csv << event.step << ',' << format_g17(event.energy) << ',' << bits_to_hex(event.bits)
            << ',' << format_g17(e2d) << '\n';
      }
      out.push_back(std::move(inst));
    }
  }

  auto gaps = open_csv(config.out_dir + "/gaps.csv");
  gaps << "theta,k,ground_energy,second_energy,gap\n";
  for (const auto& inst : out)
    gaps << format_g17(inst.theta) << ',' << inst.k << ',' << format_g17(inst.ground_energy) << ','
         << format_g17(inst.second_energy) << ',' << format_g17(inst.gap) << '\n';
  return out;
}

ZeroBlockReport export_p_heatmap_data(const ExperimentConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.out_dir);
  const PointSetd data = center(load_dataset(config.dataset)).set;
  const auto basis = build_basis_2d<double>();

  const auto setup = setup_problem(data, basis, config.link_degree, kPi / 4.0, config.noise_ratio,
                                   noise_seed(config.seed, config.link_degree, 0, 0));
  const auto qubo = build_qubo(setup.phi, 2);

  std::vector<std::string> labels;
  labels.emplace_back("ref");
  for (const auto& e : basis.elements) labels.push_back(e.generator + "*" + format_g17(e.weight));

  ZeroBlockReport report;
  report.csv_path = config.out_dir + "/p_matrix.csv";
  auto csv = open_csv(report.csv_path);
  csv << "label";
  for (const auto& l : labels) csv << ',' << l;
  csv << '\n';
  for (Eigen::Index i = 0; i < qubo.P.rows(); ++i) {
    csv << labels[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < qubo.P.cols(); ++j) csv << ',' << format_g17(qubo.P(i, j));
    csv << '\n';
  }

  report.min_diagonal = qubo.P.diagonal().minCoeff();
  for (int i = 0; i < basis.size(); ++i)
    for (int j = 0; j < basis.size(); ++j) {
      const bool cross = (basis.elements[static_cast<std::size_t>(i)].family ==
                          GeneratorFamily::Identity) !=
                         (basis.elements[static_cast<std::size_t>(j)].family ==
                          GeneratorFamily::Identity);
      if (cross)
        report.max_cross_abs = std::max(report.max_cross_abs, std::abs(qubo.P(i + 1, j + 1)));
    }
  report.all_cross_zero = report.max_cross_abs <= 1e-12;
  return report;
}

ShrinkageReport run_shrinkage_demo(const ExperimentConfig& config) {
  config.validate();
  const PointSetd data = center(load_dataset(config.dataset)).set;
  const auto basis = build_basis_2d<double>();

  const auto solve_with = [&](const ProblemSetup& setup) {
    const auto reduced = reduce_clamped(build_qubo(setup.phi, 2));
    const auto solution = exhaustive_min(reduced);
    return unembed(solution, basis, Eigen::VectorXd::Zero(2).eval(), setup.tmpl_centroid);
  };

  const auto te = solve_with(setup_problem(data, basis, 1, kPi / 4.0, 0.0, 0));
  const auto full = solve_with(
      setup_problem(data, basis, static_cast<int>(data.size()), kPi / 4.0, 0.0, 0));

  ShrinkageReport report;
  report.sigma_max_te = sigma_max(te.rotation);
  report.sigma_max_full = sigma_max(full.rotation);
  report.degenerate_full = project_to_rotation<double>(full.rotation).degenerate;
  report.shrinks = report.sigma_max_full < report.sigma_max_te;
  return report;
}

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows) {
  auto csv = open_csv(path);
  csv << "k,mean_e2d,sigma_e2d,mean_eR,sigma_eR,trials\n";
  for (const auto& r : rows)
    csv << r.k << ',' << format_g17(r.mean_e2d) << ',' << format_g17(r.sigma_e2d) << ','
        << format_g17(r.mean_eR) << ',' << format_g17(r.sigma_eR) << ',' << r.trials << '\n';
}

void write_theta_csv(const std::string& path, const std::vector<ThetaRow>& rows) {
  auto csv = open_csv(path);
  csv << "theta,k,e2d,eR\n";
  for (const auto& r : rows)
    csv << format_g17(r.theta) << ',' << r.k << ',' << format_g17(r.e2d) << ','
        << format_g17(r.eR) << '\n';
}

void write_noise_csv(const std::string& path, const std::vector<NoiseRow>& rows) {
  auto csv = open_csv(path);
  csv << "ratio,k,mean_e2d,sigma_e2d,mean_eR,sigma_eR,runs\n";
  for (const auto& r : rows)
    csv << format_g17(r.ratio) << ',' << r.k << ',' << format_g17(r.mean_e2d) << ','
        << format_g17(r.sigma_e2d) << ',' << format_g17(r.mean_eR) << ','
        << format_g17(r.sigma_eR) << ',' << r.runs << '\n';
}

}  // namespace qalign::bench
