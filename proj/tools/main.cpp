// Command-line front end: QUBO construction, sampling, decoding, experiment
// benches and the small-n annealing simulator.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qalign/anneal_sim.hpp"
#include "qalign/bench.hpp"
#include "qalign/csv.hpp"
#include "qalign/datasets.hpp"
#include "qalign/metrics.hpp"
#include "qalign/point_set_io.hpp"
#include "qalign/qubo.hpp"
#include "qalign/samplers.hpp"
#include "qalign/unembedding.hpp"

using json = nlohmann::json;
using namespace qalign;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string dataset = "fish";
  std::string config_path;
};

struct ProblemOptions {
  std::string mode = "te";  // te | psr
  int k = 10;
  double theta = kPi / 4.0;
  double noise = 0.0;
  std::string template_path;  // external template; empty = synthetic misalignment
  int dim = 2;                // basis dimension for synthetic 3D runs is unsupported here
};

// A fully assembled instance plus everything needed to decode and score it.
struct Instance {
  PointSetd reference;  // centered
  PointSetd solver_template;
  Eigen::VectorXd ref_centroid;
  Eigen::VectorXd tmpl_centroid;
  LinkSet links;  // identity links when mode == te
  RotationBasisd basis;
  QuboProblemd qubo;
  ReducedQubod reduced;
  bool has_ground_truth = false;
  Eigen::MatrixXd misaligned_clean;  // rotation * reference, when synthetic
};

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Instance build_instance(const GlobalOptions& global, const ProblemOptions& problem) {
  Instance inst;
  auto centered_ref = center(bench::load_dataset(global.dataset));
  inst.reference = std::move(centered_ref.set);
  inst.ref_centroid = std::move(centered_ref.centroid);
  inst.basis = build_basis_2d<double>();
  if (inst.reference.dim() != 2)
    throw FormatError("CLI problem construction expects 2D data; use anneal-sim for generic Ising input");

  if (!problem.template_path.empty()) {
    // External pair: link the sets as given.
    auto centered_tmpl = center(load_point_set(problem.template_path));
    inst.solver_template = std::move(centered_tmpl.set);
    inst.tmpl_centroid = std::move(centered_tmpl.centroid);
    if (problem.mode == "te") {
      inst.links = identity_links(inst.reference.size());
    } else {
      inst.links = knn_links(inst.reference, inst.solver_template, problem.k);
    }
  } else {
    // Synthetic misalignment of the reference shape itself. Links are shape
    // neighbourhoods, established in the clean pose and carried by index.
    inst.has_ground_truth = true;
    PointSetd clean_pose = inst.reference;
    if (problem.noise > 0.0)
      clean_pose = add_uniform_outliers(inst.reference, problem.noise, split_seed(global.seed, 0xA0));
    const Eigen::MatrixXd rot = rotation_2d(problem.theta).rotation;
    PointSetd misaligned;
    misaligned.points = rot * clean_pose.points;
    auto centered_tmpl = center(misaligned);
    inst.solver_template = std::move(centered_tmpl.set);
    inst.tmpl_centroid = std::move(centered_tmpl.centroid);
    inst.ref_centroid.setZero(2);  // the centered dataset is the reference frame
    inst.misaligned_clean = rot * inst.reference.points;
    if (problem.mode == "te") {
      if (problem.noise > 0.0) throw CardinalityMismatch("te mode needs a noise-free template");
      inst.links = identity_links(inst.reference.size());
    } else {
      inst.links = knn_links(inst.reference, clean_pose, problem.k);
    }
  }

  Eigen::MatrixXd phi;
  if (problem.mode == "te") {
    phi = build_phi_te(inst.reference, inst.solver_template, inst.basis);
  } else if (problem.mode == "psr") {
    phi = build_phi_psr(inst.reference, inst.solver_template, inst.links, inst.basis);
  } else {
    throw Error("mode must be te or psr");
  }
  inst.qubo = build_qubo(phi, 2);
  inst.reduced = reduce_clamped(inst.qubo);
  return inst;
}

bench::ExperimentConfig config_from(const GlobalOptions& global) {
  bench::ExperimentConfig cfg;
  if (!global.config_path.empty()) {
    std::ifstream in(global.config_path);
    if (!in) throw IoError("cannot open config file: " + global.config_path);
    json j = json::parse(in, nullptr, true, true);
    if (j.contains("dataset")) cfg.dataset = j["dataset"].get<std::string>();
    if (j.contains("mode")) cfg.mode = j["mode"].get<std::string>();
    if (j.contains("linkDegree")) cfg.link_degree = j["linkDegree"].get<int>();
    if (j.contains("noiseRatio")) cfg.noise_ratio = j["noiseRatio"].get<double>();
    if (j.contains("kList")) cfg.k_list = j["kList"].get<std::vector<int>>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
    if (j.contains("thetaSweep")) {
      const auto& sweep = j["thetaSweep"];
      if (sweep.contains("start")) cfg.theta_sweep.start = sweep["start"].get<double>();
      if (sweep.contains("end")) cfg.theta_sweep.end = sweep["end"].get<double>();
      if (sweep.contains("step")) cfg.theta_sweep.step = sweep["step"].get<double>();
    }
    if (j.contains("noiseRatios")) cfg.noise_ratios = j["noiseRatios"].get<std::vector<double>>();
    if (j.contains("noiseRuns")) cfg.noise_runs = j["noiseRuns"].get<int>();
    if (j.contains("sampler")) {
      const auto& sampler = j["sampler"];
      if (sampler.contains("type"))
        cfg.sampler.type = sampler["type"].get<std::string>() == "sa"
                               ? bench::SamplerSettings::Type::Sa
                               : bench::SamplerSettings::Type::Exhaustive;
      if (sampler.contains("sweeps")) cfg.sampler.sweeps = sampler["sweeps"].get<int>();
      if (sampler.contains("restarts")) cfg.sampler.restarts = sampler["restarts"].get<int>();
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("outDir")) cfg.out_dir = j["outDir"].get<std::string>();
  }
  return cfg;
}

void ensure_out_dir(const std::string& dir) { std::filesystem::create_directories(dir); }

int run_basis(int dim) {
  const auto basis = build_basis<double>(dim);
  for (int k = 0; k < basis.size(); ++k) {
    const auto& e = basis.elements[static_cast<std::size_t>(k)];
    json line;
    line["index"] = k;
    line["weight"] = e.weight;
    line["generator"] = e.generator;
    line["matrix"] = matrix_to_json(e.matrix);
    std::cout << line.dump() << '\n';
  }
  return 0;
}

int run_build(const GlobalOptions& global, const ProblemOptions& problem,
              const std::string& format) {
  const auto inst = build_instance(global, problem);
  ensure_out_dir(global.out_dir);

  const auto& p = inst.qubo.P;
  if (format == "csv") {
    std::ofstream out(global.out_dir + "/P.csv");
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      for (Eigen::Index j = 0; j < p.cols(); ++j)
        out << (j ? "," : "") << format_g17(p(i, j));
      out << '\n';
    }
  } else if (format == "coo") {
    std::ofstream out(global.out_dir + "/P.coo");
    for (Eigen::Index i = 0; i < p.rows(); ++i)
      for (Eigen::Index j = i; j < p.cols(); ++j)
        out << i << ' ' << j << ' ' << format_g17(p(i, j)) << '\n';
  } else {
    throw Error("format must be csv or coo");
  }

  json meta;
  meta["dim"] = inst.qubo.dim;
  meta["basisSize"] = inst.qubo.basis_size;
  meta["N"] = inst.reference.size();
  meta["M"] = inst.solver_template.size();
  meta["linkDegree"] = problem.mode == "te" ? 1 : problem.k;
  meta["clampedBit"] = QuboProblemd::kClampedBit;
  meta["mode"] = problem.mode;
  std::ofstream meta_out(global.out_dir + "/P.meta.json");
  meta_out << meta.dump(2) << '\n';
  std::cout << meta.dump() << '\n';
  return 0;
}

int run_solve(const GlobalOptions& global, const ProblemOptions& problem,
              const std::string& sampler, int sweeps, int restarts, const std::string& trace_path) {
  const auto inst = build_instance(global, problem);

  Solutiond solution;
  Traced trace;
  if (sampler == "exhaustive") {
    if (!trace_path.empty()) throw Error("--trace requires --sampler sa");
    solution = exhaustive_min(inst.reduced);
  } else if (sampler == "sa") {
    SaSchedule schedule = default_schedule(inst.reduced);
    schedule.sweeps = sweeps;
    schedule.restarts = restarts;
    auto result = solve_sa(inst.reduced, schedule, global.seed);
    solution = std::move(result.solution);
    trace = std::move(result.trace);
    if (!trace_path.empty()) {
      std::ofstream out(trace_path);
      if (!out) throw IoError("cannot open trace file: " + trace_path);
      out << "step,energy,bitstring_hex\n";
      for (const auto& event : trace.events)
        out << event.step << ',' << format_g17(event.energy) << ',' << bits_to_hex(event.bits)
            << '\n';
    }
  } else {
    throw Error("sampler must be exhaustive or sa");
  }

  const auto transform = unembed(solution, inst.basis, inst.ref_centroid, inst.tmpl_centroid);
  const auto projection = project_to_rotation<double>(transform.rotation);

  EvalReportd eval;
  eval.eR = transformation_discrepancy<double>(transform.rotation);
  eval.qubo_energy = solution.energy;
  eval.residual_energy =
      residual_energy<double>(transform.rotation, inst.reference, inst.solver_template, inst.links);
  {
    // Both in-memory sets are centered, so the centered-frame transform
    // carries no translation; the raw-frame t is reported separately.
    RigidTransformd centered_frames;
    centered_frames.rotation = transform.rotation;
    centered_frames.translation = Eigen::VectorXd::Zero(2);
    eval.gpe = gpe(centered_frames, inst.reference, inst.solver_template);
  }

  json out;
  out["energy"] = solution.energy;
  out["bits"] = bits_to_string(solution.bits);
  out["R_affine"] = matrix_to_json(transform.rotation);
  out["R_projected"] = matrix_to_json(projection.rotation);
  out["t"] = vector_to_json(transform.translation);
  out["degenerate"] = projection.degenerate;
  out["eval"]["eR"] = eval.eR;
  out["eval"]["gpe"] = eval.gpe;
  out["eval"]["quboEnergy"] = eval.qubo_energy;
  out["eval"]["residualEnergy"] = eval.residual_energy;
  if (inst.has_ground_truth) {
    const double e2d = (transform.rotation * inst.misaligned_clean - inst.reference.points).norm() /
                       inst.reference.points.norm();
    eval.e2d = e2d;
    out["eval"]["e2d"] = e2d;
  } else {
    out["eval"]["e2d"] = nullptr;
  }
  std::cout << out.dump(2) << '\n';

  if (!eval.consistent()) {
    std::cerr << "internal error: QUBO energy disagrees with the decoded residual\n";
    return 2;
  }
  return 0;
}

int run_spectrum(const GlobalOptions& global, const ProblemOptions& problem, std::uint64_t levels) {
  const auto inst = build_instance(global, problem);
  const auto result = solve_exhaustive(inst.reduced);
  ensure_out_dir(global.out_dir);

  // Representative (lexicographically smallest) bitstring per level, pulled
  // from a slice of at least the requested number of states.
  std::uint64_t want_states = 0;
  std::uint64_t seen_levels = 0;
  for (const auto& level : result.spectrum.levels) {
    if (seen_levels == levels) break;
    want_states += level.multiplicity;
    ++seen_levels;
  }
  const auto slice = spectrum_slice(inst.reduced, std::max<std::uint64_t>(want_states, 1));

  std::ofstream out(global.out_dir + "/spectrum.csv");
  out << "energy,multiplicity,representative_bitstring\n";
  std::size_t cursor = 0;
  for (std::uint64_t li = 0; li < seen_levels; ++li) {
    const auto& level = result.spectrum.levels[li];
    out << format_g17(level.energy) << ',' << level.multiplicity << ','
        << bits_to_string(slice[cursor].second) << '\n';
    cursor += level.multiplicity;
  }
  std::cout << "spectrum levels written: " << seen_levels << " (gap "
            << format_g17(result.spectrum.gap) << ")\n";
  return 0;
}

int run_bench(const bench::ExperimentConfig& cfg, const std::string& which) {
  cfg.validate();
  ensure_out_dir(cfg.out_dir);
  if (which == "misalign") {
    bench::write_bench_csv(cfg.out_dir + "/misalign.csv", bench::run_misalignment_bench(cfg));
    std::cout << "wrote " << cfg.out_dir << "/misalign.csv\n";
  } else if (which == "theta") {
    bench::write_theta_csv(cfg.out_dir + "/theta.csv", bench::run_theta_sweep(cfg));
    std::cout << "wrote " << cfg.out_dir << "/theta.csv\n";
  } else if (which == "noise") {
    bench::write_noise_csv(cfg.out_dir + "/noise.csv", bench::run_noise_sweep(cfg));
    std::cout << "wrote " << cfg.out_dir << "/noise.csv\n";
  }
  return 0;
}

int run_gap_study_cmd(const bench::ExperimentConfig& cfg) {
  const auto instances = bench::run_gap_study(cfg);
  json out = json::array();
  for (const auto& inst : instances) {
    json j;
    j["theta"] = inst.theta;
    j["k"] = inst.k;
    j["groundEnergy"] = inst.ground_energy;
    j["secondEnergy"] = inst.second_energy;
    j["gap"] = inst.gap;
    j["traceEvents"] = inst.trace_events;
    j["tracePath"] = inst.trace_path;
    out.push_back(std::move(j));
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_p_export(const bench::ExperimentConfig& cfg) {
  const auto report = bench::export_p_heatmap_data(cfg);
  json j;
  j["csvPath"] = report.csv_path;
  j["maxCrossAbs"] = report.max_cross_abs;
  j["allCrossZero"] = report.all_cross_zero;
  j["minDiagonal"] = report.min_diagonal;
  std::ofstream out(cfg.out_dir + "/zero_blocks.json");
  out << j.dump(2) << '\n';
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_shrinkage(const bench::ExperimentConfig& cfg) {
  const auto report = bench::run_shrinkage_demo(cfg);
  json j;
  j["sigmaMaxTe"] = report.sigma_max_te;
  j["sigmaMaxFull"] = report.sigma_max_full;
  j["degenerateFull"] = report.degenerate_full;
  j["shrinks"] = report.shrinks;
  std::cout << j.dump(2) << '\n';
  if (!report.shrinks) {
    std::cerr << "internal error: full linking did not shrink the decoded map\n";
    return 2;
  }
  return 0;
}

IsingProblemd load_ising(const std::string& path, int qubits) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open Ising file: " + path);
  IsingProblemd ising;
  ising.h.setZero(qubits);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind[0] == '#') continue;
    if (kind == "h") {
      int i;
      double v;
      if (!(ls >> i >> v) || i < 0 || i >= qubits) throw FormatError("bad h line: " + line);
      ising.h(i) += v;
    } else if (kind == "J") {
      int i, j;
      double v;
      if (!(ls >> i >> j >> v) || i < 0 || j < 0 || i >= qubits || j >= qubits || i == j)
        throw FormatError("bad J line: " + line);
      ising.couplings[{std::min(i, j), std::max(i, j)}] += v;
    } else {
      throw FormatError("unknown Ising record: " + line);
    }
  }
  return ising;
}

int run_anneal_sim(const GlobalOptions& global, const std::string& ising_path, int qubits,
                   double bx, int grid, double total_time, int steps) {
  const auto ising = load_ising(ising_path, qubits);
  const auto hp = build_hp(ising);
  const auto hi = build_hi(qubits, bx);

  const auto curve = gap_curve(hi, hp, grid);
  ensure_out_dir(global.out_dir);
  std::ofstream out(global.out_dir + "/gap_curve.csv");
  out << "s,gap,ground_energy\n";
  for (const auto& sample : curve.samples)
    out << format_g17(sample.s) << ',' << format_g17(sample.gap) << ','
        << format_g17(sample.ground_energy) << '\n';

  json j;
  j["minGap"] = curve.min_gap();
  try {
    j["rateBound"] = annealing_rate_bound(hi, hp, grid);
  } catch (const DegenerateGap& e) {
    j["rateBound"] = nullptr;
    j["rateBoundError"] = e.what();
  }
  if (total_time > 0.0) {
    const auto evolved = evolve(hi, hp, total_time, steps);
    j["groundOverlap"] = evolved.ground_overlap;
    j["finalNorm"] = evolved.state.amplitudes.norm();
    std::ofstream evo(global.out_dir + "/evolve.csv");
    evo << "time,steps,ground_overlap,final_norm\n";
    evo << format_g17(total_time) << ',' << steps << ',' << format_g17(evolved.ground_overlap)
        << ',' << format_g17(evolved.state.amplitudes.norm()) << '\n';
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QUBO-based rigid point-set transformation estimation and registration"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "master seed for all derived randomness");
  app.add_option("--out", global.out_dir, "output directory");
  app.add_option("--dataset", global.dataset, "dataset file path or builtin name (fish, ring, grid, blobs)");
  app.add_option("--config", global.config_path, "JSON experiment config");

  ProblemOptions problem;
  int basis_dim = 2;
  std::string build_format = "csv";
  std::string sampler = "exhaustive";
  int sweeps = 5000;
  int restarts = 64;
  std::string trace_path;
  std::uint64_t spectrum_levels = 10;
  std::string ising_path;
  int sim_qubits = 3;
  double sim_bx = 1.0;
  int sim_grid = 51;
  double sim_time = 0.0;
  int sim_steps = 1000;

  auto* basis_cmd = app.add_subcommand("basis", "dump the additive rotation basis as JSON lines");
  basis_cmd->add_option("--dim", basis_dim, "basis dimension (2 or 3)")->check(CLI::IsMember({2, 3}));
  basis_cmd->add_flag("--dump", "emit one element per line (default behaviour)");

  const auto add_problem_options = [&](CLI::App* cmd) {
    cmd->add_option("--mode", problem.mode, "te or psr")->check(CLI::IsMember({"te", "psr"}));
    cmd->add_option("--k", problem.k, "link degree for psr mode");
    cmd->add_option("--theta", problem.theta, "synthetic misalignment angle (radians)");
    cmd->add_option("--noise", problem.noise, "outlier ratio in [0, 0.5]");
    cmd->add_option("--template", problem.template_path, "external template file (disables synthetic protocol)");
  };

  auto* build_cmd = app.add_subcommand("build", "construct P and emit it with a JSON sidecar");
  add_problem_options(build_cmd);
  build_cmd->add_option("--format", build_format, "csv or coo")->check(CLI::IsMember({"csv", "coo"}));

  auto* solve_cmd = app.add_subcommand("solve", "solve an instance and decode the transformation");
  add_problem_options(solve_cmd);
  solve_cmd->add_option("--sampler", sampler, "exhaustive or sa")->check(CLI::IsMember({"exhaustive", "sa"}));
  solve_cmd->add_option("--sweeps", sweeps, "SA sweeps per restart");
  solve_cmd->add_option("--restarts", restarts, "SA restarts");
  solve_cmd->add_option("--trace", trace_path, "CSV path for the SA improvement trace");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "exhaustive low-energy spectrum as CSV");
  add_problem_options(spectrum_cmd);
  spectrum_cmd->add_option("--levels", spectrum_levels, "number of levels to emit");

  auto* bench_cmd = app.add_subcommand("bench", "experiment harness");
  bench_cmd->require_subcommand(1);
  auto* bench_misalign = bench_cmd->add_subcommand("misalign", "random-misalignment accuracy table");
  auto* bench_theta = bench_cmd->add_subcommand("theta", "systematic theta sweep");
  auto* bench_noise = bench_cmd->add_subcommand("noise", "outlier-ratio sweep");
  std::vector<int> k_list;
  int trials = 0;
  int noise_runs = 0;
  std::string sampler_type;
  for (auto* cmd : {bench_misalign, bench_theta, bench_noise}) {
    cmd->add_option("--k-list", k_list, "link degrees to bench")->delimiter(',');
    cmd->add_option("--trials", trials, "trials per condition");
    cmd->add_option("--sampler", sampler_type, "exhaustive or sa")->check(CLI::IsMember({"exhaustive", "sa"}));
  }
  bench_noise->add_option("--runs", noise_runs, "runs per (ratio, k) cell");

  auto* gap_cmd = app.add_subcommand("gap-study", "SA traces and exhaustive gaps for selected instances");
  auto* pexp_cmd = app.add_subcommand("p-export", "dense labelled P with the zero-block report");
  pexp_cmd->add_option("--k", problem.k, "link degree (1 = transformation estimation)");
  pexp_cmd->add_option("--noise", problem.noise, "outlier ratio in [0, 0.5]");
  auto* shrink_cmd = app.add_subcommand("shrinkage", "full-linking shrinkage demonstration");

  auto* sim_cmd = app.add_subcommand("anneal-sim", "dense annealing simulator (gap curve, rate bound, evolution)");
  sim_cmd->add_option("--ising", ising_path, "Ising file: lines 'h i value' / 'J i j value'")->required();
  sim_cmd->add_option("--n", sim_qubits, "qubit count")->required();
  sim_cmd->add_option("--bx", sim_bx, "transverse field strength");
  sim_cmd->add_option("--grid", sim_grid, "interpolation grid points");
  sim_cmd->add_option("--time", sim_time, "total annealing time (0 = skip evolution)");
  sim_cmd->add_option("--steps", sim_steps, "evolution steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help is a success, anything else is an input error
  }

  try {
    if (*basis_cmd) return run_basis(basis_dim);
    if (*build_cmd) return run_build(global, problem, build_format);
    if (*solve_cmd) return run_solve(global, problem, sampler, sweeps, restarts, trace_path);
    if (*spectrum_cmd) return run_spectrum(global, problem, spectrum_levels);

    if (*bench_cmd || *gap_cmd || *pexp_cmd || *shrink_cmd) {
      bench::ExperimentConfig cfg = config_from(global);
      if (app.count("--dataset")) cfg.dataset = global.dataset;
      if (app.count("--seed")) cfg.seed = global.seed;
      if (app.count("--out")) cfg.out_dir = global.out_dir;
      if (global.config_path.empty()) {
        cfg.dataset = global.dataset;
        cfg.seed = global.seed;
        cfg.out_dir = global.out_dir;
      }
      if (!k_list.empty()) cfg.k_list = k_list;
      if (trials > 0) cfg.trials = trials;
      if (noise_runs > 0) cfg.noise_runs = noise_runs;
      if (!sampler_type.empty())
        cfg.sampler.type = sampler_type == "sa" ? bench::SamplerSettings::Type::Sa
                                                : bench::SamplerSettings::Type::Exhaustive;
      if (pexp_cmd->count("--k")) cfg.link_degree = problem.k;
      if (pexp_cmd->count("--noise")) cfg.noise_ratio = problem.noise;

      if (*bench_misalign) return run_bench(cfg, "misalign");
      if (*bench_theta) return run_bench(cfg, "theta");
      if (*bench_noise) return run_bench(cfg, "noise");
      if (*gap_cmd) return run_gap_study_cmd(cfg);
      if (*pexp_cmd) return run_p_export(cfg);
      if (*shrink_cmd) return run_shrinkage(cfg);
    }

    if (*sim_cmd)
      return run_anneal_sim(global, ising_path, sim_qubits, sim_bx, sim_grid, sim_time, sim_steps);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
