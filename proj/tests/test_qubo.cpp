#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qalign/datasets.hpp"
#include "qalign/metrics.hpp"
#include "qalign/qubo.hpp"
#include "qalign/rng.hpp"

using namespace qalign;

namespace {

PointSetd random_centered(int dim, Eigen::Index n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Eigen::MatrixXd pts(dim, n);
  for (Eigen::Index i = 0; i < pts.size(); ++i) pts(i) = rng.uniform(-2.0, 2.0);
  return center(PointSetd(pts)).set;
}

BitString random_bits(int count, SplitMix64& rng) {
  BitString bits(static_cast<std::size_t>(count));
  for (auto& b : bits) b = rng.coin() ? 1 : 0;
  return bits;
}

// Direct evaluation of the squared residual the QUBO is supposed to encode.
double residual_oracle(const Eigen::MatrixXd& rotation, const PointSetd& x, const PointSetd& y,
                       const LinkSet& links) {
  double total = 0.0;
  for (Eigen::Index n = 0; n < x.size(); ++n)
    for (Eigen::Index m : links.links[static_cast<std::size_t>(n)])
      total += (x.points.col(n) - rotation * y.points.col(m)).squaredNorm();
  return total;
}

}  // namespace

TEST_CASE("build_phi_te lays out reference row and basis rows") {
  Eigen::MatrixXd pts(2, 2);
  pts << 1, -1, 0, 0;
  const PointSetd x(pts), y(pts);
  const auto basis = build_basis_2d<double>();
  const Eigen::MatrixXd phi = build_phi_te(x, y, basis);

  REQUIRE(phi.rows() == 21);
  REQUIRE(phi.cols() == 4);
  // Row 0 concatenates the reference points.
  CHECK(phi(0, 0) == 1.0);
  CHECK(phi(0, 1) == 0.0);
  CHECK(phi(0, 2) == -1.0);
  // Row for the 0.5 I element holds -(0.5 I y_n)'.
  CHECK(phi(1, 0) == -0.5);
  CHECK(phi(1, 1) == 0.0);
  CHECK(phi(1, 2) == 0.5);
}

TEST_CASE("build_phi_te shape matches the 91-point 2D case") {
  const auto fish = center(datasets::fish()).set;
  const auto basis = build_basis_2d<double>();
  const Eigen::MatrixXd phi = build_phi_te(fish, fish, basis);
  CHECK(phi.rows() == 21);
  CHECK(phi.cols() == 182);
}

TEST_CASE("build_phi_te zero template zeroes every basis row") {
  Eigen::MatrixXd xpts(2, 3), ypts = Eigen::MatrixXd::Zero(2, 3);
  xpts << 1, -1, 0, 0, 1, -1;
  const Eigen::MatrixXd phi = build_phi_te(PointSetd(xpts), PointSetd(ypts), build_basis_2d<double>());
  CHECK(phi.bottomRows(20).norm() == 0.0);
  CHECK(phi.topRows(1).norm() > 0.0);
}

TEST_CASE("build_phi_te validates cardinality and centering") {
  const auto basis = build_basis_2d<double>();
  const auto a = random_centered(2, 4, 1);
  const auto b = random_centered(2, 5, 2);
  CHECK_THROWS_AS(build_phi_te(a, b, basis), CardinalityMismatch);

  Eigen::MatrixXd off(2, 3);
  off << 1, 2, 3, 1, 1, 1;
  CHECK_THROWS_AS(build_phi_te(PointSetd(off), random_centered(2, 3, 3), basis), NotCentered);
  CHECK_THROWS_AS(build_phi_te(random_centered(2, 3, 3), PointSetd(off), basis), NotCentered);
}

TEST_CASE("build_phi_psr degenerates to build_phi_te under index links") {
  const auto x = random_centered(2, 7, 10);
  const auto y = random_centered(2, 7, 11);
  const auto basis = build_basis_2d<double>();
  const Eigen::MatrixXd te = build_phi_te(x, y, basis);
  const Eigen::MatrixXd psr = build_phi_psr(x, y, identity_links(7), basis);
  CHECK((te - psr).norm() == 0.0);
}

TEST_CASE("build_phi_psr column count is D times the total link count") {
  const auto x = random_centered(2, 2, 20);
  const auto y = random_centered(2, 3, 21);
  LinkSet links;
  links.links = {{0, 2}, {1}};
  const Eigen::MatrixXd phi = build_phi_psr(x, y, links, build_basis_2d<double>());
  CHECK(phi.rows() == 21);
  CHECK(phi.cols() == 6);
}

TEST_CASE("shared template points produce byte-identical subcolumns") {
  const auto x = random_centered(2, 2, 30);
  const auto y = random_centered(2, 4, 31);
  LinkSet links;
  links.links = {{2, 0}, {2}};  // template point 2 linked from both references
  PhiBuildStats stats;
  const Eigen::MatrixXd phi = build_phi_psr(x, y, links, build_basis_2d<double>(), &stats);

  // Columns 0..1 (first link of x_0) and 4..5 (link of x_1) share y_2.
  CHECK((phi.block(1, 0, 20, 2) - phi.block(1, 4, 20, 2)).norm() == 0.0);
  // The shared point is expanded once: 3 distinct template points touched.
  CHECK(stats.basis_point_products == 20ull * 2ull);
}

TEST_CASE("operation-count probe for TE touches each point-element pair once") {
  const auto x = random_centered(2, 9, 40);
  const auto y = random_centered(2, 9, 41);
  PhiBuildStats stats;
  build_phi_te(x, y, build_basis_2d<double>(), &stats);
  CHECK(stats.basis_point_products == 20ull * 9ull);
}

TEST_CASE("build_phi_psr validates links") {
  const auto x = random_centered(2, 2, 50);
  const auto y = random_centered(2, 3, 51);
  const auto basis = build_basis_2d<double>();
  LinkSet bad_range;
  bad_range.links = {{0}, {3}};
  CHECK_THROWS_AS(build_phi_psr(x, y, bad_range, basis), InvalidK);
  LinkSet dup;
  dup.links = {{0, 0}, {1}};
  CHECK_THROWS_AS(build_phi_psr(x, y, dup, basis), InvalidK);
  LinkSet empty;
  empty.links = {{0}, {}};
  CHECK_THROWS_AS(build_phi_psr(x, y, empty, basis), InvalidK);
  LinkSet short_list;
  short_list.links = {{0}};
  CHECK_THROWS_AS(build_phi_psr(x, y, short_list, basis), CardinalityMismatch);
}

TEST_CASE("energy identity: q'Pq equals the residual sum (TE, 2D and 3D)") {
  SplitMix64 rng(77);
  for (int dim : {2, 3}) {
    const auto basis = build_basis<double>(dim);
    for (int trial = 0; trial < 50; ++trial) {
      const auto x = random_centered(dim, 8, 1000 + static_cast<std::uint64_t>(trial));
      const auto y = random_centered(dim, 8, 2000 + static_cast<std::uint64_t>(trial));
      const auto qubo = build_qubo(build_phi_te(x, y, basis), dim);

      BitString data_bits = random_bits(basis.size(), rng);
      BitString full;
      full.push_back(1);
      full.insert(full.end(), data_bits.begin(), data_bits.end());

      const double lhs = qubo.energy(full);
      const double rhs = residual_oracle(assemble(basis, data_bits), x, y,
                                         identity_links(x.size()));
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("energy identity holds for PSR link sets (2D and 3D)") {
  SplitMix64 rng(78);
  for (int dim : {2, 3}) {
    const auto basis = build_basis<double>(dim);
    for (int trial = 0; trial < 30; ++trial) {
      const auto x = random_centered(dim, 6, 3000 + static_cast<std::uint64_t>(100 * dim + trial));
      const auto y = random_centered(dim, 9, 4000 + static_cast<std::uint64_t>(100 * dim + trial));
      const auto links = knn_links(x, y, 3);
      const auto qubo = build_qubo(build_phi_psr(x, y, links, basis), dim);

      BitString data_bits = random_bits(basis.size(), rng);
      BitString full;
      full.push_back(1);
      full.insert(full.end(), data_bits.begin(), data_bits.end());

      const double lhs = qubo.energy(full);
      const double rhs = residual_oracle(assemble(basis, data_bits), x, y, links);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("clamped-only bitstring energy is the squared reference norm") {
  const auto x = random_centered(2, 12, 60);
  const auto y = random_centered(2, 12, 61);
  const auto qubo = build_qubo(build_phi_te(x, y, build_basis_2d<double>()), 2);
  BitString full(21, 0);
  full[0] = 1;
  CHECK(qubo.energy(full) == doctest::Approx(x.points.squaredNorm()).epsilon(1e-12));
  CHECK(qubo.P(0, 0) == doctest::Approx(x.points.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("2D identity-vs-skew blocks of P vanish") {
  const auto basis = build_basis_2d<double>();
  for (const char* name : {"fish", "ring", "grid", "blobs"}) {
    const auto data = center(datasets::by_name(name)).set;
    PointSetd tmpl;
    tmpl.points = rotation_2d(0.6).rotation * data.points;
    const auto qubo = build_qubo(build_phi_te(data, tmpl, basis), 2);
    double max_cross = 0.0;
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const bool fi = basis.elements[static_cast<std::size_t>(i)].family == GeneratorFamily::Identity;
        const bool fj = basis.elements[static_cast<std::size_t>(j)].family == GeneratorFamily::Identity;
        if (fi != fj) max_cross = std::max(max_cross, std::abs(qubo.P(i + 1, j + 1)));
      }
    CHECK(max_cross <= 1e-12);
  }
}

TEST_CASE("P is symmetric positive semi-definite") {
  const auto x = random_centered(2, 10, 70);
  const auto y = random_centered(2, 10, 71);
  const auto qubo = build_qubo(build_phi_te(x, y, build_basis_2d<double>()), 2);
  CHECK((qubo.P - qubo.P.transpose()).norm() == 0.0);

  SplitMix64 rng(72);
  for (int i = 0; i < 1000; ++i) {
    Eigen::VectorXd v(21);
    for (int j = 0; j < 21; ++j) v(j) = rng.uniform(-1.0, 1.0);
    CHECK(v.dot(qubo.P * v) >= -1e-9 * v.squaredNorm());
  }
}

TEST_CASE("column permutation of Phi leaves P unchanged") {
  const auto x = random_centered(2, 8, 80);
  const auto y = random_centered(2, 8, 81);
  const Eigen::MatrixXd phi = build_phi_te(x, y, build_basis_2d<double>());
  const auto p0 = build_qubo(phi, 2).P;

  SplitMix64 rng(82);
  Eigen::MatrixXd shuffled = phi;
  for (Eigen::Index c = phi.cols() - 1; c > 0; --c) {
    const Eigen::Index swap = static_cast<Eigen::Index>(rng.uniform_below(static_cast<std::uint64_t>(c + 1)));
    shuffled.col(c).swap(shuffled.col(swap));
  }
  const auto p1 = build_qubo(shuffled, 2).P;
  CHECK((p0 - p1).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, p0.cwiseAbs().maxCoeff()));
}

TEST_CASE("reduce_clamped reproduces the full energy") {
  const auto x = random_centered(2, 9, 90);
  const auto y = random_centered(2, 9, 91);
  const auto qubo = build_qubo(build_phi_te(x, y, build_basis_2d<double>()), 2);
  const auto reduced = reduce_clamped(qubo);

  BitString zeros(20, 0);
  CHECK(reduced.energy(zeros) == doctest::Approx(qubo.P(0, 0)).epsilon(1e-15));

  SplitMix64 rng(92);
  for (int trial = 0; trial < 100; ++trial) {
    const BitString bits = random_bits(20, rng);
    BitString full;
    full.push_back(1);
    full.insert(full.end(), bits.begin(), bits.end());
    const double a = reduced.energy(bits);
    const double b = qubo.energy(full);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("reduce_clamped on the identity matrix") {
  QuboProblemd qubo;
  qubo.dim = 2;
  qubo.basis_size = 4;
  qubo.P = Eigen::MatrixXd::Identity(5, 5);
  const auto reduced = reduce_clamped(qubo);
  CHECK(reduced.constant == 1.0);
  CHECK(reduced.linear.norm() == 0.0);
  CHECK((reduced.Q - Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("to_ising single-variable case") {
  ReducedQubod reduced;
  reduced.Q = Eigen::MatrixXd::Constant(1, 1, 1.0);
  reduced.linear = Eigen::VectorXd::Zero(1);
  reduced.constant = 0.0;
  const auto ising = to_ising(reduced);
  CHECK(ising.h(0) == doctest::Approx(0.5));
  CHECK(ising.offset == doctest::Approx(0.5));
  CHECK(ising.couplings.empty());
  CHECK(ising.energy({-1}) + ising.offset == doctest::Approx(0.0));
  CHECK(ising.energy({+1}) + ising.offset == doctest::Approx(1.0));
}

TEST_CASE("to_ising of the zero QUBO is empty") {
  ReducedQubod reduced;
  reduced.Q = Eigen::MatrixXd::Zero(3, 3);
  reduced.linear = Eigen::VectorXd::Zero(3);
  reduced.constant = 0.0;
  const auto ising = to_ising(reduced);
  CHECK(ising.h.norm() == 0.0);
  CHECK(ising.couplings.empty());
  CHECK(ising.offset == 0.0);
}

TEST_CASE("to_ising matches the QUBO energy over all assignments") {
  SplitMix64 rng(95);
  ReducedQubod reduced;
  const int n = 8;
  Eigen::MatrixXd q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) q(i, j) = q(j, i) = rng.uniform(-1.0, 1.0);
  reduced.Q = q;
  reduced.linear = Eigen::VectorXd::NullaryExpr(n, [&](Eigen::Index) { return rng.uniform(-1.0, 1.0); });
  reduced.constant = rng.uniform(-1.0, 1.0);

  const auto ising = to_ising(reduced);
  for (int mask = 0; mask < (1 << n); ++mask) {
    BitString bits(n);
    std::vector<int> spins(n);
    for (int i = 0; i < n; ++i) {
      bits[static_cast<std::size_t>(i)] = (mask >> i) & 1;
      spins[static_cast<std::size_t>(i)] = bits[static_cast<std::size_t>(i)] ? +1 : -1;
    }
    const double qubo_e = reduced.energy(bits);
    const double ising_e = ising.energy(spins) + ising.offset;
    CHECK(std::abs(qubo_e - ising_e) <= 1e-12 * std::max(1.0, std::abs(qubo_e)));
  }
}
