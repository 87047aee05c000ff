#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qalign/rng.hpp"
#include "qalign/rotation_basis.hpp"

using namespace qalign;

TEST_CASE("2D basis has 20 elements in weight-outer order") {
  const auto basis = build_basis_2d<double>();
  REQUIRE(basis.size() == 20);
  CHECK(basis.dim == 2);

  // First element is 0.5 * I.
  Eigen::Matrix2d half_id = 0.5 * Eigen::Matrix2d::Identity();
  CHECK((basis.elements[0].matrix - half_id).norm() == 0.0);
  CHECK(basis.elements[0].generator == "+I");
  CHECK(basis.elements[0].weight == 0.5);

  // Weights repeat in groups of four generators; the duplicated 0.1 stays.
  const double expected[] = {0.5, 0.2, 0.1, 0.1, 0.05};
  for (int k = 0; k < 20; ++k) CHECK(basis.elements[k].weight == expected[k / 4]);
}

TEST_CASE("2D skew-generated elements are anti-symmetric") {
  const auto basis = build_basis_2d<double>();
  int skew_count = 0;
  for (const auto& e : basis.elements) {
    if (e.family == GeneratorFamily::Skew) {
      ++skew_count;
      CHECK((e.matrix + e.matrix.transpose()).norm() == 0.0);
    } else {
      CHECK(e.family == GeneratorFamily::Identity);
    }
  }
  CHECK(skew_count == 10);
}

TEST_CASE("3D basis has 80 elements with the documented families") {
  const auto basis = build_basis_3d<double>();
  REQUIRE(basis.size() == 80);
  CHECK(basis.dim == 3);

  for (const auto& e : basis.elements) {
    switch (e.family) {
      case GeneratorFamily::Skew:
        CHECK((e.matrix + e.matrix.transpose()).norm() == 0.0);
        break;
      case GeneratorFamily::SymHollow:
        CHECK((e.matrix - e.matrix.transpose()).norm() == 0.0);
        CHECK(e.matrix.diagonal().norm() == 0.0);
        break;
      case GeneratorFamily::SymDiag:
        CHECK((e.matrix - Eigen::Matrix3d(e.matrix.diagonal().asDiagonal())).norm() == 0.0);
        break;
      case GeneratorFamily::Identity:
        CHECK((e.matrix - e.weight * (e.generator == "+I" ? 1.0 : -1.0) *
                              Eigen::Matrix3d::Identity())
                  .norm() == 0.0);
        break;
    }
  }
}

TEST_CASE("sum of all +I elements is 0.95 I in both dimensions") {
  for (int dim : {2, 3}) {
    const auto basis = build_basis<double>(dim);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& e : basis.elements)
      if (e.generator == "+I") sum += e.matrix;
    CHECK((sum - 0.95 * Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("assemble sums the selected elements") {
  const auto basis = build_basis_2d<double>();
  BitString bits(20, 0);
  CHECK(assemble(basis, bits).norm() == 0.0);

  bits[0] = 1;  // 0.5 * I
  Eigen::MatrixXd r = assemble(basis, bits);
  CHECK((r - 0.5 * Eigen::Matrix2d::Identity()).norm() == 0.0);

  // All five +I bits: 0.5 + 0.2 + 0.1 + 0.1 + 0.05 = 0.95.
  for (int k : {4, 8, 12, 16}) bits[static_cast<std::size_t>(k)] = 1;
  r = assemble(basis, bits);
  CHECK((r - 0.95 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-15);

  BitString wrong(19, 0);
  CHECK_THROWS_AS(assemble(basis, wrong), LengthMismatch);
}

TEST_CASE("2D assembly always has the conformal form [[p,-q],[q,p]]") {
  const auto basis = build_basis_2d<double>();
  SplitMix64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    BitString bits(20, 0);
    for (auto& b : bits) b = rng.coin() ? 1 : 0;
    const Eigen::MatrixXd r = assemble(basis, bits);
    CHECK(r(0, 0) == doctest::Approx(r(1, 1)).epsilon(1e-15));
    CHECK(r(0, 1) == doctest::Approx(-r(1, 0)).epsilon(1e-15));
  }
}

TEST_CASE("3D assembly splits into per-family sums") {
  const auto basis = build_basis_3d<double>();
  SplitMix64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    BitString bits(80, 0);
    for (auto& b : bits) b = rng.coin() ? 1 : 0;
    const Eigen::MatrixXd r = assemble(basis, bits);

    Eigen::MatrixXd by_family = Eigen::MatrixXd::Zero(3, 3);
    for (std::size_t k = 0; k < bits.size(); ++k)
      if (bits[k]) by_family += basis.elements[k].matrix;
    CHECK((r - by_family).norm() == 0.0);

    // Skew part comes exactly from the skew-family bits.
    Eigen::MatrixXd skew_sum = Eigen::MatrixXd::Zero(3, 3);
    for (std::size_t k = 0; k < bits.size(); ++k)
      if (bits[k] && basis.elements[k].family == GeneratorFamily::Skew)
        skew_sum += basis.elements[k].matrix;
    CHECK(((r - r.transpose()) / 2.0 - skew_sum).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("basis construction is stable") {
  const auto a = build_basis_3d<double>();
  const auto b = build_basis_3d<double>();
  REQUIRE(a.size() == b.size());
  for (int k = 0; k < a.size(); ++k) {
    CHECK(a.elements[static_cast<std::size_t>(k)].generator ==
          b.elements[static_cast<std::size_t>(k)].generator);
    CHECK((a.elements[static_cast<std::size_t>(k)].matrix -
           b.elements[static_cast<std::size_t>(k)].matrix)
              .norm() == 0.0);
  }
}
