#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qalign/point_set.hpp"
#include "qalign/point_set_io.hpp"

using namespace qalign;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("load_point_set parses whitespace-separated points") {
  const auto path = write_temp("qalign_pts_basic.txt", "0 0\n1 0\n0 1\n");
  const auto ps = load_point_set(path);
  CHECK(ps.dim() == 2);
  CHECK(ps.size() == 3);
  CHECK(ps.points(0, 1) == 1.0);
  CHECK(ps.points(1, 2) == 1.0);
}

TEST_CASE("load_point_set single 3D point") {
  const auto path = write_temp("qalign_pts_single.txt", "1 2 3\n");
  const auto ps = load_point_set(path);
  CHECK(ps.dim() == 3);
  CHECK(ps.size() == 1);
  CHECK(ps.points(2, 0) == 3.0);
}

TEST_CASE("load_point_set rejects ragged rows") {
  const auto path = write_temp("qalign_pts_ragged.txt", "1 2\n3\n");
  CHECK_THROWS_AS(load_point_set(path), FormatError);
}

TEST_CASE("load_point_set error paths") {
  CHECK_THROWS_AS(load_point_set("/nonexistent/qalign.txt"), IoError);
  CHECK_THROWS_AS(load_point_set(write_temp("qalign_pts_bad.txt", "1 x\n")), FormatError);
  CHECK_THROWS_AS(load_point_set(write_temp("qalign_pts_dim.txt", "1 2 3 4\n")), FormatError);
  CHECK_THROWS_AS(load_point_set(write_temp("qalign_pts_empty.txt", "# only comments\n\n")),
                  FormatError);
}

TEST_CASE("load_point_set skips comments and blank lines") {
  const auto path = write_temp("qalign_pts_comments.txt", "# header\n\n1 2\n  # indented\n3 4\n");
  const auto ps = load_point_set(path);
  CHECK(ps.size() == 2);
  CHECK(ps.points(0, 1) == 3.0);
}

TEST_CASE("center subtracts the centroid and reports it") {
  Eigen::MatrixXd pts(2, 2);
  pts << 1, 3, 1, 1;
  const auto r = center(PointSetd(pts));
  CHECK(r.centroid(0) == doctest::Approx(2.0));
  CHECK(r.centroid(1) == doctest::Approx(1.0));
  CHECK(r.set.points(0, 0) == doctest::Approx(-1.0));
  CHECK(r.set.points(0, 1) == doctest::Approx(1.0));
  CHECK(r.set.points(1, 0) == doctest::Approx(0.0));
}

TEST_CASE("center of a single point is the origin") {
  Eigen::MatrixXd pts(2, 1);
  pts << 5, 7;
  const auto r = center(PointSetd(pts));
  CHECK(r.set.points.norm() == doctest::Approx(0.0));
  CHECK(r.centroid(0) == 5.0);
  CHECK(r.centroid(1) == 7.0);
}

TEST_CASE("center is idempotent") {
  SplitMix64 rng(11);
  Eigen::MatrixXd pts(2, 17);
  for (Eigen::Index i = 0; i < pts.size(); ++i) pts(i) = rng.uniform(-5.0, 5.0);
  const auto once = center(PointSetd(pts));
  const auto twice = center(once.set);
  CHECK((twice.set.points - once.set.points).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(twice.centroid.norm() < 1e-12);
  CHECK(once.set.points.rowwise().mean().norm() < 1e-12);
}

TEST_CASE("knn_links sorts by distance") {
  Eigen::MatrixXd ref(2, 1), tmpl(2, 3);
  ref << 0, 0;
  tmpl << 1, 2, 3, 0, 0, 0;
  const auto ls = knn_links(PointSetd(ref), PointSetd(tmpl), 2);
  REQUIRE(ls.links.size() == 1);
  CHECK(ls.links[0] == std::vector<Eigen::Index>{0, 1});
}

TEST_CASE("knn_links with k = M links everything") {
  Eigen::MatrixXd ref(2, 3), tmpl(2, 4);
  ref << 0, 1, 2, 0, 0, 0;
  tmpl << 0, 1, 2, 3, 1, 1, 1, 1;
  const auto ls = knn_links(PointSetd(ref), PointSetd(tmpl), 4);
  for (const auto& l : ls.links) CHECK(l.size() == 4);
  CHECK(ls.mean_degree() == doctest::Approx(4.0));
}

TEST_CASE("knn_links breaks distance ties by smaller index") {
  Eigen::MatrixXd ref(2, 1), tmpl(2, 2);
  ref << 0, 0;
  tmpl << 1, -1, 0, 0;
  const auto ls = knn_links(PointSetd(ref), PointSetd(tmpl), 1);
  CHECK(ls.links[0] == std::vector<Eigen::Index>{0});
}

TEST_CASE("knn_links rejects bad k") {
  Eigen::MatrixXd ref(2, 1), tmpl(2, 2);
  ref << 0, 0;
  tmpl << 1, -1, 0, 0;
  CHECK_THROWS_AS(knn_links(PointSetd(ref), PointSetd(tmpl), 3), InvalidK);
  CHECK_THROWS_AS(knn_links(PointSetd(ref), PointSetd(tmpl), 0), InvalidK);
}

TEST_CASE("add_uniform_outliers zero ratio is the identity") {
  Eigen::MatrixXd pts(2, 5);
  pts << 0, 1, 2, 3, 4, 0, 1, 0, 1, 0;
  const auto out = add_uniform_outliers(PointSetd(pts), 0.0, 42);
  CHECK(out.size() == 5);
  CHECK((out.points - pts).norm() == 0.0);
}

TEST_CASE("add_uniform_outliers appends inside the bounding box") {
  SplitMix64 rng(3);
  Eigen::MatrixXd pts(2, 100);
  for (Eigen::Index i = 0; i < pts.size(); ++i) pts(i) = rng.uniform(-2.0, 3.0);
  const PointSetd tmpl(pts);
  const auto out = add_uniform_outliers(tmpl, 0.5, 42);
  REQUIRE(out.size() == 150);
  CHECK((out.points.leftCols(100) - pts).norm() == 0.0);
  const auto lo = pts.rowwise().minCoeff().eval();
  const auto hi = pts.rowwise().maxCoeff().eval();
  for (Eigen::Index j = 100; j < 150; ++j)
    for (Eigen::Index d = 0; d < 2; ++d) {
      CHECK(out.points(d, j) >= lo(d));
      CHECK(out.points(d, j) <= hi(d));
    }
}

TEST_CASE("add_uniform_outliers is deterministic per seed") {
  Eigen::MatrixXd pts(2, 40);
  SplitMix64 rng(5);
  for (Eigen::Index i = 0; i < pts.size(); ++i) pts(i) = rng.uniform(0.0, 1.0);
  const PointSetd tmpl(pts);
  const auto a = add_uniform_outliers(tmpl, 0.25, 777);
  const auto b = add_uniform_outliers(tmpl, 0.25, 777);
  const auto c = add_uniform_outliers(tmpl, 0.25, 778);
  CHECK((a.points - b.points).norm() == 0.0);
  CHECK((a.points - c.points).norm() != 0.0);
  CHECK_THROWS_AS(add_uniform_outliers(tmpl, 0.51, 1), InvalidRatio);
  CHECK_THROWS_AS(add_uniform_outliers(tmpl, -0.1, 1), InvalidRatio);
}

TEST_CASE("rotation_2d basics") {
  const auto id = rotation_2d(0.0);
  CHECK((id.rotation - Eigen::Matrix2d::Identity()).norm() == doctest::Approx(0.0));
  const auto quarter = rotation_2d(1.5707963267948966);
  CHECK(quarter.rotation(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(quarter.rotation(0, 1) == doctest::Approx(-1.0));
  CHECK(quarter.rotation(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("rotation_2d inverse pairs give the identity") {
  SplitMix64 rng(9);
  for (int i = 0; i < 50; ++i) {
    const double theta = rng.uniform(-10.0, 10.0);
    const Eigen::MatrixXd prod = rotation_2d(theta).rotation * rotation_2d(-theta).rotation;
    CHECK((prod - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("random_rotation is orthogonal with unit determinant") {
  for (std::uint64_t seed : {1ull, 2ull, 99ull, 12345ull}) {
    const auto t3 = random_rotation<double>(3, seed);
    CHECK((t3.rotation.transpose() * t3.rotation - Eigen::Matrix3d::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK(t3.rotation.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    const auto t2 = random_rotation<double>(2, seed);
    CHECK((t2.rotation.transpose() * t2.rotation - Eigen::Matrix2d::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}
