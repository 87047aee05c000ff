#include "qalign/datasets.hpp"

#include <cmath>

#include "qalign/error.hpp"
#include "qalign/rng.hpp"

namespace qalign::datasets {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

PointSetd fish() {
  // Fish curve: x = cos t - sin^2 t / sqrt(2), y = cos t sin t.
  const Eigen::Index n = 91;
  Eigen::MatrixXd pts(2, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    pts(0, i) = std::cos(t) - std::sin(t) * std::sin(t) / std::sqrt(2.0);
    pts(1, i) = std::cos(t) * std::sin(t);
  }
  return PointSetd(std::move(pts));
}

PointSetd ring(Eigen::Index count) {
  Eigen::MatrixXd pts(2, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(count);
    pts(0, i) = std::cos(t);
    pts(1, i) = std::sin(t);
  }
  return PointSetd(std::move(pts));
}

PointSetd grid(Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd pts(2, rows * cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      pts(0, r * cols + c) = 0.25 * static_cast<double>(c);
      pts(1, r * cols + c) = 0.25 * static_cast<double>(r);
    }
  return PointSetd(std::move(pts));
}

PointSetd gaussian_blobs(Eigen::Index count, std::uint64_t seed) {
  const double cx[3] = {-1.0, 1.0, 0.0};
  const double cy[3] = {0.0, 0.5, -1.0};
  SplitMix64 rng(seed);
  Eigen::MatrixXd pts(2, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const int blob = static_cast<int>(i % 3);
    pts(0, i) = cx[blob] + 0.25 * rng.normal();
    pts(1, i) = cy[blob] + 0.25 * rng.normal();
  }
  return PointSetd(std::move(pts));
}

bool is_builtin(const std::string& name) {
  return name == "fish" || name == "ring" || name == "grid" || name == "blobs";
}

PointSetd by_name(const std::string& name) {
  if (name == "fish") return fish();
  if (name == "ring") return ring();
  if (name == "grid") return grid();
  if (name == "blobs") return gaussian_blobs();
  throw IoError("unknown builtin dataset: " + name);
}

}  // namespace qalign::datasets
