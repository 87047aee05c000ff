#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "qalign/error.hpp"
#include "qalign/rng.hpp"

namespace qalign {

// A point set stored as a D x N matrix of column points, D in {2, 3}.
template <typename Scalar>
struct PointSet {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Matrix points;

  PointSet() = default;
  explicit PointSet(Matrix pts) : points(std::move(pts)) { validate(); }

  Eigen::Index dim() const { return points.rows(); }
  Eigen::Index size() const { return points.cols(); }
  auto point(Eigen::Index n) const { return points.col(n); }

  void validate() const {
    if (points.cols() < 1) throw FormatError("point set must contain at least one point");
    if (points.rows() != 2 && points.rows() != 3)
      throw FormatError("point dimension must be 2 or 3");
    if (!points.allFinite()) throw FormatError("point set contains non-finite coordinates");
  }
};

using PointSetd = PointSet<double>;

// Template indices (0-based) linked to each reference point, nearest first.
struct LinkSet {
  std::vector<std::vector<Eigen::Index>> links;

  Eigen::Index total() const {
    Eigen::Index t = 0;
    for (const auto& l : links) t += static_cast<Eigen::Index>(l.size());
    return t;
  }

  double mean_degree() const {
    return links.empty() ? 0.0 : static_cast<double>(total()) / static_cast<double>(links.size());
  }
};

// Rotation (affine until projected, see unembedding.hpp) plus translation.
template <typename Scalar>
struct RigidTransform {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Matrix rotation;
  Vector translation;

  Matrix apply(const Matrix& pts) const {
    return (rotation * pts).colwise() + translation;
  }
};

using RigidTransformd = RigidTransform<double>;

template <typename Scalar>
struct CenterResult {
  PointSet<Scalar> set;
  typename PointSet<Scalar>::Vector centroid;
};

// Subtracts the component-wise mean; the removed centroid is returned so the
// translation can be recovered after solving.
template <typename Scalar>
CenterResult<Scalar> center(const PointSet<Scalar>& ps) {
  typename PointSet<Scalar>::Vector c = ps.points.rowwise().mean();
  CenterResult<Scalar> out;
  out.set.points = ps.points.colwise() - c;
  out.centroid = std::move(c);
  return out;
}

// Brute-force K nearest neighbours of each reference point among the template
// points. Distance ties break toward the smaller template index.
template <typename Scalar>
LinkSet knn_links(const PointSet<Scalar>& reference, const PointSet<Scalar>& tmpl,
                  Eigen::Index k) {
  if (reference.dim() != tmpl.dim())
    throw CardinalityMismatch("reference and template dimensions differ");
  const Eigen::Index m = tmpl.size();
  if (k < 1 || k > m) throw InvalidK("k must satisfy 1 <= k <= template size");

  LinkSet ls;
  ls.links.resize(static_cast<std::size_t>(reference.size()));
  std::vector<std::pair<Scalar, Eigen::Index>> dist(static_cast<std::size_t>(m));
  for (Eigen::Index n = 0; n < reference.size(); ++n) {
    for (Eigen::Index j = 0; j < m; ++j)
      dist[static_cast<std::size_t>(j)] = {(tmpl.points.col(j) - reference.points.col(n)).squaredNorm(), j};
    std::sort(dist.begin(), dist.end());
    auto& out = ls.links[static_cast<std::size_t>(n)];
    out.resize(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < k; ++j) out[static_cast<std::size_t>(j)] = dist[static_cast<std::size_t>(j)].second;
  }
  return ls;
}

// Appends floor(ratio * M) uniform points drawn from the axis-aligned bounding
// box of the clean template. Original points are left untouched in place.
template <typename Scalar>
PointSet<Scalar> add_uniform_outliers(const PointSet<Scalar>& tmpl, double ratio,
                                      std::uint64_t seed) {
  if (!(ratio >= 0.0 && ratio <= 0.5)) throw InvalidRatio("outlier ratio must lie in [0, 0.5]");
  const Eigen::Index m = tmpl.size();
  const Eigen::Index extra = static_cast<Eigen::Index>(ratio * static_cast<double>(m));
  PointSet<Scalar> out;
  out.points.resize(tmpl.dim(), m + extra);
  out.points.leftCols(m) = tmpl.points;
  if (extra == 0) return out;

  const auto lo = tmpl.points.rowwise().minCoeff().eval();
  const auto hi = tmpl.points.rowwise().maxCoeff().eval();
  SplitMix64 rng(seed);
  for (Eigen::Index j = 0; j < extra; ++j)
    for (Eigen::Index d = 0; d < tmpl.dim(); ++d)
      out.points(d, m + j) = static_cast<Scalar>(rng.uniform(static_cast<double>(lo(d)), static_cast<double>(hi(d))));
  return out;
}

template <typename Scalar>
RigidTransform<Scalar> rotation_2d(Scalar theta) {
  RigidTransform<Scalar> t;
  const Scalar c = std::cos(theta), s = std::sin(theta);
  t.rotation.resize(2, 2);
  t.rotation << c, -s, s, c;
  t.translation.setZero(2);
  return t;
}

// Uniform random rotation. 2D samples the angle; 3D samples a unit quaternion
// from a normalised 4D Gaussian, the standard unbiased SO(3) draw.
template <typename Scalar>
RigidTransform<Scalar> random_rotation(int dim, std::uint64_t seed) {
  SplitMix64 rng(seed);
  if (dim == 2) return rotation_2d<Scalar>(static_cast<Scalar>(rng.uniform(0.0, 6.283185307179586476925286766559)));
  if (dim != 3) throw FormatError("rotation dimension must be 2 or 3");

  Eigen::Matrix<Scalar, 4, 1> q;
  do {
    for (int i = 0; i < 4; ++i) q(i) = static_cast<Scalar>(rng.normal());
  } while (q.norm() < Scalar(1e-12));
  q.normalize();
  const Scalar w = q(0), x = q(1), y = q(2), z = q(3);

  RigidTransform<Scalar> t;
  t.rotation.resize(3, 3);
  t.rotation << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  t.translation.setZero(3);
  return t;
}

}  // namespace qalign
