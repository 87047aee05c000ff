#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "qalign/point_set.hpp"
#include "qalign/rotation_basis.hpp"

namespace qalign {

// e_2D = |R Y - X|_HS / |X|_HS, over index-matched centered sets.
template <typename Scalar>
Scalar alignment_error(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& rotation,
                       const PointSet<Scalar>& reference, const PointSet<Scalar>& tmpl) {
  if (reference.size() != tmpl.size() || reference.dim() != tmpl.dim())
    throw CardinalityMismatch("alignment error needs index-matched sets");
  const Scalar ref_norm = reference.points.norm();
  if (ref_norm == Scalar(0)) throw ZeroReference("reference set has zero norm");
  return (rotation * tmpl.points - reference.points).norm() / ref_norm;
}

// e_R = |I - R R'|_HS; zero exactly when R is orthogonal.
template <typename Scalar>
Scalar transformation_discrepancy(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& rotation) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  return (Matrix::Identity(rotation.rows(), rotation.cols()) - rotation * rotation.transpose())
      .norm();
}

// Gravitational potential energy: sum of mass-weighted unsquared distances
// between every template point mapped by the transform and every reference
// point (globally multiply-linked).
template <typename Scalar>
Scalar gpe(const RigidTransform<Scalar>& transform, const PointSet<Scalar>& reference,
           const PointSet<Scalar>& tmpl,
           const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& ref_masses,
           const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& tmpl_masses) {
  if (ref_masses.size() != reference.size() || tmpl_masses.size() != tmpl.size())
    throw CardinalityMismatch("mass vectors do not match point counts");
  const auto mapped = transform.apply(tmpl.points);
  Scalar total = 0;
  for (Eigen::Index m = 0; m < tmpl.size(); ++m)
    for (Eigen::Index n = 0; n < reference.size(); ++n)
      total += tmpl_masses(m) * ref_masses(n) * (mapped.col(m) - reference.points.col(n)).norm();
  return total;
}

template <typename Scalar>
Scalar gpe(const RigidTransform<Scalar>& transform, const PointSet<Scalar>& reference,
           const PointSet<Scalar>& tmpl) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Vector ref_masses = Vector::Ones(reference.size());
  const Vector tmpl_masses = Vector::Ones(tmpl.size());
  return gpe(transform, reference, tmpl, ref_masses, tmpl_masses);
}

// Direct evaluation of the squared-distance sum the QUBO encodes:
// sum_n sum_{l in links(n)} |x_n - R y_l|^2.
template <typename Scalar>
Scalar residual_energy(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& rotation,
                       const PointSet<Scalar>& reference, const PointSet<Scalar>& tmpl,
                       const LinkSet& links) {
  if (static_cast<Eigen::Index>(links.links.size()) != reference.size())
    throw CardinalityMismatch("link set does not match reference");
  const auto mapped = (rotation * tmpl.points).eval();
  Scalar total = 0;
  for (Eigen::Index n = 0; n < reference.size(); ++n)
    for (Eigen::Index m : links.links[static_cast<std::size_t>(n)])
      total += (reference.points.col(n) - mapped.col(m)).squaredNorm();
  return total;
}

// Index-matched links 0..N-1, the degenerate link set of transformation
// estimation.
inline LinkSet identity_links(Eigen::Index n) {
  LinkSet ls;
  ls.links.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) ls.links[static_cast<std::size_t>(i)] = {i};
  return ls;
}

// Per-instance evaluation bundle emitted by the CLI.
template <typename Scalar>
struct EvalReport {
  Scalar e2d = 0;
  Scalar eR = 0;
  Scalar gpe = 0;
  Scalar qubo_energy = 0;
  Scalar residual_energy = 0;

  bool consistent() const {
    return std::abs(qubo_energy - residual_energy) <=
           Scalar(1e-9) * std::max(Scalar(1), std::abs(qubo_energy));
  }
};

using EvalReportd = EvalReport<double>;

}  // namespace qalign
