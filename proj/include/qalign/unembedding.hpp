#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "qalign/point_set.hpp"
#include "qalign/rotation_basis.hpp"
#include "qalign/samplers.hpp"

namespace qalign {

// Decodes a measured bitstring: R is the sum of the selected basis elements
// (affine, unprojected), t re-applies the centroids removed up front.
template <typename Scalar>
RigidTransform<Scalar> unembed(const Solution<Scalar>& solution,
                               const RotationBasis<Scalar>& basis,
                               const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& ref_centroid,
                               const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& tmpl_centroid) {
  if (static_cast<int>(solution.bits.size()) != basis.size() + 1)
    throw LengthMismatch("solution bit count does not match basis size + 1");
  if (!solution.bits[0]) throw ClampViolated("clamped bit of the solution is not 1");

  BitString data_bits(solution.bits.begin() + 1, solution.bits.end());
  RigidTransform<Scalar> t;
  t.rotation = assemble(basis, data_bits);
  t.translation = ref_centroid - t.rotation * tmpl_centroid;
  return t;
}

template <typename Scalar>
struct RotationProjection {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> rotation;
  bool degenerate = false;  // smallest singular value of the input < 1e-12
};

// Closest proper rotation in the Hilbert-Schmidt sense: from the SVD
// U S V', the projection is U diag(1, ..., 1, det(UV')) V'. A rank-deficient
// input still yields a valid rotation but is flagged, since the choice is
// then not unique.
template <typename Scalar>
RotationProjection<Scalar> project_to_rotation(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& affine) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (!affine.allFinite()) throw FormatError("cannot project a non-finite matrix");

  Eigen::JacobiSVD<Matrix> svd(affine, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix& u = svd.matrixU();
  const Matrix& v = svd.matrixV();

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d =
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Ones(affine.rows());
  d(affine.rows() - 1) = (u * v.transpose()).determinant() < 0 ? Scalar(-1) : Scalar(1);

  RotationProjection<Scalar> out;
  out.rotation = u * d.asDiagonal() * v.transpose();
  out.degenerate = svd.singularValues()(affine.rows() - 1) < Scalar(1e-12);
  return out;
}

}  // namespace qalign
