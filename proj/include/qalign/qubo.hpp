#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qalign/point_set.hpp"
#include "qalign/rotation_basis.hpp"

namespace qalign {

// Full QUBO: q' P q over q in B^{B+1} with the first bit clamped to 1. P is
// the Gram matrix Phi Phi', stored dense and exactly symmetric.
template <typename Scalar>
struct QuboProblem {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix P;
  int dim = 0;
  int basis_size = 0;

  static constexpr int kClampedBit = 0;

  Scalar energy(const BitString& full_bits) const {
    if (static_cast<Eigen::Index>(full_bits.size()) != P.rows())
      throw LengthMismatch("bit count does not match P");
    Scalar e = 0;
    for (Eigen::Index i = 0; i < P.rows(); ++i) {
      if (!full_bits[static_cast<std::size_t>(i)]) continue;
      e += P(i, i);
      for (Eigen::Index j = i + 1; j < P.cols(); ++j)
        if (full_bits[static_cast<std::size_t>(j)]) e += 2 * P(i, j);
    }
    return e;
  }
};

using QuboProblemd = QuboProblem<double>;

// QUBO over the B free bits after analytic elimination of the clamped bit:
// E(b) = constant + linear . b + b' Q b.
template <typename Scalar>
struct ReducedQubo {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Matrix Q;
  Vector linear;
  Scalar constant = 0;

  int size() const { return static_cast<int>(linear.size()); }

  Scalar energy(const BitString& bits) const {
    if (static_cast<int>(bits.size()) != size())
      throw LengthMismatch("bit count does not match reduced QUBO");
    Scalar e = constant;
    for (int i = 0; i < size(); ++i) {
      if (!bits[static_cast<std::size_t>(i)]) continue;
      e += linear(i) + Q(i, i);
      for (int j = i + 1; j < size(); ++j)
        if (bits[static_cast<std::size_t>(j)]) e += 2 * Q(i, j);
    }
    return e;
  }
};

using ReducedQubod = ReducedQubo<double>;

// Ising form E(s) = sum h_i s_i + sum_{i<j} J_ij s_i s_j, spins in {-1,+1},
// each unordered pair counted once. `offset` restores the QUBO energy.
template <typename Scalar>
struct IsingProblem {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector h;
  std::map<std::pair<int, int>, Scalar> couplings;  // keys (i, j) with i < j
  Scalar offset = 0;

  int size() const { return static_cast<int>(h.size()); }

  Scalar energy(const std::vector<int>& spins) const {
    if (static_cast<int>(spins.size()) != size())
      throw LengthMismatch("spin count does not match Ising problem");
    Scalar e = 0;
    for (int i = 0; i < size(); ++i) e += h(i) * static_cast<Scalar>(spins[static_cast<std::size_t>(i)]);
    for (const auto& [key, j] : couplings)
      e += j * static_cast<Scalar>(spins[static_cast<std::size_t>(key.first)] *
                                   spins[static_cast<std::size_t>(key.second)]);
    return e;
  }
};

using IsingProblemd = IsingProblem<double>;

// Counts template-point-times-basis-element products while building Phi.
// Shared template points are computed once and reused, so for PSR the count
// is B times the number of distinct linked template indices.
struct PhiBuildStats {
  std::uint64_t basis_point_products = 0;
};

namespace detail {

template <typename Scalar>
void require_centered(const PointSet<Scalar>& ps, const char* which) {
  if (ps.points.rowwise().mean().norm() >= Scalar(1e-9))
    throw NotCentered(std::string(which) + " point set is not centered");
}

// Column [x; -Q_1 y; ...; -Q_B y] for one template point.
template <typename Scalar>
void fill_template_column(const RotationBasis<Scalar>& basis,
                          const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& y,
                          Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& cols,
                          PhiBuildStats* stats) {
  const int d = basis.dim;
  for (int k = 0; k < basis.size(); ++k) {
    cols.block(k * d, 0, d, 1).noalias() = -(basis.elements[static_cast<std::size_t>(k)].matrix * y);
    if (stats) ++stats->basis_point_products;
  }
}

}  // namespace detail

// Phi for transformation estimation (index correspondences, N = M):
// row 0 concatenates the reference points, row k+1 concatenates -(Q_k y_n)'.
template <typename Scalar>
typename QuboProblem<Scalar>::Matrix build_phi_te(const PointSet<Scalar>& reference,
                                                  const PointSet<Scalar>& tmpl,
                                                  const RotationBasis<Scalar>& basis,
                                                  PhiBuildStats* stats = nullptr) {
  if (reference.dim() != tmpl.dim() || reference.dim() != basis.dim)
    throw CardinalityMismatch("dimension mismatch between point sets and basis");
  if (reference.size() != tmpl.size())
    throw CardinalityMismatch("transformation estimation requires equal cardinalities");
  detail::require_centered(reference, "reference");
  detail::require_centered(tmpl, "template");

  const int d = basis.dim;
  const int b = basis.size();
  const Eigen::Index n_pts = reference.size();
  typename QuboProblem<Scalar>::Matrix phi(b + 1, d * n_pts);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> col(b * d, 1);
  for (Eigen::Index n = 0; n < n_pts; ++n) {
    phi.block(0, n * d, 1, d) = reference.points.col(n).transpose();
    detail::fill_template_column<Scalar>(basis, tmpl.points.col(n), col, stats);
    for (int k = 0; k < b; ++k)
      phi.block(k + 1, n * d, 1, d) = col.block(k * d, 0, d, 1).transpose();
  }
  return phi;
}

// Phi for point set registration: block Phi_n repeats x_n' across its L(n)
// link columns in row 0 and stacks -(Q_k y)' below, blocks concatenated in
// reference order. The per-template-point column stack is cached across
// links so a shared template point is expanded exactly once.
template <typename Scalar>
typename QuboProblem<Scalar>::Matrix build_phi_psr(const PointSet<Scalar>& reference,
                                                   const PointSet<Scalar>& tmpl,
                                                   const LinkSet& links,
                                                   const RotationBasis<Scalar>& basis,
                                                   PhiBuildStats* stats = nullptr) {
  if (reference.dim() != tmpl.dim() || reference.dim() != basis.dim)
    throw CardinalityMismatch("dimension mismatch between point sets and basis");
  if (static_cast<Eigen::Index>(links.links.size()) != reference.size())
    throw CardinalityMismatch("link set size does not match reference");
  detail::require_centered(reference, "reference");
  detail::require_centered(tmpl, "template");
  for (const auto& l : links.links) {
    if (l.empty()) throw InvalidK("every reference point needs at least one link");
    for (std::size_t a = 0; a < l.size(); ++a) {
      if (l[a] < 0 || l[a] >= tmpl.size()) throw InvalidK("link index out of range");
      for (std::size_t c = a + 1; c < l.size(); ++c)
        if (l[a] == l[c]) throw InvalidK("duplicate link index for one reference point");
    }
  }

  const int d = basis.dim;
  const int b = basis.size();
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  std::vector<Matrix> cache(static_cast<std::size_t>(tmpl.size()));
  std::vector<bool> cached(static_cast<std::size_t>(tmpl.size()), false);

  typename QuboProblem<Scalar>::Matrix phi(b + 1, d * links.total());
  Eigen::Index col0 = 0;
  for (Eigen::Index n = 0; n < reference.size(); ++n) {
    for (Eigen::Index m : links.links[static_cast<std::size_t>(n)]) {
      auto& stack = cache[static_cast<std::size_t>(m)];
      if (!cached[static_cast<std::size_t>(m)]) {
        stack.resize(b * d, 1);
        detail::fill_template_column<Scalar>(basis, tmpl.points.col(m), stack, stats);
        cached[static_cast<std::size_t>(m)] = true;
      }
      phi.block(0, col0, 1, d) = reference.points.col(n).transpose();
      for (int k = 0; k < b; ++k)
        phi.block(k + 1, col0, 1, d) = stack.block(k * d, 0, d, 1).transpose();
      col0 += d;
    }
  }
  return phi;
}

// P = Phi Phi', accumulated column by column. The sequential rank-1 updates
// keep the skew-vs-identity cross terms cancelling in adjacent operations,
// which is what makes the zero blocks of P hold to within accumulation noise.
template <typename Scalar>
QuboProblem<Scalar> build_qubo(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& phi, int dim) {
  if (!phi.allFinite()) throw FormatError("Phi contains non-finite entries");
  QuboProblem<Scalar> qp;
  qp.dim = dim;
  qp.basis_size = static_cast<int>(phi.rows()) - 1;
  const Eigen::Index n = phi.rows();
  qp.P.setZero(n, n);
  for (Eigen::Index c = 0; c < phi.cols(); ++c) {
    const auto col = phi.col(c);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j) qp.P(i, j) += col(i) * col(j);
  }
  // Mirror the upper triangle so P = P' holds exactly.
  for (Eigen::Index i = 1; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j) qp.P(i, j) = qp.P(j, i);
  return qp;
}

// Eliminates the clamped bit: with q = [1, b],
// q' P q = P00 + sum_j 2 P0,j+1 b_j + b' Q b.
template <typename Scalar>
ReducedQubo<Scalar> reduce_clamped(const QuboProblem<Scalar>& problem) {
  const Eigen::Index n = problem.P.rows();
  ReducedQubo<Scalar> r;
  r.constant = problem.P(0, 0);
  r.linear = Scalar(2) * problem.P.row(0).segment(1, n - 1).transpose();
  r.Q = problem.P.bottomRightCorner(n - 1, n - 1);
  return r;
}

// QUBO -> Ising under x_i = (1 + s_i) / 2. Zero couplings are dropped; the
// offset restores the QUBO energy for every assignment.
template <typename Scalar>
IsingProblem<Scalar> to_ising(const ReducedQubo<Scalar>& reduced) {
  const int n = reduced.size();
  IsingProblem<Scalar> ising;
  ising.h.setZero(n);
  ising.offset = reduced.constant;
  for (int i = 0; i < n; ++i) {
    const Scalar a = reduced.linear(i) + reduced.Q(i, i);  // x_i^2 = x_i
    ising.h(i) += a / Scalar(2);
    ising.offset += a / Scalar(2);
    for (int j = i + 1; j < n; ++j) {
      const Scalar w = Scalar(2) * reduced.Q(i, j);
      if (w == Scalar(0)) continue;
      ising.couplings[{i, j}] = w / Scalar(4);
      ising.h(i) += w / Scalar(4);
      ising.h(j) += w / Scalar(4);
      ising.offset += w / Scalar(4);
    }
  }
  return ising;
}

}  // namespace qalign
