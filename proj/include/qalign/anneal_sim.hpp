#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "qalign/error.hpp"
#include "qalign/qubo.hpp"

namespace qalign {

// Dense 2^n x 2^n real symmetric operator over n qubits. Computational basis
// state |b> maps qubit j to bit j of the index b; sigma^z acts as +1 on bit 0
// and -1 on bit 1, i.e. spin s_j = +1 exactly when bit j of the index is 0.
//
// `kind` records construction structure so that evolve() can apply the
// operator in O(n 2^n) instead of a dense mat-vec.
template <typename Scalar>
struct DenseHamiltonian {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

  enum class Kind { Generic, Diagonal, TransverseField };

  int qubits = 0;
  Matrix matrix;
  Kind kind = Kind::Generic;
  Scalar bx = 0;  // set when kind == TransverseField

  Eigen::Index states() const { return Eigen::Index(1) << qubits; }

  ComplexVector apply(const ComplexVector& v) const {
    switch (kind) {
      case Kind::Diagonal: {
        ComplexVector w(v.size());
        const auto d = matrix.diagonal();
        for (Eigen::Index i = 0; i < v.size(); ++i) w(i) = d(i) * v(i);
        return w;
      }
      case Kind::TransverseField: {
        ComplexVector w = ComplexVector::Zero(v.size());
        for (int j = 0; j < qubits; ++j) {
          const Eigen::Index mask = Eigen::Index(1) << j;
          for (Eigen::Index i = 0; i < v.size(); ++i) w(i) -= bx * v(i ^ mask);
        }
        return w;
      }
      case Kind::Generic:
      default: {
        ComplexVector w(v.size());
        w.real() = matrix * v.real();
        w.imag() = matrix * v.imag();
        return w;
      }
    }
  }

  // Row-sum bound on the spectral norm, used to pick propagator substeps.
  Scalar norm_bound() const { return matrix.cwiseAbs().rowwise().sum().maxCoeff(); }
};

using DenseHamiltoniand = DenseHamiltonian<double>;

template <typename Scalar>
struct QuantumState {
  int qubits = 0;
  typename DenseHamiltonian<Scalar>::ComplexVector amplitudes;
};

using QuantumStated = QuantumState<double>;

template <typename Scalar>
struct GapCurve {
  struct Sample {
    Scalar s;
    Scalar gap;
    Scalar ground_energy;
  };
  std::vector<Sample> samples;

  Scalar min_gap() const {
    Scalar g = std::numeric_limits<Scalar>::infinity();
    for (const auto& smp : samples) g = std::min(g, smp.gap);
    return g;
  }
};

using GapCurved = GapCurve<double>;

namespace detail {

constexpr int kMaxEigQubits = 12;
constexpr int kMaxEvolveQubits = 10;

template <typename Scalar>
void require_same_shape(const DenseHamiltonian<Scalar>& a, const DenseHamiltonian<Scalar>& b) {
  if (a.qubits != b.qubits) throw DimensionMismatch("qubit counts differ");
}

}  // namespace detail

// Problem Hamiltonian H_P = sum h_j sigma_j^z + sum J_jk sigma_j^z sigma_k^z,
// realised directly as the diagonal of Ising energies over all 2^n spin
// assignments.
template <typename Scalar>
DenseHamiltonian<Scalar> build_hp(const IsingProblem<Scalar>& ising) {
  const int n = ising.size();
  if (n < 1 || n > detail::kMaxEigQubits) throw TooManyQubits("problem Hamiltonian limited to 12 qubits");

  DenseHamiltonian<Scalar> h;
  h.qubits = n;
  h.kind = DenseHamiltonian<Scalar>::Kind::Diagonal;
  const Eigen::Index dim = h.states();
  h.matrix.setZero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    Scalar e = 0;
    for (int j = 0; j < n; ++j) {
      const Scalar sj = (b >> j) & 1 ? Scalar(-1) : Scalar(1);
      e += ising.h(j) * sj;
    }
    for (const auto& [key, jv] : ising.couplings) {
      const Scalar si = (b >> key.first) & 1 ? Scalar(-1) : Scalar(1);
      const Scalar sj = (b >> key.second) & 1 ? Scalar(-1) : Scalar(1);
      e += jv * si * sj;
    }
    h.matrix(b, b) = e;
  }
  return h;
}

// Initial Hamiltonian H_I = -sum_j B_x sigma_j^x: entry -B_x between every
// pair of basis states differing in exactly one bit. Ground energy -n B_x
// with the uniform superposition as ground state.
template <typename Scalar>
DenseHamiltonian<Scalar> build_hi(int qubits, Scalar bx) {
  if (qubits < 1 || qubits > detail::kMaxEigQubits)
    throw TooManyQubits("initial Hamiltonian limited to 12 qubits");
  if (!(bx > 0)) throw Error("transverse field B_x must be positive");

  DenseHamiltonian<Scalar> h;
  h.qubits = qubits;
  h.kind = DenseHamiltonian<Scalar>::Kind::TransverseField;
  h.bx = bx;
  const Eigen::Index dim = h.states();
  h.matrix.setZero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (int j = 0; j < qubits; ++j) h.matrix(i, i ^ (Eigen::Index(1) << j)) = -bx;
  return h;
}

// H(s) = (1 - s) H_I + s H_P.
template <typename Scalar>
DenseHamiltonian<Scalar> interpolate(const DenseHamiltonian<Scalar>& hi,
                                     const DenseHamiltonian<Scalar>& hp, Scalar s) {
  detail::require_same_shape(hi, hp);
  if (!(s >= 0 && s <= 1)) throw Error("interpolation parameter must lie in [0, 1]");
  if (s == Scalar(0)) return hi;
  if (s == Scalar(1)) return hp;
  DenseHamiltonian<Scalar> h;
  h.qubits = hi.qubits;
  h.kind = DenseHamiltonian<Scalar>::Kind::Generic;
  h.matrix = (Scalar(1) - s) * hi.matrix + s * hp.matrix;
  return h;
}

// Two lowest eigenvalues of H(s) on a uniform s grid.
template <typename Scalar>
GapCurve<Scalar> gap_curve(const DenseHamiltonian<Scalar>& hi, const DenseHamiltonian<Scalar>& hp,
                           int grid_points) {
  detail::require_same_shape(hi, hp);
  if (grid_points < 2) throw Error("gap curve needs at least 2 grid points");

  GapCurve<Scalar> curve;
  curve.samples.reserve(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    const Scalar s = Scalar(i) / Scalar(grid_points - 1);
    const auto h = interpolate(hi, hp, s);
    Eigen::SelfAdjointEigenSolver<typename DenseHamiltonian<Scalar>::Matrix> eig(
        h.matrix, Eigen::EigenvaluesOnly);
    const auto& vals = eig.eigenvalues();
    curve.samples.push_back({s, vals(1) - vals(0), vals(0)});
  }
  return curve;
}

// Adiabatic runtime criterion: max over the grid and over excited states m of
// |<E_m| (H_P - H_I) |E_0>| / (E_m - E_0)^2. The ground state must stay
// nondegenerate on the grid.
template <typename Scalar>
Scalar annealing_rate_bound(const DenseHamiltonian<Scalar>& hi, const DenseHamiltonian<Scalar>& hp,
                            int grid_points) {
  detail::require_same_shape(hi, hp);
  if (grid_points < 2) throw Error("rate bound needs at least 2 grid points");

  const typename DenseHamiltonian<Scalar>::Matrix dh = hp.matrix - hi.matrix;
  Scalar bound = 0;
  for (int i = 0; i < grid_points; ++i) {
    const Scalar s = Scalar(i) / Scalar(grid_points - 1);
    const auto h = interpolate(hi, hp, s);
    Eigen::SelfAdjointEigenSolver<typename DenseHamiltonian<Scalar>::Matrix> eig(h.matrix);
    const auto& vals = eig.eigenvalues();
    const auto& vecs = eig.eigenvectors();
    if (vals(1) - vals(0) <= Scalar(1e-10))
      throw DegenerateGap("ground state degenerate at s = " + std::to_string(static_cast<double>(s)));
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w = dh * vecs.col(0);
    for (Eigen::Index m = 1; m < vals.size(); ++m) {
      const Scalar denom = vals(m) - vals(0);
      bound = std::max(bound, std::abs(vecs.col(m).dot(w)) / (denom * denom));
    }
  }
  return bound;
}

template <typename Scalar>
struct EvolveResult {
  QuantumState<Scalar> state;
  Scalar ground_overlap = 0;  // probability mass on the ground level of H_P
};

namespace detail {

// One step of exp(-i H dt) |v> by a scaled Taylor expansion. H is applied
// through its structure, so the cost stays O(terms * n * 2^n) per substep.
template <typename Scalar, typename ApplyH>
void apply_propagator(ApplyH&& apply_h, Scalar norm_bound, Scalar dt,
                      typename DenseHamiltonian<Scalar>::ComplexVector& v) {
  using Complex = std::complex<Scalar>;
  const int substeps = std::max(1, static_cast<int>(std::ceil(norm_bound * std::abs(dt))));
  const Scalar theta = dt / Scalar(substeps);
  for (int s = 0; s < substeps; ++s) {
    auto term = v;
    auto acc = v;
    for (int k = 1; k <= 64; ++k) {
      term = apply_h(term);
      term *= Complex(0, -theta) / Scalar(k);
      acc += term;
      if (term.norm() < Scalar(1e-16) * acc.norm()) break;
    }
    v = std::move(acc);
  }
}

}  // namespace detail

// Schroedinger evolution from the uniform superposition under the
// interpolated Hamiltonian, with s advanced by the exponential-midpoint rule.
// Returns the final state and its probability on the ground level of H_P.
template <typename Scalar>
EvolveResult<Scalar> evolve(const DenseHamiltonian<Scalar>& hi, const DenseHamiltonian<Scalar>& hp,
                            Scalar total_time, int steps) {
  detail::require_same_shape(hi, hp);
  if (hi.qubits > detail::kMaxEvolveQubits) throw TooManyQubits("evolution limited to 10 qubits");
  if (steps < 100) throw Error("evolution needs at least 100 steps");
  if (!(total_time >= 0)) throw Error("evolution time must be non-negative");

  using ComplexVector = typename DenseHamiltonian<Scalar>::ComplexVector;
  const Eigen::Index dim = hi.states();

  EvolveResult<Scalar> out;
  out.state.qubits = hi.qubits;
  out.state.amplitudes =
      ComplexVector::Constant(dim, std::complex<Scalar>(Scalar(1) / std::sqrt(Scalar(dim)), 0));

  const Scalar dt = total_time / Scalar(steps);
  const Scalar bound = std::max(hi.norm_bound(), hp.norm_bound());
  if (dt > 0) {
    for (int step = 0; step < steps; ++step) {
      const Scalar s = (Scalar(step) + Scalar(0.5)) / Scalar(steps);
      auto apply_h = [&](const ComplexVector& v) -> ComplexVector {
        return (Scalar(1) - s) * hi.apply(v) + s * hp.apply(v);
      };
      detail::apply_propagator<Scalar>(apply_h, bound, dt, out.state.amplitudes);
    }
  }

  // Ground level of the (diagonal) problem Hamiltonian; degenerate minima
  // all count toward the overlap.
  const auto diag = hp.matrix.diagonal();
  const Scalar ground = diag.minCoeff();
  const Scalar tol = Scalar(1e-12) * std::max(Scalar(1), std::abs(ground));
  Scalar overlap = 0;
  for (Eigen::Index b = 0; b < dim; ++b)
    if (diag(b) - ground <= tol) overlap += std::norm(out.state.amplitudes(b));
  out.ground_overlap = overlap;
  return out;
}

}  // namespace qalign
