#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "qalign/error.hpp"

namespace qalign {

using BitString = std::vector<std::uint8_t>;

// Generator families of the additive basis. Identity vs Skew is what produces
// the zero blocks of P in 2D; the symmetric families only exist in 3D.
enum class GeneratorFamily { Identity, Skew, SymHollow, SymDiag };

template <typename Scalar>
struct BasisElement {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix matrix;  // weight * generator, exactly
  Scalar weight;
  GeneratorFamily family;
  std::string generator;  // "+I", "-M", "+Ma", "-D12", ...
};

template <typename Scalar>
struct RotationBasis {
  int dim = 0;
  std::vector<BasisElement<Scalar>> elements;

  int size() const { return static_cast<int>(elements.size()); }
};

using RotationBasisd = RotationBasis<double>;

namespace detail {

template <typename Scalar>
void append_generator(RotationBasis<Scalar>& basis, Scalar weight,
                      const typename BasisElement<Scalar>::Matrix& gen,
                      GeneratorFamily family, const std::string& name) {
  BasisElement<Scalar> e;
  e.matrix = weight * gen;
  e.weight = weight;
  e.family = family;
  e.generator = name;
  basis.elements.push_back(std::move(e));
}

}  // namespace detail

// The weight list is kept verbatim, including the repeated 0.1; dropping the
// duplicate would change the qubit count.
template <typename Scalar>
inline const std::vector<Scalar>& basis_weights() {
  static const std::vector<Scalar> w = {Scalar(0.5), Scalar(0.2), Scalar(0.1), Scalar(0.1),
                                        Scalar(0.05)};
  return w;
}

// 2D additive basis: 5 weights x generators {I, M, -I, -M} = 20 elements,
// weights outer, generators inner.
template <typename Scalar = double>
RotationBasis<Scalar> build_basis_2d() {
  using Matrix = typename BasisElement<Scalar>::Matrix;
  Matrix ident = Matrix::Identity(2, 2);
  Matrix skew(2, 2);
  skew << 0, -1, 1, 0;

  RotationBasis<Scalar> basis;
  basis.dim = 2;
  basis.elements.reserve(20);
  for (Scalar w : basis_weights<Scalar>()) {
    detail::append_generator(basis, w, ident, GeneratorFamily::Identity, "+I");
    detail::append_generator(basis, w, skew, GeneratorFamily::Skew, "+M");
    detail::append_generator<Scalar>(basis, w, -ident, GeneratorFamily::Identity, "-I");
    detail::append_generator<Scalar>(basis, w, -skew, GeneratorFamily::Skew, "-M");
  }
  return basis;
}

// 3D additive basis: 5 weights x 16 generators = 80 elements. The generators
// are +-I, the three elementary skews Ma, Mb, Mc, the three symmetric hollow
// matrices Md, Me, Mf, and the negated diagonals -D12 = -diag(1,1,0) and
// -D23 = -diag(0,1,1). The diagonal part a skew square contributes is
// negative semi-definite, so only the negative diagonal directions are
// needed on top of +-I.
template <typename Scalar = double>
RotationBasis<Scalar> build_basis_3d() {
  using Matrix = typename BasisElement<Scalar>::Matrix;
  Matrix ident = Matrix::Identity(3, 3);
  Matrix ma(3, 3), mb(3, 3), mc(3, 3), md(3, 3), me(3, 3), mf(3, 3), d12(3, 3), d23(3, 3);
  ma << 0, 1, 0, -1, 0, 0, 0, 0, 0;
  mb << 0, 0, 1, 0, 0, 0, -1, 0, 0;
  mc << 0, 0, 0, 0, 0, 1, 0, -1, 0;
  md << 0, 1, 0, 1, 0, 0, 0, 0, 0;
  me << 0, 0, 1, 0, 0, 0, 1, 0, 0;
  mf << 0, 0, 0, 0, 0, 1, 0, 1, 0;
  d12 << 1, 0, 0, 0, 1, 0, 0, 0, 0;
  d23 << 0, 0, 0, 0, 1, 0, 0, 0, 1;

  struct Gen {
    const Matrix* m;
    GeneratorFamily family;
    const char* name;
  };
  const Matrix nident = -ident, nma = -ma, nmb = -mb, nmc = -mc, nmd = -md, nme = -me,
               nmf = -mf, nd12 = -d12, nd23 = -d23;
  const Gen gens[] = {
      {&ident, GeneratorFamily::Identity, "+I"},  {&nident, GeneratorFamily::Identity, "-I"},
      {&ma, GeneratorFamily::Skew, "+Ma"},        {&nma, GeneratorFamily::Skew, "-Ma"},
      {&mb, GeneratorFamily::Skew, "+Mb"},        {&nmb, GeneratorFamily::Skew, "-Mb"},
      {&mc, GeneratorFamily::Skew, "+Mc"},        {&nmc, GeneratorFamily::Skew, "-Mc"},
      {&md, GeneratorFamily::SymHollow, "+Md"},   {&nmd, GeneratorFamily::SymHollow, "-Md"},
      {&me, GeneratorFamily::SymHollow, "+Me"},   {&nme, GeneratorFamily::SymHollow, "-Me"},
      {&mf, GeneratorFamily::SymHollow, "+Mf"},   {&nmf, GeneratorFamily::SymHollow, "-Mf"},
      {&nd12, GeneratorFamily::SymDiag, "-D12"},  {&nd23, GeneratorFamily::SymDiag, "-D23"},
  };

  RotationBasis<Scalar> basis;
  basis.dim = 3;
  basis.elements.reserve(80);
  for (Scalar w : basis_weights<Scalar>())
    for (const Gen& g : gens) detail::append_generator(basis, w, *g.m, g.family, g.name);
  return basis;
}

template <typename Scalar = double>
RotationBasis<Scalar> build_basis(int dim) {
  if (dim == 2) return build_basis_2d<Scalar>();
  if (dim == 3) return build_basis_3d<Scalar>();
  throw FormatError("basis dimension must be 2 or 3");
}

// Sum of the basis elements selected by `bits`; the zero matrix when no bit
// is set.
template <typename Scalar>
typename BasisElement<Scalar>::Matrix assemble(const RotationBasis<Scalar>& basis,
                                               const BitString& bits) {
  if (static_cast<int>(bits.size()) != basis.size())
    throw LengthMismatch("bit count does not match basis size");
  typename BasisElement<Scalar>::Matrix r =
      BasisElement<Scalar>::Matrix::Zero(basis.dim, basis.dim);
  for (std::size_t k = 0; k < bits.size(); ++k)
    if (bits[k]) r += basis.elements[k].matrix;
  return r;
}

}  // namespace qalign
