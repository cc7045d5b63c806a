// =============================================================================
// eigen_support.hpp
//
// Eigen scalar-trait glue for Rational and BigFloat, plus the dense matrix
// aliases used across the library. Row-major so that row index = temporal
// mode m, matching the file formats.
// =============================================================================
#pragma once

#include <Eigen/Core>

#include "wavecert/bigfloat.hpp"
#include "wavecert/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<wavecert::Rational> : GenericNumTraits<wavecert::Rational> {
  using Real = wavecert::Rational;
  using NonInteger = wavecert::Rational;
  using Nested = wavecert::Rational;
  using Literal = long;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 40,
    MulCost = 40
  };
  static inline Real epsilon() { return wavecert::Rational(0); }
  static inline Real dummy_precision() { return wavecert::Rational(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<wavecert::BigFloat> : GenericNumTraits<wavecert::BigFloat> {
  using Real = wavecert::BigFloat;
  using NonInteger = wavecert::BigFloat;
  using Nested = wavecert::BigFloat;
  using Literal = long;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 20,
    MulCost = 20
  };
  static inline Real epsilon() { return wavecert::BigFloat(0); }
  static inline Real dummy_precision() { return wavecert::BigFloat(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace wavecert {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = DenseMatrix<Rational>;
using RationalVector = DenseVector<Rational>;
using FloatMatrix = DenseMatrix<BigFloat>;
using FloatVector = DenseVector<BigFloat>;

}  // namespace wavecert
