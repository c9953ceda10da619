#pragma once

// Closed forms of the orthonormal almost-Hadamard matrices for n = 3 and 5.

#include <cmath>

#include "badsci/matrix.hpp"

namespace fixtures {

using badsci::RowNormalizedMatrix;
using badsci::SquareMatrix;

inline RowNormalizedMatrix closed_form_oah3() {
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r6 = std::sqrt(6.0);
  return RowNormalizedMatrix(SquareMatrix::from_rows(
      {{-1 / r3, 1 / r6, -1 / r2}, {-1 / r3, -2 / r6, 0}, {-1 / r3, 1 / r6, 1 / r2}}));
}

inline RowNormalizedMatrix closed_form_oah5() {
  const double r2 = std::sqrt(2.0), r5 = std::sqrt(5.0), r30 = std::sqrt(30.0),
               r42 = std::sqrt(42.0), r14 = std::sqrt(14.0);
  return RowNormalizedMatrix(SquareMatrix::from_rows({
      {-1 / r5, 2 / r30, 2 / r42, -1 / r14, -1 / r2},
      {-1 / r5, -3 / r30, 3 / r42, 2 / r14, 0},
      {-1 / r5, 2 / r30, -4 / r42, 2 / r14, 0},
      {-1 / r5, -3 / r30, -3 / r42, -2 / r14, 0},
      {-1 / r5, 2 / r30, 2 / r42, -1 / r14, 1 / r2},
  }));
}

}  // namespace fixtures
