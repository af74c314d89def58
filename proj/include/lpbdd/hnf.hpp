#pragma once

#include "lpbdd/rational.hpp"

namespace lpbdd {

/// Column-style Hermite normal form H = M U of a full-column-rank integer
/// matrix M, with U unimodular. H is lower echelon: each column has a
/// positive pivot strictly below the previous column's pivot, and entries
/// left of a pivot in its row are reduced into [0, pivot).
struct HermiteForm {
  IntMatrix h;
  IntMatrix transform;
};

/// Throws std::invalid_argument when M is rank deficient.
HermiteForm hnf(const IntMatrix& m);

/// Product of the pivots of a Hermite form. Equals |det M| for square M.
Int hnf_determinant(const IntMatrix& h);

/// |det| of a square integer matrix, via its Hermite form.
Int abs_determinant(const IntMatrix& m);

}  // namespace lpbdd
