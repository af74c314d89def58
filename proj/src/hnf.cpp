#include "lpbdd/hnf.hpp"

#include <stdexcept>

namespace lpbdd {

namespace {

// Replaces columns (a, b) by (s a + t b, u a + v b).
void combine_columns(IntMatrix& m, std::size_t a, std::size_t b, const Int& s, const Int& t, const Int& u,
                     const Int& v) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Int x = m(r, a), y = m(r, b);
    m(r, a) = s * x + t * y;
    m(r, b) = u * x + v * y;
  }
}

void axpy_column(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) -= q * m(r, src);
}

void negate_column(IntMatrix& m, std::size_t j) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, j) = -m(r, j);
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

}  // namespace

HermiteForm hnf(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(cols);
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows && k < cols; ++i) {
    for (std::size_t j = k + 1; j < cols; ++j) {
      if (h(i, j) == 0) continue;
      if (h(i, k) == 0) {
        h.swap_columns(k, j);
        u.swap_columns(k, j);
        continue;
      }
      Int a = h(i, k), b = h(i, j);
      Int g, s, t;
      mpz_gcdext(g.backend().data(), s.backend().data(), t.backend().data(), a.backend().data(), b.backend().data());
      Int ua = -b / g, va = a / g;
      combine_columns(h, k, j, s, t, ua, va);
      combine_columns(u, k, j, s, t, ua, va);
    }
    if (h(i, k) == 0) continue;
    if (h(i, k) < 0) {
      negate_column(h, k);
      negate_column(u, k);
    }
    for (std::size_t j = 0; j < k; ++j) {
      Int q = floor_div(h(i, j), h(i, k));
      if (q == 0) continue;
      axpy_column(h, j, k, q);
      axpy_column(u, j, k, q);
    }
    ++k;
  }
  if (k < cols) throw std::invalid_argument("hnf: matrix does not have full column rank");
  return {std::move(h), std::move(u)};
}

Int hnf_determinant(const IntMatrix& h) {
  Int det = 1;
  std::size_t k = 0;
  for (std::size_t i = 0; i < h.rows() && k < h.cols(); ++i) {
    if (h(i, k) != 0) {
      det *= h(i, k);
      ++k;
    }
  }
  return det;
}

Int abs_determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("abs_determinant: matrix is not square");
  try {
    return hnf_determinant(hnf(m).h);
  } catch (const std::invalid_argument&) {
    return 0;
  }
}

}  // namespace lpbdd
