#pragma once

// Independent oracles: small brute-force routes kept separate from the
// library implementations they check.

#include "norden/tensor.hpp"

namespace testsupport {

/// 4x4 inverse by the adjugate (cofactor) formula; independent of the
/// Gauss-Jordan elimination used by the library.
inline norden::Tensor cofactor_inverse_4x4(const norden::Tensor& g) {
  using norden::Rational;
  if (g.dim() != 4) throw std::logic_error("cofactor oracle is 4x4 only");
  Rational m[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = g.at({i, j}).constant_value();

  const auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
    return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
           m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
           m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
  };

  const int rows[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  Rational cof[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const auto& r = rows[i];
      const auto& c = rows[j];
      Rational minor = det3(r[0], r[1], r[2], c[0], c[1], c[2]);
      cof[i][j] = ((i + j) % 2 == 0) ? minor : -minor;
    }
  Rational det(0);
  for (int j = 0; j < 4; ++j) det += m[0][j] * cof[0][j];
  if (det.is_zero()) throw std::logic_error("cofactor oracle: singular matrix");

  norden::Tensor inv(4, {norden::Slot::Up, norden::Slot::Up}, g.vars());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      inv.set({i, j}, norden::Polynomial::constant(cof[j][i] / det, g.vars()));
  return inv;
}

/// Direct four-term expansion of the Kulkarni-Nomizu product at one index.
inline norden::Polynomial kulkarni_nomizu_component(const norden::Tensor& a,
                                                    const norden::Tensor& b, int x, int y,
                                                    int z, int w) {
  norden::Polynomial v = a.at({x, z}) * b.at({y, w});
  v -= a.at({y, z}) * b.at({x, w});
  v += a.at({y, w}) * b.at({x, z});
  v -= a.at({x, w}) * b.at({y, z});
  return v;
}

/// Componentwise raising of a 1-form against a supplied inverse matrix.
inline norden::Tensor raise_1form_against(const norden::Tensor& f,
                                          const norden::Tensor& g_inv) {
  norden::Tensor out(f.dim(), {norden::Slot::Up}, f.vars());
  for (int k = 0; k < f.dim(); ++k) {
    norden::Polynomial v(f.vars());
    for (int j = 0; j < f.dim(); ++j) v += g_inv.at({k, j}) * f.at({j});
    out.set({k}, v);
  }
  return out;
}

}  // namespace testsupport
