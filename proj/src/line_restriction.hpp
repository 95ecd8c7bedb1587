#pragma once

#include "koszul/form.hpp"
#include "koszul/poly1.hpp"

namespace koszul {

/// g(t) = F(base + t * dir), by interpolation at deg F + 1 nodes.
inline poly1::Poly restrict_to_line(const HomogeneousForm& form, const Vec3& base, const Vec3& dir) {
  const PrimeField& f = form.field();
  std::vector<Fp> xs, ys;
  for (int k = 0; k <= form.degree(); ++k) {
    const Fp t = f.from_int(k);
    Vec3 pt;
    for (int i = 0; i < 3; ++i) pt[i] = f.fma(base[i], t, dir[i]);
    xs.push_back(t);
    ys.push_back(form.evaluate(pt));
  }
  return poly1::interpolate(f, xs, ys);
}

}  // namespace koszul
