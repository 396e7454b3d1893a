#pragma once

// Numerical Gromov linearization D_{u,J} along a sampled disk map, its
// splitting into the dbar part and the antilinear remainder, the Leibniz
// and connection-independence identities, and the Fredholm index formulas.

#include "pclab/jdisk.hpp"

namespace pclab::gromovop {

using disk::Axis;
using disk::DiskField;
using jdisk::StructureField;

// Section of u*TR^{2n} over the disk (same storage as a map field).
struct SectionField {
  DiskField v;
};

// A (0,1)-form with values in u*TR^{2n}: its two components on d/dx, d/dy.
struct OneFormField {
  DiskField on_dx;
  DiskField on_dy;
};

namespace detail {

// directional derivative of the structure field at u(cell) along s(cell)
inline Mat structure_derivative(const StructureField& jf, const Vec& p, const Vec& dir,
                                double fd_step) {
  double nrm = dir.norm();
  if (nrm == 0.0) return Mat::Zero(jf.dim, jf.dim);
  Vec u = dir / nrm;
  return (jf.eval(p + fd_step * u) - jf.eval(p - fd_step * u)) * (nrm / (2.0 * fd_step));
}

using Christoffel = std::vector<Mat>;  // Q^i_{jk}: Q[i] symmetric matrix

inline Vec bilinear(const Christoffel& q, const Vec& a, const Vec& b) {
  Vec out(static_cast<int>(q.size()));
  for (std::size_t i = 0; i < q.size(); ++i) out[static_cast<int>(i)] = a.dot(q[i] * b);
  return out;
}

}  // namespace detail

// D_{u,J}(v) = 1/2 ( Dv + J o Dv o J_S + (D_v J) o (du o J_S) ), flat
// connection, optionally perturbed by a symmetric Christoffel field.
inline OneFormField gromov_d(const StructureField& jf, const DiskField& u,
                             const SectionField& s, double fd_step,
                             const detail::Christoffel* gamma = nullptr) {
  const auto& g = u.grid;
  const int m = u.m;
  DiskField ux = disk::derivative(u, Axis::X), uy = disk::derivative(u, Axis::Y);
  DiskField vx = disk::derivative(s.v, Axis::X), vy = disk::derivative(s.v, Axis::Y);
  OneFormField out{DiskField(g, m), DiskField(g, m)};
  Vec p(jf.dim), vv(jf.dim), ax(jf.dim), ay(jf.dim), cx(jf.dim), cy(jf.dim);
  for (int j = 0; j < g.n; ++j)
    for (int i = g.row_lo[j]; i < g.row_hi[j]; ++i) {
      if (!g.mask[g.idx(i, j)]) continue;
      const std::size_t k = g.idx(i, j);
      disk::to_real(&u.v[k * m], m, p);
      disk::to_real(&s.v.v[k * m], m, vv);
      disk::to_real(&ux.v[k * m], m, ax);
      disk::to_real(&uy.v[k * m], m, ay);
      disk::to_real(&vx.v[k * m], m, cx);
      disk::to_real(&vy.v[k * m], m, cy);
      Mat jm = jf.eval(p);
      Mat dvj = detail::structure_derivative(jf, p, vv, fd_step);
      Vec nx = cx, ny = cy;
      if (gamma) {
        nx += detail::bilinear(*gamma, ax, vv);
        ny += detail::bilinear(*gamma, ay, vv);
        // (D^G_v J)(w) = (D_v J)(w) + G(v, Jw) - J G(v, w) folded in below
      }
      Vec dx, dy;
      if (!gamma) {
        dx = 0.5 * (nx + jm * ny + dvj * ay);
        dy = 0.5 * (ny - jm * nx - dvj * ax);
      } else {
        auto dj_apply = [&](const Vec& w) -> Vec {
          return dvj * w + detail::bilinear(*gamma, vv, jm * w) -
                 jm * detail::bilinear(*gamma, vv, w);
        };
        dx = 0.5 * (nx + jm * ny + dj_apply(ay));
        dy = 0.5 * (ny - jm * nx - dj_apply(ax));
      }
      disk::from_real(dx, m, &out.on_dx.v[k * m]);
      disk::from_real(dy, m, &out.on_dy.v[k * m]);
    }
  return out;
}

inline DiskField apply_structure_along(const StructureField& jf, const DiskField& u,
                                       const DiskField& w) {
  const auto& g = u.grid;
  DiskField out(g, w.m);
  Vec p(jf.dim), a(jf.dim);
  for (int j = 0; j < g.n; ++j)
    for (int i = g.row_lo[j]; i < g.row_hi[j]; ++i) {
      if (!g.mask[g.idx(i, j)]) continue;
      const std::size_t k = g.idx(i, j);
      disk::to_real(&u.v[k * u.m], u.m, p);
      disk::to_real(&w.v[k * w.m], w.m, a);
      Vec b = jf.eval(p) * a;
      disk::from_real(b, w.m, &out.v[k * w.m]);
    }
  return out;
}

// Antilinear remainder R(v, .) = 1/2 (D v + J D(J v)); equals N(v, du(.)).
inline OneFormField antilinear_part(const StructureField& jf, const DiskField& u,
                                    const SectionField& s, double fd_step) {
  OneFormField dv = gromov_d(jf, u, s, fd_step);
  SectionField js{apply_structure_along(jf, u, s.v)};
  OneFormField djv = gromov_d(jf, u, js, fd_step);
  OneFormField out{DiskField(u.grid, u.m), DiskField(u.grid, u.m)};
  DiskField jdx = apply_structure_along(jf, u, djv.on_dx);
  DiskField jdy = apply_structure_along(jf, u, djv.on_dy);
  for (std::size_t k = 0; k < out.on_dx.v.size(); ++k) {
    out.on_dx.v[k] = 0.5 * (dv.on_dx.v[k] + jdx.v[k]);
    out.on_dy.v[k] = 0.5 * (dv.on_dy.v[k] + jdy.v[k]);
  }
  return out;
}

// J-linear (dbar) part: 1/2 (D v - J D(J v)).
inline OneFormField dbar_part(const StructureField& jf, const DiskField& u,
                              const SectionField& s, double fd_step) {
  OneFormField dv = gromov_d(jf, u, s, fd_step);
  SectionField js{apply_structure_along(jf, u, s.v)};
  OneFormField djv = gromov_d(jf, u, js, fd_step);
  OneFormField out{DiskField(u.grid, u.m), DiskField(u.grid, u.m)};
  DiskField jdx = apply_structure_along(jf, u, djv.on_dx);
  DiskField jdy = apply_structure_along(jf, u, djv.on_dy);
  for (std::size_t k = 0; k < out.on_dx.v.size(); ++k) {
    out.on_dx.v[k] = 0.5 * (dv.on_dx.v[k] - jdx.v[k]);
    out.on_dy.v[k] = 0.5 * (dv.on_dy.v[k] - jdy.v[k]);
  }
  return out;
}

inline double sup_cell_norm(const DiskField& f, double radius = 0.9) {
  const auto& g = f.grid;
  double s = 0.0;
  for (int j = 0; j < g.n; ++j)
    for (int i = g.row_lo[j]; i < g.row_hi[j]; ++i) {
      if (!g.mask[g.idx(i, j)]) continue;
      if (std::abs(g.center(i, j)) > radius) continue;
      double a2 = 0.0;
      for (int c = 0; c < f.m; ++c) a2 += std::norm(f.at(i, j, c));
      s = std::max(s, std::sqrt(a2));
    }
  return s;
}

inline double sup_cell_norm(const OneFormField& f, double radius = 0.9) {
  const auto& g = f.on_dx.grid;
  double s = 0.0;
  for (int j = 0; j < g.n; ++j)
    for (int i = g.row_lo[j]; i < g.row_hi[j]; ++i) {
      if (!g.mask[g.idx(i, j)]) continue;
      if (std::abs(g.center(i, j)) > radius) continue;
      double a2 = 0.0;
      for (int c = 0; c < f.on_dx.m; ++c)
        a2 += std::norm(f.on_dx.at(i, j, c)) + std::norm(f.on_dy.at(i, j, c));
      s = std::max(s, std::sqrt(a2));
    }
  return s;
}

// Residual of the Leibniz identity dbar(f v) = dbar_S f (x) v + f dbar v,
// sup over cells with |z| <= 0.9.  Complex scalars act through J(u).
inline double leibniz_check(const StructureField& jf, const DiskField& u,
                            const SectionField& s, const DiskField& f,
                            double fd_step) {
  const auto& g = u.grid;
  const int m = u.m;
  auto scalar_mul = [&](const DiskField& scalar, const DiskField& w) {
    DiskField re_part = w;
    DiskField jw = apply_structure_along(jf, u, w);
    DiskField out(g, m);
    for (int j = 0; j < g.n; ++j)
      for (int i = g.row_lo[j]; i < g.row_hi[j]; ++i) {
        if (!g.mask[g.idx(i, j)]) continue;
        cplx a = scalar.at(i, j, 0);
        for (int c = 0; c < m; ++c)
          out.at(i, j, c) = a.real() * w.at(i, j, c) + a.imag() * jw.at(i, j, c);
      }
    return out;
  };

  SectionField fv{scalar_mul(f, s.v)};
  OneFormField lhs = dbar_part(jf, u, fv, fd_step);
  OneFormField rhs = dbar_part(jf, u, s, fd_step);
  rhs.on_dx = scalar_mul(f, rhs.on_dx);
  rhs.on_dy = scalar_mul(f, rhs.on_dy);

  // dbar_S f as the scalar CR derivative, then tensored with v
  DiskField fx = disk::derivative(f, Axis::X), fy = disk::derivative(f, Axis::Y);
  DiskField dbarf_x(g, 1), dbarf_y(g, 1);
  for (std::size_t k = 0; k < dbarf_x.v.size(); ++k) {
    // (dbar f)(d/dx) = (f_x + i f_y)/2 ; (dbar f)(d/dy) = (f_y - i f_x)/2
    dbarf_x.v[k] = 0.5 * (fx.v[k] + cplx(0, 1) * fy.v[k]);
    dbarf_y.v[k] = 0.5 * (fy.v[k] - cplx(0, 1) * fx.v[k]);
  }
  rhs.on_dx += scalar_mul(dbarf_x, s.v);
  rhs.on_dy += scalar_mul(dbarf_y, s.v);

  OneFormField diff{lhs.on_dx - rhs.on_dx, lhs.on_dy - rhs.on_dy};
  return sup_cell_norm(diff);
}

// Random symmetric Christoffel field for the connection-independence check.
inline detail::Christoffel random_christoffel(int dim, double scale, Rng& rng) {
  detail::Christoffel q(dim);
  for (int i = 0; i < dim; ++i) {
    Mat a = rng.gauss_mat(dim, dim, scale);
    q[i] = 0.5 * (a + a.transpose());
  }
  return q;
}

inline OneFormField gromov_d_perturbed(const StructureField& jf, const DiskField& u,
                                       const SectionField& s, double fd_step,
                                       const detail::Christoffel& gamma) {
  return gromov_d(jf, u, s, fd_step, &gamma);
}

// ind_R D = 2 (c_1 + r (1 - g))        (Riemann-Roch for dbar-type operators)
inline long long index_formula(long long c1, long long r, long long g) {
  if (r < 1 || g < 0) throw Error("index formula needs r >= 1, g >= 0");
  return 2 * (c1 + r * (1 - g));
}

// Moduli-space index 2 (c_1(X)[M] + (n-3)(1-g)) for curves in complex dim n.
inline long long moduli_index(long long c1m, long long n, long long g) {
  return 2 * (c1m + (n - 3) * (1 - g));
}

}  // namespace pclab::gromovop
