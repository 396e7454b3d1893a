#pragma once

// Local existence solver for J-holomorphic disks in R^{2n}: the
// Cauchy-Green fixed-point scheme u <- h_w + T[Q(t u) d_z u] with
// Q(u) = [J_st + J(u)]^{-1} [J_st - J(u)], plus the first-a-priori-estimate
// probe on solutions.

#include <optional>

#include "pclab/cgdbar.hpp"

namespace pclab::jdisk {

using disk::Axis;
using disk::CellStructure;
using disk::DiskField;
using disk::DiskGrid;

// Pointwise almost-complex structure field on a chart of R^{2n}, normalized
// so that eval(0) = J_st.
struct StructureField {
  int dim = 0;  // 2n
  std::function<Mat(const Vec&)> eval;
  double lipschitz_bound = 0.0;
  double domain_radius = 1.0;
};

inline StructureField constant_field(const Mat& j) {
  return {static_cast<int>(j.rows()), [j](const Vec&) { return j; }, 0.0, 1e30};
}

inline StructureField standard_field(int dim) {
  return constant_field(lincx::std_structure(dim));
}

// J(p) = K( eps * (1 - exp(-|p|^2)) * W0 ) with W0 the conjugation operator;
// tame for eps < 1 (the Cayley chart ball is convex), J(0) = J_st, and
// ||J - J_st||_{C^1} ~= 2 eps.  `c1_norm` is the nominal C^1 distance.
inline StructureField cayley_radial_field(int dim, double c1_norm) {
  double eps = 0.5 * c1_norm;
  Mat w0 = Mat::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; k += 2) {
    w0(k, k) = 1.0;
    w0(k + 1, k + 1) = -1.0;
  }
  lincx::StructureOp j0 = lincx::StructureOp::standard(dim);
  auto eval = [dim, eps, w0, j0](const Vec& p) {
    double s = 1.0 - std::exp(-p.squaredNorm());
    lincx::AntilinearParam w{dim, eps * s * w0, j0};
    return lincx::cayley_inverse(w).mat;
  };
  return {dim, eval, 2.0 * c1_norm, 1e30};
}

// Q(p) = [J_st + J(p)]^{-1} [J_st - J(p)]
inline Mat q_matrix(const Mat& j) {
  Mat jst = lincx::std_structure(static_cast<int>(j.rows()));
  Eigen::FullPivLU<Mat> lu(jst + j);
  if (!lu.isInvertible()) throw SingularSum("J(u) + J_st singular");
  return lu.solve(jst - j);
}

// Per-cell Q along a sampled map u; aborts with the offending cell index.
inline std::vector<Mat> q_of(const StructureField& jf, const DiskField& u) {
  const auto& g = u.grid;
  std::vector<Mat> q(static_cast<std::size_t>(g.n) * g.n,
                     Mat::Zero(jf.dim, jf.dim));
  Vec p(jf.dim);
  for (int j = 0; j < g.n; ++j)
    for (int i = g.row_lo[j]; i < g.row_hi[j]; ++i) {
      if (!g.mask[g.idx(i, j)]) continue;
      disk::to_real(&u.v[g.idx(i, j) * u.m], u.m, p);
      if (p.norm() > jf.domain_radius)
        throw OutOfDomain("map escapes the chart at cell (" + std::to_string(i) +
                          "," + std::to_string(j) + ")");
      try {
        q[g.idx(i, j)] = q_matrix(jf.eval(p));
      } catch (const SingularSum&) {
        throw SingularSum("J(u)+J_st singular at cell (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
      }
    }
  return q;
}

struct DiskMapSolution {
  DiskField u;        // chart profile, u(0) = 0, du(0) ~ w
  Vec x0;             // chart center in ambient coordinates
  double t = 1.0;     // structure rescaling parameter actually used
  double residual = 0.0;         // ||psi - Q(t u) d_z u||_{L^2(0.9 disk)}
  double stencil_residual = 0.0; // ||dbar_h u - Q(t u) d_z u||_{L^2(0.9 disk)}
  int iterations = 0;
  std::vector<double> residual_log;
};

namespace detail {

inline DiskField linear_seed(const DiskGrid& g, const Vec& w) {
  const int m = static_cast<int>(w.size()) / 2;
  return DiskField::sample(g, m, [&](cplx z, int c) {
    return z * cplx(w[2 * c], w[2 * c + 1]);
  });
}

inline std::vector<Mat> q_along_rescaled(const StructureField& jf, const DiskField& u,
                                         double t) {
  StructureField jt{jf.dim,
                    [&jf, t](const Vec& p) { return jf.eval(t * p); },
                    jf.lipschitz_bound * t, jf.domain_radius / std::max(t, 1e-300)};
  return q_of(jt, u);
}

}  // namespace detail

// Derivative du(0)(d/dx) read near the origin corner (4th-order stencils on
// the four cells around 0, averaged).
inline Vec derivative_at_origin(const DiskField& u) {
  const auto& g = u.grid;
  const int m = u.m;
  Vec out = Vec::Zero(2 * m);
  int half = g.n / 2;
  int count = 0;
  Vec tmp(2 * m);
  for (int j : {half - 1, half})
    for (int i : {half - 1, half}) {
      if (!g.inside(i - 2, j) || !g.inside(i + 2, j)) continue;
      for (int c = 0; c < m; ++c) {
        cplx d = (-u.at(i + 2, j, c) + 8.0 * u.at(i + 1, j, c) -
                  8.0 * u.at(i - 1, j, c) + u.at(i - 2, j, c)) /
                 (12.0 * g.h);
        tmp[2 * c] = d.real();
        tmp[2 * c + 1] = d.imag();
      }
      out += tmp;
      ++count;
    }
  return count ? Vec(out / count) : out;
}

// Picard iteration of Prop-2.2.1 type.  On contraction failure the structure
// is rescaled (Q_t = Q(t .)), halving t up to 6 times.
inline DiskMapSolution solve_disk(const StructureField& jf, const Vec& x0, const Vec& v,
                                  const DiskGrid& grid, double tol_solve = 1e-8,
                                  int max_iter = 200) {
  if (jf.dim != static_cast<int>(v.size()) || jf.dim != static_cast<int>(x0.size()))
    throw Error("dimension mismatch");
  Mat j_origin = jf.eval(Vec::Zero(jf.dim));
  if ((j_origin - lincx::std_structure(jf.dim)).norm() > 1e-6)
    throw Error("structure field must satisfy J(0) = J_st (chart normalization)");

  const int m = jf.dim / 2;
  const disk::CauchyGreen& cg = disk::cauchy_green_for(grid);
  DiskField hw = detail::linear_seed(grid, v);

  double t = 1.0;
  for (int attempt = 0; attempt <= 6; ++attempt, t *= 0.5) {
    DiskField psi(grid, m);
    DiskField u = hw;
    DiskMapSolution sol{u, x0, t, 0.0, 0.0, 0, {}};
    int grew = 0;
    bool retry = false;
    for (int k = 0; k < max_iter; ++k) {
      DiskField du_dz = disk::dz(u);
      std::vector<Mat> q = detail::q_along_rescaled(jf, u, t);
      DiskField psi_new = disk::apply_cell_ops(q, du_dz);
      double r = disk::lp(psi_new - psi, 2.0, 0.9).value;
      sol.residual_log.push_back(r);
      sol.iterations = k + 1;
      if (r <= tol_solve) {
        sol.u = u;
        sol.residual = r;
        DiskField sres = disk::dbar(u) - psi_new;
        sol.stencil_residual = disk::lp(sres, 2.0, 0.9).value;
        return sol;
      }
      if (k >= 1) {
        double ratio = r / std::max(sol.residual_log[k - 1], 1e-300);
        grew = ratio >= 0.9 ? grew + 1 : 0;
        if (grew >= 3) {
          retry = true;
          break;
        }
      }
      psi = psi_new;
      u = hw + cg.apply(psi);
    }
    if (!retry) throw MaxIter("disk solver did not reach tol_solve");
  }
  throw NoContraction("no contraction after 6 rescalings");
}

// Ambient J-holomorphic representative x0 + t*u(.)
inline DiskField ambient_map(const DiskMapSolution& s) {
  DiskField out = s.u;
  out *= s.t;
  const auto& g = out.grid;
  for (int j = 0; j < g.n; ++j)
    for (int i = g.row_lo[j]; i < g.row_hi[j]; ++i)
      if (g.mask[g.idx(i, j)])
        for (int c = 0; c < out.m; ++c)
          out.at(i, j, c) += cplx(s.x0[2 * c], s.x0[2 * c + 1]);
  return out;
}

struct EnergyArea {
  double energy = 0.0;
  double area = 0.0;
};

// Energy and symplectic area of a sampled map w.r.t. omega_st and the
// structure field: area = int u*omega, energy = 1/2 int (q(u_x) + q(u_y))
// with q(a) = omega(a, J(u) a).  Equal for holomorphic maps and tame J.
inline EnergyArea energy_area(const StructureField& jf, const DiskField& u, double t) {
  const auto& g = u.grid;
  DiskField ux = disk::derivative(u, Axis::X);
  DiskField uy = disk::derivative(u, Axis::Y);
  Mat omega = lincx::std_symplectic_mat(jf.dim);
  std::vector<double> w = disk::disk_area_weights(g, 1.0);
  Vec ax(jf.dim), ay(jf.dim), p(jf.dim);
  EnergyArea out;
  for (int j = 0; j < g.n; ++j)
    for (int i = g.row_lo[j]; i < g.row_hi[j]; ++i) {
      if (!g.mask[g.idx(i, j)] || w[g.idx(i, j)] == 0.0) continue;
      disk::to_real(&ux.v[g.idx(i, j) * u.m], u.m, ax);
      disk::to_real(&uy.v[g.idx(i, j) * u.m], u.m, ay);
      disk::to_real(&u.v[g.idx(i, j) * u.m], u.m, p);
      Mat jm = jf.eval(t * p);
      double ww = w[g.idx(i, j)];
      out.area += ax.dot(omega * ay) * ww;
      out.energy += 0.5 * (ax.dot(omega * (jm * ax)) + ay.dot(omega * (jm * ay))) * ww;
    }
  return out;
}

struct AprioriProbe {
  double lhs = 0.0;        // ||du||_{L^p(1/2 disk)}
  double rhs_ratio = 0.0;  // lhs / ||du||_{L^2(disk)}
};

inline AprioriProbe first_apriori_probe(const DiskField& u, double p) {
  if (!(p > 2.0)) throw Error("first a priori probe needs p > 2");
  DiskField ux = disk::derivative(u, Axis::X);
  DiskField uy = disk::derivative(u, Axis::Y);
  DiskField du(u.grid, 1);
  const auto& g = u.grid;
  for (int j = 0; j < g.n; ++j)
    for (int i = g.row_lo[j]; i < g.row_hi[j]; ++i) {
      if (!g.mask[g.idx(i, j)]) continue;
      double a2 = 0.0;
      for (int c = 0; c < u.m; ++c)
        a2 += std::norm(ux.at(i, j, c)) + std::norm(uy.at(i, j, c));
      du.at(i, j, 0) = std::sqrt(a2);
    }
  double lhs = disk::lp(du, p, 0.5).value;
  double l2 = disk::lp(du, 2.0, 1.0).value;
  if (l2 == 0.0) throw DivByZero("zero-energy map");
  return {lhs, lhs / l2};
}

// Cellwise structures J(t u(cell)) along a map (for the graph reduction and
// the Neumann probes).
inline CellStructure structures_along(const StructureField& jf, const DiskField& u,
                                      double t) {
  CellStructure cs(u.grid, u.m, lincx::std_structure(jf.dim));
  const auto& g = u.grid;
  Vec p(jf.dim);
  for (int j = 0; j < g.n; ++j)
    for (int i = g.row_lo[j]; i < g.row_hi[j]; ++i) {
      if (!g.mask[g.idx(i, j)]) continue;
      disk::to_real(&u.v[g.idx(i, j) * u.m], u.m, p);
      cs.j[g.idx(i, j)] = jf.eval(t * p);
    }
  return cs;
}

}  // namespace pclab::jdisk
