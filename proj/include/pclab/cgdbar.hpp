#pragma once

// Discrete Cauchy-Green operator on disk fields plus the norm probes built
// on it: the Calderon-Zygmund ratio, the dilation law and the Neumann-series
// inverse of dbar_J o T for structures close to J_st.
//
// T is the convolution with 1/(pi (w - z)), integrated analytically over
// each square source cell, so that dbar(Tf) = f holds exactly on
// piecewise-constant densities.  The convolution is evaluated through a
// zero-padded FFT of the kernel table; a direct quadratic-cost evaluation is
// kept for cross-validation.

#include <map>
#include <memory>

#include "pclab/diskgrid.hpp"
#include "pclab/lincx.hpp"

namespace pclab::disk {

namespace detail {

// Double antiderivatives for the real and imaginary parts of 1/(x+iy):
// d^2 F1 / dx dy = x/(x^2+y^2),  d^2 F2 / dx dy = y/(x^2+y^2).
inline double pot_f1(double x, double y) {
  double lg = (x == 0.0 && y == 0.0) ? 0.0 : std::log(x * x + y * y);
  double at = (x == 0.0) ? 0.0 : x * std::atan(y / x);
  return 0.5 * (y * lg - 2.0 * y) + at;
}
inline double pot_f2(double x, double y) { return pot_f1(y, x); }

// integral of 1/(x+iy) over the rectangle [a,b] x [c,d]
inline cplx recip_cell_integral(double a, double b, double c, double d) {
  double re = pot_f1(b, d) - pot_f1(a, d) - pot_f1(b, c) + pot_f1(a, c);
  double im = pot_f2(b, d) - pot_f2(a, d) - pot_f2(b, c) + pot_f2(a, c);
  return {re, -im};
}

inline void fft_radix2(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n < 2) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    cplx wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        cplx u = a[i + k], v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse)
    for (auto& x : a) x /= static_cast<double>(n);
}

// in-place 2-D FFT of an L x L row-major grid
inline void fft2(std::vector<cplx>& g, std::size_t L, bool inverse) {
  std::vector<cplx> tmp(L);
  for (std::size_t r = 0; r < L; ++r) {
    std::copy(g.begin() + r * L, g.begin() + (r + 1) * L, tmp.begin());
    fft_radix2(tmp, inverse);
    std::copy(tmp.begin(), tmp.end(), g.begin() + r * L);
  }
  for (std::size_t c = 0; c < L; ++c) {
    for (std::size_t r = 0; r < L; ++r) tmp[r] = g[r * L + c];
    fft_radix2(tmp, inverse);
    for (std::size_t r = 0; r < L; ++r) g[r * L + c] = tmp[r];
  }
}

inline std::size_t next_pow2(std::size_t v) {
  std::size_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

}  // namespace detail

class CauchyGreen {
 public:
  explicit CauchyGreen(const DiskGrid& g) : n_(g.n), h_(g.h) {
    L_ = detail::next_pow2(static_cast<std::size_t>(2 * n_));
    kernel_.assign(2 * n_ - 1, std::vector<cplx>(2 * n_ - 1));
    for (int dj = -(n_ - 1); dj <= n_ - 1; ++dj)
      for (int di = -(n_ - 1); di <= n_ - 1; ++di)
        kernel_[dj + n_ - 1][di + n_ - 1] = weight(di, dj);
    khat_.assign(L_ * L_, cplx(0, 0));
    for (int dj = -(n_ - 1); dj <= n_ - 1; ++dj)
      for (int di = -(n_ - 1); di <= n_ - 1; ++di) {
        std::size_t r = static_cast<std::size_t>((dj + static_cast<int>(L_)) % L_);
        std::size_t c = static_cast<std::size_t>((di + static_cast<int>(L_)) % L_);
        khat_[r * L_ + c] = kernel_[dj + n_ - 1][di + n_ - 1];
      }
    detail::fft2(khat_, L_, false);
  }

  // analytic integral of 1/(pi u) over the cell displaced by (di,dj) cells
  cplx weight(int di, int dj) const {
    double cx = di * h_, cy = dj * h_;
    return detail::recip_cell_integral(cx - 0.5 * h_, cx + 0.5 * h_, cy - 0.5 * h_,
                                       cy + 0.5 * h_) /
           kPi;
  }

  DiskField apply(const DiskField& f) const {
    check(f);
    DiskField out(f.grid, f.m);
    for (int c = 0; c < f.m; ++c) apply_component(f, out, c);
    return out;
  }

  // reference quadratic-cost evaluation (small grids, validation only)
  DiskField apply_direct(const DiskField& f) const {
    check(f);
    const auto& g = f.grid;
    DiskField out(f.grid, f.m);
    parallel_for(g.n, [&](std::int64_t j) {
      for (int i = 0; i < g.n; ++i) {
        for (int c = 0; c < f.m; ++c) {
          cplx acc(0, 0);
          for (int js = 0; js < g.n; ++js)
            for (int is = g.row_lo[js]; is < g.row_hi[js]; ++is)
              acc += f.at(is, js, c) *
                     kernel_[static_cast<int>(j) - js + n_ - 1][i - is + n_ - 1];
          out.at(i, static_cast<int>(j), c) = acc;
        }
      }
    });
    return out;
  }

  int n() const { return n_; }

 private:
  void check(const DiskField& f) const {
    if (f.grid.n != n_) throw Error("CauchyGreen built for a different grid");
  }

  void apply_component(const DiskField& f, DiskField& out, int c) const {
    std::vector<cplx> buf(L_ * L_, cplx(0, 0));
    const auto& g = f.grid;
    for (int j = 0; j < g.n; ++j)
      for (int i = g.row_lo[j]; i < g.row_hi[j]; ++i)
        buf[static_cast<std::size_t>(j) * L_ + i] = f.at(i, j, c);
    detail::fft2(buf, L_, false);
    for (std::size_t k = 0; k < buf.size(); ++k) buf[k] *= khat_[k];
    detail::fft2(buf, L_, true);
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i)
        out.at(i, j, c) = buf[static_cast<std::size_t>(j) * L_ + i];
  }

  int n_;
  double h_;
  std::size_t L_;
  std::vector<std::vector<cplx>> kernel_;
  std::vector<cplx> khat_;
};

// Shared per-resolution operator cache (kernel tables are pure functions of n).
inline const CauchyGreen& cauchy_green_for(const DiskGrid& g) {
  static std::map<int, std::unique_ptr<CauchyGreen>> cache;
  auto it = cache.find(g.n);
  if (it == cache.end())
    it = cache.emplace(g.n, std::make_unique<CauchyGreen>(g)).first;
  return *it->second;
}

inline DiskField cauchy_green(const DiskField& f) {
  return cauchy_green_for(f.grid).apply(f);
}

// ||d(Tf)||_p / ||f||_p, a measured lower bound for the constant C_p.
inline double cz_ratio(const DiskField& f, double p) {
  if (!(p > 1.0)) throw Error("cz_ratio needs 1 < p < inf");
  double den = lp(f, p).value;
  if (den == 0.0) throw DivByZero("cz_ratio of the zero field");
  DiskField tf = cauchy_green(f);
  return lp(dz(tf), p).value / den;
}

struct DilationCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Lemma-style dilation law: || f(tau .) ||_{L^p(disk)} against
// tau^{-2/p} ||f||_{L^p(disk_tau)}.  Both sides use exact cell-overlap
// quadrature weights, so constants match exactly for every tau and p.
inline DilationCheck dilation_norm_check(const DiskField& f, double tau, double p) {
  if (!(tau > 0.0 && tau <= 1.0)) throw Error("dilation needs 0 < tau <= 1");
  const auto& g = f.grid;
  std::vector<double> w1 = disk_area_weights(g, 1.0);
  std::vector<double> wt = disk_area_weights(g, tau);
  double lhs_acc = 0.0, rhs_acc = 0.0;
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      const std::size_t k = g.idx(i, j);
      cplx zc = g.center(i, j);
      if (w1[k] > 0.0) {
        double a2 = 0.0;
        for (int c = 0; c < f.m; ++c) a2 += std::norm(sample_bilinear(f, tau * zc, c));
        lhs_acc += std::pow(a2, p / 2.0) * w1[k];
      }
      if (wt[k] > 0.0) {
        double a2 = 0.0;
        for (int c = 0; c < f.m; ++c) a2 += std::norm(f.at(i, j, c));
        rhs_acc += std::pow(a2, p / 2.0) * wt[k];
      }
    }
  return {std::pow(lhs_acc, 1.0 / p), std::pow(tau, -2.0 / p) * std::pow(rhs_acc, 1.0 / p)};
}

// ---- dbar_J and the Neumann series --------------------------------------

// Per-cell structure operators on R^{2m}; complex m-vectors are viewed as
// real vectors with interleaved (re, im) slots.
struct CellStructure {
  DiskGrid grid;
  std::vector<Mat> j;  // one 2m x 2m matrix per cell (row-major cell order)
  int m = 1;

  CellStructure(const DiskGrid& g, int m_, const Mat& constant)
      : grid(g), j(static_cast<std::size_t>(g.n) * g.n, constant), m(m_) {}

  double sup_distance_to_std() const {
    Mat jst = lincx::std_structure(2 * m);
    double s = 0.0;
    for (int jj = 0; jj < grid.n; ++jj)
      for (int i = grid.row_lo[jj]; i < grid.row_hi[jj]; ++i)
        if (grid.mask[grid.idx(i, jj)]) {
          Eigen::JacobiSVD<Mat> svd(j[grid.idx(i, jj)] - jst);
          s = std::max(s, svd.singularValues()(0));
        }
    return s;
  }
};

inline void to_real(const cplx* z, int m, Vec& out) {
  for (int c = 0; c < m; ++c) {
    out[2 * c] = z[c].real();
    out[2 * c + 1] = z[c].imag();
  }
}

inline void from_real(const Vec& in, int m, cplx* z) {
  for (int c = 0; c < m; ++c) z[c] = cplx(in[2 * c], in[2 * c + 1]);
}

// apply a per-cell real 2m x 2m matrix to a complex m-vector field
inline DiskField apply_cell_ops(const std::vector<Mat>& ops, const DiskField& f) {
  const auto& g = f.grid;
  DiskField out(g, f.m);
  Vec a(2 * f.m), b(2 * f.m);
  for (int j = 0; j < g.n; ++j)
    for (int i = g.row_lo[j]; i < g.row_hi[j]; ++i) {
      if (!g.mask[g.idx(i, j)]) continue;
      to_real(&f.v[g.idx(i, j) * f.m], f.m, a);
      b.noalias() = ops[g.idx(i, j)] * a;
      from_real(b, f.m, &out.v[g.idx(i, j) * f.m]);
    }
  return out;
}

// dbar_J f = (d_x f + J(z) d_y f)/2
inline DiskField dbar_j(const CellStructure& js, const DiskField& f) {
  DiskField fx = derivative(f, Axis::X);
  DiskField fy = derivative(f, Axis::Y);
  DiskField jy = apply_cell_ops(js.j, fy);
  DiskField out(f.grid, f.m);
  for (std::size_t k = 0; k < out.v.size(); ++k) out.v[k] = 0.5 * (fx.v[k] + jy.v[k]);
  return out;
}

struct NeumannResult {
  DiskField g;
  std::vector<double> residuals;
  int iterations = 0;
};

// Invert dbar_J o T by the alternating Neumann series.  The residual is
// measured through the representation dbar_{J_st}(T u) = u, which the
// analytic cell-weight kernel satisfies exactly on the discrete class, so
// only the (J - J_st) part needs stencils.
inline NeumannResult neumann_invert(const CellStructure& js, const DiskField& rhs,
                                    int kmax) {
  const auto& g = rhs.grid;
  Mat jst = lincx::std_structure(2 * rhs.m);
  std::vector<Mat> diff(js.j.size());
  for (std::size_t k = 0; k < js.j.size(); ++k) diff[k] = js.j[k] - jst;
  const CauchyGreen& cg = cauchy_green_for(g);

  auto apply_m = [&](const DiskField& u) {
    DiskField tu = cg.apply(u);
    DiskField ty = derivative(tu, Axis::Y);
    DiskField out = apply_cell_ops(diff, ty);
    out *= 0.5;
    return out;  // (dbar_J - dbar_{J_st})(T u)
  };

  NeumannResult res{rhs, {}, 0};
  DiskField cur = rhs;
  int grew = 0;
  for (int k = 0; k < kmax; ++k) {
    DiskField mcur = apply_m(cur);
    DiskField resid = cur + mcur - rhs;
    double r = lp(resid, 2.0, 0.9).value;
    res.residuals.push_back(r);
    res.iterations = k + 1;
    res.g = cur;
    if (r < 1e-14 * (1.0 + lp(rhs, 2.0).value)) break;
    if (k >= 1) {
      double ratio = r / std::max(res.residuals[k - 1], 1e-300);
      grew = ratio >= 1.0 ? grew + 1 : 0;
      if (grew >= 3) throw NoContraction("Neumann series diverges");
    }
    cur = rhs - mcur;
  }
  return res;
}

}  // namespace pclab::disk
