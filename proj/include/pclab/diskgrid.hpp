#pragma once

// Sampled complex-vector fields on a uniform cell-centered grid over the
// closed unit disk, L^p norms, difference stencils and the PCLF binary
// field format.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>

#include "pclab/core.hpp"

namespace pclab::disk {

struct DiskGrid {
  int n = 0;       // samples per axis
  double h = 0.0;  // grid step 2/n
  std::vector<std::uint8_t> mask;  // cell center inside closed unit disk
  std::vector<int> row_lo, row_hi; // masked column span [lo, hi) per row

  explicit DiskGrid(int n_) : n(n_), h(2.0 / n_) {
    if (n < 16) throw Error("DiskGrid needs n >= 16");
    mask.assign(static_cast<std::size_t>(n) * n, 0);
    row_lo.assign(n, n);
    row_hi.assign(n, 0);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        cplx c = center(i, j);
        if (std::norm(c) <= 1.0) {
          mask[idx(i, j)] = 1;
          row_lo[j] = std::min(row_lo[j], i);
          row_hi[j] = std::max(row_hi[j], i + 1);
        }
      }
    }
  }

  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * n + i; }
  cplx center(int i, int j) const {
    return {(i + 0.5) * h - 1.0, (j + 0.5) * h - 1.0};
  }
  bool inside(int i, int j) const {
    return i >= 0 && j >= 0 && i < n && j < n && mask[idx(i, j)];
  }
};

struct DiskField {
  DiskGrid grid;
  int m = 1;  // complex components per cell
  std::vector<cplx> v;  // ((j*n + i)*m + c), zero off the mask

  DiskField(const DiskGrid& g, int m_) : grid(g), m(m_) {
    v.assign(static_cast<std::size_t>(g.n) * g.n * m_, cplx(0, 0));
  }

  cplx& at(int i, int j, int c = 0) { return v[(grid.idx(i, j)) * m + c]; }
  const cplx& at(int i, int j, int c = 0) const { return v[(grid.idx(i, j)) * m + c]; }

  static DiskField sample(const DiskGrid& g, int m,
                          const std::function<cplx(cplx, int)>& f) {
    DiskField out(g, m);
    for (int j = 0; j < g.n; ++j)
      for (int i = g.row_lo[j]; i < g.row_hi[j]; ++i)
        if (g.mask[g.idx(i, j)])
          for (int c = 0; c < m; ++c) out.at(i, j, c) = f(g.center(i, j), c);
    return out;
  }

  DiskField& operator+=(const DiskField& o) {
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += o.v[k];
    return *this;
  }
  DiskField& operator-=(const DiskField& o) {
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= o.v[k];
    return *this;
  }
  DiskField& operator*=(cplx a) {
    for (auto& x : v) x *= a;
    return *this;
  }
  friend DiskField operator+(DiskField a, const DiskField& b) { return a += b; }
  friend DiskField operator-(DiskField a, const DiskField& b) { return a -= b; }
  friend DiskField operator*(cplx a, DiskField f) { return f *= a; }
};

struct LpReport {
  double p = 2.0;
  double value = 0.0;
};

// (sum_cells |f|^p h^2)^{1/p} over masked cells with |z_c| <= radius.
inline LpReport lp(const DiskField& f, double p, double radius = 1.0) {
  if (p < 1.0) throw Error("lp needs p >= 1");
  const auto& g = f.grid;
  double acc = 0.0;
  for (int j = 0; j < g.n; ++j)
    for (int i = g.row_lo[j]; i < g.row_hi[j]; ++i) {
      if (!g.mask[g.idx(i, j)]) continue;
      if (std::abs(g.center(i, j)) > radius) continue;
      double a2 = 0.0;
      for (int c = 0; c < f.m; ++c) a2 += std::norm(f.at(i, j, c));
      acc += std::pow(a2, p / 2.0) * g.h * g.h;
    }
  return {p, std::pow(acc, 1.0 / p)};
}

enum class Axis { X, Y };

// Centered first derivative, one-sided at rim cells; exact on affine fields.
inline DiskField derivative(const DiskField& f, Axis ax) {
  const auto& g = f.grid;
  DiskField out(g, f.m);
  const int di = ax == Axis::X ? 1 : 0;
  const int dj = ax == Axis::Y ? 1 : 0;
  for (int j = 0; j < g.n; ++j)
    for (int i = g.row_lo[j]; i < g.row_hi[j]; ++i) {
      if (!g.mask[g.idx(i, j)]) continue;
      bool fw = g.inside(i + di, j + dj), bw = g.inside(i - di, j - dj);
      for (int c = 0; c < f.m; ++c) {
        cplx val(0, 0);
        if (fw && bw)
          val = (f.at(i + di, j + dj, c) - f.at(i - di, j - dj, c)) / (2.0 * g.h);
        else if (fw)
          val = (f.at(i + di, j + dj, c) - f.at(i, j, c)) / g.h;
        else if (bw)
          val = (f.at(i, j, c) - f.at(i - di, j - dj, c)) / g.h;
        out.at(i, j, c) = val;
      }
    }
  return out;
}

// dbar = (d/dx + i d/dy)/2 and d = (d/dx - i d/dy)/2, componentwise.
inline DiskField dbar(const DiskField& f) {
  DiskField fx = derivative(f, Axis::X), fy = derivative(f, Axis::Y);
  DiskField out(f.grid, f.m);
  for (std::size_t k = 0; k < out.v.size(); ++k)
    out.v[k] = 0.5 * (fx.v[k] + cplx(0, 1) * fy.v[k]);
  return out;
}

inline DiskField dz(const DiskField& f) {
  DiskField fx = derivative(f, Axis::X), fy = derivative(f, Axis::Y);
  DiskField out(f.grid, f.m);
  for (std::size_t k = 0; k < out.v.size(); ++k)
    out.v[k] = 0.5 * (fx.v[k] - cplx(0, 1) * fy.v[k]);
  return out;
}

// Bilinear interpolation between cell centers (clamped to the grid box).
inline cplx sample_bilinear(const DiskField& f, cplx z, int c = 0) {
  const auto& g = f.grid;
  double gx = (z.real() + 1.0) / g.h - 0.5;
  double gy = (z.imag() + 1.0) / g.h - 0.5;
  int i0 = static_cast<int>(std::floor(gx)), j0 = static_cast<int>(std::floor(gy));
  double tx = gx - i0, ty = gy - j0;
  i0 = std::clamp(i0, 0, g.n - 2);
  j0 = std::clamp(j0, 0, g.n - 2);
  tx = std::clamp(tx, 0.0, 1.0);
  ty = std::clamp(ty, 0.0, 1.0);
  auto val = [&](int i, int j) { return f.v[(g.idx(i, j)) * f.m + c]; };
  return (1 - tx) * (1 - ty) * val(i0, j0) + tx * (1 - ty) * val(i0 + 1, j0) +
         (1 - tx) * ty * val(i0, j0 + 1) + tx * ty * val(i0 + 1, j0 + 1);
}

namespace detail {
// Area of [0,x] x [0,y] (x,y >= 0) intersected with the disk of radius R.
inline double quadrant_area(double x, double y, double R) {
  if (x <= 0.0 || y <= 0.0) return 0.0;
  auto seg = [&](double s) {  // integral of sqrt(R^2-t^2) on [0,s], s<=R
    return 0.5 * (s * std::sqrt(std::max(0.0, R * R - s * s)) +
                  R * R * std::asin(std::clamp(s / R, -1.0, 1.0)));
  };
  double xc = std::min(x, R);
  if (xc * xc + y * y <= R * R) return xc * y;
  if (y >= R) return seg(xc);
  double ts = std::sqrt(R * R - y * y);
  if (xc <= ts) return xc * y;
  return ts * y + seg(xc) - seg(ts);
}

inline double signed_quadrant(double x, double y, double R) {
  double s = (x < 0 ? -1.0 : 1.0) * (y < 0 ? -1.0 : 1.0);
  return s * quadrant_area(std::abs(x), std::abs(y), R);
}
}  // namespace detail

// Exact area of [x0,x1] x [y0,y1] cap disk(R).
inline double box_disk_area(double x0, double x1, double y0, double y1, double R) {
  return detail::signed_quadrant(x1, y1, R) - detail::signed_quadrant(x0, y1, R) -
         detail::signed_quadrant(x1, y0, R) + detail::signed_quadrant(x0, y0, R);
}

// Per-cell quadrature weights equal to the exact cell-disk(R) overlap area;
// the weights tile disk(R) exactly (sum = pi R^2 up to roundoff).
inline std::vector<double> disk_area_weights(const DiskGrid& g, double R) {
  std::vector<double> w(static_cast<std::size_t>(g.n) * g.n, 0.0);
  const double half_diag = g.h * 0.7071067811865476;
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      cplx c = g.center(i, j);
      if (std::abs(c) - half_diag > R) continue;
      double x0 = c.real() - 0.5 * g.h, x1 = c.real() + 0.5 * g.h;
      double y0 = c.imag() - 0.5 * g.h, y1 = c.imag() + 0.5 * g.h;
      w[g.idx(i, j)] = box_disk_area(x0, x1, y0, y1, R);
    }
  return w;
}

// ---- PCLF binary format -------------------------------------------------
// 16-byte header: magic "PCLF", u32 n, u32 m, u32 version. Payload: n*n*m
// little-endian f64 (re,im) pairs, row-major, components fastest. Trailer:
// FNV-1a-64 checksum of the payload.

inline void write_pclf(const std::string& path, const DiskField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path);
  const char magic[4] = {'P', 'C', 'L', 'F'};
  std::uint32_t n = f.grid.n, m = f.m, version = 1;
  os.write(magic, 4);
  os.write(reinterpret_cast<const char*>(&n), 4);
  os.write(reinterpret_cast<const char*>(&m), 4);
  os.write(reinterpret_cast<const char*>(&version), 4);
  std::vector<double> payload;
  payload.reserve(f.v.size() * 2);
  for (const auto& z : f.v) {
    payload.push_back(z.real());
    payload.push_back(z.imag());
  }
  os.write(reinterpret_cast<const char*>(payload.data()),
           static_cast<std::streamsize>(payload.size() * sizeof(double)));
  std::uint64_t sum = fnv1a64(payload.data(), payload.size() * sizeof(double));
  os.write(reinterpret_cast<const char*>(&sum), 8);
}

inline DiskField read_pclf(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  char magic[4];
  std::uint32_t n = 0, m = 0, version = 0;
  is.read(magic, 4);
  is.read(reinterpret_cast<char*>(&n), 4);
  is.read(reinterpret_cast<char*>(&m), 4);
  is.read(reinterpret_cast<char*>(&version), 4);
  if (!is || std::memcmp(magic, "PCLF", 4) != 0) throw Error("not a PCLF file: " + path);
  if (n < 16 || n > 4096 || m < 1 || m > 64) throw Error("implausible PCLF dimensions");
  DiskField f(DiskGrid(static_cast<int>(n)), static_cast<int>(m));
  std::vector<double> payload(static_cast<std::size_t>(n) * n * m * 2);
  is.read(reinterpret_cast<char*>(payload.data()),
          static_cast<std::streamsize>(payload.size() * sizeof(double)));
  std::uint64_t stored = 0;
  is.read(reinterpret_cast<char*>(&stored), 8);
  if (!is) throw Error("truncated PCLF file: " + path);
  std::uint64_t sum = fnv1a64(payload.data(), payload.size() * sizeof(double));
  if (sum != stored) throw ChecksumError("PCLF checksum mismatch: " + path);
  for (std::size_t k = 0; k < f.v.size(); ++k)
    f.v[k] = cplx(payload[2 * k], payload[2 * k + 1]);
  return f;
}

}  // namespace pclab::disk
