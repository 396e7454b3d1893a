#pragma once

// Numerical laboratory for the half-cubic-parabola degeneration
// T_n = { y^2 z - x^3 = n^-6 z^3 } in CP^2: the holomorphic germ phi with
// z1 = x1^3 phi(x1) on T, the rescaled bubble maps, the neck identity,
// Fubini-Study energy profiles, a generic energy-concentration detector and
// stable-curve-graph emission.

#include <array>
#include <map>
#include <ostream>
#include <set>

#include "pclab/diskgrid.hpp"

namespace pclab::bubbling {

inline constexpr double kChartRadius = 0.3;  // a
inline constexpr double kNeckParam = 2.0;    // b, with a > 1/b

// Point of CP^2, normalized so the max-modulus coordinate equals 1.
struct ProjPoint {
  std::array<cplx, 3> z;

  static ProjPoint normalized(cplx a, cplx b, cplx c) {
    std::array<cplx, 3> v{a, b, c};
    int best = 0;
    for (int k = 1; k < 3; ++k)
      if (std::abs(v[k]) > std::abs(v[best])) best = k;
    if (std::abs(v[best]) == 0.0) throw Error("projective point needs a non-zero coordinate");
    cplx s = v[best];
    return {{v[0] / s, v[1] / s, v[2] / s}};
  }

  double curve_equation_residual(int n) const {
    double c = std::pow(static_cast<double>(n), -6.0);
    return std::abs(z[1] * z[1] * z[2] - z[0] * z[0] * z[0] - c * z[2] * z[2] * z[2]);
  }
};

// Fubini-Study distance (chart-free): acos of the normalized pairing.
inline double fs_distance(const ProjPoint& p, const ProjPoint& q) {
  cplx ip = 0.0;
  double np = 0.0, nq = 0.0;
  for (int k = 0; k < 3; ++k) {
    ip += p.z[k] * std::conj(q.z[k]);
    np += std::norm(p.z[k]);
    nq += std::norm(q.z[k]);
  }
  double c = std::abs(ip) / std::sqrt(np * nq);
  return std::acos(std::clamp(c, 0.0, 1.0));
}

// Newton solution of z1 = x1^3 + z1^3 on the branch z1 ~ x1^3; phi = z1/x1^3.
struct PhiValue {
  cplx z1;
  cplx phi;
  int iterations = 0;
};

inline PhiValue phi_solve(cplx x1, double tol = 1e-15) {
  cplx x3 = x1 * x1 * x1;
  if (std::abs(x1) == 0.0) return {0.0, 1.0, 0};
  cplx z = x3;
  for (int k = 0; k < 60; ++k) {
    if (std::abs(z) >= 0.5) throw BranchEscape("left the principal branch");
    cplx f = z - x3 - z * z * z;
    if (std::abs(f) <= tol) return {z, z / x3, k};
    cplx fp = 1.0 - 3.0 * z * z;
    z -= f / fp;
  }
  throw MaxIter("phi_solve Newton did not converge");
}

// d phi / d x1 through the implicit equation (phi'(0) = 0).
inline cplx phi_prime(cplx x1) {
  if (std::abs(x1) < 1e-14) return 0.0;
  PhiValue p = phi_solve(x1);
  cplx zp = 3.0 * x1 * x1 / (1.0 - 3.0 * p.z1 * p.z1);
  return (zp - 3.0 * x1 * x1 * p.phi) / (x1 * x1 * x1);
}

// v_n(xi) = [xi : 1 : xi^3 phi(xi/n)]
inline ProjPoint rescaled_bubble(int n, cplx xi) {
  cplx x1 = xi / static_cast<double>(n);
  if (std::abs(x1) >= kChartRadius) throw ChartOverflow("|xi/n| must stay below the chart radius");
  PhiValue p = phi_solve(x1);
  return ProjPoint::normalized(xi, 1.0, xi * xi * xi * p.phi);
}

inline ProjPoint bubble_limit(cplx xi) {  // v_inf(xi) = [xi : 1 : xi^3]
  return ProjPoint::normalized(xi, 1.0, xi * xi * xi);
}

// F(x1, t) = [t^2 : t^3 : phi(x1)] on the neck annulus {x1 t = 1/n}.
inline ProjPoint neck_map(cplx x1, cplx t, int n, double tol = 1e-8) {
  if (std::abs(x1 * t * static_cast<double>(n) - 1.0) > tol)
    throw OffNeck("(x1, t) not on the annulus x1 t = 1/n");
  PhiValue p = phi_solve(x1);
  return ProjPoint::normalized(t * t, t * t * t, p.phi);
}

// f_n o pr^{-1} o h_n^{-1} evaluated directly (the other side of Eq-type
// identity F|_{A_n} = f_n o pr^{-1} o h_n^{-1}).
inline ProjPoint neck_composite(cplx x1, int n) {
  PhiValue p = phi_solve(x1);
  double n2 = static_cast<double>(n) * n, n3 = n2 * static_cast<double>(n);
  return ProjPoint::normalized(x1 / n2, 1.0 / n3, x1 * x1 * x1 * p.phi);
}

// ---- Fubini-Study energy -------------------------------------------------
// Normalization: omega_FS = (i/2) ddbar log ||Z||^2, area(line) = pi.
// For a holomorphic lift Z(w) the pullback density w.r.t. the real
// coordinates of w is (|Z|^2 |Z'|^2 - |<Z',Z>|^2)/|Z|^4.

inline double fs_density(const std::array<cplx, 3>& z, const std::array<cplx, 3>& zp) {
  double n2 = 0.0, p2 = 0.0;
  cplx ip = 0.0;
  for (int k = 0; k < 3; ++k) {
    n2 += std::norm(z[k]);
    p2 += std::norm(zp[k]);
    ip += zp[k] * std::conj(z[k]);
  }
  return (n2 * p2 - std::norm(ip)) / (n2 * n2);
}

// lift of f_n o pr^{-1} over the x1-chart and its x1-derivative
inline void neck_lift(cplx x1, int n, std::array<cplx, 3>& z, std::array<cplx, 3>& zp) {
  PhiValue p = phi_solve(x1);
  double n2 = static_cast<double>(n) * n, n3 = n2 * static_cast<double>(n);
  z = {x1 / n2, cplx(1.0 / n3, 0.0), x1 * x1 * x1 * p.phi};
  zp = {cplx(1.0 / n2, 0.0), 0.0, 3.0 * x1 * x1 * p.phi + x1 * x1 * x1 * phi_prime(x1)};
}

// Per-segment energies of the neck annulus {1/(bn) < |x1| < a} in the
// log-cylinder coordinate s = -log|x1|, split into `segments` equal bands.
inline std::vector<double> neck_energy_profile(int n, int segments) {
  if (n < 4) throw Error("neck profile needs n >= 4");
  if (segments < 1) throw Error("need at least one segment");
  const double s_min = -std::log(kChartRadius);
  const double s_max = std::log(kNeckParam * n);
  const int nth = 64;
  std::vector<double> energy(segments, 0.0);
  const double band = (s_max - s_min) / segments;
  for (int seg = 0; seg < segments; ++seg) {
    const double a0 = s_min + seg * band, a1 = a0 + band;
    const int ns = std::max(8, static_cast<int>(std::ceil(16.0 * band)));
    const double ds = (a1 - a0) / ns, dth = 2.0 * kPi / nth;
    double acc = 0.0;
    for (int is = 0; is < ns; ++is) {
      double s = a0 + (is + 0.5) * ds;
      for (int ith = 0; ith < nth; ++ith) {
        double th = (ith + 0.5) * dth;
        cplx x1 = std::exp(cplx(-s, th));
        std::array<cplx, 3> z, zp;
        neck_lift(x1, n, z, zp);
        // d/d(log x1) = x1 d/dx1 ; the log coordinate is conformal to (s, theta)
        std::array<cplx, 3> zl{zp[0] * x1, zp[1] * x1, zp[2] * x1};
        acc += fs_density(z, zl) * ds * dth;
      }
    }
    energy[seg] = acc;
  }
  return energy;
}

// Energy of the rescaled bubble chart |xi| <= R by midpoint quadrature.
inline double bubble_energy(int n, double R, int nr = 200, int nth = 128) {
  double acc = 0.0;
  const double dr = R / nr, dth = 2.0 * kPi / nth;
  for (int ir = 0; ir < nr; ++ir) {
    double r = (ir + 0.5) * dr;
    for (int ith = 0; ith < nth; ++ith) {
      double th = (ith + 0.5) * dth;
      cplx xi = std::polar(r, th);
      cplx x1 = xi / static_cast<double>(n);
      PhiValue p = phi_solve(x1);
      std::array<cplx, 3> z{xi, 1.0, xi * xi * xi * p.phi};
      std::array<cplx, 3> zp{1.0, 0.0,
                             3.0 * xi * xi * p.phi +
                                 xi * xi * xi * phi_prime(x1) / static_cast<double>(n)};
      acc += fs_density(z, zp) * r * dr * dth;
    }
  }
  return acc;
}

// Area of the torus body {|x1| >= a} of T_n by the Stokes boundary integral
// of the global z1-chart lift (n^-2 X, n^-3 Y, 1) over |x1| = a.
inline double body_energy(int n, int nth = 512) {
  const double a = kChartRadius;
  double acc = 0.0;
  const double dth = 2.0 * kPi / nth;
  for (int ith = 0; ith < nth; ++ith) {
    double th = ith * dth;
    cplx x1 = std::polar(a, th);
    PhiValue p = phi_solve(x1);
    cplx z1 = p.z1;
    cplx z1p = 3.0 * x1 * x1 / (1.0 - 3.0 * z1 * z1);
    double n2 = static_cast<double>(n) * n, n3 = n2 * static_cast<double>(n);
    // lift in the z-chart: Z = (n^-2 x1/z1, n^-3 /z1, 1)
    std::array<cplx, 3> z{x1 / (n2 * z1), 1.0 / (n3 * z1), 1.0};
    std::array<cplx, 3> zp{(z1 - x1 * z1p) / (n2 * z1 * z1), -z1p / (n3 * z1 * z1), 0.0};
    double nrm2 = 0.0;
    cplx ip = 0.0;
    for (int k = 0; k < 3; ++k) {
      nrm2 += std::norm(z[k]);
      ip += zp[k] * std::conj(z[k]);
    }
    // radial derivative of G = log||Z||^2 at x1 = a e^{i theta}
    double dG_dr = 2.0 * (std::exp(cplx(0, th)) * ip / nrm2).real();
    acc += dG_dr * dth;
  }
  // body lies on |x1| >= a: outward body normal = -d/dr; area = 1/4 oint dG/dn
  return -0.25 * a * acc;
}

inline double fs_total_degree_area(int degree) { return degree * kPi; }

// ---- concentration detector ----------------------------------------------

// The detector consumes per-cell area densities (w.r.t. dx dy) of a map
// sequence on a shared grid.
using DensityField = disk::DiskField;  // m = 1, real values stored in re

struct ConcentrationPoint {
  cplx location;      // limit bubbling point y*
  double radius = 0;  // r_n of the last map
  cplx center;        // x_n achieving area(Delta(x_n, r_n)) = eps
  double local_energy = 0;
};

struct ConcentrationReport {
  std::vector<ConcentrationPoint> points;
  double epsilon = 0;
  // per-map (r_n, x_n) histories for each reported point
  std::vector<std::vector<std::pair<double, cplx>>> history;
};

namespace detail {

inline double disk_mass(const DensityField& f, cplx c, double r) {
  const auto& g = f.grid;
  double acc = 0.0;
  int i0 = std::max(0, static_cast<int>((c.real() - r + 1.0) / g.h) - 1);
  int i1 = std::min(g.n - 1, static_cast<int>((c.real() + r + 1.0) / g.h) + 1);
  int j0 = std::max(0, static_cast<int>((c.imag() - r + 1.0) / g.h) - 1);
  int j1 = std::min(g.n - 1, static_cast<int>((c.imag() + r + 1.0) / g.h) + 1);
  for (int j = j0; j <= j1; ++j)
    for (int i = i0; i <= i1; ++i) {
      if (!g.mask[g.idx(i, j)]) continue;
      if (std::abs(g.center(i, j) - c) <= r)
        acc += f.at(i, j, 0).real() * g.h * g.h;
    }
  return acc;
}

inline double square_mass(const DensityField& f, double x0, double x1, double y0,
                          double y1) {
  const auto& g = f.grid;
  double acc = 0.0;
  int i0 = std::max(0, static_cast<int>((x0 + 1.0) / g.h));
  int i1 = std::min(g.n - 1, static_cast<int>((x1 + 1.0) / g.h));
  int j0 = std::max(0, static_cast<int>((y0 + 1.0) / g.h));
  int j1 = std::min(g.n - 1, static_cast<int>((y1 + 1.0) / g.h));
  for (int j = j0; j <= j1; ++j)
    for (int i = i0; i <= i1; ++i) {
      if (!g.mask[g.idx(i, j)]) continue;
      cplx c = g.center(i, j);
      if (c.real() >= x0 && c.real() < x1 && c.imag() >= y0 && c.imag() < y1)
        acc += f.at(i, j, 0).real() * g.h * g.h;
    }
  return acc;
}

}  // namespace detail

// Dyadic refinement (depth capped at 8): squares with mass above epsilon on
// the last map are subdivided while any survive; the deepest non-empty level
// localizes the candidate points (lexicographic tie-break).  A candidate is
// reported only if its concentration radius r_n (maximal r with
// sup_x area(u_n(Delta(x, r))) <= eps, the Lemma-5.3.4 radius) shrinks along
// the sequence -- a fixed smooth map never qualifies.
inline ConcentrationReport detect_bubbles(const std::vector<DensityField>& maps,
                                          double epsilon) {
  if (maps.empty()) throw Error("need at least one map");
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
  const DensityField& last = maps.back();
  const int max_depth = 8;

  struct Sq {
    double x0, y0, size;
  };
  std::vector<Sq> bad;
  if (detail::square_mass(last, -1.0, 1.0, -1.0, 1.0) > epsilon)
    bad.push_back({-1.0, -1.0, 2.0});
  for (int depth = 0; depth < max_depth && !bad.empty(); ++depth) {
    std::vector<Sq> next;
    for (const Sq& s : bad) {
      double half = s.size / 2.0;
      for (int q = 0; q < 4; ++q) {
        double x0 = s.x0 + (q % 2) * half, y0 = s.y0 + (q / 2) * half;
        double mass = detail::square_mass(last, x0, x0 + half, y0, y0 + half);
        if (mass > epsilon) next.push_back({x0, y0, half});
      }
    }
    if (next.empty()) break;  // keep the deepest level that still concentrates
    bad = std::move(next);
  }

  // cluster adjacent deepest squares; keep the lexicographically first cell
  std::vector<cplx> centers;
  std::vector<bool> used(bad.size(), false);
  std::sort(bad.begin(), bad.end(), [](const Sq& a, const Sq& b) {
    return a.y0 != b.y0 ? a.y0 < b.y0 : a.x0 < b.x0;
  });
  for (std::size_t i = 0; i < bad.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> cluster{i};
    used[i] = true;
    for (std::size_t k = 0; k < cluster.size(); ++k)
      for (std::size_t j = 0; j < bad.size(); ++j) {
        if (used[j]) continue;
        double dx = std::abs(bad[cluster[k]].x0 - bad[j].x0);
        double dy = std::abs(bad[cluster[k]].y0 - bad[j].y0);
        if (dx <= bad[j].size * 1.5 && dy <= bad[j].size * 1.5) {
          used[j] = true;
          cluster.push_back(j);
        }
      }
    const Sq& first = bad[cluster.front()];
    centers.push_back(cplx(first.x0 + first.size / 2.0, first.y0 + first.size / 2.0));
  }

  ConcentrationReport rep;
  rep.epsilon = epsilon;
  for (std::size_t c = 0; c < centers.size(); ++c) {
    double rho = 0.5;
    for (std::size_t o = 0; o < centers.size(); ++o)
      if (o != c) rho = std::min(rho, std::abs(centers[c] - centers[o]) / 2.0);
    std::vector<std::pair<double, cplx>> hist;
    ConcentrationPoint pt;
    pt.location = centers[c];
    for (const DensityField& f : maps) {
      // r maximal with sup_{x in closed Delta(y*, rho/2)} area(Delta(x,r)) <= eps
      const auto& g = f.grid;
      auto max_mass = [&](double r) {
        double best = -1.0;
        cplx arg = centers[c];
        for (int j = 0; j < g.n; ++j)
          for (int i = g.row_lo[j]; i < g.row_hi[j]; ++i) {
            if (!g.mask[g.idx(i, j)]) continue;
            cplx x = g.center(i, j);
            if (std::abs(x - centers[c]) > rho / 2.0) continue;
            double mass = detail::disk_mass(f, x, r);
            if (mass > best) {
              best = mass;
              arg = x;
            }
          }
        return std::make_pair(best, arg);
      };
      double lo = g.h, hi = rho / 2.0;
      if (max_mass(hi).first <= epsilon) {
        hist.push_back({hi, max_mass(hi).second});
        continue;
      }
      for (int it = 0; it < 40 && hi - lo > g.h * 0.05; ++it) {
        double mid = 0.5 * (lo + hi);
        if (max_mass(mid).first <= epsilon)
          lo = mid;
        else
          hi = mid;
      }
      auto [mass, xc] = max_mass(lo);
      hist.push_back({lo, xc});
      pt.radius = lo;
      pt.center = xc;
      pt.local_energy = mass;
    }
    // genuine concentration: the equality radius must shrink along the maps
    bool shrinking = maps.size() >= 2 && pt.local_energy >= epsilon * 0.5 &&
                     hist.back().first <= 0.6 * hist.front().first;
    if (shrinking) {
      rep.points.push_back(pt);
      rep.history.push_back(hist);
    }
  }
  return rep;
}

// ---- stable curve graph ----------------------------------------------------

struct StableCurveGraph {
  struct Vertex {
    long long genus = 0;
    bool is_ghost = false;
  };
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, std::string>> tails;
  std::vector<bool> marked;  // parallel to edges: contracted circles

  bool connected() const {
    if (vertices.empty()) return false;
    std::vector<int> stack{0};
    std::set<int> seen{0};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& e : edges) {
        int o = -1;
        if (e.first == v) o = e.second;
        if (e.second == v) o = e.first;
        if (o >= 0 && !seen.count(o)) {
          seen.insert(o);
          stack.push_back(o);
        }
      }
    }
    return seen.size() == vertices.size();
  }
};

// One base vertex plus one sphere per concentration point, joined by marked
// edges (contracted circles).
inline StableCurveGraph emit_graph(const ConcentrationReport& rep, long long base_genus) {
  StableCurveGraph g;
  g.vertices.push_back({base_genus, false});
  for (std::size_t k = 0; k < rep.points.size(); ++k) {
    g.vertices.push_back({0, false});
    g.edges.push_back({0, static_cast<int>(k + 1)});
    g.marked.push_back(true);
  }
  return g;
}

inline void write_dot(std::ostream& os, const StableCurveGraph& g) {
  os << "graph stable_curve {\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    os << "  v" << v << " [label=\"g=" << g.vertices[v].genus
       << (g.vertices[v].is_ghost ? " (ghost)" : "") << "\"];\n";
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    os << "  v" << g.edges[e].first << " -- v" << g.edges[e].second;
    if (g.marked[e]) os << " [style=bold, label=\"node\"]";
    os << ";\n";
  }
  for (std::size_t t = 0; t < g.tails.size(); ++t)
    os << "  t" << t << " [shape=point]; v" << g.tails[t].first << " -- t" << t
       << " [style=dashed, label=\"" << g.tails[t].second << "\"];\n";
  os << "}\n";
}

}  // namespace pclab::bubbling
