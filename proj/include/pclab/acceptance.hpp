#pragma once

// Acceptance battery: one runner per criterion, each pinning its stated
// tolerance.  The `fast` flag caps grids at n = 128 and the degeneration
// family at n = 16 (developer loop); the dedicated acceptance binary runs
// the full set.

#include <chrono>
#include <sstream>

#include "pclab/bubbling.hpp"
#include "pclab/cgdbar.hpp"
#include "pclab/gromovop.hpp"
#include "pclab/hypmod.hpp"
#include "pclab/invariants.hpp"
#include "pclab/jdisk.hpp"
#include "pclab/lincx.hpp"

namespace pclab::accept {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
  double seconds = 0.0;
};

namespace detail {

inline Mat random_antisym_nondegenerate(int dim, Rng& rng) {
  for (int tries = 0; tries < 64; ++tries) {
    Mat a = rng.gauss_mat(dim, dim);
    Mat o = a - a.transpose();
    Eigen::JacobiSVD<Mat> svd(o);
    double smin = svd.singularValues()(dim - 1), smax = svd.singularValues()(0);
    if (smin > 0.1 && smax < 10.0) return o;
  }
  throw Error("could not draw a well-conditioned antisymmetric matrix");
}

inline Mat random_spd(int dim, Rng& rng) {
  Mat a = rng.gauss_mat(dim, dim);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  Vec d(dim);
  for (int i = 0; i < dim; ++i) d[i] = rng.uniform(0.5, 2.0);
  return q * d.asDiagonal() * q.transpose();
}

// random J_0-antilinear parameter with ||W||_2 <= scale
inline Mat random_antilinear(int dim, double scale, Rng& rng) {
  Mat j0 = lincx::std_structure(dim);
  Mat a = rng.gauss_mat(dim, dim);
  Mat w = 0.5 * (a + j0 * a * j0);
  Eigen::JacobiSVD<Mat> svd(w);
  double top = svd.singularValues()(0);
  if (top > 0.0) w *= scale / top;
  return w;
}

// deterministic catalogue of smooth compactly supported test densities
inline disk::DiskField smooth_test_field(const disk::DiskGrid& g, int which) {
  auto chi = [](double r) {
    double s = r / 0.8;
    if (s >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
  };
  return disk::DiskField::sample(g, 1, [&](cplx z, int) -> cplx {
    double c = chi(std::abs(z));
    if (c == 0.0) return 0.0;
    switch (which % 10) {
      case 0: return c;
      case 1: return c * z;
      case 2: return c * std::conj(z);
      case 3: return c * z * z;
      case 4: return c * cplx(z.real(), 0.0);
      case 5: return c * std::exp(0.5 * z);
      case 6: return c * std::sin(z.real()) * cplx(1.0, 0.5);
      case 7: return c * std::exp(-4.0 * std::norm(z - cplx(0.2, 0.1)));
      case 8: return c * (z * z - std::conj(z));
      default: return c * cplx(std::cos(2.0 * z.imag()), z.real());
    }
  });
}

template <class F>
CriterionResult timed(int id, const std::string& name, F&& body) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    std::ostringstream os;
    r.pass = body(os);
    r.details = os.str();
  } catch (const std::exception& e) {
    r.pass = false;
    r.details = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

// 1. Calibration construction (100 seeded random pairs, dims 4-10).
inline CriterionResult criterion_calibration(std::uint64_t seed) {
  return detail::timed(1, "calibration construction", [&](std::ostringstream& os) {
    Rng rng(seed + 1);
    double worst_sq = 0, worst_inv = 0, worst_margin = 1e300, worst_idem = 0;
    for (int trial = 0; trial < 100; ++trial) {
      int dim = 4 + 2 * (trial % 4);  // 4,6,8,10
      Mat om = detail::random_antisym_nondegenerate(dim, rng);
      Mat gm = detail::random_spd(dim, rng);
      auto omega = lincx::BilinearForm::symplectic(om);
      auto g = lincx::BilinearForm::metric(gm);
      auto j = lincx::calibrated_from_metric(omega, g);
      worst_sq = std::max(worst_sq, j.square_residual());
      worst_inv = std::max(
          worst_inv,
          (j.mat.transpose() * om * j.mat - om).cwiseAbs().maxCoeff());
      worst_margin = std::min(worst_margin, lincx::taming_margin(omega, j));
      Mat gj = om * j.mat;
      gj = 0.5 * (gj + gj.transpose());
      auto j2 = lincx::calibrated_from_metric(omega, lincx::BilinearForm::metric(gj));
      worst_idem = std::max(worst_idem, (j2.mat - j.mat).norm());
    }
    os << "max ||J^2+I||_F = " << worst_sq << ", max omega-invariance = " << worst_inv
       << ", min taming margin = " << worst_margin
       << ", max idempotence gap = " << worst_idem;
    return worst_sq <= 1e-9 && worst_inv <= 1e-9 && worst_margin > 0 &&
           worst_idem <= 1e-9;
  });
}

// 2. Cayley bijection round trips in dims 2, 4, 6.
inline CriterionResult criterion_cayley(std::uint64_t seed) {
  return detail::timed(2, "cayley bijection", [&](std::ostringstream& os) {
    Rng rng(seed + 2);
    double worst = 0;
    for (int dim : {2, 4, 6}) {
      auto j0 = lincx::StructureOp::standard(dim);
      for (int trial = 0; trial < 100; ++trial) {
        Mat wm = detail::random_antilinear(dim, rng.uniform(0.05, 0.85), rng);
        lincx::AntilinearParam w{dim, wm, j0};
        auto j = lincx::cayley_inverse(w);
        auto w2 = lincx::cayley_forward(j, j0);
        worst = std::max(worst, (w2.mat - wm).norm());
        auto j2 = lincx::cayley_inverse(w2);
        worst = std::max(worst, (j2.mat - j.mat).norm());
      }
    }
    os << "max round-trip gap = " << worst;
    return worst <= 1e-12;
  });
}

// 3. dbar o T = id with first-order convergence.
inline CriterionResult criterion_dbar_t(bool fast, std::uint64_t) {
  return detail::timed(3, "dbar o T = id", [&](std::ostringstream& os) {
    const int n_hi = fast ? 128 : 256, n_lo = n_hi / 2;
    disk::DiskGrid g_hi(n_hi), g_lo(n_lo);
    const auto& cg_hi = disk::cauchy_green_for(g_hi);
    const auto& cg_lo = disk::cauchy_green_for(g_lo);
    double worst_res = 0, worst_order = 1e300;
    for (int k = 0; k < 10; ++k) {
      auto f_hi = detail::smooth_test_field(g_hi, k);
      auto f_lo = detail::smooth_test_field(g_lo, k);
      double num = disk::lp(disk::dbar(cg_hi.apply(f_hi)) - f_hi, 2.0, 0.9).value;
      double den = disk::lp(f_hi, 2.0, 0.9).value;
      double res_hi = num / den;
      double res_lo = disk::lp(disk::dbar(cg_lo.apply(f_lo)) - f_lo, 2.0, 0.9).value /
                      disk::lp(f_lo, 2.0, 0.9).value;
      worst_res = std::max(worst_res, res_hi);
      worst_order = std::min(worst_order, std::log2(res_lo / res_hi));
    }
    os << "max rel residual at n=" << n_hi << " is " << worst_res
       << ", min order = " << worst_order;
    return worst_res <= 0.1 && worst_order >= 1.0;
  });
}

// 4. Plancherel bound on the Calderon-Zygmund ratio at p = 2.
inline CriterionResult criterion_plancherel(bool fast, std::uint64_t) {
  return detail::timed(4, "plancherel cz bound", [&](std::ostringstream& os) {
    const int n = fast ? 128 : 256;
    disk::DiskGrid g(n);
    double worst = 0;
    for (int k = 0; k < 10; ++k)
      worst = std::max(worst, disk::cz_ratio(detail::smooth_test_field(g, k), 2.0));
    os << "max cz ratio = " << worst;
    return worst <= 1.1;
  });
}

// 5. Dilation law for f in {1, z, z^2}, tau in {1/4,1/2,1}, p in {2,4}.
inline CriterionResult criterion_dilation(bool, std::uint64_t) {
  return detail::timed(5, "dilation law", [&](std::ostringstream& os) {
    const int n = 128;
    disk::DiskGrid g(n);
    double worst = 0;
    for (int which = 0; which < 3; ++which) {
      auto f = disk::DiskField::sample(g, 1, [&](cplx z, int) -> cplx {
        if (which == 0) return 1.0;
        if (which == 1) return z;
        return z * z;
      });
      for (double tau : {0.25, 0.5, 1.0})
        for (double p : {2.0, 4.0}) {
          auto d = disk::dilation_norm_check(f, tau, p);
          worst = std::max(worst, std::abs(d.lhs - d.rhs) / d.rhs);
        }
    }
    os << "max |lhs-rhs|/rhs = " << worst << " (bound 3h = " << 3.0 * g.h << ")";
    return worst <= 3.0 * g.h;
  });
}

// 6. Disk solver on the built-in perturbed structure.
inline CriterionResult criterion_disk_solver(bool, std::uint64_t) {
  return detail::timed(6, "disk solver", [&](std::ostringstream& os) {
    const int n = 128;
    disk::DiskGrid g(n);
    auto jf = jdisk::cayley_radial_field(4, 0.05);
    Vec x0 = Vec::Zero(4), v = Vec::Zero(4);
    v[0] = 0.1;
    auto sol = jdisk::solve_disk(jf, x0, v, g, 1e-6, 200);
    auto ea = jdisk::energy_area(jf, jdisk::ambient_map(sol), sol.t);
    double ea_gap = std::abs(ea.energy - ea.area) / std::max(std::abs(ea.area), 1e-30);

    auto jst = jdisk::standard_field(4);
    auto sol0 = jdisk::solve_disk(jst, x0, v, g, 1e-6, 200);
    os << "iterations = " << sol.iterations << ", residual = " << sol.residual
       << ", |energy-area|/area = " << ea_gap << ", J_st iterations = "
       << sol0.iterations << " (residual " << sol0.residual << ")";
    return sol.iterations <= 30 && sol.residual <= 1e-6 && ea_gap <= 1e-3 &&
           sol0.iterations == 1 && sol0.residual == 0.0;
  });
}

// 7. Gromov-operator identities with measured order >= 1 between n=64,128.
inline CriterionResult criterion_gromov(bool, std::uint64_t seed) {
  return detail::timed(7, "gromov operator identities", [&](std::ostringstream& os) {
    Rng rng(seed + 7);
    auto jf = jdisk::cayley_radial_field(4, 0.05);
    const double fd = 1e-4;
    double rdu[2], rn[2], leib[2], conn[2];
    for (int pass = 0; pass < 2; ++pass) {
      const int n = pass == 0 ? 64 : 128;
      disk::DiskGrid g(n);
      Vec x0 = Vec::Zero(4), v = Vec::Zero(4);
      v[0] = 0.1;
      auto sol = jdisk::solve_disk(jf, x0, v, g, 1e-9, 200);
      // work with the ambient holomorphic representative and J_t(.) = J(t .)
      jdisk::StructureField jt{jf.dim,
                               [&jf, t = sol.t](const Vec& p) { return jf.eval(t * p); },
                               jf.lipschitz_bound * sol.t, jf.domain_radius};
      const disk::DiskField& u = sol.u;
      disk::DiskField ux = disk::derivative(u, disk::Axis::X);
      disk::DiskField uy = disk::derivative(u, disk::Axis::Y);

      // R o du == 0 (sections du(eta) for the constant field eta = d/dx)
      gromovop::SectionField sdu{ux};
      rdu[pass] = gromovop::sup_cell_norm(gromovop::antilinear_part(jt, u, sdu, fd));

      // R(v, .) = N(v, du(.)) cross-check on a generic smooth section
      auto vsec = disk::DiskField::sample(g, 2, [&](cplx z, int c) {
        return c == 0 ? cplx(0.05 * z.real(), 0.03 * std::norm(z))
                      : cplx(0.02, 0.04 * z.imag());
      });
      gromovop::SectionField sv{vsec};
      auto r_form = gromovop::antilinear_part(jt, u, sv, fd);
      double worst = 0;
      for (int j = 0; j < g.n; j += 3)
        for (int i = g.row_lo[j]; i < g.row_hi[j]; i += 3) {
          if (!g.mask[g.idx(i, j)]) continue;
          if (std::abs(g.center(i, j)) > 0.9) continue;
          Vec p(4), vv(4), ax(4);
          disk::to_real(&u.v[g.idx(i, j) * 2], 2, p);
          disk::to_real(&vsec.v[g.idx(i, j) * 2], 2, vv);
          disk::to_real(&ux.v[g.idx(i, j) * 2], 2, ax);
          Vec nij = lincx::nijenhuis([&](const Vec& q) { return jt.eval(q); }, p, vv,
                                     ax, fd);
          Vec rx(4);
          disk::to_real(&r_form.on_dx.v[g.idx(i, j) * 2], 2, rx);
          worst = std::max(worst, (rx - nij).norm());
        }
      rn[pass] = worst;

      // Leibniz identity with f(z) = z
      auto fs = disk::DiskField::sample(g, 1, [](cplx z, int) { return z; });
      leib[pass] = gromovop::leibniz_check(jt, u, sv, fs, fd);

      // connection independence under a random symmetric Christoffel field
      auto gamma = gromovop::random_christoffel(4, 0.3, rng);
      auto d0 = gromovop::gromov_d(jt, u, sv, fd);
      auto d1 = gromovop::gromov_d_perturbed(jt, u, sv, fd, gamma);
      conn[pass] = gromovop::sup_cell_norm(
          {d1.on_dx - d0.on_dx, d1.on_dy - d0.on_dy});
    }
    double o_rdu = std::log2(rdu[0] / rdu[1]);
    double o_rn = std::log2(rn[0] / rn[1]);
    double o_leib = std::log2(leib[0] / leib[1]);
    double o_conn = std::log2(conn[0] / conn[1]);

    // integrable case: R identically zero at machine precision
    disk::DiskGrid g64(64);
    auto jst = jdisk::standard_field(4);
    auto hw = disk::DiskField::sample(g64, 2, [](cplx z, int c) {
      return c == 0 ? 0.1 * z : 0.05 * z * z;
    });
    auto vs = disk::DiskField::sample(g64, 2, [](cplx z, int c) {
      return c == 0 ? cplx(0.2 * z.imag(), 0.1) : 0.3 * std::conj(z);
    });
    double rint =
        gromovop::sup_cell_norm(gromovop::antilinear_part(jst, hw, {vs}, fd));

    os << "orders: R.du " << o_rdu << ", R=N " << o_rn << ", leibniz " << o_leib
       << ", connection " << o_conn << "; integrable |R| = " << rint;
    return o_rdu >= 1.0 && o_rn >= 1.0 && o_leib >= 1.0 && o_conn >= 1.0 &&
           rint <= 1e-12;
  });
}

// 8. Invariant arithmetic: the line-in-CP^2 quadruple and the envelope scan.
inline CriterionResult criterion_invariants(std::uint64_t seed) {
  return detail::timed(8, "invariant arithmetic", [&](std::ostringstream& os) {
    namespace inv = pclab::invariants;
    inv::SurfaceData line{{0}, 1, 3, 0, 0};
    bool ok = inv::genus_sum(line) == 0;
    auto lai = inv::lai_indices(2, 1, 3);
    ok = ok && lai.i_plus == 3 && lai.i_minus == 0;
    auto sw = inv::sw_adjunction_check(line);
    ok = ok && !sw.adjunction_holds;  // violated in CP^2
    ok = ok && gromovop::moduli_index(3, 2, 0) == 4;

    Rng rng(seed + 8);
    int agree = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
      int which = rng.uniform_int(0, 2);
      if (which == 0) {
        long long d = rng.uniform_int(1, 40), g = rng.uniform_int(0, 900);
        auto v = inv::envelope_criterion(inv::Ambient::CP2, d, 0, g);
        bool full = g < (d * d + 3 * d + 2) / 2;
        agree += (v.verdict == (full ? inv::Envelope::FullExtension
                                     : inv::Envelope::SteinIsotopyPossible));
      } else if (which == 1) {
        long long d1 = rng.uniform_int(0, 30), d2 = rng.uniform_int(0, 30);
        if (d1 == 0 && d2 == 0) d1 = 1;
        long long g = rng.uniform_int(0, 900);
        auto v = inv::envelope_criterion(inv::Ambient::CP1xCP1, d1, d2, g);
        inv::Envelope want;
        if (d1 * d2 == 0)
          want = inv::Envelope::FiberExtension;
        else
          want = g < d1 * d2 + std::llabs(d1 + d2) + 1
                     ? inv::Envelope::FullExtension
                     : inv::Envelope::SteinIsotopyPossible;
        agree += (v.verdict == want);
      } else {
        long long d = rng.uniform_int(1, 40), g = rng.uniform_int(0, 80);
        auto v = inv::envelope_criterion(inv::Ambient::CP1xY, d, 0, g);
        inv::Envelope want = g < d + 1 ? inv::Envelope::FiberExtension
                                       : inv::Envelope::SteinIsotopyPossible;
        agree += (v.verdict == want);
      }
    }
    os << "line quadruple " << (ok ? "exact" : "WRONG") << "; envelope agreement "
       << agree << "/" << trials;
    return ok && agree == trials;
  });
}

// 9. Decay constants and the cylinder probe.
inline CriterionResult criterion_decay(std::uint64_t seed) {
  return detail::timed(9, "decay constants & cylinder probe", [&](std::ostringstream& os) {
    auto dc = hypmod::decay_constants(hypmod::gamma_one());
    double quad = std::abs(dc.lambda - 0.5 * dc.gamma * (dc.lambda * dc.lambda + 1.0));

    Rng rng(seed + 9);
    const int l = 10;
    bool all_pass = true;
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<std::pair<int, cplx>> modes;
      int nm = rng.uniform_int(1, 4);
      for (int k = 0; k < nm; ++k) {
        int mode = 0;
        while (mode == 0) mode = rng.uniform_int(-4, 4);
        double mag = rng.uniform(0.2, 1.0) * std::exp(-std::abs(mode) * l * 0.5);
        modes.push_back({mode, std::polar(mag, rng.uniform(0.0, 2 * kPi))});
      }
      auto f = [&](double t, double th) {
        cplx acc = 0.0;
        for (auto& [k, c] : modes) acc += c * std::exp(cplx(k * t, k * th));
        return acc;
      };
      all_pass = all_pass && hypmod::cylinder_decay_probe(f, l).verdict;
    }
    // negative control: linear drift in t is harmonic but not cylinder-holomorphic
    bool drift_fails =
        !hypmod::cylinder_decay_probe([](double t, double) { return cplx(t, 0.0); }, l)
             .verdict;
    os << "quadratic residual = " << quad << ", per-sum verdicts "
       << (all_pass ? "pass" : "FAIL") << ", drift control "
       << (drift_fails ? "fails as required" : "UNEXPECTEDLY PASSES");
    return quad <= 1e-12 && all_pass && drift_fails;
  });
}

// 10. Strip eigenvalue for (R, iR).
inline CriterionResult criterion_strip(std::uint64_t) {
  return detail::timed(10, "strip eigenvalue", [&](std::ostringstream& os) {
    Mat w0(2, 1), w1(2, 1);
    w0 << 1, 0;
    w1 << 0, 1;
    auto res = hypmod::strip_eigenvalue({w0, w1}, 401);
    double target = (kPi / 2.0) * (kPi / 2.0);
    double gap = std::abs(res.lambda1 - target);
    double gw_expect = 2.0 / (1.0 + std::cosh(2.0 * std::sqrt(res.lambda1)));
    bool ok = gap <= 1e-4 && res.p_star && std::abs(*res.p_star - 4.0) <= 1e-9 &&
              std::abs(res.gamma_w - gw_expect) <= 1e-15;
    os << "lambda1 = " << res.lambda1 << " (target " << target << ", gap " << gap
       << "), gamma_W = " << res.gamma_w
       << ", p* = " << (res.p_star ? *res.p_star : -1.0);
    return ok;
  });
}

// 11. Bubbling demo: curve residuals, convergence rate, neck identity,
// detector radius law, emitted graph.
inline CriterionResult criterion_bubbling(bool fast, std::uint64_t seed) {
  return detail::timed(11, "bubbling demo", [&](std::ostringstream& os) {
    namespace bb = pclab::bubbling;
    Rng rng(seed + 11);

    double worst_curve = 0;
    for (int n : {8, 16}) {
      for (int k = 0; k < 40; ++k) {
        cplx xi = std::polar(rng.uniform(0.0, 2.0), rng.uniform(0.0, 2 * kPi));
        worst_curve =
            std::max(worst_curve, bb::rescaled_bubble(n, xi).curve_equation_residual(n));
      }
    }

    auto supdist = [&](int n) {
      double s = 0;
      for (int ir = 1; ir <= 10; ++ir)
        for (int it = 0; it < 24; ++it) {
          cplx xi = std::polar(2.0 * ir / 10.0, 2 * kPi * it / 24.0);
          s = std::max(s, bb::fs_distance(bb::rescaled_bubble(n, xi), bb::bubble_limit(xi)));
        }
      return s;
    };
    double d8 = supdist(8), d16 = supdist(16);
    double rate = d8 / d16;

    double worst_neck = 0;
    const int nn = 16;
    for (int k = 0; k < 10; ++k) {
      double r = std::exp(rng.uniform(std::log(1.2 / (bb::kNeckParam * nn)),
                                      std::log(bb::kChartRadius * 0.9)));
      cplx x1 = std::polar(r, rng.uniform(0.0, 2 * kPi));
      cplx t = 1.0 / (x1 * static_cast<double>(nn));
      auto a = bb::neck_map(x1, t, nn);
      auto b = bb::neck_composite(x1, nn);
      double gap = 0;
      for (int c = 0; c < 3; ++c) gap = std::max(gap, std::abs(a.z[c] - b.z[c]));
      worst_neck = std::max(worst_neck, gap);
      worst_curve = std::max(worst_curve, a.curve_equation_residual(nn));
    }

    // synthetic rescaling sequence u_k(z) = v(s_k z), density s_k^2 e(s_k z)
    const int ngrid = fast ? 128 : 256;
    disk::DiskGrid g(ngrid);
    auto limit_density = [](cplx xi) {
      std::array<cplx, 3> z{xi, 1.0, xi * xi * xi};
      std::array<cplx, 3> zp{1.0, 0.0, 3.0 * xi * xi};
      return bb::fs_density(z, zp);
    };
    std::vector<int> scales = fast ? std::vector<int>{4, 8, 16}
                                   : std::vector<int>{4, 8, 16, 32};
    std::vector<bb::DensityField> seq;
    for (int s : scales)
      seq.push_back(disk::DiskField::sample(g, 1, [&](cplx z, int) -> cplx {
        return cplx(static_cast<double>(s) * s * limit_density(static_cast<double>(s) * z),
                    0.0);
      }));
    const double bubble_area = bb::fs_total_degree_area(3);
    auto rep = bb::detect_bubbles(seq, 0.1 * bubble_area);
    bool one_point = rep.points.size() == 1;
    bool radius_law = false;
    if (one_point && rep.history[0].size() >= 2) {
      radius_law = true;
      for (std::size_t k = 1; k < rep.history[0].size(); ++k) {
        double expect = static_cast<double>(scales[k - 1]) / scales[k];  // 1/2
        double got = rep.history[0][k].first / rep.history[0][k - 1].first;
        if (std::abs(got / expect - 1.0) > 0.2) radius_law = false;
      }
    }
    auto graph = bb::emit_graph(rep, 1);
    bool graph_ok = graph.vertices.size() == 2 && graph.vertices[0].genus == 1 &&
                    graph.vertices[1].genus == 0 && graph.edges.size() == 1 &&
                    graph.marked.size() == 1 && graph.marked[0] && graph.connected();

    os << "curve residual " << worst_curve << ", v_n rate " << rate
       << " (need >= 32), neck identity " << worst_neck << ", points "
       << rep.points.size() << ", radius law " << (radius_law ? "ok" : "FAIL")
       << ", graph " << (graph_ok ? "torus-sphere" : "WRONG");
    return worst_curve <= 1e-10 && rate >= 32.0 && worst_neck <= 1e-10 && one_point &&
           radius_law && graph_ok;
  });
}

inline std::vector<CriterionResult> run_all(bool fast, std::uint64_t seed) {
  return {criterion_calibration(seed), criterion_cayley(seed),
          criterion_dbar_t(fast, seed), criterion_plancherel(fast, seed),
          criterion_dilation(fast, seed), criterion_disk_solver(fast, seed),
          criterion_gromov(fast, seed), criterion_invariants(seed),
          criterion_decay(seed), criterion_strip(seed),
          criterion_bubbling(fast, seed)};
}

}  // namespace pclab::accept
