#include <catch2/catch_amalgamated.hpp>

#include "pclab/gromovop.hpp"

using namespace pclab;
using namespace pclab::gromovop;
using disk::DiskField;
using disk::DiskGrid;

namespace {

struct Setup {
  DiskGrid g;
  jdisk::StructureField jt;
  DiskField u;
  double t;
};

Setup solved_setup(int n, double c1_norm) {
  DiskGrid g(n);
  auto jf = jdisk::cayley_radial_field(4, c1_norm);
  Vec x0 = Vec::Zero(4), v = Vec::Zero(4);
  v[0] = 0.1;
  auto sol = jdisk::solve_disk(jf, x0, v, g, 1e-10, 200);
  auto eval = [jf, t = sol.t](const Vec& p) { return jf.eval(t * p); };
  return {g, {4, eval, jf.lipschitz_bound, jf.domain_radius}, sol.u, sol.t};
}

DiskField generic_section(const DiskGrid& g) {
  return DiskField::sample(g, 2, [](cplx z, int c) {
    return c == 0 ? cplx(0.05 * z.real(), 0.03 * std::norm(z))
                  : cplx(0.02, 0.04 * z.imag());
  });
}

}  // namespace

TEST_CASE("gromov_d: integrable case is the componentwise CR operator") {
  DiskGrid g(48);
  auto jst = jdisk::standard_field(4);
  auto u = DiskField::sample(g, 2, [](cplx z, int c) { return c == 0 ? 0.1 * z : cplx(0); });
  auto v = generic_section(g);
  auto dv = gromov_d(jst, u, {v}, 1e-4);
  auto dbar_v = disk::dbar(v);
  CHECK(disk::lp(dv.on_dx - dbar_v, 2.0, 0.9).value < 1e-13);

  // complex linearity for J_st: D(Jv) = J D(v)
  auto jv = apply_structure_along(jst, u, v);
  auto djv = gromov_d(jst, u, {jv}, 1e-4);
  auto jdv_x = apply_structure_along(jst, u, dv.on_dx);
  CHECK(disk::lp(djv.on_dx - jdv_x, 2.0, 0.9).value < 1e-13);
}

TEST_CASE("gromov_d: D v ~ 0 for v = du(const xi) on a solved disk") {
  double res[2];
  int k = 0;
  for (int n : {48, 96}) {
    auto s = solved_setup(n, 0.05);
    SectionField sdu{disk::derivative(s.u, disk::Axis::X)};
    res[k++] = sup_cell_norm(gromov_d(s.jt, s.u, sdu, 1e-4));
  }
  CHECK(std::log2(res[0] / res[1]) >= 1.0);
}

TEST_CASE("antilinear part: integrable gives zero, perturbed matches Nijenhuis") {
  auto s = solved_setup(48, 0.3);
  auto v = generic_section(s.g);
  auto r = antilinear_part(s.jt, s.u, {v}, 1e-4);

  SECTION("R is J-antilinear in v (cellwise identity)") {
    auto jv = apply_structure_along(s.jt, s.u, v);
    auto rjv = antilinear_part(s.jt, s.u, {jv}, 1e-4);
    auto jr = apply_structure_along(s.jt, s.u, r.on_dx);
    CHECK(sup_cell_norm(rjv.on_dx + jr) < 5e-4);  // O(h^2) + O(fd^2)
  }

  SECTION("R(v, .) = N(v, du(.)) against the lincx tensor") {
    auto ux = disk::derivative(s.u, disk::Axis::X);
    double worst = 0;
    for (int j = 0; j < s.g.n; j += 5)
      for (int i = s.g.row_lo[j]; i < s.g.row_hi[j]; i += 5) {
        if (!s.g.mask[s.g.idx(i, j)] || std::abs(s.g.center(i, j)) > 0.9) continue;
        Vec p(4), vv(4), ax(4), rx(4);
        disk::to_real(&s.u.v[s.g.idx(i, j) * 2], 2, p);
        disk::to_real(&v.v[s.g.idx(i, j) * 2], 2, vv);
        disk::to_real(&ux.v[s.g.idx(i, j) * 2], 2, ax);
        disk::to_real(&r.on_dx.v[s.g.idx(i, j) * 2], 2, rx);
        Vec nij =
            lincx::nijenhuis([&](const Vec& q) { return s.jt.eval(q); }, p, vv, ax, 1e-4);
        worst = std::max(worst, (rx - nij).norm());
      }
    CHECK(worst < 5e-4);
  }

  SECTION("R o du = 0") {
    SectionField sdu{disk::derivative(s.u, disk::Axis::X)};
    CHECK(sup_cell_norm(antilinear_part(s.jt, s.u, sdu, 1e-4).on_dx) < 2e-3);
  }

  SECTION("D = dbar part + antilinear part exactly") {
    auto d = gromov_d(s.jt, s.u, {v}, 1e-4);
    auto db = dbar_part(s.jt, s.u, {v}, 1e-4);
    CHECK(sup_cell_norm({db.on_dx + r.on_dx - d.on_dx, db.on_dy + r.on_dy - d.on_dy}) <
          1e-15);
  }
}

TEST_CASE("antilinear part vanishes identically for J_st") {
  DiskGrid g(48);
  auto jst = jdisk::standard_field(4);
  auto u = DiskField::sample(g, 2, [](cplx z, int c) { return c == 0 ? 0.1 * z : 0.05 * z * z; });
  CHECK(sup_cell_norm(antilinear_part(jst, u, {generic_section(g)}, 1e-4).on_dx) <
        1e-13);
}

TEST_CASE("antilinearity of the output form under refinement") {
  double res[2];
  int k = 0;
  for (int n : {48, 96}) {
    auto s = solved_setup(n, 0.1);
    auto v = generic_section(s.g);
    auto d = gromov_d(s.jt, s.u, {v}, 1e-4);
    auto jdx = apply_structure_along(s.jt, s.u, d.on_dx);
    res[k++] = sup_cell_norm(d.on_dy + jdx);
  }
  CHECK(std::log2(res[0] / res[1]) >= 1.0);
}

TEST_CASE("leibniz identity") {
  auto s = solved_setup(48, 0.1);
  auto v = generic_section(s.g);

  SECTION("f = 1 gives zero residual") {
    auto one = DiskField::sample(s.g, 1, [](cplx, int) { return cplx(1, 0); });
    CHECK(leibniz_check(s.jt, s.u, {v}, one, 1e-4) < 1e-14);
  }

  SECTION("f = z shrinks at order >= 1 under refinement") {
    double res[2];
    int k = 0;
    for (int n : {48, 96}) {
      auto ss = solved_setup(n, 0.1);
      auto vv = generic_section(ss.g);
      auto f = DiskField::sample(ss.g, 1, [](cplx z, int) { return z; });
      res[k++] = leibniz_check(ss.jt, ss.u, {vv}, f, 1e-4);
    }
    CHECK(std::log2(res[0] / res[1]) >= 1.0);
  }
}

TEST_CASE("linearization consistency: family derivative matches 2J D v") {
  // solutions u_s for the Cayley family J_s = K(s W): d/ds of the nonlinear
  // residual gives v_y - J v_x - (d_v J) u_x = Jdot u_x, and the left side is
  // -2 J D_{u,J} v(d/dx)
  DiskGrid g(48);
  const double base = 0.2;
  auto at = [&](double c1n) {
    auto jf = jdisk::cayley_radial_field(4, c1n);
    Vec x0 = Vec::Zero(4), v = Vec::Zero(4);
    v[0] = 0.1;
    return jdisk::solve_disk(jf, x0, v, g, 1e-11, 300);
  };
  auto sol0 = at(base);
  REQUIRE(sol0.t == 1.0);
  double err[2];
  int k = 0;
  for (double eps : {0.04, 0.02}) {
    auto sol1 = at(base + eps);
    REQUIRE(sol1.t == 1.0);
    DiskField v = sol1.u - sol0.u;
    v *= 1.0 / eps;

    auto jf = jdisk::cayley_radial_field(4, base);
    auto jf1 = jdisk::cayley_radial_field(4, base + eps);
    auto d = gromov_d(jf, sol0.u, {v}, 1e-5);
    auto ux = disk::derivative(sol0.u, disk::Axis::X);
    double worst = 0;
    Vec p(4), ax(4), dx(4);
    for (int j = 0; j < g.n; ++j)
      for (int i = g.row_lo[j]; i < g.row_hi[j]; ++i) {
        if (!g.mask[g.idx(i, j)] || std::abs(g.center(i, j)) > 0.85) continue;
        disk::to_real(&sol0.u.v[g.idx(i, j) * 2], 2, p);
        disk::to_real(&ux.v[g.idx(i, j) * 2], 2, ax);
        disk::to_real(&d.on_dx.v[g.idx(i, j) * 2], 2, dx);
        Mat jdot = (jf1.eval(p) - jf.eval(p)) / eps;
        Vec lhs = -2.0 * (jf.eval(p) * dx);
        Vec rhs = jdot * ax;
        worst = std::max(worst, (lhs - rhs).norm());
      }
    err[k++] = worst;
  }
  CHECK(err[1] < 0.7 * err[0]);  // O(eps)
}

TEST_CASE("connection independence") {
  Rng rng(23);
  auto gamma = random_christoffel(4, 0.5, rng);
  double res[2];
  int k = 0;
  for (int n : {48, 96}) {
    auto s = solved_setup(n, 0.1);
    auto v = generic_section(s.g);
    auto d0 = gromov_d(s.jt, s.u, {v}, 1e-4);
    auto d1 = gromov_d_perturbed(s.jt, s.u, {v}, 1e-4, gamma);
    res[k++] = sup_cell_norm({d1.on_dx - d0.on_dx, d1.on_dy - d0.on_dy});
  }
  CHECK(std::log2(res[0] / res[1]) >= 1.0);
}

TEST_CASE("index formulas") {
  CHECK(index_formula(3, 1, 0) == 8);
  CHECK(index_formula(0, 1, 1) == 0);
  CHECK(moduli_index(3, 2, 0) == 4);  // line in CP^2
  CHECK_THROWS(index_formula(1, 0, 0));
}
