#include <catch2/catch_amalgamated.hpp>

#include "pclab/lincx.hpp"

using namespace pclab;
using namespace pclab::lincx;

namespace {
Mat random_antisym(int dim, Rng& rng) {
  for (;;) {
    Mat a = rng.gauss_mat(dim, dim);
    Mat o = a - a.transpose();
    if (std::abs(o.determinant()) > 1e-3) return o;
  }
}

Mat random_spd(int dim, Rng& rng) {
  Mat a = rng.gauss_mat(dim, dim);
  return a * a.transpose() + 0.5 * Mat::Identity(dim, dim);
}

Mat random_antilinear(int dim, double scale, Rng& rng) {
  Mat j0 = std_structure(dim);
  Mat a = rng.gauss_mat(dim, dim);
  Mat w = 0.5 * (a + j0 * a * j0);
  Eigen::JacobiSVD<Mat> svd(w);
  if (svd.singularValues()(0) > 0) w *= scale / svd.singularValues()(0);
  return w;
}
}  // namespace

TEST_CASE("calibration: standard pair returns J_st") {
  auto omega = std_symplectic(4);
  auto g = BilinearForm::metric(Mat::Identity(4, 4));
  auto j = calibrated_from_metric(omega, g);
  CHECK((j.mat - std_structure(4)).norm() < 1e-12);
}

TEST_CASE("calibration: anisotropic metric still calibrates") {
  auto omega = std_symplectic(4);
  Vec d(4);
  d << 4, 1, 1, 1;
  auto g = BilinearForm::metric(Mat(d.asDiagonal()));
  auto j = calibrated_from_metric(omega, g);
  CHECK(j.square_residual() < 1e-10);
  CHECK(taming_margin(omega, j) > 0.0);
  Vec e1 = Vec::Zero(4);
  e1[0] = 1;
  CHECK(omega(e1, j.mat * e1) > 0.0);
  // omega-invariance on the basis
  CHECK((j.mat.transpose() * omega.mat * j.mat - omega.mat).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("calibration: random SPD metrics in dim 10, seeds 0..99") {
  auto omega = std_symplectic(10);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    auto g = BilinearForm::metric(random_spd(10, rng));
    auto j = calibrated_from_metric(omega, g);
    CHECK(j.square_residual() <= 1e-10);
    CHECK((j.mat.transpose() * omega.mat * j.mat - omega.mat).cwiseAbs().maxCoeff() <=
          1e-10);
    CHECK(taming_margin(omega, j) > 0.0);
  }
}

TEST_CASE("calibration idempotence P(g_J) = J") {
  Rng rng(7);
  for (int dim : {4, 6}) {
    auto omega = BilinearForm::symplectic(random_antisym(dim, rng));
    auto g = BilinearForm::metric(random_spd(dim, rng));
    auto j = calibrated_from_metric(omega, g);
    Mat gj = omega.mat * j.mat;
    auto j2 = calibrated_from_metric(omega, BilinearForm::metric(0.5 * (gj + gj.transpose())));
    CHECK((j2.mat - j.mat).norm() < 1e-9);
  }
}

TEST_CASE("calibration input guards") {
  auto g = BilinearForm::metric(Mat::Identity(4, 4));
  CHECK_THROWS_AS(BilinearForm::symplectic(Mat::Zero(4, 4)), NondegeneracyError);
  Mat not_spd = -Mat::Identity(4, 4);
  CHECK_THROWS_AS(BilinearForm::metric(not_spd), NotSPD);
  (void)g;
}

TEST_CASE("cayley: L(J0) = 0 and K(0) = J0") {
  auto j0 = StructureOp::standard(4);
  auto w = cayley_forward(j0, j0);
  CHECK(w.mat.norm() < 1e-14);
  AntilinearParam zero{4, Mat::Zero(4, 4), j0};
  CHECK((cayley_inverse(zero).mat - j0.mat).norm() < 1e-14);
}

TEST_CASE("cayley round trips on tame structures") {
  Rng rng(11);
  for (int dim : {2, 4, 6}) {
    auto j0 = StructureOp::standard(dim);
    for (int t = 0; t < 100; ++t) {
      Mat wm = random_antilinear(dim, rng.uniform(0.05, 0.85), rng);
      AntilinearParam w{dim, wm, j0};
      CHECK(w.anticommute_residual() < 1e-12);
      auto j = cayley_inverse(w);
      auto w2 = cayley_forward(j, j0);
      CHECK((w2.mat - wm).norm() < 1e-12);
      CHECK((cayley_inverse(w2).mat - j.mat).norm() < 1e-12);
    }
  }
}

TEST_CASE("cayley: tame J near J_st has ||W|| < 1") {
  Rng rng(3);
  auto j0 = StructureOp::standard(4);
  for (int t = 0; t < 20; ++t) {
    Mat wm = random_antilinear(4, rng.uniform(0.1, 0.9), rng);
    auto j = cayley_inverse(AntilinearParam{4, wm, j0});
    auto w = cayley_forward(j, j0);
    Eigen::JacobiSVD<Mat> svd(w.mat);
    CHECK(svd.singularValues()(0) < 1.0);
  }
}

TEST_CASE("cayley boundary of the W-ball is out of domain") {
  auto j0 = StructureOp::standard(2);
  Mat w(2, 2);
  w << 1, 0, 0, -1;  // conjugation, ||W|| = 1
  CHECK_THROWS_AS(cayley_inverse(AntilinearParam{2, w, j0}), OutOfDomain);
}

TEST_CASE("taming margin values") {
  auto omega = std_symplectic(4);
  CHECK(taming_margin(omega, StructureOp::standard(4)) == Catch::Approx(1.0));
  double s = 0.5, c = std::sqrt(1.0 - s * s);
  CHECK(taming_margin(omega, j_sphere(c, 0, s)) == Catch::Approx(0.5).margin(1e-12));
  CHECK(taming_margin(omega, j_sphere(0, 0, -1)) == Catch::Approx(-1.0).margin(1e-12));
}

TEST_CASE("j_sphere: north pole is J_st, equator has zero diagonal blocks") {
  CHECK((j_sphere(0, 0, 1).mat - std_structure(4)).norm() < 1e-14);
  Mat m = j_sphere(1, 0, 0).mat;
  CHECK(m.block(0, 0, 2, 2).norm() == 0.0);
  CHECK(m.block(2, 2, 2, 2).norm() == 0.0);
  CHECK_THROWS_AS(j_sphere(1, 1, 1), OffSphere);
}

TEST_CASE("j_sphere: orthogonal and anti-self-adjoint for random triples") {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    double a = rng.gauss(), b = rng.gauss(), c = rng.gauss();
    double n = std::sqrt(a * a + b * b + c * c);
    if (n < 1e-6) continue;
    auto j = j_sphere(a / n, b / n, c / n);
    CHECK((j.mat.transpose() * j.mat - Mat::Identity(4, 4)).norm() < 1e-12);
    CHECK((j.mat.transpose() + j.mat).norm() < 1e-12);
    CHECK(j.square_residual() < 1e-12);
  }
}

TEST_CASE("wirtinger: J-invariant plane gives 1, Lagrangian plane gives 0") {
  auto omega = std_symplectic(4);
  auto j = StructureOp::standard(4);
  Vec e1 = Vec::Unit(4, 0), e3 = Vec::Unit(4, 2);
  Vec je1 = j.mat * e1;
  CHECK(wirtinger(omega, j, {e1, je1}) == Catch::Approx(1.0));
  CHECK(wirtinger(omega, j, {e1, e3}) == Catch::Approx(0.0).margin(1e-14));
  CHECK_THROWS_AS(wirtinger(omega, j, {e1, 2.0 * e3}), NotOrthonormal);
}

TEST_CASE("wirtinger: Monte-Carlo bound on random orthonormal 2-frames in R^6") {
  auto omega = std_symplectic(6);
  auto j = StructureOp::standard(6);
  Rng rng(17);
  for (int t = 0; t < 10000; ++t) {
    Vec a = rng.gauss_mat(6, 1), b = rng.gauss_mat(6, 1);
    a.normalize();
    b -= a.dot(b) * a;
    if (b.norm() < 1e-8) continue;
    b.normalize();
    double s = wirtinger(omega, j, {a, b});
    CHECK(std::abs(s) <= 1.0 + 1e-9);
  }
}

TEST_CASE("wirtinger: 4-frame spanning a complex plane pair") {
  auto omega = std_symplectic(4);
  auto j = StructureOp::standard(4);
  Vec e1 = Vec::Unit(4, 0), e3 = Vec::Unit(4, 2);
  CHECK(wirtinger(omega, j, {e1, Vec(j.mat * e1), e3, Vec(j.mat * e3)}) ==
        Catch::Approx(1.0));
}

TEST_CASE("nijenhuis: constant field vanishes, antisymmetry holds") {
  StructureFieldFn jconst = [](const Vec&) { return std_structure(4); };
  Vec x = Vec::Zero(4), a = Vec::Unit(4, 0), b = Vec::Unit(4, 1);
  CHECK(nijenhuis(jconst, x, a, b, 1e-4).norm() < 1e-12);

  // varying field over the structure sphere
  StructureFieldFn jvar = [](const Vec& p) {
    double c1 = 0.3 * std::sin(p[0]), c2 = 0.2 * std::cos(p[1] + p[2]);
    double s = std::sqrt(std::max(0.0, 1.0 - c1 * c1 - c2 * c2));
    return lincx::j_sphere(c1, c2, s).mat;
  };
  Vec x2(4);
  x2 << 0.2, -0.1, 0.3, 0.05;
  CHECK(nijenhuis(jvar, x2, a, a, 1e-4).norm() < 1e-12);
  Vec nab = nijenhuis(jvar, x2, a, b, 1e-4);
  Vec nba = nijenhuis(jvar, x2, b, a, 1e-4);
  CHECK((nab + nba).norm() < 1e-12);
  CHECK(nab.norm() > 1e-6);  // genuinely non-integrable sample

  // finite-difference self-consistency at two step sizes
  Vec n1 = nijenhuis(jvar, x2, a, b, 2e-3);
  Vec n2 = nijenhuis(jvar, x2, a, b, 1e-3);
  double e1 = (n1 - nab).norm(), e2 = (n2 - nab).norm();
  CHECK(e2 < 0.3 * e1);  // ~O(step^2)
}
