#include <catch2/catch_amalgamated.hpp>

#include "pclab/hypmod.hpp"

using namespace pclab;
using namespace pclab::hypmod;

TEST_CASE("collar metric: conformal factor and curvature -1") {
  CHECK(collar_metric(1.0, 0.0) ==
        Catch::Approx(1.0 / (4.0 * kPi * kPi)).epsilon(1e-14));
  CHECK_THROWS_AS(collar_metric(1.0, kPi * kPi + 0.1), OutOfCollar);

  // K = -(1/2) Laplacian(log f) / f for the conformal metric f (drho^2+dth^2)
  Rng rng(4);
  const double fd = 1e-3;
  for (int t = 0; t < 100; ++t) {
    double ell = rng.uniform(0.3, 2.0);
    double rho = rng.uniform(0.0, 0.8) * kPi * kPi / ell - 0.0;
    if (std::abs(rho) + 2 * fd >= kPi * kPi / ell) continue;
    auto logf = [&](double r) { return std::log(collar_metric(ell, r)); };
    double lap = (logf(rho + fd) - 2.0 * logf(rho) + logf(rho - fd)) / (fd * fd);
    double curv = -0.5 * lap / collar_metric(ell, rho);
    CHECK(curv == Catch::Approx(-1.0).margin(1e-4));
  }

  // factor blows up at the collar edge
  CHECK(collar_metric(1.0, kPi * kPi * (1 - 1e-9)) > 1e10);
}

TEST_CASE("collar bounds") {
  auto b = collar_bounds(1.0, 2.0 * kPi);
  CHECK(b.upper == Catch::Approx(kPi * kPi));
  CHECK(b.lower == Catch::Approx(kPi * kPi - 1.0));
  CHECK(b.rho_star >= b.lower);

  // rho* from the area equation; bisection oracle for tan
  double ell = 0.5, a_star = 1.0;
  auto b2 = collar_bounds(ell, a_star);
  double lo = 0.0, hi = kPi * kPi / ell * (1 - 1e-12);
  for (int k = 0; k < 200; ++k) {
    double mid = 0.5 * (lo + hi);
    (ell * std::tan(ell * mid / (2 * kPi)) < a_star ? lo : hi) = mid;
  }
  CHECK(b2.rho_star == Catch::Approx(lo).epsilon(1e-10));
  CHECK(b2.rho_star >= kPi * kPi / ell - 2 * kPi / a_star);

  CHECK(interior_collar_bound(0.5) == Catch::Approx(4.0 * kPi * kPi));
  CHECK_THROWS_AS(collar_bounds(1.5, 1.0), HypothesisViolated);
}

TEST_CASE("decay constants") {
  auto dc = decay_constants(gamma_one());
  double e2 = std::exp(2.0);
  CHECK(dc.lambda ==
        Catch::Approx(e2 * (1.0 + std::sqrt(1.0 - 4.0 / (e2 * e2))) / 2.0).epsilon(1e-14));
  CHECK(std::abs(dc.lambda - 0.5 * dc.gamma * (dc.lambda * dc.lambda + 1)) < 1e-12);

  // lambda decreasing in gamma, double root at gamma -> 1
  CHECK(decay_constants(0.9999).lambda == Catch::Approx(1.0).margin(0.02));
  double prev = 1e300;
  for (double g = 0.1; g < 1.0; g += 0.1) {
    double l = decay_constants(g).lambda;
    CHECK(l < prev);
    prev = l;
  }
  CHECK_THROWS_AS(decay_constants(1.0), NoRealRoot);
  CHECK_THROWS(decay_constants(-0.5));
}

TEST_CASE("decay recurrence A_k = (gamma/2)(A_{k-1} + A_{k+1})") {
  Rng rng(9);
  const int l = 12;
  for (int t = 0; t < 20; ++t) {
    double gamma = rng.uniform(0.05, 0.95);
    double lam = decay_constants(gamma).lambda;
    double a = rng.uniform(0.1, 5.0), b = rng.uniform(0.1, 5.0);
    auto A = [&](int k) {
      double den = 1.0 - std::pow(lam, 6 - 2 * l);
      return (std::pow(lam, -(k - 2)) - std::pow(lam, 6 - 2 * l + k - 2)) / den * a +
             (std::pow(lam, -(l - 1 - k)) - std::pow(lam, 6 - 2 * l + l - 1 - k)) / den * b;
    };
    for (int k = 3; k <= l - 2; ++k)
      CHECK(A(k) == Catch::Approx(0.5 * gamma * (A(k - 1) + A(k + 1))).epsilon(1e-10));
  }
}

TEST_CASE("cylinder decay probe") {
  const int l = 10;

  SECTION("single mode e^w holds with near-equality at the right end") {
    auto prof = cylinder_decay_probe(
        [](double t, double th) { return 0.01 * std::exp(cplx(t, th)); }, l);
    CHECK(prof.verdict);
    // exact per-segment integrals of e^{2t} as oracle (up to a common factor)
    for (int k = 2; k < l; ++k)
      CHECK(prof.segment_energy[k] / prof.segment_energy[k - 1] ==
            Catch::Approx(std::exp(2.0)).epsilon(1e-3));
    // near-equality: bound within a factor ~(e^2/lambda)^(l-1-k) at k = l-2
    double lam = decay_constants(gamma_one()).lambda;
    double slack = prof.bound[l - 2 - 2] / prof.segment_energy[l - 3];
    CHECK(slack < std::pow(std::exp(2.0) / lam, 3.0));
  }

  SECTION("constant maps trivially hold") {
    CHECK(cylinder_decay_probe([](double, double) { return cplx(1, 1); }, l).verdict);
  }

  SECTION("mode sums k in {1,-1,3,-3} hold strictly") {
    auto prof = cylinder_decay_probe(
        [l = l](double t, double th) {
          cplx w(t, th);
          return std::exp(-1.0 * l) * std::exp(w) + 0.5 * std::exp(-w) +
                 std::exp(-3.0 * l) * std::exp(3.0 * w) + 0.2 * std::exp(-3.0 * w);
        },
        l);
    CHECK(prof.verdict);
  }

  SECTION("linear drift in t is the negative control") {
    CHECK_FALSE(
        cylinder_decay_probe([](double t, double) { return cplx(0.3 * t, 0); }, l)
            .verdict);
  }
}

TEST_CASE("strip eigenvalue: (R, iR) and shooting oracle") {
  Mat w0(2, 1), w1(2, 1);
  w0 << 1, 0;
  w1 << 0, 1;
  auto r = strip_eigenvalue({w0, w1}, 401);
  CHECK(r.lambda1 == Catch::Approx((kPi / 2) * (kPi / 2)).margin(1e-4));
  REQUIRE(r.p_star);
  CHECK(*r.p_star == Catch::Approx(4.0).epsilon(1e-12));
  CHECK(r.gamma_w ==
        Catch::Approx(2.0 / (1.0 + std::cosh(2.0 * std::sqrt(r.lambda1)))).epsilon(1e-14));
  CHECK(r.zero_modes == 0);
  CHECK(r.intersection_dim == 0);
}

TEST_CASE("strip eigenvalue: equal subspaces, cosine oracle") {
  for (int n : {1, 2}) {
    Mat b = Mat::Zero(2 * n, n);
    for (int k = 0; k < n; ++k) b(2 * k, k) = 1.0;  // R^n inside C^n
    auto r = strip_eigenvalue({b, b}, 201);
    CHECK(r.lambda1 == Catch::Approx(kPi * kPi).margin(5e-3));
    CHECK(r.zero_modes == n);  // constants with values in W0 cap W1 = R^n
    CHECK(r.intersection_dim == n);
    CHECK(r.gamma_w == Catch::Approx(2.0 / (1.0 + std::cosh(2 * kPi))).margin(1e-5));
  }
}

TEST_CASE("strip eigenvalue: general angle alpha pi (shooting oracle)") {
  // W0 = R, W1 = e^{i alpha pi} R: lambda_1 = (alpha pi)^2 or ((1-alpha) pi)^2
  for (double alpha : {0.25, 0.4, 0.7}) {
    Mat w0(2, 1), w1(2, 1);
    w0 << 1, 0;
    w1 << std::cos(alpha * kPi), std::sin(alpha * kPi);
    auto r = strip_eigenvalue({w0, w1}, 401);
    double expected = std::pow(std::min(alpha, 1.0 - alpha) * kPi, 2.0);
    CHECK(r.lambda1 == Catch::Approx(expected).epsilon(2e-4));
    REQUIRE(r.p_star);
    CHECK(*r.p_star == Catch::Approx(2.0 / (1.0 - alpha)).epsilon(1e-10));
  }
}

TEST_CASE("strip eigenvalue: Richardson order 2 in the node count") {
  Mat w0(2, 1), w1(2, 1);
  w0 << 1, 0;
  w1 << 0, 1;
  double target = (kPi / 2) * (kPi / 2);
  double e1 = std::abs(strip_eigenvalue({w0, w1}, 101).lambda1 - target);
  double e2 = std::abs(strip_eigenvalue({w0, w1}, 201).lambda1 - target);
  CHECK(e2 < 0.3 * e1);
}

TEST_CASE("strip eigenvalue: guards") {
  Mat bad(2, 1);
  bad << 1, 0;
  Mat ibad = bad;  // same line twice is fine (intersection 1), but
  // a non-totally-real "basis" must fail: use the zero column
  Mat zero = Mat::Zero(2, 1);
  CHECK_THROWS_AS(SubspacePair{zero, bad}.validate(), NotTotallyReal);
}
