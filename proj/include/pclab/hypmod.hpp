#pragma once

// Closed-form hyperbolic collar constants, cylinder energy-decay rates, and
// the strip eigenvalue problem for totally real boundary pairs.

#include <functional>
#include <optional>

#include "pclab/lincx.hpp"

namespace pclab::hypmod {

struct CollarSpec {
  double ell = 0.0;       // intrinsic geodesic length
  double rho_star = 0.0;  // collar half-width
  double logR = 0.0;      // log of conformal radius
};

// Conformal factor of the collar metric ((l/2pi)/cos(l rho/2pi))^2.
inline double collar_metric(double ell, double rho) {
  if (!(ell > 0.0)) throw Error("collar needs ell > 0");
  if (!(std::abs(rho) < kPi * kPi / ell)) throw OutOfCollar();
  double c = ell / (2.0 * kPi);
  double cs = std::cos(c * rho);
  return (c / cs) * (c / cs);
}

struct CollarBounds {
  double upper = 0.0;     // log R <= pi^2 / ell          (boundary circle)
  double lower = 0.0;     // log R >= pi^2/ell - 2 pi/a*  (needs ell <= 1)
  double rho_star = 0.0;  // width solving a* = ell tan(ell rho*/2pi)
};

inline CollarBounds collar_bounds(double ell, double a_star) {
  if (!(ell > 0.0) || !(a_star > 0.0)) throw Error("collar bounds need ell, a* > 0");
  if (ell > 1.0) throw HypothesisViolated("lower collar bound requires ell <= 1");
  CollarBounds b;
  b.upper = kPi * kPi / ell;
  b.lower = b.upper - 2.0 * kPi / a_star;
  b.rho_star = (2.0 * kPi / ell) * std::atan(a_star / ell);
  if (b.rho_star < b.lower - 1e-12)
    throw Error("collar width fell below the guaranteed bound");
  return b;
}

// log R <= 2 pi^2 / ell for annuli around an interior geodesic.
inline double interior_collar_bound(double ell) {
  if (!(ell > 0.0)) throw Error("needs ell > 0");
  return 2.0 * kPi * kPi / ell;
}

struct DecayConstants {
  double gamma = 0.0;
  double lambda = 0.0;  // root > 1 of lambda = (gamma/2)(lambda^2 + 1)
};

inline DecayConstants decay_constants(double gamma) {
  if (gamma >= 1.0) throw NoRealRoot("gamma must be < 1");
  if (!(gamma > 0.0)) throw Error("gamma must be positive");
  double lambda = (1.0 + std::sqrt(1.0 - gamma * gamma)) / gamma;
  return {gamma, lambda};
}

inline double gamma_one() { return 2.0 / (std::exp(1.0) * std::exp(1.0)); }

// ---- cylinder decay probe ------------------------------------------------

struct CylinderProfile {
  std::vector<double> segment_energy;  // E_k = ||df||^2_{L^2(Z_k)}, k = 1..l
  std::vector<double> bound;           // RHS of the two-sided bound, k = 2..l-1
  bool verdict = false;
};

// Samples f on Z(0,l) = S^1 x [0,l] (64 theta nodes, 16 per unit t), forms
// per-segment energies and checks
//   E_k <= lambda^{-(k-2)} E_2 + lambda^{-(l-1-k)} E_{l-1},  2 <= k <= l-1,
// with lambda built from gamma_1 = 2/e^2.
inline CylinderProfile cylinder_decay_probe(
    const std::function<cplx(double t, double theta)>& f, int l) {
  if (l < 4) throw Error("cylinder probe needs l >= 4");
  const int nth = 64;
  const int nt_per = 16;
  const int nt = nt_per * l + 1;
  const double dth = 2.0 * kPi / nth;
  const double dt = static_cast<double>(l) / (nt - 1);

  std::vector<cplx> val(static_cast<std::size_t>(nt) * nth);
  for (int a = 0; a < nt; ++a)
    for (int b = 0; b < nth; ++b)
      val[static_cast<std::size_t>(a) * nth + b] = f(a * dt, b * dth);

  auto density = [&](int a, int b) {
    const auto at = [&](int aa, int bb) {
      return val[static_cast<std::size_t>(aa) * nth + ((bb % nth) + nth) % nth];
    };
    cplx ft;
    if (a == 0)
      ft = (at(1, b) - at(0, b)) / dt;
    else if (a == nt - 1)
      ft = (at(a, b) - at(a - 1, b)) / dt;
    else
      ft = (at(a + 1, b) - at(a - 1, b)) / (2.0 * dt);
    cplx fth = (at(a, b + 1) - at(a, b - 1)) / (2.0 * dth);
    return std::norm(ft) + std::norm(fth);
  };

  CylinderProfile out;
  out.segment_energy.assign(l, 0.0);
  for (int k = 0; k < l; ++k) {
    const int a0 = k * nt_per, a1 = (k + 1) * nt_per;
    double acc = 0.0;
    for (int a = a0; a <= a1; ++a) {
      double wt = (a == a0 || a == a1) ? 0.5 : 1.0;  // trapezoid in t
      for (int b = 0; b < nth; ++b) acc += wt * density(a, b);
    }
    out.segment_energy[k] = acc * dt * dth;
  }

  const double lambda = decay_constants(gamma_one()).lambda;
  out.verdict = true;
  for (int k = 2; k <= l - 1; ++k) {
    double rhs = std::pow(lambda, -(k - 2)) * out.segment_energy[1] +
                 std::pow(lambda, -(l - 1 - k)) * out.segment_energy[l - 2];
    out.bound.push_back(rhs);
    if (out.segment_energy[k - 1] > rhs * (1.0 + 1e-6) + 1e-300) out.verdict = false;
  }
  return out;
}

// ---- strip eigenvalue problem --------------------------------------------

// Pair of n-dimensional totally real subspaces of C^n = R^{2n}, each given
// by a 2n x n real basis matrix.
struct SubspacePair {
  Mat w0;
  Mat w1;

  int n() const { return static_cast<int>(w0.cols()); }
  int dim() const { return static_cast<int>(w0.rows()); }

  void validate() const {
    if (w0.rows() != w1.rows() || w0.cols() != w1.cols() || w0.rows() != 2 * w0.cols())
      throw Error("subspace bases must be 2n x n");
    Mat jst = lincx::std_structure(dim());
    for (const Mat* b : {&w0, &w1}) {
      Mat ext(dim(), 2 * n());
      ext << *b, jst * (*b);
      Eigen::FullPivLU<Mat> lu(ext);
      if (lu.rank() < dim()) throw NotTotallyReal();
    }
  }

  int intersection_dim() const {
    Mat both(dim(), 2 * n());
    both << w0, w1;
    Eigen::FullPivLU<Mat> lu(both);
    return 2 * n() - static_cast<int>(lu.rank());
  }
};

struct StripEigenResult {
  double lambda1 = 0.0;  // smallest positive eigenvalue
  double gamma_w = 0.0;  // 2 / (1 + cosh(2 sqrt(lambda1)))
  std::optional<double> p_star;  // corner regularity exponent, n = 1 only
  int zero_modes = 0;
  int intersection_dim = 0;
};

// Discretizes v : [0,1] -> C^n with v(0) in W0, v(1) in W1 (P1 finite
// elements; the Neumann-orthogonality conditions are natural) and solves the
// generalized eigenproblem for Q(v) = int |v'|^2 w.r.t. the L^2 form.
inline StripEigenResult strip_eigenvalue(const SubspacePair& pair, int nodes = 401) {
  pair.validate();
  const int d = pair.dim();
  const int nn = nodes;
  if (nn < 8) throw Error("strip discretization needs at least 8 nodes");
  const double h = 1.0 / (nn - 1);

  // orthonormal bases for the end constraints
  auto orth = [](const Mat& b) {
    Eigen::HouseholderQR<Mat> qr(b);
    Mat q = qr.householderQ() * Mat::Identity(b.rows(), b.cols());
    return q;
  };
  Mat b0 = orth(pair.w0), b1 = orth(pair.w1);

  const int nfree = d * (nn - 2) + pair.n() * 2;  // interior nodes + two ends
  // index maps: end 0 -> y0 (n), interior i=1..nn-2 -> d each, end 1 -> y1 (n)
  auto node_block = [&](int i) -> std::pair<int, int> {  // (offset, size)
    if (i == 0) return {0, pair.n()};
    if (i == nn - 1) return {pair.n() + d * (nn - 2), pair.n()};
    return {pair.n() + d * (i - 1), d};
  };
  auto node_basis = [&](int i) -> const Mat* {
    if (i == 0) return &b0;
    if (i == nn - 1) return &b1;
    return nullptr;
  };

  Mat stiff = Mat::Zero(nfree, nfree);
  Mat mass = Mat::Zero(nfree, nfree);
  Mat eye = Mat::Identity(d, d);
  for (int e = 0; e < nn - 1; ++e) {  // element between nodes e, e+1
    const int na = e, nb = e + 1;
    const Mat* ba = node_basis(na);
    const Mat* bb = node_basis(nb);
    Mat ra = ba ? *ba : eye, rb = bb ? *bb : eye;
    auto [oa, sa] = node_block(na);
    auto [ob, sb] = node_block(nb);
    // element stiffness (1/h)[1 -1; -1 1] (x) I_d, mass (h/6)[2 1; 1 2] (x) I_d
    Mat kaa = ra.transpose() * ra / h, kbb = rb.transpose() * rb / h;
    Mat kab = -ra.transpose() * rb / h;
    Mat maa = ra.transpose() * ra * (h / 3.0), mbb = rb.transpose() * rb * (h / 3.0);
    Mat mab = ra.transpose() * rb * (h / 6.0);
    stiff.block(oa, oa, sa, sa) += kaa;
    stiff.block(ob, ob, sb, sb) += kbb;
    stiff.block(oa, ob, sa, sb) += kab;
    stiff.block(ob, oa, sb, sa) += kab.transpose();
    mass.block(oa, oa, sa, sa) += maa;
    mass.block(ob, ob, sb, sb) += mbb;
    mass.block(oa, ob, sa, sb) += mab;
    mass.block(ob, oa, sb, sa) += mab.transpose();
  }

  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(stiff, mass);
  if (ges.info() != Eigen::Success) throw Error("strip eigensolver failed");
  Vec evs = ges.eigenvalues();

  StripEigenResult out;
  out.intersection_dim = pair.intersection_dim();
  const double tol0 = 1e-6;
  double lam1 = -1.0;
  for (int i = 0; i < evs.size(); ++i) {
    if (evs[i] < tol0)
      ++out.zero_modes;
    else if (lam1 < 0.0) {
      lam1 = evs[i];
      break;
    }
  }
  if (lam1 < 0.0) throw Error("no positive eigenvalue found");
  if (out.zero_modes != out.intersection_dim)
    throw DegeneratePair("discrete zero-mode count disagrees with dim(W0 cap W1)");
  out.lambda1 = lam1;
  out.gamma_w = 2.0 / (1.0 + std::cosh(2.0 * std::sqrt(lam1)));

  if (pair.n() == 1) {
    cplx g0(pair.w0(0, 0), pair.w0(1, 0));
    cplx g1(pair.w1(0, 0), pair.w1(1, 0));
    double alpha = std::arg(g1 / g0) / kPi;  // line angle as a fraction of pi
    if (alpha < 0.0) alpha += 1.0;
    if (alpha > 1e-12 && alpha < 1.0 - 1e-12) out.p_star = 2.0 / (1.0 - alpha);
  }
  return out;
}

}  // namespace pclab::hypmod
