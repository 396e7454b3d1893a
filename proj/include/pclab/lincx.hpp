#pragma once

// Linear algebra of symplectic forms, metrics and (almost-)complex structure
// operators on R^{2n}.
//
// Conventions. A bilinear form is stored as the matrix of its values on the
// standard basis, form(u,v) = u^T mat v.  The standard symplectic form on
// R^{2n} with interleaved coordinates (x_1,y_1,...,x_n,y_n) therefore has
// 2x2 blocks [[0,1],[-1,0]] on the diagonal, and the standard structure
// operator J_st has blocks [[0,-1],[1,0]] (J_st e_x = e_y).

#include <cmath>
#include <functional>

#include "pclab/core.hpp"

namespace pclab::lincx {

struct BilinearForm {
  int dim = 0;
  Mat mat;

  static BilinearForm symplectic(const Mat& m, double tol = kTolAlg) {
    check_square_even(m);
    if ((m + m.transpose()).norm() > tol * (1.0 + m.norm()))
      throw NondegeneracyError("symplectic form must be antisymmetric");
    if (std::abs(m.determinant()) < tol)
      throw NondegeneracyError("symplectic form is degenerate");
    return {static_cast<int>(m.rows()), m};
  }

  static BilinearForm metric(const Mat& m, double tol = kTolAlg) {
    check_square_even(m);
    if ((m - m.transpose()).norm() > tol * (1.0 + m.norm()))
      throw NotSPD("metric must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    if (es.eigenvalues().minCoeff() <= tol) throw NotSPD("metric not positive definite");
    return {static_cast<int>(m.rows()), m};
  }

  double operator()(const Vec& u, const Vec& v) const { return u.dot(mat * v); }

 private:
  static void check_square_even(const Mat& m) {
    if (m.rows() != m.cols() || m.rows() < 2 || m.rows() % 2 != 0 || m.rows() > 64)
      throw Error("forms live on R^{2n}, 2 <= 2n <= 64");
  }
};

inline Mat std_structure(int dim) {
  Mat j = Mat::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; k += 2) {
    j(k, k + 1) = -1.0;
    j(k + 1, k) = 1.0;
  }
  return j;
}

inline Mat std_symplectic_mat(int dim) { return -std_structure(dim); }

inline BilinearForm std_symplectic(int dim) {
  return BilinearForm::symplectic(std_symplectic_mat(dim));
}

struct StructureOp {
  int dim = 0;
  Mat mat;

  static StructureOp from(const Mat& m, double tol = kTolAlg) {
    StructureOp s{static_cast<int>(m.rows()), m};
    if (m.rows() != m.cols() || m.rows() % 2 != 0) throw Error("structure operator must be 2n x 2n");
    double res = (m * m + Mat::Identity(m.rows(), m.cols())).norm();
    if (res > tol * (1.0 + m.squaredNorm())) throw Error("J*J != -I");
    return s;
  }

  static StructureOp standard(int dim) { return {dim, std_structure(dim)}; }

  double square_residual() const {
    return (mat * mat + Mat::Identity(dim, dim)).norm();
  }
};

// J_0-antilinear parameter W of the generalized Cayley chart, Eq (1.2.5):
// W J_0 = -J_0 W and I - W^T W positive definite.
struct AntilinearParam {
  int dim = 0;
  Mat mat;
  StructureOp base;

  double anticommute_residual() const { return (mat * base.mat + base.mat * mat).norm(); }

  bool in_domain(double margin = 0.0) const {
    Eigen::SelfAdjointEigenSolver<Mat> es(Mat::Identity(dim, dim) - mat.transpose() * mat);
    return es.eigenvalues().minCoeff() > margin;
  }
};

// min eigenvalue of sym(Omega J); positive iff omega tames J.  The quadratic
// form omega(v, Jv) = v^T (Omega J) v sees only the symmetric part.
inline double taming_margin(const BilinearForm& omega, const StructureOp& j) {
  if (omega.dim != j.dim) throw Error("dimension mismatch");
  Mat q = omega.mat * j.mat;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (q + q.transpose()));
  return es.eigenvalues().minCoeff();
}

// Calibration construction of Prop 1.2.1: A is the operator with
// omega(u,v) = g(Au,v), Q = sqrt(-A^2) in the g-inner product, J = A Q^{-1}.
inline StructureOp calibrated_from_metric(const BilinearForm& omega, const BilinearForm& g) {
  if (omega.dim != g.dim) throw Error("dimension mismatch");
  const int d = omega.dim;
  if (std::abs(omega.mat.determinant()) < kTolAlg) throw NondegeneracyError();
  Eigen::LLT<Mat> llt(g.mat);
  if (llt.info() != Eigen::Success) throw NotSPD();

  // omega(u,v) = u^T Omega v = u^T A^T G v  =>  A = G^{-1} Omega^T.
  Mat a = llt.solve(omega.mat.transpose());

  // -A^2 is g-self-adjoint positive; congruence by L^T reduces to a
  // Euclidean-symmetric eigenproblem. B = L^T A L^{-T} gives S = -B^2 sym.
  Mat l = llt.matrixL();
  Mat b = l.transpose() * a * l.transpose().fullPivLu().inverse();
  Mat s = -(b * b);
  s = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  if (es.eigenvalues().minCoeff() <= 0.0) throw NondegeneracyError("-A^2 not positive");
  Mat sqrt_inv = es.eigenvectors() *
                 es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                 es.eigenvectors().transpose();
  Mat j = b * sqrt_inv;               // structure in the congruent frame
  j = l.transpose().fullPivLu().solve(j * l.transpose());  // back to original frame
  return StructureOp::from(j, 1e-7);
}

// L(J) = -(J - J_0)(J + J_0)^{-1}, Eq (1.2.4).
inline AntilinearParam cayley_forward(const StructureOp& j, const StructureOp& j0) {
  if (j.dim != j0.dim) throw Error("dimension mismatch");
  Mat sum = j.mat + j0.mat;
  Eigen::FullPivLU<Mat> lu(sum);
  if (!lu.isInvertible() || std::abs(lu.determinant()) < kTolAlg) throw SingularSum();
  Mat w = -(j.mat - j0.mat) * lu.inverse();
  return AntilinearParam{j.dim, w, j0};
}

// K(W) = J_0 (I + W)(I - W)^{-1}, Eq (1.2.6).
inline StructureOp cayley_inverse(const AntilinearParam& w) {
  const int d = w.dim;
  if (!w.in_domain()) throw OutOfDomain("I - W^T W not positive definite");
  Mat den = Mat::Identity(d, d) - w.mat;
  Mat j = w.base.mat * (Mat::Identity(d, d) + w.mat) * den.fullPivLu().inverse();
  return StructureOp::from(j, 1e-8);
}

// The orthogonal structures on R^4, Eq (1.4.1); (c1,c2,s) on the unit sphere.
inline StructureOp j_sphere(double c1, double c2, double s, double tol = kTolAlg) {
  if (std::abs(c1 * c1 + c2 * c2 + s * s - 1.0) > tol) throw OffSphere();
  Mat m(4, 4);
  m << 0, -s, c1, c2,
       s, 0, c2, -c1,
      -c1, -c2, 0, -s,
      -c2, c1, s, 0;
  return StructureOp{4, m};
}

namespace detail {
// Pfaffian of a small antisymmetric matrix by first-row expansion.
inline double pfaffian(Mat a) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1.0;
  if (n % 2 != 0) return 0.0;
  if (n == 2) return a(0, 1);
  double acc = 0.0;
  double sign = 1.0;
  for (int k = 1; k < n; ++k) {
    Mat sub(n - 2, n - 2);
    int si = 0;
    for (int i = 1; i < n; ++i) {
      if (i == k) continue;
      int sj = 0;
      for (int j = 1; j < n; ++j) {
        if (j == k) continue;
        sub(si, sj++) = a(i, j);
      }
      ++si;
    }
    acc += sign * a(0, k) * pfaffian(sub);
    sign = -sign;
  }
  return acc;
}
}  // namespace detail

// sigma_k = omega^k / k! evaluated on a g-orthonormal 2k-frame, where
// g(u,v) = omega(u, Jv).  Under the no-1/2 wedge convention this is the
// Pfaffian of [omega(v_i, v_j)].
inline double wirtinger(const BilinearForm& omega, const StructureOp& j,
                        const std::vector<Vec>& vs, double tol = 1e-8) {
  const int k2 = static_cast<int>(vs.size());
  if (k2 == 0 || k2 % 2 != 0 || k2 > omega.dim) throw Error("need 2k vectors, 2k <= dim");
  Mat g = omega.mat * j.mat;  // g(u,v) = u^T Omega J v
  for (int i = 0; i < k2; ++i)
    for (int l = 0; l < k2; ++l) {
      double want = (i == l) ? 1.0 : 0.0;
      if (std::abs(vs[i].dot(g * vs[l]) - want) > tol) throw NotOrthonormal();
    }
  Mat a(k2, k2);
  for (int i = 0; i < k2; ++i)
    for (int l = 0; l < k2; ++l) a(i, l) = omega(vs[i], vs[l]);
  return detail::pfaffian(a);
}

using StructureFieldFn = std::function<Mat(const Vec&)>;

// Nijenhuis tensor via the flat symmetric connection,
// 4 N(X,Y) = (D_X J o J)Y - (D_Y J o J)X + (D_{JX} J)Y - (D_{JY} J)X,
// with D the central finite-difference directional derivative of the field.
inline Vec nijenhuis(const StructureFieldFn& jf, const Vec& x, const Vec& xv,
                     const Vec& yv, double fd_step) {
  if (fd_step <= 0.0) throw Error("fd_step must be positive");
  auto dj = [&](const Vec& dir) -> Mat {
    double nrm = dir.norm();
    if (nrm == 0.0) return Mat::Zero(x.size(), x.size());
    Vec u = dir / nrm;
    Mat d = (jf(x + fd_step * u) - jf(x - fd_step * u)) / (2.0 * fd_step);
    return d * nrm;
  };
  Mat j = jf(x);
  Vec out = dj(xv) * (j * yv) - dj(yv) * (j * xv) + dj(j * xv) * yv - dj(j * yv) * xv;
  return 0.25 * out;
}

}  // namespace pclab::lincx
