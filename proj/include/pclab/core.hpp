#pragma once

// Common numeric types, error taxonomy and small utilities shared by all
// pclab modules.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace pclab {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Algebraic identity tolerance for well-conditioned matrices of dim <= 64.
inline constexpr double kTolAlg = 1e-9;

struct Error : std::runtime_error {
  explicit Error(const std::string& m) : std::runtime_error(m) {}
};

#define PCLAB_ERROR(NAME)                                 \
  struct NAME : Error {                                   \
    explicit NAME(const std::string& m = #NAME) : Error(m) {} \
  }

PCLAB_ERROR(NondegeneracyError);
PCLAB_ERROR(NotSPD);
PCLAB_ERROR(SingularSum);
PCLAB_ERROR(OutOfDomain);
PCLAB_ERROR(OffSphere);
PCLAB_ERROR(NotOrthonormal);
PCLAB_ERROR(DivByZero);
PCLAB_ERROR(NoContraction);
PCLAB_ERROR(MaxIter);
PCLAB_ERROR(NonIntegral);
PCLAB_ERROR(NegativeGenus);
PCLAB_ERROR(BoundViolation);
PCLAB_ERROR(EvenBennequin);
PCLAB_ERROR(ParityError);
PCLAB_ERROR(HypothesisViolated);
PCLAB_ERROR(UnsupportedAmbient);
PCLAB_ERROR(OutOfCollar);
PCLAB_ERROR(NoRealRoot);
PCLAB_ERROR(NotTotallyReal);
PCLAB_ERROR(DegeneratePair);
PCLAB_ERROR(BranchEscape);
PCLAB_ERROR(ChartOverflow);
PCLAB_ERROR(OffNeck);
PCLAB_ERROR(UsageError);
PCLAB_ERROR(ChecksumError);

#undef PCLAB_ERROR

// Deterministic RNG wrapper; every randomized suite seeds one of these.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double a = 0.0, double b = 1.0) {
    return std::uniform_real_distribution<double>(a, b)(eng_);
  }
  double gauss(double sigma = 1.0) {
    return std::normal_distribution<double>(0.0, sigma)(eng_);
  }
  int uniform_int(int a, int b) {  // inclusive
    return std::uniform_int_distribution<int>(a, b)(eng_);
  }
  Mat gauss_mat(int r, int c, double sigma = 1.0) {
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = gauss(sigma);
    return m;
  }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline int thread_budget() {
  if (const char* env = std::getenv("PCLAB_THREADS")) {
    int k = std::atoi(env);
    if (k >= 1) return k;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Chunked parallel loop over [0, count); runs serially when the budget is 1.
template <class F>
void parallel_for(std::int64_t count, F&& body) {
  const int nt = std::min<std::int64_t>(thread_budget(), count > 0 ? count : 1);
  if (nt <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  std::int64_t chunk = (count + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    std::int64_t lo = t * chunk, hi = std::min<std::int64_t>(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::int64_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = 1469598103934665603ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace pclab
