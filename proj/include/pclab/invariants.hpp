#pragma once

// Exact integer arithmetic for the topological formulas: genus sums with
// nodes and cusps, Bennequin/conductor bookkeeping, Lai indices and the
// Stein criterion, Seiberg-Witten genus bounds and envelope thresholds.

#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "pclab/core.hpp"

namespace pclab::invariants {

using i64 = long long;

// Homology/characteristic data of an immersed surface.
struct SurfaceData {
  std::vector<i64> components;  // genus g_j per component
  i64 M2 = 0;     // [M]^2
  i64 c1M = 0;    // c_1(X)[M]
  i64 delta = 0;  // node count
  i64 kappa = 0;  // total cusp conductor
  i64 total_genus() const {
    return std::accumulate(components.begin(), components.end(), i64{0});
  }
  i64 chi() const {  // for connected curves: 2 - 2g
    if (components.size() != 1) throw Error("chi defined for connected data");
    return 2 - 2 * components[0];
  }
  void validate() const {
    if (delta < 0)
      throw Error("negative double points are rejected (only positive nodes counted)");
    if (kappa < 0) throw Error("kappa must be >= 0");
    for (i64 g : components)
      if (g < 0) throw NegativeGenus("component genus must be >= 0");
  }
};

struct CuspData {
  i64 ord_du = 1;    // vanishing order of du at the cusp
  i64 bennequin = 1; // Bennequin index of the link, odd
};

// sum g_j = ([M]^2 - c_1(X)[M])/2 + d - delta - kappa
inline i64 genus_sum(const SurfaceData& s) {
  s.validate();
  const i64 d = static_cast<i64>(s.components.size());
  const i64 num = s.M2 - s.c1M;
  if (((num % 2) + 2) % 2 != 0)
    throw NonIntegral("[M]^2 - c_1(X)[M] must be even");
  i64 g = num / 2 + d - s.delta - s.kappa;
  if (g < 0)
    throw NegativeGenus("genus formula gives " + std::to_string(g) +
                        ": inconsistent surface data");
  return g;
}

// b(gamma_{r2}) = b(gamma_{r1}) + 2 sum delta_x
inline i64 bennequin_update(i64 b_inner, const std::vector<i64>& deltas) {
  return b_inner + 2 * std::accumulate(deltas.begin(), deltas.end(), i64{0});
}

// conductor kappa = (b+1)/2, with the lower bound b >= 2 ord_0(du) - 1
inline i64 conductor(const CuspData& c) {
  if (((c.bennequin % 2) + 2) % 2 != 1) throw EvenBennequin();
  if (c.ord_du < 1) throw Error("ord du must be >= 1");
  if (c.bennequin < 2 * c.ord_du - 1)
    throw BoundViolation("Bennequin index below 2 ord(du) - 1");
  return (c.bennequin + 1) / 2;
}

struct LaiIndices {
  i64 i_plus = 0;
  i64 i_minus = 0;
  bool stein_eligible = false;  // 2 I_+/- = chi + S^2 +/- c_1 S <= 0 both
};

// I_+/- = (chi(S) + S^2 +/- c_1(X).[S]) / 2
inline LaiIndices lai_indices(i64 chi, i64 s2, i64 c1s) {
  i64 ap = chi + s2 + c1s, am = chi + s2 - c1s;
  if (((ap % 2) + 2) % 2 != 0 || ((am % 2) + 2) % 2 != 0)
    throw ParityError("chi + S^2 +/- c1.S must be even");
  LaiIndices r{ap / 2, am / 2, false};
  r.stein_eligible = (r.i_plus <= 0 && r.i_minus <= 0);
  return r;
}

struct SwVerdict {
  bool adjunction_holds = false;  // M^2 + |c1.M| <= 2g - 2
  bool kronheimer_holds = false;  // |c1.M| <= max{2g-2, 0}
  i64 lhs = 0;
  i64 rhs = 0;
};

inline SwVerdict sw_adjunction_check(const SurfaceData& s) {
  s.validate();
  if (s.M2 < 0) throw HypothesisViolated("requires non-negative self-intersection");
  const i64 g = s.total_genus();
  SwVerdict v;
  v.lhs = s.M2 + std::llabs(s.c1M);
  v.rhs = 2 * g - 2;
  v.adjunction_holds = v.lhs <= v.rhs;
  v.kronheimer_holds = std::llabs(s.c1M) <= std::max<i64>(2 * g - 2, 0);
  return v;
}

enum class Ambient { CP2, CP1xCP1, CP1xY, Blowup, Custom };

inline Ambient ambient_from_string(const std::string& s) {
  if (s == "cp2") return Ambient::CP2;
  if (s == "cp1xcp1") return Ambient::CP1xCP1;
  if (s == "cp1xy") return Ambient::CP1xY;
  if (s == "blowup") return Ambient::Blowup;
  throw UnsupportedAmbient("unknown ambient: " + s);
}

enum class Envelope { FullExtension, SteinIsotopyPossible, FiberExtension };

inline const char* to_string(Envelope e) {
  switch (e) {
    case Envelope::FullExtension: return "FullExtension";
    case Envelope::SteinIsotopyPossible: return "SteinIsotopyPossible";
    default: return "FiberExtension";
  }
}

struct EnvelopeVerdict {
  Envelope verdict = Envelope::FullExtension;
  i64 threshold = 0;  // genus threshold of the relevant corollary
  // CP^2 only: symplectic surfaces of degree m <= 8 get the full envelope
  std::optional<bool> symplectic_degree_bound;
};

// Envelope criteria:
//   CP^2:        g < (d^2+3d+2)/2        -> FullExtension
//   CP^1xCP^1:   d1 d2 = 0               -> FiberExtension
//                g < d1 d2 + |d1+d2| + 1 -> FullExtension
//   CP^1 x Y:    g < d + 1               -> FiberExtension (extends along fibers)
inline EnvelopeVerdict envelope_criterion(Ambient a, i64 d1, i64 d2, i64 g) {
  EnvelopeVerdict out;
  switch (a) {
    case Ambient::CP2: {
      if (d1 <= 0) throw UnsupportedAmbient("CP2 needs positive degree");
      out.threshold = (d1 * d1 + 3 * d1 + 2) / 2;
      out.verdict = g < out.threshold ? Envelope::FullExtension
                                      : Envelope::SteinIsotopyPossible;
      out.symplectic_degree_bound = (d1 >= 1 && d1 <= 8);
      return out;
    }
    case Ambient::CP1xCP1: {
      if (d1 == 0 && d2 == 0) throw UnsupportedAmbient("bidegree must be non-zero");
      out.threshold = d1 * d2 + std::llabs(d1 + d2) + 1;
      if (d1 * d2 == 0)
        out.verdict = Envelope::FiberExtension;
      else
        out.verdict = g < out.threshold ? Envelope::FullExtension
                                        : Envelope::SteinIsotopyPossible;
      return out;
    }
    case Ambient::CP1xY: {
      if (d1 <= 0) throw UnsupportedAmbient("CP1xY needs positive degree");
      out.threshold = d1 + 1;
      out.verdict = g < out.threshold ? Envelope::FiberExtension
                                      : Envelope::SteinIsotopyPossible;
      return out;
    }
    default:
      throw UnsupportedAmbient("no envelope criterion for this ambient");
  }
}

// Immersed surfaces: effective genus g + kappa_+ (positive double points
// traded for handles).
inline SurfaceData immersed_adjustment(i64 kappa_plus, SurfaceData base) {
  if (kappa_plus < 0) throw Error("kappa_+ must be >= 0");
  base.validate();
  if (base.components.empty()) throw Error("need at least one component");
  base.components[0] += kappa_plus;
  return base;
}

// Ambient catalog used by the CLI: c1-pairing and self-intersection for a
// surface of the given (bi)degree.
struct AmbientClassData {
  i64 M2 = 0;
  i64 c1M = 0;
};

inline AmbientClassData ambient_pairing(Ambient a, i64 d1, i64 d2, i64 blowup_k = 0,
                                        const std::vector<i64>& exceptional = {}) {
  switch (a) {
    case Ambient::CP2:
      return {d1 * d1, 3 * d1};
    case Ambient::CP1xCP1:
      return {2 * d1 * d2, 2 * (d1 + d2)};
    case Ambient::CP1xY:
      return {0, 2 * d1};
    case Ambient::Blowup: {
      // class d1 H - sum m_j E_j in the k-fold blow-up of CP^2
      if (static_cast<i64>(exceptional.size()) != blowup_k)
        throw UnsupportedAmbient("need one multiplicity per blow-up");
      i64 m2 = d1 * d1, c1 = 3 * d1;
      for (i64 mj : exceptional) {
        m2 -= mj * mj;  // E_j^2 = -1
        c1 -= mj;       // c_1 -> c_1 - sum [E_j]
      }
      return {m2, c1};
    }
    default:
      throw UnsupportedAmbient("custom ambients need explicit pairings");
  }
}

}  // namespace pclab::invariants
