#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "trifreq/errors.hpp"

// Joint distributions of three boolean variables, constrained by singleton and
// pair frequencies, form a one-dimensional family parameterized by the triple
// frequency t.  This header builds that family, locates the entropy-maximizing
// t by bisection, and evaluates the closed-form approximation
//   t~ = u1 u2 u3 u4 / (l1 l2 l3)
// where u are the pair-only cells plus the all-false cell and l the
// single-only cells of the base point.

namespace trifreq {

// Cells are indexed by a bitmask S in [0, 8); bit k set means variable k+1 is
// true in the cell's conjunction.  cell[S] is the probability that exactly the
// variables in S are true.
inline constexpr int kNumCells = 8;
inline constexpr int kMaskNone = 0b000;
inline constexpr int kMaskTriple = 0b111;
inline constexpr int kSingleMasks[3] = {0b001, 0b010, 0b100};
inline constexpr int kPairMasks[3] = {0b011, 0b101, 0b110};

constexpr int cell_arity(int mask) { return std::popcount(static_cast<unsigned>(mask)); }

/// Parity class of S: even iff (3 - |S|) is even.  Even cells grow with t
/// along the feasible segment, odd cells shrink.
constexpr bool even_parity(int mask) { return ((3 - cell_arity(mask)) & 1) == 0; }

template <typename Scalar>
using CellArray = Eigen::Array<Scalar, kNumCells, 1>;

using TripleCells = CellArray<double>;

/// Direction of the feasible segment: v[S] = (-1)^(3-|S|).
template <typename Scalar = double>
inline const CellArray<Scalar>& cell_directions() {
  static const CellArray<Scalar> v = [] {
    CellArray<Scalar> d;
    for (int s = 0; s < kNumCells; ++s) d(s) = even_parity(s) ? Scalar(1) : Scalar(-1);
    return d;
  }();
  return v;
}

/// Singleton and pair frequencies of an item triple.  Valid instances satisfy
/// 0 <= p_ij <= min(s_i, s_j) and max(0, s_i + s_j - 1) <= p_ij.
template <typename Scalar>
struct TripleMarginals {
  Scalar s1, s2, s3;     // singleton frequencies
  Scalar p12, p13, p23;  // pair frequencies
};

/// Signed inclusion-exclusion over supersets with the triple frequency set to
/// t: cell[S] = sum_{S' >= S} (-1)^{|S' \ S|} theta_{S'}.  No feasibility
/// check; negative entries are what border computation inspects.
template <typename Scalar>
CellArray<Scalar> cell_values(const TripleMarginals<Scalar>& mg, Scalar t) {
  CellArray<Scalar> c;
  c(kMaskTriple) = t;
  c(0b011) = mg.p12 - t;
  c(0b101) = mg.p13 - t;
  c(0b110) = mg.p23 - t;
  c(0b001) = mg.s1 - mg.p12 - mg.p13 + t;
  c(0b010) = mg.s2 - mg.p12 - mg.p23 + t;
  c(0b100) = mg.s3 - mg.p13 - mg.p23 + t;
  c(kMaskNone) = Scalar(1) - mg.s1 - mg.s2 - mg.s3 + mg.p12 + mg.p13 + mg.p23 - t;
  return c;
}

/// Tolerance absorbing float noise when marginals come from exact integer
/// counts divided by m.
inline constexpr double kFeasibilityTol = 1e-12;

/// Checked cell construction; throws InfeasibleCells if t lies outside the
/// admissible range for these marginals.
template <typename Scalar>
CellArray<Scalar> cells_from_marginals(const TripleMarginals<Scalar>& mg, Scalar t) {
  CellArray<Scalar> c = cell_values(mg, t);
  if ((c < Scalar(-kFeasibilityTol)).any())
    throw InfeasibleCells("cell below -1e-12 at t=" + std::to_string(static_cast<double>(t)));
  return c;
}

/// The family of joint distributions consistent with a set of marginals:
/// cells(t) = base + t * v for t in [lower, upper].
template <typename Scalar>
struct FeasibleSegment {
  CellArray<Scalar> base;  // cells at t = 0
  Scalar lower, upper;
};

/// Border computation: lower = max(0, max over even cells of -base), so every
/// even cell base + t stays non-negative, and upper = min over odd cells of
/// base, so every odd cell base - t does.
template <typename Scalar>
FeasibleSegment<Scalar> build_segment(const TripleMarginals<Scalar>& mg) {
  FeasibleSegment<Scalar> seg;
  seg.base = cell_values(mg, Scalar(0));
  Scalar lo(0);
  Scalar hi = std::numeric_limits<Scalar>::max();
  for (int s = 0; s < kNumCells; ++s) {
    if (even_parity(s))
      lo = std::max(lo, -seg.base(s));
    else
      hi = std::min(hi, seg.base(s));
  }
  if (lo > hi + Scalar(kFeasibilityTol))
    throw InfeasibleMarginals("empty feasible segment: l=" + std::to_string(static_cast<double>(lo)) +
                              " > r=" + std::to_string(static_cast<double>(hi)));
  seg.lower = std::min(lo, hi);
  seg.upper = hi;
  return seg;
}

/// Shannon entropy in nats of the distribution at parameter t, with the
/// 0 log 0 := 0 convention.  Expects t in [lower, upper]; cells are clamped at
/// zero to absorb border rounding.
template <typename Scalar>
Scalar entropy_at(const FeasibleSegment<Scalar>& seg, Scalar t) {
  const CellArray<Scalar> c = (seg.base + cell_directions<Scalar>() * t).max(Scalar(0));
  return -((c > Scalar(0)).select(c * c.log(), CellArray<Scalar>::Zero())).sum();
}

/// Vectorized overload: entropy at each parameter in ts.
template <typename Scalar>
Eigen::ArrayX<Scalar> entropy_at(const FeasibleSegment<Scalar>& seg,
                                 const Eigen::Ref<const Eigen::ArrayX<Scalar>>& ts) {
  Eigen::ArrayX<Scalar> h = Eigen::ArrayX<Scalar>::Zero(ts.size());
  const CellArray<Scalar>& v = cell_directions<Scalar>();
  for (int s = 0; s < kNumCells; ++s) {
    // max against a tiny positive floor keeps c*log(c) finite at the borders
    // where a cell is exactly zero; the contribution there is ~1e-297.
    auto c = (seg.base(s) + v(s) * ts).max(std::numeric_limits<Scalar>::min());
    h -= c * c.log();
  }
  return h;
}

/// dH/dt = sum_S (-1)^(3-|S|) log(1/cell_S(t)); defined strictly inside
/// (lower, upper) where every cell is positive.
template <typename Scalar>
Scalar entropy_derivative(const FeasibleSegment<Scalar>& seg, Scalar t) {
  const CellArray<Scalar>& v = cell_directions<Scalar>();
  const CellArray<Scalar> c = seg.base + v * t;
  if ((c <= Scalar(0)).any())
    throw DomainError("entropy derivative needs all cells positive, t=" +
                      std::to_string(static_cast<double>(t)));
  return -(v * c.log()).sum();
}

template <typename Scalar>
struct MaxentSolution {
  Scalar t = Scalar(0);       // entropy-maximizing triple frequency
  bool clamped = false;       // hit a border (or the segment was degenerate)
  int iterations = 0;         // bisection steps actually taken
  Scalar residual =           // |dH/dt| at t; NaN for a degenerate segment
      std::numeric_limits<Scalar>::quiet_NaN();
};

/// Bisection on the sign of dH/dt.  The derivative diverges to +inf at the
/// lower border and -inf at the upper one, so with exact marginals the
/// maximum is interior; the one-sided probes at distance delta catch the
/// float-pathological cases and report them as clamped.
template <typename Scalar>
MaxentSolution<Scalar> solve_tmax(const FeasibleSegment<Scalar>& seg, int iterations = 30) {
  const Scalar l = seg.lower, r = seg.upper;
  const Scalar width = r - l;
  MaxentSolution<Scalar> sol;
  if (width <= Scalar(1e-15)) {  // degenerate segment
    sol.t = l;
    sol.clamped = true;
    return sol;
  }
  const Scalar delta = Scalar(1e-15) * std::max(Scalar(1), width);
  if (const Scalar d = entropy_derivative(seg, l + delta); d <= Scalar(0)) {
    sol.t = l;
    sol.clamped = true;
    sol.residual = std::abs(d);
    return sol;
  }
  if (const Scalar d = entropy_derivative(seg, r - delta); d >= Scalar(0)) {
    sol.t = r;
    sol.clamped = true;
    sol.residual = std::abs(d);
    return sol;
  }
  Scalar lo = l, hi = r;
  int used = 0;
  while (used < iterations) {
    const Scalar mid = (lo + hi) / 2;
    const Scalar d = entropy_derivative(seg, mid);
    ++used;
    if (d == Scalar(0)) {
      lo = hi = mid;
      break;
    }
    (d > Scalar(0) ? lo : hi) = mid;
  }
  sol.t = (lo + hi) / 2;
  sol.iterations = used;
  sol.residual = std::abs(entropy_derivative(seg, sol.t));
  return sol;
}

/// t~ = (pair-only cells product * all-false cell) / (single-only cells
/// product).  Evaluated on cells at t = 0 this approximates the maxent triple
/// frequency from above; evaluated on the maxent distribution's own cells it
/// reproduces its triple frequency exactly.
template <typename Scalar>
Scalar closed_form_estimate(const CellArray<Scalar>& cells) {
  for (int s : kSingleMasks)
    if (!(cells(s) > Scalar(0)))
      throw ZeroDenominator("single-only cell not positive");
  return cells(0b011) * cells(0b101) * cells(0b110) * cells(kMaskNone) /
         (cells(0b001) * cells(0b010) * cells(0b100));
}

/// Clamped variant over a segment's base cells: min(t~, upper), floored at
/// lower; an undefined t~ (vanishing single-only cell) clamps to upper.
template <typename Scalar>
Scalar closed_form_clamped(const FeasibleSegment<Scalar>& seg) {
  Scalar tt = std::numeric_limits<Scalar>::infinity();
  if (seg.base(0b001) > Scalar(0) && seg.base(0b010) > Scalar(0) && seg.base(0b100) > Scalar(0))
    tt = closed_form_estimate(seg.base);
  return std::clamp(tt, seg.lower, seg.upper);
}

template <typename Scalar>
struct Interval {
  Scalar lo, hi;
};

/// Range of t~ when every cell carries an independent multiplicative error in
/// [1-eps, 1+eps].  The extremes are attained at the corners: all numerator
/// cells scaled one way, all denominator cells the other.
template <typename Scalar>
Interval<Scalar> perturbed_closed_form(const CellArray<Scalar>& cells, Scalar rel_err) {
  if (!(rel_err >= Scalar(0)) || rel_err >= Scalar(0.5))
    throw DomainError("relative error must lie in [0, 0.5)");
  const Scalar tt = closed_form_estimate(cells);
  const Scalar up = Scalar(1) + rel_err;
  const Scalar dn = Scalar(1) - rel_err;
  const Scalar up3 = up * up * up, dn3 = dn * dn * dn;
  return {tt * (dn3 * dn) / up3, tt * (up3 * up) / dn3};
}

}  // namespace trifreq
