#pragma once

#include <utility>
#include <vector>

#include "nhqm/types.hpp"

namespace nhqm {

// Dirac delta term z*delta(x - x0). Units hbar = 2m = 1, so z is energy*length.
struct DeltaTerm {
  double x = 0.0;
  cdouble z;
};

// Constant complex potential v on the open interval (a, b).
struct SegmentTerm {
  double a = 0.0;
  double b = 0.0;
  cdouble v;
};

// A compactly supported 1D complex potential built from delta terms and
// piecewise-constant segments. Construction sorts features by position and
// enforces:
//   - segments have positive width and are pairwise non-overlapping,
//   - no delta lies strictly inside a segment (free regions or edges only).
class Potential {
 public:
  Potential() = default;
  Potential(std::vector<DeltaTerm> deltas, std::vector<SegmentTerm> segments);

  const std::vector<DeltaTerm>& deltas() const { return deltas_; }
  const std::vector<SegmentTerm>& segments() const { return segments_; }

  bool empty() const { return deltas_.empty() && segments_.empty(); }

  // True when every strength and segment value is real.
  bool is_real() const;

  // Smallest closed interval containing all features; {0, 0} when empty.
  std::pair<double, double> support() const;

  // Rigid translation x -> x + d of every feature.
  Potential translated(double d) const;

  static Potential single_delta(cdouble z, double x = 0.0);

  // z- delta(x + a) + z+ delta(x - a)
  static Potential double_delta(cdouble z_minus, cdouble z_plus, double a);

  // i*zeta on (-a, 0), -i*zeta on (0, a): the gain/loss barrier.
  static Potential pt_barrier(double zeta, double a);

 private:
  std::vector<DeltaTerm> deltas_;
  std::vector<SegmentTerm> segments_;
};

}  // namespace nhqm
