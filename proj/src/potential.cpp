#include "nhqm/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nhqm/errors.hpp"

namespace nhqm {

namespace {

bool finite(cdouble z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

Potential::Potential(std::vector<DeltaTerm> deltas, std::vector<SegmentTerm> segments)
    : deltas_(std::move(deltas)), segments_(std::move(segments)) {
  for (const auto& d : deltas_) {
    if (!std::isfinite(d.x) || !finite(d.z))
      throw InvalidInputError("potential: delta term has non-finite position or strength");
  }
  for (const auto& s : segments_) {
    if (!std::isfinite(s.a) || !std::isfinite(s.b) || !finite(s.v))
      throw InvalidInputError("potential: segment has non-finite edge or value");
    if (!(s.b > s.a)) {
      std::ostringstream msg;
      msg << "potential: segment (" << s.a << ", " << s.b << ") has non-positive width";
      throw InvalidInputError(msg.str());
    }
  }

  std::stable_sort(deltas_.begin(), deltas_.end(),
                   [](const DeltaTerm& l, const DeltaTerm& r) { return l.x < r.x; });
  std::stable_sort(segments_.begin(), segments_.end(),
                   [](const SegmentTerm& l, const SegmentTerm& r) { return l.a < r.a; });

  for (std::size_t i = 1; i < segments_.size(); ++i) {
    if (segments_[i].a < segments_[i - 1].b) {
      std::ostringstream msg;
      msg << "potential: segments (" << segments_[i - 1].a << ", " << segments_[i - 1].b
          << ") and (" << segments_[i].a << ", " << segments_[i].b << ") overlap";
      throw InvalidInputError(msg.str());
    }
  }
  for (const auto& d : deltas_) {
    for (const auto& s : segments_) {
      if (d.x > s.a && d.x < s.b) {
        std::ostringstream msg;
        msg << "potential: delta at x = " << d.x << " lies strictly inside segment (" << s.a
            << ", " << s.b << ")";
        throw InvalidInputError(msg.str());
      }
    }
  }
}

bool Potential::is_real() const {
  for (const auto& d : deltas_)
    if (d.z.imag() != 0.0) return false;
  for (const auto& s : segments_)
    if (s.v.imag() != 0.0) return false;
  return true;
}

std::pair<double, double> Potential::support() const {
  if (empty()) return {0.0, 0.0};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& d : deltas_) {
    lo = std::min(lo, d.x);
    hi = std::max(hi, d.x);
  }
  for (const auto& s : segments_) {
    lo = std::min(lo, s.a);
    hi = std::max(hi, s.b);
  }
  return {lo, hi};
}

Potential Potential::translated(double d) const {
  std::vector<DeltaTerm> ds = deltas_;
  std::vector<SegmentTerm> ss = segments_;
  for (auto& t : ds) t.x += d;
  for (auto& s : ss) {
    s.a += d;
    s.b += d;
  }
  return Potential(std::move(ds), std::move(ss));
}

Potential Potential::single_delta(cdouble z, double x) { return Potential({{x, z}}, {}); }

Potential Potential::double_delta(cdouble z_minus, cdouble z_plus, double a) {
  if (!(a > 0.0)) throw InvalidInputError("double_delta: a must be positive");
  return Potential({{-a, z_minus}, {a, z_plus}}, {});
}

Potential Potential::pt_barrier(double zeta, double a) {
  if (!(a > 0.0)) throw InvalidInputError("pt_barrier: a must be positive");
  if (zeta == 0.0) return Potential();
  const cdouble i(0.0, 1.0);
  return Potential({}, {{-a, 0.0, i * zeta}, {0.0, a, -i * zeta}});
}

}  // namespace nhqm
