#include "nhqm/transfer_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "nhqm/errors.hpp"

namespace nhqm {

namespace {

void require_wavenumber(double k, const char* who) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    std::ostringstream msg;
    msg << who << ": wavenumber k must be positive and finite, got " << k;
    throw InvalidInputError(msg.str());
  }
}

void require_finite(cdouble value, const char* who, const char* name) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw InvalidInputError(std::string(who) + ": " + name + " must be finite");
}

// The closed-form path is built and composed in extended precision: composed
// matrices can have large, strongly cancelling entries while det M = 1 must
// survive to 1e-9 after many factors.
using cldouble = std::complex<long double>;

struct Mat2 {
  cldouble m11{1.0L}, m12{0.0L};
  cldouble m21{0.0L}, m22{1.0L};
};

Mat2 multiply(const Mat2& a, const Mat2& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

cdouble narrow(cldouble z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

TransferMatrix narrow(const Mat2& m, double k) {
  return {narrow(m.m11), narrow(m.m12), narrow(m.m21), narrow(m.m22), k};
}

// sin(w)/w with the small-argument series; even in w, so branch-safe.
cldouble sinc(cldouble w) {
  if (std::abs(w) < 1e-4L) {
    const cldouble w2 = w * w;
    return 1.0L - w2 / 6.0L * (1.0L - w2 / 20.0L);
  }
  return std::sin(w) / w;
}

Mat2 delta_mat(cdouble z, double k) {
  const cldouble g = cldouble(0.0L, 1.0L) * cldouble(z.real(), z.imag()) / (2.0L * (long double)k);
  return {1.0L - g, -g, g, 1.0L + g};
}

Mat2 shifted_delta_mat(cdouble z, double x0, double k) {
  Mat2 m = delta_mat(z, k);
  if (x0 != 0.0) {
    // D M D^{-1} with D = diag(e^{-ikx0}, e^{+ikx0}): only off-diagonals rotate.
    const cldouble phase = std::exp(cldouble(0.0L, -2.0L * (long double)k * (long double)x0));
    m.m12 *= phase;
    m.m21 /= phase;
  }
  return m;
}

Mat2 segment_mat(cdouble v, double left, double right, double k) {
  const long double w = (long double)right - (long double)left;
  const long double kl = k;
  const cldouble kappa2 = cldouble(kl * kl) - cldouble(v.real(), v.imag());
  const cldouble kappa = std::sqrt(kappa2);  // principal branch; result is branch-free
  const cldouble c = std::cos(kappa * w);
  const cldouble s = w * sinc(kappa * w);  // sin(kappa w)/kappa, finite at kappa = 0

  // Propagator of (psi, psi') across the slab: psi'' = -kappa^2 psi.
  const cldouble p11 = c, p12 = s;
  const cldouble p21 = -kappa2 * s, p22 = c;

  // Conjugate by the plane-wave basis W(x) = [[e, 1/e], [ik e, -ik/e]], e = e^{ikx}.
  const cldouble ik(0.0L, kl);
  const cldouble ea = std::exp(cldouble(0.0L, kl * (long double)left));
  const cldouble eb = std::exp(cldouble(0.0L, kl * (long double)right));

  // P * W(left): columns are (psi, psi') of the two plane waves at the far edge.
  const cldouble q11 = p11 * ea + p12 * ik * ea;
  const cldouble q21 = p21 * ea + p22 * ik * ea;
  const cldouble q12 = p11 / ea - p12 * ik / ea;
  const cldouble q22 = p21 / ea - p22 * ik / ea;

  // W(right)^{-1} = (1/2) [[1/eb, 1/(ik eb)], [eb, -eb/(ik)]]
  return {0.5L * (q11 / eb + q21 / (ik * eb)), 0.5L * (q12 / eb + q22 / (ik * eb)),
          0.5L * (q11 * eb - q21 * eb / ik), 0.5L * (q12 * eb - q22 * eb / ik)};
}

Mat2 compose_mat(const Potential& potential, double k) {
  // Order features left to right; a delta sharing a segment edge goes before
  // the segment exactly when it sits at the segment's left edge.
  struct Feature {
    double position;
    int tie;  // deltas first on equal position
    bool is_delta;
    std::size_t index;
  };
  std::vector<Feature> features;
  features.reserve(potential.deltas().size() + potential.segments().size());
  for (std::size_t i = 0; i < potential.deltas().size(); ++i)
    features.push_back({potential.deltas()[i].x, 0, true, i});
  for (std::size_t i = 0; i < potential.segments().size(); ++i)
    features.push_back({potential.segments()[i].a, 1, false, i});
  std::stable_sort(features.begin(), features.end(), [](const Feature& l, const Feature& r) {
    return l.position < r.position || (l.position == r.position && l.tie < r.tie);
  });

  Mat2 total;
  for (const Feature& f : features) {
    Mat2 m;
    if (f.is_delta) {
      const auto& d = potential.deltas()[f.index];
      m = shifted_delta_mat(d.z, d.x, k);
    } else {
      const auto& s = potential.segments()[f.index];
      m = segment_mat(s.v, s.a, s.b, k);
    }
    total = multiply(m, total);  // left-most feature is the right-most factor
  }
  return total;
}

}  // namespace

TransferMatrix operator*(const TransferMatrix& lhs, const TransferMatrix& rhs) {
  const Mat2 a{cldouble(lhs.m11.real(), lhs.m11.imag()), cldouble(lhs.m12.real(), lhs.m12.imag()),
               cldouble(lhs.m21.real(), lhs.m21.imag()), cldouble(lhs.m22.real(), lhs.m22.imag())};
  const Mat2 b{cldouble(rhs.m11.real(), rhs.m11.imag()), cldouble(rhs.m12.real(), rhs.m12.imag()),
               cldouble(rhs.m21.real(), rhs.m21.imag()), cldouble(rhs.m22.real(), rhs.m22.imag())};
  return narrow(multiply(a, b), lhs.k);
}

TransferMatrix delta_transfer(cdouble z, double k) {
  require_wavenumber(k, "delta_transfer");
  require_finite(z, "delta_transfer", "strength z");
  return narrow(delta_mat(z, k), k);
}

TransferMatrix shifted_delta_transfer(cdouble z, double x0, double k) {
  require_wavenumber(k, "shifted_delta_transfer");
  require_finite(z, "shifted_delta_transfer", "strength z");
  if (!std::isfinite(x0)) throw InvalidInputError("shifted_delta_transfer: x0 must be finite");
  return narrow(shifted_delta_mat(z, x0, k), k);
}

TransferMatrix segment_transfer(cdouble v, double left, double right, double k) {
  require_wavenumber(k, "segment_transfer");
  require_finite(v, "segment_transfer", "potential value v");
  if (!std::isfinite(left) || !std::isfinite(right) || !(right > left)) {
    std::ostringstream msg;
    msg << "segment_transfer: degenerate interval (" << left << ", " << right << ")";
    throw InvalidInputError(msg.str());
  }
  return narrow(segment_mat(v, left, right, k), k);
}

TransferMatrix compose(const Potential& potential, double k) {
  require_wavenumber(k, "compose");
  return narrow(compose_mat(potential, k), k);
}

ScatteringData scattering_data(const TransferMatrix& m) {
  if (std::abs(m.m22) < kM22UnderflowGuard) {
    std::ostringstream msg;
    msg << "scattering amplitudes diverge: |m22| = " << std::abs(m.m22) << " at k = " << m.k;
    throw SingularityError(msg.str(), m.k);
  }
  ScatteringData out;
  out.k = m.k;
  out.t = 1.0 / m.m22;
  out.r_left = -m.m21 / m.m22;
  out.r_right = m.m12 / m.m22;
  out.deficit = std::norm(out.t) + std::norm(out.r_left);
  return out;
}

JostCoefficients jost_coefficients(const TransferMatrix& m) {
  JostCoefficients out;
  out.right_going = {m.m22, -m.m21, 1.0, 0.0};
  out.left_going = {0.0, 1.0, m.m12, m.m22};
  return out;
}

}  // namespace nhqm
