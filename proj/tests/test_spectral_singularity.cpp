#include <doctest.h>

#include <cmath>
#include <random>

#include "nhqm/errors.hpp"
#include "nhqm/oracle.hpp"
#include "nhqm/spectral_singularity.hpp"
#include "test_support.hpp"

using namespace nhqm;

namespace {
const cdouble I(0.0, 1.0);
}

TEST_SUITE("spectral_singularity") {

TEST_CASE("closed-form delta singularity") {
  SUBCASE("z = 2i sits at k* = 1") {
    const auto s = delta_singularity(2.0 * I);
    REQUIRE(s.has_value());
    CHECK(s->k_star == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s->e_star == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s->residual <= 1e-12);
  }
  SUBCASE("real coupling has none") { CHECK_FALSE(delta_singularity(1.0).has_value()); }
  SUBCASE("negative imaginary coupling has none") {
    CHECK_FALSE(delta_singularity(-2.0 * I).has_value());
    // And indeed |m22| never vanishes on the positive axis.
    const auto found = find_singularities(Potential::single_delta(-2.0 * I), 0.05, 10.0, 1024);
    CHECK(found.empty());
  }
  SUBCASE("zero coupling is invalid") {
    CHECK_THROWS_AS(delta_singularity(0.0), InvalidInputError);
  }
}

TEST_CASE("grid scan finds the delta singularity") {
  const auto found = find_singularities(Potential::single_delta(2.0 * I), 0.1, 5.0, 512);
  REQUIRE(found.size() == 1);
  CHECK(std::abs(found[0].k_star - 1.0) <= 1e-6);
  CHECK(found[0].residual <= 1e-8);
  CHECK(found[0].e_star == found[0].k_star * found[0].k_star);
  CHECK_FALSE(found[0].on_boundary);
}

TEST_CASE("no false positives") {
  SUBCASE("generic complex strength") {
    CHECK(find_singularities(Potential::single_delta(1.0 + 2.0 * I), 0.1, 5.0, 512).empty());
  }
  SUBCASE("real potentials cannot reach |m22| < 1") {
    std::mt19937_64 rng(23u);
    std::uniform_real_distribution<double> strength(-5.0, 5.0);
    for (int trial = 0; trial < 10; ++trial) {
      const Potential p({{-0.7, strength(rng)}}, {{0.0, 1.5, strength(rng)}});
      CHECK(find_singularities(p, 0.1, 8.0, 256).empty());
    }
  }
  SUBCASE("invalid range is rejected") {
    CHECK_THROWS_AS(find_singularities(Potential(), -1.0, 2.0, 64), InvalidInputError);
    CHECK_THROWS_AS(find_singularities(Potential(), 2.0, 1.0, 64), InvalidInputError);
    CHECK_THROWS_AS(find_singularities(Potential(), 0.5, 2.0, 8), InvalidInputError);
  }
}

TEST_CASE("closed form agrees with the scanner on random strengths") {
  std::mt19937_64 rng(29u);
  std::uniform_real_distribution<double> lambda_dist(0.1, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double lambda = lambda_dist(rng);
    const auto closed = delta_singularity(I * lambda);
    REQUIRE(closed.has_value());
    const auto scanned =
        find_singularities(Potential::single_delta(I * lambda), 0.02, 6.0, 512);
    REQUIRE(scanned.size() == 1);
    CHECK(std::abs(closed->k_star - scanned[0].k_star) <= 1e-6);
  }
}

TEST_CASE("scanner zero is confirmed by an independent oracle rescan") {
  // PT double delta z- = conj(z+): tune the strength until the scanner
  // reports a genuine singularity, then re-check |m22| with the ODE oracle.
  const double a = 0.5;
  const auto min_abs_m22 = [&](double mu) {
    const Potential p = Potential::double_delta(-I * mu, I * mu, a);
    double best = std::numeric_limits<double>::infinity();
    const auto found = find_singularities(p, 0.05, 8.0, 512, 1e30);
    for (const auto& s : found) best = std::min(best, s.residual);
    return best;
  };
  // Bracket a sign change of the minimum surrogate via a coarse sweep, then
  // contract with golden-section on mu.
  double best_mu = 1.0, best_val = std::numeric_limits<double>::infinity();
  for (double mu = 0.2; mu <= 6.0; mu += 0.05) {
    const double v = min_abs_m22(mu);
    if (v < best_val) {
      best_val = v;
      best_mu = mu;
    }
  }
  double lo = best_mu - 0.05, hi = best_mu + 0.05;
  for (int iter = 0; iter < 80 && hi - lo > 1e-13; ++iter) {
    const double m1 = lo + 0.381966 * (hi - lo);
    const double m2 = hi - 0.381966 * (hi - lo);
    if (min_abs_m22(m1) < min_abs_m22(m2))
      hi = m2;
    else
      lo = m1;
  }
  const double mu_star = 0.5 * (lo + hi);
  const Potential p = Potential::double_delta(-I * mu_star, I * mu_star, a);
  const auto found = find_singularities(p, 0.05, 8.0, 512);
  REQUIRE_FALSE(found.empty());
  for (const auto& s : found) {
    CAPTURE(s.k_star);
    CHECK(s.residual <= 1e-8);
    CHECK(std::abs(ode_transfer(p, s.k_star).m22) <= 1e-8);
  }
}

TEST_CASE("resonance curve") {
  SUBCASE("imaginary delta carries epsilon and the closed-form deficit") {
    const Potential p = Potential::single_delta(2.0 * I);
    const auto curve = resonance_curve(p, {2.0});
    REQUIRE(curve.size() == 1);
    REQUIRE(curve[0].epsilon.has_value());
    CHECK(*curve[0].epsilon == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(curve[0].deficit == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(curve[0].deficit ==
          doctest::Approx(curve[0].t_abs2 + curve[0].r_abs2).epsilon(1e-12));
  }
  SUBCASE("real strengths give unit deficit and no epsilon") {
    const auto curve = resonance_curve(Potential::single_delta(1.0), {0.5, 1.0, 2.0});
    for (const auto& point : curve) {
      CHECK_FALSE(point.epsilon.has_value());
      CHECK(point.deficit == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("epsilon-deficit identity on a grid") {
    const double lambda = 2.0;
    const Potential p = Potential::single_delta(I * lambda);
    std::vector<double> grid;
    for (int i = 0; i < 200; ++i) grid.push_back(0.11 + 0.05 * i);
    for (const auto& point : resonance_curve(p, grid)) {
      REQUIRE(point.epsilon.has_value());
      const double eps = *point.epsilon;
      if (std::abs(eps) < 1e-3) continue;  // too close to the singularity
      const double expected = 2.0 * (1.0 - eps) / (eps * eps) + 1.0;
      CHECK(std::abs(point.deficit - expected) <= 1e-10 * std::abs(expected));
    }
  }
  SUBCASE("deficit diverges quadratically toward the singularity") {
    const double lambda = 2.0;
    const Potential p = Potential::single_delta(I * lambda);
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const double k = lambda / (2.0 * (1.0 - eps));
      const auto curve = resonance_curve(p, {k});
      CHECK(std::abs(curve[0].deficit * eps * eps - 2.0) <= 5.0 * eps * 2.0);
    }
  }
  SUBCASE("exact singular point is flagged infinite, not fatal") {
    const auto curve = resonance_curve(Potential::single_delta(2.0 * I), {0.9, 1.0, 1.1});
    REQUIRE(curve.size() == 3);
    CHECK(std::isinf(curve[1].deficit));
    CHECK(std::isfinite(curve[0].deficit));
    CHECK(std::isfinite(curve[2].deficit));
  }
}

TEST_CASE("amplitudes grow on approach to any reported singularity") {
  const auto found = find_singularities(Potential::single_delta(3.0 * I), 0.1, 6.0, 512);
  REQUIRE(found.size() == 1);
  const Potential& p = found[0].parameters;
  const double k_star = found[0].k_star;
  double previous_t = 0.0, previous_r = 0.0;
  for (double delta : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const ScatteringData data = scattering_data(compose(p, k_star + delta));
    CHECK(std::abs(data.t) > previous_t);
    CHECK(std::abs(data.r_left) > previous_r);
    previous_t = std::abs(data.t);
    previous_r = std::abs(data.r_left);
  }
}

TEST_CASE("pt barrier resonator") {
  // Tune the gain/loss strength at a = 1 into the first singular point
  // (zeta ~ 2.07), then check the resonance phenomenology there.
  const auto surrogate = [](double zeta) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : find_singularities(Potential::pt_barrier(zeta, 1.0), 0.3, 3.0, 512, 1e30))
      best = std::min(best, s.residual);
    return best;
  };
  double lo = 1.9, hi = 2.2;
  for (int iter = 0; iter < 90 && hi - lo > 1e-14; ++iter) {
    const double m1 = lo + 0.381966 * (hi - lo);
    const double m2 = hi - 0.381966 * (hi - lo);
    if (surrogate(m1) < surrogate(m2))
      hi = m2;
    else
      lo = m1;
  }
  const double zeta = 0.5 * (lo + hi);
  const auto found = pt_barrier_singularities(zeta, 1.0, 0.3, 3.0);
  REQUIRE(found.size() == 1);
  CHECK(found[0].residual <= 1e-8);
  CHECK(std::abs(ode_transfer(found[0].parameters, found[0].k_star).m22) <= 1e-8);

  // Transmission grows monotonically on approach from both sides.
  const Potential& barrier = found[0].parameters;
  for (double side : {+1.0, -1.0}) {
    double previous = 0.0;
    for (double delta : {1e-2, 1e-3, 1e-4, 1e-5}) {
      const double t_abs = std::abs(scattering_data(compose(barrier, found[0].k_star + side * delta)).t);
      CHECK(t_abs > previous);
      previous = t_abs;
    }
  }
}

TEST_CASE("pt barrier wrapper") {
  SUBCASE("zero gain/loss means no singularities") {
    CHECK(pt_barrier_singularities(0.0, 1.0, 0.5, 5.0).empty());
  }
  SUBCASE("wrapper matches a manual scan") {
    const auto wrapped = pt_barrier_singularities(1.0, 1.0, 0.2, 6.0, 256, 1e30);
    const auto manual =
        find_singularities(Potential::pt_barrier(1.0, 1.0), 0.2, 6.0, 256, 1e30);
    REQUIRE(wrapped.size() == manual.size());
    for (std::size_t i = 0; i < wrapped.size(); ++i) {
      CHECK(wrapped[i].k_star == manual[i].k_star);
      CHECK(wrapped[i].residual == manual[i].residual);
    }
  }
  SUBCASE("invalid half-width") {
    CHECK_THROWS_AS(pt_barrier_singularities(1.0, 0.0, 0.5, 5.0), InvalidInputError);
  }
}

}  // TEST_SUITE
