#include <doctest.h>

#include <random>

#include "nhqm/errors.hpp"
#include "nhqm/io.hpp"
#include "test_support.hpp"

using namespace nhqm;

TEST_SUITE("io") {

TEST_CASE("potential schema round trip") {
  std::mt19937_64 rng(61u);
  for (int trial = 0; trial < 30; ++trial) {
    const Potential p = nhqm_test::random_potential(rng);
    const Potential q = potential_from_json(potential_to_json(p));
    REQUIRE(q.deltas().size() == p.deltas().size());
    REQUIRE(q.segments().size() == p.segments().size());
    for (std::size_t i = 0; i < p.deltas().size(); ++i) {
      CHECK(q.deltas()[i].x == p.deltas()[i].x);
      CHECK(q.deltas()[i].z == p.deltas()[i].z);
    }
    for (std::size_t i = 0; i < p.segments().size(); ++i) {
      CHECK(q.segments()[i].a == p.segments()[i].a);
      CHECK(q.segments()[i].b == p.segments()[i].b);
      CHECK(q.segments()[i].v == p.segments()[i].v);
    }
  }
}

TEST_CASE("potential schema errors name the offending field") {
  const auto message_of = [](const char* text) {
    try {
      potential_from_json(nlohmann::json::parse(text));
      return std::string();
    } catch (const InvalidInputError& e) {
      return std::string(e.what());
    }
  };
  CHECK(message_of(R"({"deltas":[{"x":0.0}]})").find("deltas[0].z") != std::string::npos);
  CHECK(message_of(R"({"deltas":[{"x":"a","z":[0,1]}]})").find("deltas[0].x") !=
        std::string::npos);
  CHECK(message_of(R"({"segments":[{"a":0,"b":1,"v":[1]}]})").find("segments[0].v") !=
        std::string::npos);
  CHECK(message_of(R"({"segments":[{"b":1,"v":[1,0]}]})").find("segments[0].a") !=
        std::string::npos);
  // Absent lists are empty.
  CHECK(potential_from_json(nlohmann::json::parse("{}")).empty());
}

TEST_CASE("matrix schema round trip and errors") {
  std::mt19937_64 rng(67u);
  std::normal_distribution<double> gauss(0.0, 2.0);
  Eigen::MatrixXcd m(3, 3);
  for (Eigen::Index r = 0; r < 3; ++r)
    for (Eigen::Index c = 0; c < 3; ++c) m(r, c) = cdouble(gauss(rng), gauss(rng));
  const Eigen::MatrixXcd back = matrix_from_json(matrix_to_json(m));
  CHECK((back - m).norm() == 0.0);

  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"({"n":2,"rows":[[[1,0]]]})")),
                  InvalidInputError);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"({"rows":[]})")), InvalidInputError);
}

TEST_CASE("csv formatting is fixed-width deterministic") {
  CHECK(format_g17(1.0) == "1");
  CHECK(format_g17(0.1) == "0.10000000000000001");
  CHECK(format_g17(std::numeric_limits<double>::infinity()) == "inf");

  ResonancePoint p;
  p.k = 1.5;
  p.t = cdouble(2.0, 0.0);
  p.r_left = cdouble(1.0, 0.0);
  p.t_abs2 = 4.0;
  p.r_abs2 = 1.0;
  p.deficit = 5.0;
  const std::string with_eps = [&] {
    ResonancePoint q = p;
    q.epsilon = 0.5;
    return resonance_csv({q});
  }();
  CHECK(with_eps == "k,re_T,im_T,re_Rl,im_Rl,abs2_T,abs2_Rl,deficit,epsilon\n"
                    "1.5,2,0,1,0,4,1,5,0.5\n");
  CHECK(resonance_csv({p}) == "k,re_T,im_T,re_Rl,im_Rl,abs2_T,abs2_Rl,deficit,epsilon\n"
                              "1.5,2,0,1,0,4,1,5,\n");

  SpectralSingularity s;
  s.k_star = 1.0;
  s.e_star = 1.0;
  s.residual = 0.0;
  CHECK(singularity_csv({s}) == "k_star,e_star,residual\n1,1,0\n");
  CHECK(singularity_csv({}) == "k_star,e_star,residual\n");
}

}  // TEST_SUITE
