#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "evassoc/masses.hpp"

using namespace evassoc;

TEST_CASE("mass triple validation") {
  CHECK_NOTHROW(MassTriple(0.2, 0.3, 0.5));
  CHECK_THROWS_AS(MassTriple(-0.1, 0.6, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(MassTriple(0.2, 0.3, 0.4), std::invalid_argument);
  const MassTriple vacuous;
  CHECK(vacuous.yes == 0.0);
  CHECK(vacuous.no == 0.0);
  CHECK(vacuous.theta == 1.0);
}

TEST_CASE("reliability validation") {
  CHECK_NOTHROW(Reliability(0.0));
  CHECK_NOTHROW(Reliability(1.0));
  CHECK_THROWS_AS(Reliability(-0.01), std::invalid_argument);
  CHECK_THROWS_AS(Reliability(1.01), std::invalid_argument);
  CHECK(Reliability().alpha0 == 0.9);
}

TEST_CASE("mass operator anchor points") {
  const Reliability r09(0.9);

  const MassTriple full = generate_mass_triple(SimilarityIndex{1.0}, r09);
  CHECK(std::abs(full.yes - 0.9) < 1e-12);
  CHECK(std::abs(full.no - 0.0) < 1e-12);
  CHECK(std::abs(full.theta - 0.1) < 1e-12);

  const MassTriple none = generate_mass_triple(SimilarityIndex{0.0}, r09);
  CHECK(std::abs(none.yes - 0.0) < 1e-12);
  CHECK(std::abs(none.no - 0.9) < 1e-12);
  CHECK(std::abs(none.theta - 0.1) < 1e-12);

  const MassTriple half = generate_mass_triple(SimilarityIndex{0.5}, Reliability(1.0));
  CHECK(std::abs(half.yes - 0.5) < 1e-12);
  CHECK(std::abs(half.no - 0.5) < 1e-12);
  CHECK(std::abs(half.theta - 0.0) < 1e-12);
}

TEST_CASE("mass operator is monotone and conserves alpha0") {
  const Reliability r(0.9);
  double prev_yes = -1.0;
  double prev_no = 2.0;
  for (int k = 0; k <= 1000; ++k) {
    const double s = static_cast<double>(k) / 1000.0;
    const MassTriple t = generate_mass_triple(SimilarityIndex{s}, r);
    CHECK(t.yes + t.no == Catch::Approx(0.9).margin(1e-15));
    CHECK(t.theta == Catch::Approx(0.1).margin(1e-15));
    if (k > 0 && k < 1000) {
      // strictly increasing / decreasing on the open interval
      CHECK(t.yes > prev_yes);
      CHECK(t.no < prev_no);
    } else {
      CHECK(t.yes >= prev_yes);
      CHECK(t.no <= prev_no);
    }
    prev_yes = t.yes;
    prev_no = t.no;
  }
}

TEST_CASE("zero reliability yields total ignorance") {
  for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const MassTriple t = generate_mass_triple(SimilarityIndex{s}, Reliability(0.0));
    CHECK(t.yes == 0.0);
    CHECK(t.no == 0.0);
    CHECK(t.theta == 1.0);
  }
}

TEST_CASE("similarity outside [0,1] is rejected") {
  CHECK_THROWS_AS(generate_mass_triple(SimilarityIndex{-0.1}, Reliability(0.9)),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_mass_triple(SimilarityIndex{1.1}, Reliability(0.9)),
                  std::invalid_argument);
}
