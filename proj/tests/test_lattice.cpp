#include "doctest.h"

#include <cmath>
#include <random>

#include "ckmax/space.hpp"
#include "ckmax/step_function.hpp"
#include "ckmax/weight.hpp"

using namespace ckmax;

namespace {

AtomicSpace unit3() { return AtomicSpace::uniform(3); }

LatticeVector random_vector(const AtomicSpace& sp, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(sp.size());
  for (auto& x : v) x = g(rng);
  return LatticeVector(sp, std::move(v));
}

AtomicSpace random_space(std::mt19937_64& rng, std::size_t max_atoms = 8) {
  std::uniform_int_distribution<std::size_t> nd(1, max_atoms);
  std::uniform_real_distribution<double> wd(0.1, 3.0);
  std::vector<double> w(nd(rng));
  for (auto& x : w) x = wd(rng);
  return AtomicSpace(std::move(w));
}

}  // namespace

TEST_CASE("atomic space validation") {
  CHECK_THROWS_AS(AtomicSpace({}), std::invalid_argument);
  CHECK_THROWS_AS(AtomicSpace({1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(AtomicSpace({1.0, -2.0}), std::invalid_argument);
  AtomicSpace sp({2.0, 3.0});
  CHECK(sp.total_measure() == doctest::Approx(5.0));
}

TEST_CASE("lattice vector validation and ops") {
  AtomicSpace sp = unit3();
  CHECK_THROWS_AS(LatticeVector(sp, {1.0, 2.0}), DimensionMismatch);
  LatticeVector f(sp, {1.0, -3.0, 2.0});
  CHECK(abs(f)[1] == 3.0);
  CHECK((2.0 * f)[2] == 4.0);
  CHECK(f.support() == std::vector<std::size_t>{0, 1, 2});
  CHECK(LatticeVector::delta(sp, 1).support() == std::vector<std::size_t>{1});
  CHECK(dominated(LatticeVector(sp, {1.0, 2.0, -1.0}), f));
  CHECK_FALSE(dominated(f, LatticeVector(sp, {1.0, 2.0, -1.0})));
}

TEST_CASE("distribution of simple vectors") {
  AtomicSpace sp = unit3();
  // mu_f(tau) = 3 on [0,1), 2 on [1,2), 1 on [2,3), 0 after
  StepFunction d = distribution(LatticeVector(sp, {1.0, 3.0, 2.0}));
  REQUIRE(d.pieces().size() == 3);
  CHECK(d.pieces()[0] == StepPiece{3.0, 1.0});
  CHECK(d.pieces()[1] == StepPiece{2.0, 1.0});
  CHECK(d.pieces()[2] == StepPiece{1.0, 1.0});
  CHECK(d.value_at(0.5) == 3.0);
  CHECK(d.value_at(1.0) == 2.0);
  CHECK(d.value_at(2.5) == 1.0);
  CHECK(d.value_at(3.0) == 0.0);

  CHECK(distribution(LatticeVector::zeros(sp)).empty());

  AtomicSpace sp2({2.0, 3.0});
  StepFunction c = distribution(LatticeVector(sp2, {5.0, 5.0}));
  REQUIRE(c.pieces().size() == 1);
  CHECK(c.pieces()[0] == StepPiece{5.0, 5.0});
}

TEST_CASE("rearrangement of simple vectors") {
  AtomicSpace sp = unit3();
  StepFunction r = rearrangement(LatticeVector(sp, {1.0, 3.0, 2.0}));
  REQUIRE(r.pieces().size() == 3);
  CHECK(r.pieces()[0] == StepPiece{3.0, 1.0});
  CHECK(r.pieces()[1] == StepPiece{2.0, 1.0});
  CHECK(r.pieces()[2] == StepPiece{1.0, 1.0});

  AtomicSpace sp2({0.5, 1.5, 2.0});
  StepFunction ind = rearrangement(LatticeVector(sp2, {1.0, 0.0, 1.0}));
  REQUIRE(ind.pieces().size() == 1);
  CHECK(ind.pieces()[0] == StepPiece{1.0, 2.5});
  CHECK(ind.value_at(2.4) == 1.0);
  CHECK(ind.value_at(2.5) == 0.0);
}

TEST_CASE("equimeasurability is bit-exact") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> levels(-3, 3);
  for (int t = 0; t < 200; ++t) {
    AtomicSpace sp = random_space(rng);
    std::vector<double> v(sp.size());
    // mix of ties and irrational-ish values
    for (auto& x : v) {
      x = (t % 2) ? static_cast<double>(levels(rng))
                  : std::sqrt(2.0) * levels(rng) / 3.0;
    }
    LatticeVector f(sp, v);
    CHECK(distribution(f) == distribution(rearrangement(f)));
  }
}

TEST_CASE("double star on step functions") {
  StepFunction flat({{1.0, 4.0}});
  CHECK(double_star(flat, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(double_star(flat, 4.0) == doctest::Approx(1.0).epsilon(1e-14));

  StepFunction two({{3.0, 1.0}, {1.0, 1.0}});
  CHECK(double_star(two, 2.0) == doctest::Approx(2.0).epsilon(1e-14));

  StepFunction mass({{2.0, 1.0}});
  CHECK(double_star(mass, 4.0) == doctest::Approx(0.5).epsilon(1e-14));

  CHECK_THROWS_AS(double_star(flat, 0.0), std::domain_error);
  CHECK_THROWS_AS(double_star(flat, -1.0), std::domain_error);
}

TEST_CASE("step function canonicalization") {
  StepFunction s({{2.0, 1.0}, {2.0, 2.0}, {1.0, 1.0}, {0.0, 5.0}});
  REQUIRE(s.pieces().size() == 2);
  CHECK(s.pieces()[0] == StepPiece{2.0, 3.0});
  CHECK(s.pieces()[1] == StepPiece{1.0, 1.0});
  CHECK(s.total_length() == doctest::Approx(4.0));
  CHECK(s.total_integral() == doctest::Approx(7.0));
  CHECK_THROWS_AS(StepFunction({{1.0, 1.0}, {2.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({{1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("weight functions: power") {
  WeightFunction w = WeightFunction::power(2.0, 1.0);  // w(t) = 2t, W(t) = t^2
  CHECK(w.w(3.0) == doctest::Approx(6.0));
  CHECK(w.W(3.0) == doctest::Approx(9.0));
  CHECK(w.W(0.0) == 0.0);
  CHECK_FALSE(w.nonincreasing());
  CHECK(WeightFunction::power(1.0, -0.5).nonincreasing());
  CHECK_THROWS_AS(WeightFunction::power(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(WeightFunction::power(1.0, -1.0), std::invalid_argument);

  // Classical Lorentz weight: W(t) = t^{r/p}
  WeightFunction lw = WeightFunction::lorentz(2.0, 1.0);
  CHECK(lw.W(4.0) == doctest::Approx(2.0));
}

TEST_CASE("weight functions: piecewise") {
  // w = 3 on (0,1], 1 on (1,2], 0 beyond
  WeightFunction w = WeightFunction::piecewise({1.0, 2.0}, {3.0, 1.0, 0.0});
  CHECK(w.w(0.5) == 3.0);
  CHECK(w.w(1.5) == 1.0);
  CHECK(w.w(5.0) == 0.0);
  CHECK(w.W(0.5) == doctest::Approx(1.5));
  CHECK(w.W(1.5) == doctest::Approx(3.5));
  CHECK(w.W(10.0) == doctest::Approx(4.0));
  CHECK(w.nonincreasing());
  CHECK_FALSE(WeightFunction::piecewise({1.0}, {1.0, 2.0}).nonincreasing());
}

TEST_CASE("weight tail integral") {
  // integral over (T,inf) of (A/t)^r w(t) dt for w == 1: A^r T^{1-r}/(r-1)
  WeightFunction flat = WeightFunction::power(1.0, 0.0);
  CHECK(flat.tail_integral(1.0, 2.0, 2.0) == doctest::Approx(4.0));
  CHECK(std::isinf(flat.tail_integral(1.0, 2.0, 1.0)));
  CHECK(flat.tail_integral(1.0, 0.0, 1.0) == 0.0);

  WeightFunction pc = WeightFunction::piecewise({2.0}, {1.0, 0.0});
  // only (1,2] contributes: integral of (1/t)^2 from 1 to 2 = 1/2
  CHECK(pc.tail_integral(1.0, 1.0, 2.0) == doctest::Approx(0.5));
  // final level positive and r <= 1 diverges
  WeightFunction pc2 = WeightFunction::piecewise({2.0}, {1.0, 1.0});
  CHECK(std::isinf(pc2.tail_integral(1.0, 1.0, 1.0)));
}
