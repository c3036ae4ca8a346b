/*
 * Copyright 2026 The tidsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "tidsim/correlations.hpp"
#include "tidsim/errors.hpp"

using namespace tidsim;

namespace {

// 1 + 0.85 log2 1.7 + 0.15 log2 0.3, evaluated independently.
const double kC07 = 0.85 * std::log2(1.7) + 0.15 * std::log2(0.3);

// Shannon form of the mutual information of a Bell-diagonal state.
double total_from_bell_weights(const BDParams& c) {
  double h = 0.0;
  for (double w : bell_eigenvalues(c))
    if (w > 0) h -= w * std::log2(w);
  return 2.0 - h;
}

}  // namespace

TEST_SUITE("correlations") {

TEST_CASE("closed forms at the origin") {
  const auto t = correlations({0, 0, 0});
  CHECK(t.classical == 0.0);
  CHECK(t.discord == doctest::Approx(0.0));
  CHECK(t.total == doctest::Approx(0.0));
}

TEST_CASE("closed forms for (1, 0.7, -0.7)") {
  const BDParams c{1, 0.7, -0.7};
  CHECK(chi(c) == 1.0);
  CHECK(classical_correlation(c) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(total_correlation(c) == doctest::Approx(1.0 + kC07).epsilon(1e-12));
  CHECK(total_correlation_factorized(c) == doctest::Approx(1.0 + kC07).epsilon(1e-12));
  CHECK(discord(c) == doctest::Approx(kC07).epsilon(1e-12));
  CHECK(std::abs(discord(c) - 0.39015) < 1e-4);
  CHECK(std::abs(total_correlation(c) - 1.39015) < 1e-4);
  CHECK(std::abs(kC07 - 0.39015) < 1e-4);
}

TEST_CASE("classical correlation after the transition") {
  CHECK(classical_correlation({0.7, 0.49, -0.7}) == doctest::Approx(kC07).epsilon(1e-12));
  CHECK(binary_correlation_term(1.0) == doctest::Approx(1.0));
  CHECK(binary_correlation_term(0.0) == 0.0);
}

TEST_CASE("total correlation equals the von Neumann mutual information") {
  std::mt19937_64 rng(101);
  for (int k = 0; k < 200; ++k) {
    const BDParams c = test::random_bd(rng);
    const double oracle = test::mutual_information_oracle(bd_state(c));
    CHECK(total_correlation(c) == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(total_correlation(c) == doctest::Approx(total_from_bell_weights(c)).epsilon(1e-12));
    CHECK(mutual_information(bd_state(c)) == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("two-term total correlation holds on the c2 = -c1 c3 family") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const BDParams c{u(rng), 0.0, u(rng)};
    const BDParams fam{c.c1, -c.c1 * c.c3, c.c3};
    CHECK(total_correlation_factorized(fam) == doctest::Approx(total_correlation(fam)).epsilon(1e-10));
  }
}

TEST_CASE("bounds and additivity on random physical states") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 500; ++k) {
    const BDParams c = test::random_bd(rng);
    const auto t = correlations(c);
    CHECK(t.classical >= -1e-9);
    CHECK(t.discord >= -1e-9);
    CHECK(t.classical <= t.total + 1e-9);
    CHECK(t.discord <= t.total + 1e-9);
    CHECK(std::abs(t.total - t.classical - t.discord) < 1e-9);
    CHECK_FALSE(t.chi_clamped);
  }
}

TEST_CASE("discord is invariant under flipping the sign of two coefficients") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 100; ++k) {
    const BDParams c = test::random_bd(rng);
    const double d = discord(c);
    CHECK(discord({-c.c1, -c.c2, c.c3}) == doctest::Approx(d).epsilon(1e-12));
    CHECK(discord({-c.c1, c.c2, -c.c3}) == doctest::Approx(d).epsilon(1e-12));
    CHECK(discord({c.c1, -c.c2, -c.c3}) == doctest::Approx(d).epsilon(1e-12));
  }
}

TEST_CASE("chi above one is clamped and flagged") {
  const auto t = correlations({1.05, 0.7, -0.7});
  CHECK(t.chi_clamped);
  CHECK(t.classical == doctest::Approx(1.0));
}

TEST_CASE("brute-force discord oracle") {
  Eigen::Matrix<Complex, 4, 1> e00 = Eigen::Matrix<Complex, 4, 1>::Zero();
  e00(0) = 1.0;
  CHECK(std::abs(discord_bruteforce(DensityMatrix::pure(e00))) < 1e-6);
  CHECK(std::abs(discord_bruteforce(DensityMatrix::maximally_mixed())) < 1e-9);
  CHECK(std::abs(discord_bruteforce(bd_state({1, 0.7, -0.7})) - 0.39015) < 1e-3);
  CHECK_THROWS_AS(discord_bruteforce(DensityMatrix::maximally_mixed(), 32), Error);

  std::mt19937_64 rng(41);
  for (int k = 0; k < 25; ++k) {
    const BDParams c = test::random_bd(rng);
    CHECK(std::abs(discord_bruteforce(bd_state(c), 64) - discord(c)) < 1e-3);
  }
}

TEST_CASE("brute-force classical part matches the closed form") {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 10; ++k) {
    const BDParams c = test::random_bd(rng);
    const auto rho = bd_state(c);
    const double cl = test::mutual_information_oracle(rho) - discord_bruteforce(rho, 64);
    CHECK(std::abs(cl - classical_correlation(c)) < 1e-3);
  }
}

TEST_CASE("correlation trajectory plateau structure") {
  const BDParams c0{1, 0.7, -0.7};
  const DephasingRates r = DephasingRates::from_t2star(0.41, 0.19);
  const double tbar = transition_time(c0, r.mean());

  const auto first = correlation_trajectory(c0, r, {0.0});
  REQUIRE(first.size() == 1);
  CHECK(first[0].corr.classical == doctest::Approx(1.0));
  CHECK(std::abs(first[0].corr.discord - 0.39015) < 1e-4);
  CHECK(std::abs(first[0].corr.total - 1.39015) < 1e-4);

  std::vector<double> times;
  for (int i = 0; i <= 200; ++i) times.push_back(0.3 * i / 200);
  const auto traj = correlation_trajectory(c0, r, times);
  for (const auto& p : traj) {
    if (p.t < tbar) CHECK(std::abs(p.corr.discord - traj[0].corr.discord) < 1e-9);
    if (p.t > tbar) CHECK(std::abs(p.corr.classical - traj.back().corr.classical) < 1e-9);
  }
  // Classical correlation decays before the transition, discord after it.
  CHECK(traj[5].corr.classical < traj[0].corr.classical - 1e-3);
  CHECK(traj.back().corr.discord < traj[0].corr.discord - 1e-3);

  for (const auto& p : correlation_trajectory({0.6, 0.0, 0.0}, r, times)) CHECK(std::abs(p.corr.discord) < 1e-12);
  CHECK_THROWS_AS(correlation_trajectory(c0, r, {0.2, 0.1}), Error);
}

TEST_CASE("trajectory CSV columns") {
  const auto traj = correlation_trajectory({1, 0.7, -0.7}, {1.0, 1.0}, {0.0, 0.1});
  std::istringstream is(trajectory_csv(traj));
  std::string header, row;
  std::getline(is, header);
  CHECK(header == "t,C,D,I,chi,c1,c2,c3");
  int rows = 0;
  while (std::getline(is, row)) ++rows;
  CHECK(rows == 2);
}

}
