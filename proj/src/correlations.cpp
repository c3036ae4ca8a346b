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
#include "tidsim/correlations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tidsim/errors.hpp"
#include "tidsim/format.hpp"

namespace tidsim {

namespace {

// (1+x) log2(1+x) / 2 for x in [-1, 1].
double half_xlogx(double x) noexcept {
  const double a = 1.0 + x;
  if (a <= 0.0) return 0.0;
  return 0.5 * a * std::log2(a);
}

// Eigenvalues of a 2x2 Hermitian matrix, closed form.
std::array<double, 2> eig2(const Matrix2& m) noexcept {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double mean = 0.5 * (a + d);
  const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
  return {mean - r, mean + r};
}

struct MeasurementModel {
  Matrix2 rho_a;
  std::array<Matrix2, 3> r;  // Tr_B[(I x sigma_j) rho]
  double s_a = 0.0;

  explicit MeasurementModel(const DensityMatrix& rho) {
    rho_a = rho.partial_trace_keep(0);
    for (int j = 0; j < 3; ++j) {
      const ComplexMatrix4 op = kron(Matrix2::Identity(), pauli_matrix(static_cast<Pauli>(j + 1)));
      const DensityMatrix tmp = DensityMatrix::trusted(op * rho.matrix());
      r[j] = tmp.partial_trace_keep(0);
    }
    const auto e = eig2(rho_a);
    s_a = eta_bits(e[0]) + eta_bits(e[1]);
  }

  // S(rho_A) - sum_b p_b S(rho_{A|b}) for direction (theta, phi).
  double classical_info(double theta, double phi) const noexcept {
    const double n[3] = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                         std::cos(theta)};
    const Matrix2 shift = n[0] * r[0] + n[1] * r[1] + n[2] * r[2];
    double cond = 0.0;
    for (double sign : {1.0, -1.0}) {
      const Matrix2 m = 0.5 * (rho_a + sign * shift);
      const auto mu = eig2(m);
      const double p = mu[0] + mu[1];
      cond += eta_bits(mu[0]) + eta_bits(mu[1]) - eta_bits(p);
    }
    return s_a - cond;
  }
};

// Minimal Nelder-Mead on two variables, maximising f.
template <class F>
double nelder_mead_max(F&& f, std::array<double, 2> x0, double step) {
  using P = std::array<double, 2>;
  std::array<P, 3> pts = {x0, P{x0[0] + step, x0[1]}, P{x0[0], x0[1] + step}};
  std::array<double, 3> val;
  for (int i = 0; i < 3; ++i) val[i] = -f(pts[i][0], pts[i][1]);
  auto eval = [&](const P& p) { return -f(p[0], p[1]); };
  for (int iter = 0; iter < 400; ++iter) {
    std::array<int, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return val[a] < val[b]; });
    const int best = idx[0], mid = idx[1], worst = idx[2];
    if (std::abs(val[worst] - val[best]) < 1e-14) break;
    const P centroid = {0.5 * (pts[best][0] + pts[mid][0]), 0.5 * (pts[best][1] + pts[mid][1])};
    auto along = [&](double t) {
      return P{centroid[0] + t * (pts[worst][0] - centroid[0]),
               centroid[1] + t * (pts[worst][1] - centroid[1])};
    };
    const P refl = along(-1.0);
    const double f_refl = eval(refl);
    if (f_refl < val[best]) {
      const P exp = along(-2.0);
      const double f_exp = eval(exp);
      if (f_exp < f_refl) {
        pts[worst] = exp, val[worst] = f_exp;
      } else {
        pts[worst] = refl, val[worst] = f_refl;
      }
    } else if (f_refl < val[mid]) {
      pts[worst] = refl, val[worst] = f_refl;
    } else {
      const P con = along(f_refl < val[worst] ? -0.5 : 0.5);
      const double f_con = eval(con);
      if (f_con < std::min(val[worst], f_refl)) {
        pts[worst] = con, val[worst] = f_con;
      } else {
        for (int k : {mid, worst}) {
          pts[k] = {0.5 * (pts[k][0] + pts[best][0]), 0.5 * (pts[k][1] + pts[best][1])};
          val[k] = eval(pts[k]);
        }
      }
    }
  }
  return -*std::min_element(val.begin(), val.end());
}

}  // namespace

double chi(const BDParams& c) noexcept {
  return std::max({std::abs(c.c1), std::abs(c.c2), std::abs(c.c3)});
}

double binary_correlation_term(double x) noexcept {
  x = std::clamp(x, -1.0, 1.0);
  return half_xlogx(-x) + half_xlogx(x);
}

double classical_correlation(const BDParams& c) noexcept {
  return binary_correlation_term(std::min(chi(c), 1.0));
}

double total_correlation(const BDParams& c) noexcept {
  double h = 0.0;
  for (double w : bell_eigenvalues(c)) h += eta_bits(w);
  return 2.0 - h;
}

double total_correlation_factorized(const BDParams& c) noexcept {
  return binary_correlation_term(c.c1) + binary_correlation_term(c.c3);
}

double discord(const BDParams& c) noexcept { return total_correlation(c) - classical_correlation(c); }

CorrelationTriple correlations(const BDParams& c) noexcept {
  CorrelationTriple t;
  t.classical = classical_correlation(c);
  t.total = total_correlation(c);
  t.discord = t.total - t.classical;
  t.chi_clamped = chi(c) > 1.0;
  return t;
}

double mutual_information(const DensityMatrix& rho) {
  return entropy_bits(rho.partial_trace_keep(0)) + entropy_bits(rho.partial_trace_keep(1)) -
         entropy_bits(rho.matrix());
}

double discord_bruteforce(const DensityMatrix& rho, int grid_n) {
  if (grid_n < 64) throw Error(ErrorCode::InvalidArgument, "discord_bruteforce: grid_n must be >= 64");
  const double info = mutual_information(rho);
  const MeasurementModel model(rho);

  double best = -1.0;
  double best_theta = 0.0, best_phi = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double u = static_cast<double>(i) / (grid_n - 1);  // cos(theta) in [0, 1]
    const double theta = std::acos(u);
    for (int k = 0; k < grid_n; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / grid_n;
      const double j = model.classical_info(theta, phi);
      if (j > best) best = j, best_theta = theta, best_phi = phi;
    }
  }
  const double step = 2.0 * std::numbers::pi / grid_n;
  const double refined = nelder_mead_max(
      [&](double th, double ph) { return model.classical_info(th, ph); }, {best_theta, best_phi}, step);
  return info - std::max(best, refined);
}

TrajectoryPoint trajectory_point(double t, const BDParams& c) noexcept {
  return {t, c, chi(c), correlations(c)};
}

std::vector<TrajectoryPoint> correlation_trajectory(const BDParams& c0, const DephasingRates& rates,
                                                    const std::vector<double>& times) {
  if (!std::is_sorted(times.begin(), times.end())) {
    throw Error(ErrorCode::InvalidArgument, "correlation_trajectory: times must be ascending");
  }
  std::vector<TrajectoryPoint> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(trajectory_point(t, dephase_bd(c0, rates, t)));
  return out;
}

std::string trajectory_csv(const std::vector<TrajectoryPoint>& points) {
  std::ostringstream os;
  os << "t,C,D,I,chi,c1,c2,c3\n";
  for (const auto& p : points) {
    os << fmt_double(p.t) << ',' << fmt_double(p.corr.classical) << ',' << fmt_double(p.corr.discord)
       << ',' << fmt_double(p.corr.total) << ',' << fmt_double(p.chi) << ',' << fmt_double(p.c.c1)
       << ',' << fmt_double(p.c.c2) << ',' << fmt_double(p.c.c3) << '\n';
  }
  return os.str();
}

}  // namespace tidsim
