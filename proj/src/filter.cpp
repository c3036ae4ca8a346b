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
#include <algorithm>
#include <cmath>
#include <queue>

#include "tidsim/ddseq.hpp"
#include "tidsim/errors.hpp"

namespace tidsim {

namespace {

constexpr double kPi = std::numbers::pi;

// 15-point Kronrod / 7-point Gauss nodes on [-1, 1].
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F& f, double a, double b, int& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kron += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  evals += 15;
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

// Adaptive integration of f over [a, b] split into `panels` equal panels,
// refining the worst panel until the summed error estimate falls under
// max(rel_tol |value|, abs_tol) or the evaluation budget runs out.
template <class F>
std::pair<double, double> integrate(F& f, double a, double b, int panels, double rel_tol,
                                    double abs_tol, int& evals, int max_evals) {
  std::priority_queue<Panel> heap;
  double value = 0.0, error = 0.0;
  const double w = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    Panel p = gk15(f, a + i * w, i + 1 == panels ? b : a + (i + 1) * w, evals);
    value += p.value;
    error += p.error;
    heap.push(p);
  }
  while (error > std::max(rel_tol * std::abs(value), abs_tol) && evals < max_evals && !heap.empty()) {
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel l = gk15(f, worst.a, mid, evals);
    const Panel r = gk15(f, mid, worst.b, evals);
    value += l.value + r.value - worst.value;
    error += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
  }
  return {value, error};
}

double sinc(double x) noexcept {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// Jump amplitudes a_k at times tau_k of f, so that F = sum_k a_k e^{i w tau_k} / (i w).
void jumps(const TogglingSegments& seg, std::vector<double>& times, std::vector<double>& amps) {
  const std::size_t n = seg.signs.size();
  times.clear();
  amps.clear();
  for (std::size_t k = 0; k <= n; ++k) {
    const double before = k == 0 ? 0.0 : seg.signs[k - 1];
    const double after = k == n ? 0.0 : seg.signs[k];
    const double a = before - after;
    if (a == 0.0) continue;
    if (!times.empty() && times.back() == seg.edges[k]) {
      amps.back() += a;
    } else {
      times.push_back(seg.edges[k]);
      amps.push_back(a);
    }
  }
}

}  // namespace

std::vector<double> flip_times(const PulseSchedule& s) {
  std::vector<double> out;
  double t = 0.0;
  for (int r = 0; r < s.repetitions; ++r) {
    for (const auto& e : s.events) {
      if (e.kind == EventKind::Pulse) out.push_back(t + 0.5 * e.duration);
      t += e.duration;
    }
  }
  return out;
}

int toggling_function(const PulseSchedule& s, double t) {
  const auto flips = flip_times(s);
  const auto n = std::lower_bound(flips.begin(), flips.end(), t) - flips.begin();
  return n % 2 == 0 ? 1 : -1;
}

TogglingSegments toggling_segments(const std::vector<double>& flips, double t) {
  TogglingSegments seg;
  seg.edges.push_back(0.0);
  int sign = 1;
  for (double f : flips) {
    if (f >= t) break;
    if (f > 0.0) {
      // Coincident flips leave a zero-length segment, which contributes nothing.
      seg.signs.push_back(sign);
      seg.edges.push_back(f);
    }
    sign = -sign;
  }
  seg.signs.push_back(sign);
  seg.edges.push_back(t);
  return seg;
}

double filter_function_sq(const TogglingSegments& seg, double omega) {
  // F = sum_k s_k L_k sinc(omega L_k / 2) e^{i omega m_k}, stable at omega -> 0.
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < seg.signs.size(); ++k) {
    const double len = seg.edges[k + 1] - seg.edges[k];
    const double mid = 0.5 * (seg.edges[k + 1] + seg.edges[k]);
    const double amp = seg.signs[k] * len * sinc(0.5 * omega * len);
    re += amp * std::cos(omega * mid);
    im += amp * std::sin(omega * mid);
  }
  return re * re + im * im;
}

double filter_decay_exponent(const std::vector<double>& flips, const QubitNoise& noise, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "filter_decay_exponent: t must be >= 0");
  if (t == 0.0 || noise.silent()) return 0.0;
  if (noise.kind == NoiseKind::White) {
    // f^2 = 1 everywhere, so the delta-correlated noise only sees t.
    return noise.rate * t;
  }
  // Half the phase variance, sum over segment pairs of
  // s_j s_k int int sigma^2 exp(-|t1 - t2| / tau_c); the cross terms use a
  // running exponentially discounted sum so the cost is linear.
  const auto seg = toggling_segments(flips, t);
  const double tc = noise.tau_c;
  double self = 0.0, cross = 0.0, carry = 0.0;
  for (std::size_t k = 0; k < seg.signs.size(); ++k) {
    const double len = seg.edges[k + 1] - seg.edges[k];
    const double x = len / tc;
    const double g = x < 1e-4 ? x * x * (0.5 - x / 6.0 + x * x / 24.0) : x + std::expm1(-x);
    self += 2.0 * tc * tc * g;
    const double rise = -std::expm1(-x);  // 1 - e^{-x}
    cross += seg.signs[k] * carry * tc * rise;
    carry = carry * std::exp(-x) + seg.signs[k] * tc * rise;
  }
  const double variance = noise.sigma * noise.sigma * (self + 2.0 * cross);
  return std::max(0.5 * variance, 0.0);
}

double filter_decay_exponent(const PulseSchedule* s, const QubitNoise& noise, double t) {
  return filter_decay_exponent(s ? flip_times(*s) : std::vector<double>{}, noise, t);
}

QuadratureResult filter_decay_exponent_quadrature(const std::vector<double>& flips,
                                                  const std::function<double(double)>& spectrum,
                                                  double t, double rel_tol) {
  if (!(t > 0.0)) return {};
  const auto seg = toggling_segments(flips, t);
  std::vector<double> jt, ja;
  jumps(seg, jt, ja);

  double mean_g2 = 0.0;  // average of |sum_k a_k e^{i w tau_k}|^2 over oscillations
  for (double a : ja) mean_g2 += a * a;
  double min_gap = t;
  for (std::size_t k = 1; k < jt.size(); ++k) min_gap = std::min(min_gap, jt[k] - jt[k - 1]);

  QuadratureResult out;
  auto integrand = [&](double w) { return spectrum(w) * filter_function_sq(seg, w); };

  // Oscillatory remainder above the cutoff W:
  //   leading  sum_{j != k} a_j a_k S(W) (-sin(W d) / (W^2 d)),  d = tau_j - tau_k
  //   neglected (bounded by) S(W) sum |a_j a_k| 2 / (W^3 d^2).
  auto oscillatory = [&](double cut, double& bound) {
    double lead = 0.0, rest = 0.0;
    for (std::size_t j = 0; j < jt.size(); ++j) {
      for (std::size_t k = j + 1; k < jt.size(); ++k) {
        const double d = jt[k] - jt[j];
        lead += 2.0 * ja[j] * ja[k] * (-std::sin(cut * d) / (cut * cut * d));
        rest += 2.0 * std::abs(ja[j] * ja[k]) * 2.0 / (cut * cut * cut * d * d);
      }
    }
    const double s = spectrum(cut);
    bound = s * rest / (2.0 * kPi);
    return s * lead / (2.0 * kPi);
  };
  auto mean_tail = [&](double cut) {
    // (1/2pi) mean_g2 int_W^inf S(w)/w^2 dw with u = 1/w.
    auto g = [&](double u) { return u == 0.0 ? 0.0 : spectrum(1.0 / u); };
    int e = 0;
    const auto r = integrate(g, 0.0, 1.0 / cut, 8, 1e-12, 0.0, e, 200000);
    out.evaluations += e;
    return mean_g2 * r.first / (2.0 * kPi);
  };

  const double period = 2.0 * kPi / t;
  double cut = 2.0 * kPi * 32.0 / min_gap;
  double body = 0.0, body_err = 0.0, lo = 0.0;
  const int max_evals = 20'000'000;
  for (int round = 0; round < 12; ++round) {
    const int panels = std::max(1, static_cast<int>(std::ceil((cut - lo) / (0.5 * period))));
    const double abs_tol = round == 0 ? 0.0 : 0.25 * rel_tol * std::abs(out.value);
    const auto r = integrate(integrand, lo, cut, panels, 0.25 * rel_tol, abs_tol, out.evaluations, max_evals);
    body += r.first / (2.0 * kPi);
    body_err += r.second / (2.0 * kPi);
    lo = cut;
    double bound = 0.0;
    const double osc = oscillatory(cut, bound);
    const double total = body + mean_tail(cut) + osc;
    out.value = total;
    out.error_estimate = body_err + bound;
    out.cutoff = cut;
    if (bound <= 0.1 * rel_tol * std::abs(total) || out.evaluations >= max_evals) break;
    cut *= std::max(2.0, std::cbrt(bound / (0.05 * rel_tol * std::abs(total))));
  }
  return out;
}

QuadratureResult filter_decay_exponent_quadrature(const std::vector<double>& flips,
                                                  const QubitNoise& noise, double t, double rel_tol) {
  return filter_decay_exponent_quadrature(
      flips, [&noise](double w) { return noise.spectrum(w); }, t, rel_tol);
}

}  // namespace tidsim
