#pragma once

/**
 * @brief Quadrature engine.
 *
 * - integrate_finite: globally adaptive Gauss-Kronrod (10/21 point pair).
 * - integrate_oscillatory_infinite: whole-line integrals of slowly decaying
 *   oscillatory integrands. The line is cut into half-period cells placed
 *   symmetrically about 0, each cell pair is integrated with the finite
 *   engine and the sequence of partial sums is accelerated.
 * - integrate_between_breakpoints: the same on [x_0, inf) with caller-chosen
 *   cell boundaries (typically the zeros of a known phase), which makes the
 *   cell sequence strictly alternating.
 * - regularized_j0_fourier: closed form of the exponentially damped Fourier
 *   integral of J_0, used as an oracle for the X-wave closed form.
 *
 * Two accelerators run side by side on the partial sums: Wynn's epsilon
 * algorithm (alternating and multi-frequency cell sequences) and Richardson
 * extrapolation in 1/m over doubling cell counts (monotone tails such as
 * squared spherical Bessel functions). The estimate whose successive values
 * agree best is reported.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace beamkit::oscquad {

using complex = std::complex<double>;

struct QuadratureResult {
  complex value{0.0, 0.0};
  double error_estimate = 0.0;
  std::size_t n_evals = 0;
  bool converged = false;
};

struct FiniteOptions {
  std::size_t max_subdivisions = 2000;
};

struct OscillatoryOptions {
  /// Cells integrated before giving up.
  std::size_t max_cells = 4096;
  /// Partial sums fed to the epsilon table (most recent ones).
  std::size_t window = 64;
  /// Cells summed before acceleration is attempted.
  std::size_t min_cells = 8;
  FiniteOptions finite{};
};

namespace detail {

// Gauss-Kronrod 21-point abscissae and weights (QUADPACK qk21). Entries
// with odd index are also the 10-point Gauss nodes.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  complex value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gauss_kronrod21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const complex fc = complex(f(center));
  complex kronrod = fc * kWgk[10];
  complex gauss{0.0, 0.0};
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const complex f1 = complex(f(center - dx));
    const complex f2 = complex(f(center + dx));
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

inline bool within(double err, double tol, complex value) {
  return err <= std::max(tol, tol * std::abs(value));
}

/// Wynn epsilon table over the given partial sums; returns the last entry of
/// the highest even column that could be formed.
inline complex wynn_epsilon(std::span<const complex> sums) {
  if (sums.empty()) return {0.0, 0.0};
  std::vector<complex> prev(sums.size() + 1, complex{0.0, 0.0});
  std::vector<complex> cur(sums.begin(), sums.end());
  complex best = cur.back();
  for (std::size_t col = 1; cur.size() > 1; ++col) {
    std::vector<complex> next(cur.size() - 1);
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
      const complex diff = cur[j + 1] - cur[j];
      if (std::abs(diff) == 0.0) {
        // Two equal entries: an even column has converged exactly.
        return col % 2 == 1 ? cur[j + 1] : best;
      }
      next[j] = prev[j + 1] + 1.0 / diff;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (col % 2 == 0) best = cur.back();
  }
  return best;
}

/// Polynomial extrapolation to h = 0 (Neville) through the points (h_i, v_i).
inline complex extrapolate_to_zero(std::span<const double> h, std::span<const complex> v) {
  std::vector<complex> p(v.begin(), v.end());
  const std::size_t n = p.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      p[i] = (h[i - level] * p[i] - h[i] * p[i - 1]) / (h[i - level] - h[i]);
    }
  }
  return p.back();
}

/// True when the last `window` cells all point the same way in the complex
/// plane, i.e. the tail is monotone rather than alternating or rotating.
inline bool same_direction(const std::vector<complex>& terms, std::size_t window) {
  if (terms.size() < window) return false;
  const std::size_t first = terms.size() - window;
  const complex ref = terms[first];
  for (std::size_t j = first + 1; j < terms.size(); ++j) {
    if ((terms[j] * std::conj(terms[j - 1])).real() <= 0.0) return false;
    if ((terms[j] * std::conj(ref)).real() <= 0.0) return false;
  }
  return true;
}

/**
 * Drives acceleration over cell integrals produced by next_term(k).
 *
 * Epsilon runs on a trailing window after every cell. Richardson
 * extrapolation in h = 1/m runs whenever the cell count m doubles, which
 * captures monotone tails with an asymptotic expansion in 1/m (where
 * epsilon is ineffective and prone to false stabilization). Epsilon is
 * trusted only on alternating or rotating tails, Richardson only on
 * monotone ones. No estimate is accepted before the cell magnitudes have
 * passed their peak.
 */
template <class NextTerm>
QuadratureResult accelerate_cells(NextTerm&& next_term, complex head, double tol,
                                  const OscillatoryOptions& opts) {
  QuadratureResult out;
  std::vector<complex> sums;
  std::vector<complex> terms;
  sums.reserve(opts.max_cells);
  terms.reserve(opts.max_cells);

  constexpr std::size_t kRichardsonLevels = 7;
  constexpr std::size_t kShapeWindow = 16;
  std::vector<complex> eps_hist;
  std::vector<complex> rich_hist;
  std::vector<double> rich_h;
  std::vector<complex> rich_v;
  std::size_t next_doubling = std::max<std::size_t>(opts.min_cells, 8);

  complex running = head;
  double best_err = std::numeric_limits<double>::infinity();
  complex best_val = head;
  double peak = 0.0;
  std::size_t zero_run = 0;

  for (std::size_t k = 0; k < opts.max_cells; ++k) {
    const QuadratureResult cell = next_term(k);
    out.n_evals += cell.n_evals;
    running += cell.value;
    sums.push_back(running);
    terms.push_back(cell.value);
    const double mag = std::abs(cell.value);
    peak = std::max(peak, mag);
    zero_run = (mag == 0.0) ? zero_run + 1 : 0;

    if (zero_run >= 2 && peak > 0.0) {
      // The integrand has died out exactly; the partial sum is final.
      best_val = running;
      best_err = 0.0;
    } else if (sums.size() >= opts.min_cells) {
      const std::size_t w = std::min(opts.window, sums.size());
      eps_hist.push_back(wynn_epsilon({sums.data() + sums.size() - w, w}));
      if (sums.size() == next_doubling) {
        rich_h.push_back(1.0 / static_cast<double>(sums.size()));
        rich_v.push_back(running);
        next_doubling *= 2;
        const std::size_t levels = std::min(kRichardsonLevels, rich_h.size());
        const std::size_t off = rich_h.size() - levels;
        rich_hist.push_back(extrapolate_to_zero({rich_h.data() + off, levels},
                                                {rich_v.data() + off, levels}));
      }
      const bool past_peak = mag < 0.5 * peak || peak == 0.0;
      const bool monotone = same_direction(terms, kShapeWindow);
      if (past_peak) {
        const std::size_t ne = eps_hist.size();
        if (!monotone && ne >= 3) {
          const double e = std::max(std::abs(eps_hist[ne - 1] - eps_hist[ne - 2]),
                                    std::abs(eps_hist[ne - 2] - eps_hist[ne - 3]));
          if (std::isfinite(e) && e < best_err) {
            best_err = e;
            best_val = eps_hist.back();
          }
        }
        const std::size_t nr = rich_hist.size();
        if (monotone && nr >= 2 && sums.size() * 2 == next_doubling) {
          const double e = std::abs(rich_hist[nr - 1] - rich_hist[nr - 2]);
          if (std::isfinite(e) && e < best_err) {
            best_err = e;
            best_val = rich_hist.back();
          }
        }
      }
    }
    if (within(best_err, tol, best_val)) {
      out.value = best_val;
      out.error_estimate = best_err;
      out.converged = true;
      return out;
    }
  }
  out.value = best_val;
  out.error_estimate = best_err;
  out.converged = false;
  return out;
}

}  // namespace detail

/**
 * Integral of f over [a, b], a < b. Globally adaptive: the segment with the
 * largest Kronrod-Gauss discrepancy is bisected until the summed discrepancy
 * is at most max(tol, tol*|value|) or the subdivision budget runs out.
 * Integrands may return double or std::complex<double>.
 */
template <class F>
QuadratureResult integrate_finite(F&& f, double a, double b, double tol,
                                  const FiniteOptions& opts = {}) {
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Segment> heap;
  const detail::Segment first = detail::gauss_kronrod21(f, a, b);
  out.n_evals = 21;
  complex total = first.value;
  double total_err = first.error;
  heap.push(first);

  std::size_t splits = 0;
  while (!detail::within(total_err, tol, total) && splits < opts.max_subdivisions) {
    const detail::Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval at machine resolution
    heap.pop();
    const detail::Segment left = detail::gauss_kronrod21(f, worst.a, mid);
    const detail::Segment right = detail::gauss_kronrod21(f, mid, worst.b);
    out.n_evals += 42;
    ++splits;
    heap.push(left);
    heap.push(right);
    // Re-sum from the heap every so often to keep roundoff from drifting.
    if (splits % 64 == 0) {
      total = {0.0, 0.0};
      total_err = 0.0;
      auto copy = heap;
      while (!copy.empty()) {
        total += copy.top().value;
        total_err += copy.top().error;
        copy.pop();
      }
    } else {
      total += left.value + right.value - worst.value;
      total_err += left.error + right.error - worst.error;
    }
  }
  // Final deterministic re-summation.
  total = {0.0, 0.0};
  total_err = 0.0;
  std::vector<detail::Segment> segs;
  segs.reserve(heap.size());
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(),
            [](const detail::Segment& l, const detail::Segment& r) { return l.a < r.a; });
  for (const auto& s : segs) {
    total += s.value;
    total_err += s.error;
  }
  out.value = total;
  out.error_estimate = total_err;
  out.converged = detail::within(total_err, tol, total);
  return out;
}

/**
 * Whole-line integral of an eventually oscillatory f whose envelope decays
 * at least like 1/|x|. period_hint is the asymptotic oscillation period;
 * cells have width period_hint/2 and are paired symmetrically about 0.
 */
template <class F>
QuadratureResult integrate_oscillatory_infinite(F&& f, double period_hint, double tol,
                                                const OscillatoryOptions& opts = {}) {
  const double h = 0.5 * period_hint;
  const double cell_tol = 1e-2 * tol;
  auto cell = [&](std::size_t k) {
    const double lo = h * static_cast<double>(k);
    const double hi = h * static_cast<double>(k + 1);
    QuadratureResult right = integrate_finite(f, lo, hi, cell_tol, opts.finite);
    QuadratureResult left = integrate_finite(f, -hi, -lo, cell_tol, opts.finite);
    QuadratureResult both;
    both.value = right.value + left.value;
    both.error_estimate = right.error_estimate + left.error_estimate;
    both.n_evals = right.n_evals + left.n_evals;
    both.converged = right.converged && left.converged;
    return both;
  };
  return detail::accelerate_cells(cell, complex{0.0, 0.0}, tol, opts);
}

/**
 * Integral of f over [breakpoint(0), inf), cut at breakpoint(0) <
 * breakpoint(1) < ... . Choosing breakpoints at zeros of the integrand's
 * oscillating factor makes the cell integrals alternate.
 */
template <class F, class Breakpoint>
QuadratureResult integrate_between_breakpoints(F&& f, Breakpoint&& breakpoint, double tol,
                                               const OscillatoryOptions& opts = {}) {
  const double cell_tol = 1e-2 * tol;
  auto cell = [&](std::size_t k) {
    return integrate_finite(f, breakpoint(k), breakpoint(k + 1), cell_tol, opts.finite);
  };
  return detail::accelerate_cells(cell, complex{0.0, 0.0}, tol, opts);
}

/**
 * Closed form of the damped Fourier integral
 *   int J_0(a w) exp(i b w) exp(-eps |w|) dw over the real line
 *   = 2 Re[1 / sqrt(a^2 + (eps - i b)^2)].
 * As eps -> 0 it tends to 2/sqrt(a^2 - b^2) for |b| < a and to 0 for |b| > a.
 */
inline double regularized_j0_fourier(double a, double b, double eps) {
  const complex s(eps, -b);
  return 2.0 * (1.0 / std::sqrt(a * a + s * s)).real();
}

}  // namespace beamkit::oscquad
