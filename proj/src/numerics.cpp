#include "bpo/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "bpo/error.hpp"

namespace bpo::numerics {

double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double norm_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double log_norm_cdf(double x) {
  if (x > 0.0) return std::log1p(-norm_cdf(-x));
  if (x >= -8.0) return std::log(norm_cdf(x));
  // Phi(x) = phi(x)/(-x) * sum_n (-1)^n (2n-1)!! / x^(2n); stop at the
  // smallest term since the series is only asymptotic.
  const double inv_x2 = 1.0 / (x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 200; ++n) {
    const double next = -term * (2.0 * n - 1.0) * inv_x2;
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return -0.5 * x * x - std::log(-x) - kLogSqrt2Pi + std::log(sum);
}

double gauss_tail_lower(double x) {
  if (!(x > 0.0)) throw Error(Errc::DomainError, "gauss_tail_lower needs x > 0");
  return x / (1.0 + x * x) * norm_pdf(x);
}

double gauss_tail_upper(double x) {
  if (!(x > 0.0)) throw Error(Errc::DomainError, "gauss_tail_upper needs x > 0");
  return norm_pdf(x) / x;
}

MinimizeResult minimize_1d(const std::function<double(double)>& f, std::span<const double> candidates,
                           double bracket_pad, double tol) {
  if (candidates.empty()) throw Error(Errc::DomainError, "minimize_1d needs candidates");
  auto eval = [&](double x) {
    const double y = f(x);
    if (!std::isfinite(y)) throw Error(Errc::NonFiniteEvaluation, "objective at " + std::to_string(x));
    return y;
  };

  constexpr std::size_t kGrid = 256;
  const auto [cmin, cmax] = std::minmax_element(candidates.begin(), candidates.end());
  const double lo = *cmin - bracket_pad;
  const double hi = *cmax + bracket_pad;

  std::vector<double> points(candidates.begin(), candidates.end());
  points.reserve(points.size() + kGrid);
  for (std::size_t g = 0; g < kGrid; ++g) {
    points.push_back(lo + (hi - lo) * static_cast<double>(g) / static_cast<double>(kGrid - 1));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::size_t best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double y = eval(points[p]);
    if (y < best_val) {
      best_val = y;
      best = p;
    }
  }
  MinimizeResult result{points[best], best_val};

  double a = points[best > 0 ? best - 1 : best];
  double b = points[best + 1 < points.size() ? best + 1 : best];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = eval(x);
  for (auto [px, py] : {std::pair{x, fx}, std::pair{c, fc}, std::pair{d, fd}}) {
    if (py < result.min) result = {px, py};
  }
  return result;
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (!std::isfinite(flo) || !std::isfinite(fhi)) {
    throw Error(Errc::NonFiniteEvaluation, "find_root endpoint");
  }
  if (flo * fhi > 0.0) throw Error(Errc::NoSignChange, "f has the same sign at both ends");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (!std::isfinite(fmid)) throw Error(Errc::NonFiniteEvaluation, "find_root midpoint");
    if ((flo <= 0.0 && fmid >= 0.0) || (flo >= 0.0 && fmid <= 0.0)) {
      hi = mid;
    } else {
      lo = mid;
      flo = fmid;
    }
    if (mid == lo && mid == hi) break;
  }
  return 0.5 * (lo + hi);
}

namespace {

// QUADPACK qk21 abscissae and weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208814312880, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the nodes kXgk[1], kXgk[3], ..., kXgk[9].
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double lo;
  double hi;
  std::vector<double> value;
  std::vector<double> error;
  double worst;  // largest per-component error, the split priority
};

Segment gk21(const VectorIntegrand& f, std::size_t dim, double lo, double hi, std::vector<double>& buf) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  Segment seg{lo, hi, std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0), 0.0};
  std::vector<double> gauss(dim, 0.0);
  std::span<double> out(buf.data(), dim);

  auto accumulate = [&](double x, double wk, double wg) {
    f(x, out);
    for (std::size_t c = 0; c < dim; ++c) {
      if (!std::isfinite(out[c])) throw Error(Errc::NonFiniteEvaluation, "integrand at " + std::to_string(x));
      seg.value[c] += wk * out[c];
      gauss[c] += wg * out[c];
    }
  };

  accumulate(center, kWgk[10], 0.0);
  for (std::size_t j = 0; j < 10; ++j) {
    const double wg = (j % 2 == 1) ? kWg[j / 2] : 0.0;
    const double dx = half * kXgk[j];
    accumulate(center - dx, kWgk[j], wg);
    accumulate(center + dx, kWgk[j], wg);
  }
  for (std::size_t c = 0; c < dim; ++c) {
    seg.value[c] *= half;
    gauss[c] *= half;
    seg.error[c] = std::abs(seg.value[c] - gauss[c]);
    seg.worst = std::max(seg.worst, seg.error[c]);
  }
  return seg;
}

}  // namespace

std::vector<double> integrate_vector(const VectorIntegrand& f, std::size_t dim, double lo, double hi,
                                     std::span<const double> breakpoints, const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) {
    throw Error(Errc::DomainError, "quadrature tolerances must be positive");
  }
  if (!(hi > lo)) return std::vector<double>(dim, 0.0);

  std::vector<double> edges{lo};
  for (double b : breakpoints) {
    if (b > lo && b < hi) edges.push_back(b);
  }
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  auto cmp = [](const Segment& a, const Segment& b) { return a.worst < b.worst; };
  std::priority_queue<Segment, std::vector<Segment>, decltype(cmp)> heap(cmp);
  std::vector<double> buf(dim);
  std::vector<double> total(dim, 0.0);
  std::vector<double> total_err(dim, 0.0);

  auto push = [&](Segment seg) {
    for (std::size_t c = 0; c < dim; ++c) {
      total[c] += seg.value[c];
      total_err[c] += seg.error[c];
    }
    heap.push(std::move(seg));
  };
  auto converged = [&] {
    for (std::size_t c = 0; c < dim; ++c) {
      if (total_err[c] > std::max(spec.abs_tol, spec.rel_tol * std::abs(total[c]))) return false;
    }
    return true;
  };

  for (std::size_t e = 0; e + 1 < edges.size(); ++e) push(gk21(f, dim, edges[e], edges[e + 1], buf));

  std::size_t splits = 0;
  while (!converged()) {
    if (splits++ >= spec.max_subdivisions) {
      throw Error(Errc::ToleranceNotMet, "adaptive quadrature exhausted its subdivision budget");
    }
    Segment worst = heap.top();
    heap.pop();
    for (std::size_t c = 0; c < dim; ++c) {
      total[c] -= worst.value[c];
      total_err[c] -= worst.error[c];
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw Error(Errc::ToleranceNotMet, "interval collapsed below machine resolution");
    }
    push(gk21(f, dim, worst.lo, mid, buf));
    push(gk21(f, dim, mid, worst.hi, buf));
  }

  // Re-sum from the final partition so the running subtraction leaves no drift.
  std::fill(total.begin(), total.end(), 0.0);
  while (!heap.empty()) {
    for (std::size_t c = 0; c < dim; ++c) total[c] += heap.top().value[c];
    heap.pop();
  }
  return total;
}

double integrate(const std::function<double(double)>& f, double lo, double hi, const QuadratureSpec& spec) {
  const VectorIntegrand wrapped = [&](double x, std::span<double> out) { out[0] = f(x); };
  return integrate_vector(wrapped, 1, lo, hi, {}, spec)[0];
}

}  // namespace bpo::numerics
