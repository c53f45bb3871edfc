#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bpo::numerics {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
inline constexpr double kLogSqrt2Pi = 0.918938533204672741780329736406;

double norm_pdf(double x);

/// Standard normal CDF via erfc; full relative accuracy in both tails.
double norm_cdf(double x);

/// ln Phi(x). Uses the Mills-ratio asymptotic series below x = -8 so the
/// result stays finite far beyond the point where Phi underflows.
double log_norm_cdf(double x);

/// x / (1 + x^2) phi(x) and phi(x) / x: the classical sandwich around
/// Phi(-x) for x > 0.
double gauss_tail_lower(double x);
double gauss_tail_upper(double x);

struct MinimizeResult {
  double argmin = 0.0;
  double min = 0.0;
};

/// Scans `candidates` plus a 256-point grid over
/// [min(candidates) - bracket_pad, max(candidates) + bracket_pad], then
/// golden-section refines around the best scanned point down to width `tol`.
/// The returned value never exceeds the best scanned value.
MinimizeResult minimize_1d(const std::function<double(double)>& f, std::span<const double> candidates,
                           double bracket_pad, double tol);

/// Bisection; requires f(lo) * f(hi) <= 0.
double find_root(const std::function<double(double)>& f, double lo, double hi, double tol);

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  std::size_t max_subdivisions = 10000;
};

/// Globally adaptive 21-point Gauss-Kronrod.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec = {});

using VectorIntegrand = std::function<void(double x, std::span<double> out)>;

/// Vector-valued variant: all components share the same nodes and an interval
/// is split until every component meets the tolerance. `breakpoints` inside
/// (lo, hi) seed the initial partition.
std::vector<double> integrate_vector(const VectorIntegrand& f, std::size_t dim, double lo, double hi,
                                     std::span<const double> breakpoints, const QuadratureSpec& spec = {});

}  // namespace bpo::numerics
