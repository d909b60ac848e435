#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isodg {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kEulerGamma = 0.57721566490153286060;
constexpr double kCatalan = 0.91596559417721901505;

constexpr double tol_geom = 1e-9;

// Error taxonomy shared across modules. `code` is a stable machine-readable
// tag used by the CLI to pick exit codes.
struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

// Reduce an angle to (-pi, pi].
double wrap_angle(double a);

// Deterministic pairwise (cascade) summation; stable under re-runs and
// independent of thread count because callers fill `v` in index order.
double pairwise_sum(const std::vector<double>& v);
cplx pairwise_sum(const std::vector<cplx>& v);

// Gauss-Legendre nodes/weights on [-1, 1]; cached per n.
struct GaussRule {
  std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int n);

// Fixed-order panel integral of f over [a, b].
double gauss_panel(const std::function<double(double)>& f, double a, double b,
                   int n);

// Adaptive panel-splitting integration to absolute tolerance `abs_tol`.
// Error estimate per panel: |GL(n) over panel - sum of GL(n) over halves|.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, int max_depth = 48);

// Clausen function Cl2(theta) = -int_0^theta log|2 sin(t/2)| dt,
// |error| < 1e-13 on all of R (odd, 2pi-periodic).
double clausen2(double theta);

// Regularized incomplete beta I_x(a,b), for F-distribution tail tests.
double betainc_reg(double a, double b, double x);

// Upper tail P(F > f) for the F distribution with (d1, d2) dof.
double f_dist_sf(double f, double d1, double d2);

// Run worker(begin, end) over [0, n) split across threads; each chunk is a
// contiguous index range so callers can write results deterministically.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& worker);

}  // namespace isodg
