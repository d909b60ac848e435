#include "isodg/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

namespace isodg {

double wrap_angle(double a) {
  a = std::remainder(a, kTwoPi);  // (-pi, pi] up to the -pi edge case
  if (a <= -kPi) a += kTwoPi;
  return a;
}

namespace {

template <typename T>
T pairwise_sum_impl(const T* v, std::size_t n) {
  if (n <= 8) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum_impl(v, h) + pairwise_sum_impl(v + h, n - h);
}

}  // namespace

double pairwise_sum(const std::vector<double>& v) {
  return v.empty() ? 0.0 : pairwise_sum_impl(v.data(), v.size());
}

cplx pairwise_sum(const std::vector<cplx>& v) {
  return v.empty() ? cplx{} : pairwise_sum_impl(v.data(), v.size());
}

const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  // Newton iteration on P_n with the Tricomi initial guess.
  for (int k = 0; k < (n + 1) / 2; ++k) {
    double x = std::cos(kPi * (k + 0.75) / (n + 0.5));
    double p0, p1;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    p0 = 1.0;
    p1 = x;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    rule.x[k] = -x;
    rule.x[n - 1 - k] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.w[k] = w;
    rule.w[n - 1 - k] = w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

double gauss_panel(const std::function<double(double)>& f, double a, double b,
                   int n) {
  const GaussRule& g = gauss_legendre(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += g.w[i] * f(mid + half * g.x[i]);
  return s * half;
}

namespace {

double adapt_rec(const std::function<double(double)>& f, double a, double b,
                 double whole, double tol, int depth, int max_depth) {
  double m = 0.5 * (a + b);
  double left = gauss_panel(f, a, m, 15);
  double right = gauss_panel(f, m, b, 15);
  double delta = left + right - whole;
  if (std::abs(delta) <= tol || depth >= max_depth)
    return left + right + delta / 63.0;  // one extrapolation step
  return adapt_rec(f, a, m, left, 0.5 * tol, depth + 1, max_depth) +
         adapt_rec(f, m, b, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  double whole = gauss_panel(f, a, b, 15);
  return adapt_rec(f, a, b, whole, abs_tol, 0, max_depth);
}

double clausen2(double theta) {
  // Odd, 2pi-periodic; reduce to [0, pi] and use
  // Cl2(t) = t - t log t - int_0^t log(sin(x/2)/(x/2)) dx,
  // where the remaining integrand is analytic on [0, pi].
  double t = std::remainder(theta, kTwoPi);
  double sign = 1.0;
  if (t < 0) {
    t = -t;
    sign = -1.0;
  }
  if (t == 0.0) return 0.0;
  auto smooth = [](double x) {
    if (x < 1e-8) return std::log1p(-x * x / 24.0);
    return std::log(std::sin(0.5 * x) / (0.5 * x));
  };
  double integral = gauss_panel(smooth, 0.0, t, 48);
  return sign * (t - t * std::log(t) - integral);
}

namespace {

// Continued fraction for the incomplete beta (Lentz).
double betacf(double a, double b, double x) {
  const int kMaxIter = 300;
  const double kEps = 3e-16, kFpmin = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpmin) d = kFpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpmin) d = kFpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpmin) c = kFpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpmin) d = kFpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpmin) c = kFpmin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double betainc_reg(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                 a * std::log(x) + b * std::log1p(-x);
  double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double f_dist_sf(double f, double d1, double d2) {
  if (f <= 0.0) return 1.0;
  return betainc_reg(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * f));
}

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& worker) {
  if (n == 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t nthreads = std::max(1u, hw);
  nthreads = std::min<std::size_t>(nthreads, n);
  if (nthreads <= 1) {
    worker(0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + nthreads - 1) / nthreads;
  for (std::size_t t = 0; t < nthreads; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&worker, lo, hi] { worker(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace isodg
