#include "paw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>

#include "paw/error.hpp"
#include "paw/logmath.hpp"

namespace paw {

namespace {

QuadratureRule compute_gauss_legendre(std::size_t n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  const long double pi = 3.141592653589793238462643383279502884L;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n in extended precision.
    long double x = std::cos(pi * (static_cast<long double>(i) + 0.75L) /
                             (static_cast<long double>(n) + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L;
      long double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const long double pk =
            ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / static_cast<long double>(k);
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0L;
      }
      dp = static_cast<long double>(n) * (x * p1 - p0) / (x * x - 1.0L);
      const long double step = p1 / dp;
      x -= step;
      if (std::fabs(step) < 1e-19L) break;
    }
    // Recompute derivative at the converged node.
    long double p0 = 1.0L;
    long double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const long double pk =
          ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / static_cast<long double>(k);
      p0 = p1;
      p1 = pk;
    }
    dp = n == 1 ? 1.0L : static_cast<long double>(n) * (x * p1 - p0) / (x * x - 1.0L);
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    rule.nodes[i] = static_cast<double>(-x);
    rule.nodes[n - 1 - i] = static_cast<double>(x);
    rule.weights[i] = static_cast<double>(w);
    rule.weights[n - 1 - i] = static_cast<double>(w);
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "quadrature order must be >= 1");
  static std::mutex cache_mutex;
  static std::map<std::size_t, QuadratureRule> cache;
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  QuadratureRule rule = compute_gauss_legendre(n);
  std::lock_guard lock(cache_mutex);
  return cache.emplace(n, std::move(rule)).first->second;
}

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
  QuadratureRule rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

double integrate_sphere(const std::function<double(double, double)>& f, int two_J,
                        std::size_t n_theta, std::size_t n_phi, double period) {
  if (n_phi == 0 || !(period > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "integrate_sphere needs n_phi >= 1, period > 0");
  }
  // dμ = (2J+1)/(4π) d(cos θ) dφ
  const QuadratureRule rule = gauss_legendre(n_theta);
  const double dphi = period / static_cast<double>(n_phi);
  const double sweep = 2.0 * kPi / period;
  long double total = 0.0L;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double theta = std::acos(rule.nodes[i]);
    long double row = 0.0L;
    for (std::size_t j = 0; j < n_phi; ++j) row += f(theta, dphi * static_cast<double>(j));
    total += rule.weights[i] * row * dphi;
  }
  return static_cast<double>(total * sweep * (two_J + 1.0L) / (4.0L * kPi));
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PAW_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&body, &failures, w, begin, end] {
        try {
          for (std::size_t i = begin; i < end; ++i) body(i);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
}

}  // namespace paw
