#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace paw {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss–Legendre rule on [−1, 1]; exact for polynomials of degree ≤ 2n − 1.
QuadratureRule gauss_legendre(std::size_t n);

/// The same rule affinely mapped onto [a, b].
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

/// ∫ over S² of f(θ, φ) dμ(Ω), dμ = (2J+1)/(4π) sin θ dθ dφ.
/// Gauss–Legendre in cos θ times an n_phi-point periodic trapezoid over φ ∈ [0, period);
/// the result is rescaled to a full 2π sweep, so period must divide 2π for a φ-periodic f.
double integrate_sphere(const std::function<double(double theta, double phi)>& f, int two_J,
                        std::size_t n_theta, std::size_t n_phi, double period);

/// Number of worker threads: hardware concurrency capped by $PAW_THREADS (≥ 1).
unsigned worker_count();

/// Runs body(i) for i in [0, n) over contiguous chunks; body must only write to slot i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace paw
