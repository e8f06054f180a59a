#include "paw/constraints.hpp"

#include <string>

#include "paw/error.hpp"

namespace paw {

ClockSpec::ClockSpec(int two_J_, double epsilon_) : two_J(two_J_), epsilon(epsilon_) {
  if (two_J < 1) throw Error(ErrorCode::InvalidArgument, "2J must be >= 1");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be > 0");
}

OscillatorSpec::OscillatorSpec(std::int64_t M_, double omega_) : M(M_), omega(omega_) {
  if (M < 1) throw Error(ErrorCode::InvalidArgument, "M must be >= 1");
  if (!(omega > 0.0)) throw Error(ErrorCode::InvalidArgument, "omega must be > 0");
}

CouplingRatios CouplingRatios::from(const Rational& epsilon_over_omega, int two_J,
                                    std::int64_t M) {
  if (epsilon_over_omega <= 0) {
    throw Error(ErrorCode::InvalidArgument, "epsilon/omega must be > 0");
  }
  if (two_J < 1) throw Error(ErrorCode::InvalidArgument, "2J must be >= 1");
  if (M < 1) throw Error(ErrorCode::InvalidArgument, "M must be >= 1");
  CouplingRatios out;
  out.kappa_r = epsilon_over_omega;
  out.r = Rational(BigInt(2 * M), BigInt(two_J));
  out.kappa = out.kappa_r / out.r;
  out.kappa_r_J = out.kappa_r * Rational(BigInt(two_J), BigInt(2));
  return out;
}

Rational ReducedRatio::kappa_r() const {
  return Rational(BigInt(2 * i_n + 1), BigInt(2 * i_m));
}

ReducedRatio reduce_ratio(const Rational& kappa_r) {
  if (kappa_r <= 0) {
    throw Error(ErrorCode::InvalidArgument, "kappa_r must be > 0");
  }
  // cpp_rational is always kept in lowest terms.
  const BigInt num = boost::multiprecision::numerator(kappa_r);
  const BigInt den = boost::multiprecision::denominator(kappa_r);
  if (num % 2 == 0 || den % 2 != 0) {
    throw Error(ErrorCode::NoOddOverEvenForm,
                "kappa_r = " + to_string(kappa_r) +
                    " has no odd/even form: no (m, n) pairs exist for any J");
  }
  return ReducedRatio{to_int64((num - 1) / 2), to_int64(den / 2)};
}

std::int64_t max_l(const ReducedRatio& ratio, int two_J) {
  // need i_m (2l + 1) <= 2J
  const std::int64_t q = two_J / ratio.i_m;
  if (q < 1) return -1;
  return (q - 1) / 2;
}

PairFamily enumerate_pairs(const ReducedRatio& ratio, int two_J) {
  if (two_J < 1) throw Error(ErrorCode::InvalidArgument, "2J must be >= 1");
  if (ratio.i_m < 1 || ratio.i_n < 0) {
    throw Error(ErrorCode::InvalidArgument, "reduced ratio needs i_m >= 1, i_n >= 0");
  }
  PairFamily family{ratio, two_J, {}};
  const std::int64_t last = max_l(ratio, two_J);
  family.pairs.reserve(static_cast<std::size_t>(last + 1));
  for (std::int64_t l = 0; l <= last; ++l) {
    family.pairs.push_back(
        AllowedPair{ratio.i_m * (2 * l + 1), ratio.i_n * (2 * l + 1) + l, l});
  }
  return family;
}

bool satisfies_constraint(const Rational& kappa_r, std::int64_t m_plus_J, std::int64_t n) {
  return Rational(BigInt(2 * n + 1), BigInt(2)) == kappa_r * Rational(BigInt(m_plus_J));
}

std::vector<std::pair<std::int64_t, std::int64_t>> brute_force_pairs(
    const Rational& kappa_r, int two_J, std::int64_t n_max) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t k = 0; k <= two_J; ++k) {
    for (std::int64_t n = 0; n <= n_max; ++n) {
      if (satisfies_constraint(kappa_r, k, n)) out.emplace_back(k, n);
    }
  }
  return out;
}

bool is_entanglement_admissible(const PairFamily& family) {
  return family.pairs.size() >= 2;
}

bool entanglement_threshold_met(const ReducedRatio& ratio, int two_J) {
  return static_cast<std::int64_t>(two_J) >= 3 * ratio.i_m;
}

}  // namespace paw
