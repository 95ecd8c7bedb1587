#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "koszul/error.hpp"

namespace koszul {

/// Canonical residue in [0, modulus). Carries no modulus; arithmetic goes through PrimeField.
struct Fp {
  std::uint32_t v = 0;

  constexpr Fp() = default;
  constexpr explicit Fp(std::uint32_t value) : v(value) {}

  constexpr bool is_zero() const { return v == 0; }
  friend constexpr auto operator<=>(Fp, Fp) = default;
};

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Smallest prime >= n.
std::uint64_t next_prime(std::uint64_t n);

/// GF(p) for a prime 2^20 <= p < 2^32.
class PrimeField {
 public:
  static constexpr std::uint64_t kMinModulus = std::uint64_t{1} << 20;
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 32;

  /// Validates primality and range; throws InputError otherwise.
  static PrimeField create(std::uint64_t p);

  std::uint32_t modulus() const { return p_; }

  Fp from_int(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return Fp(static_cast<std::uint32_t>(r));
  }
  Fp zero() const { return Fp(0); }
  Fp one() const { return Fp(1); }

  Fp add(Fp a, Fp b) const {
    std::uint64_t s = std::uint64_t{a.v} + b.v;
    return Fp(static_cast<std::uint32_t>(s >= p_ ? s - p_ : s));
  }
  Fp sub(Fp a, Fp b) const {
    return Fp(a.v >= b.v ? a.v - b.v : static_cast<std::uint32_t>(std::uint64_t{a.v} + p_ - b.v));
  }
  Fp neg(Fp a) const { return Fp(a.v == 0 ? 0 : p_ - a.v); }
  Fp mul(Fp a, Fp b) const {
    return Fp(static_cast<std::uint32_t>((std::uint64_t{a.v} * b.v) % p_));
  }
  /// a + b*c
  Fp fma(Fp a, Fp b, Fp c) const {
    return Fp(static_cast<std::uint32_t>((std::uint64_t{a.v} + std::uint64_t{b.v} * c.v) % p_));
  }
  Fp pow(Fp a, std::uint64_t e) const;
  /// Throws DivisionByZero on zero.
  Fp inv(Fp a) const;
  Fp div(Fp a, Fp b) const { return mul(a, inv(b)); }

  /// Symmetric representative in (-p/2, p/2], for printing.
  std::int64_t centered(Fp a) const {
    return a.v > p_ / 2 ? static_cast<std::int64_t>(a.v) - p_ : static_cast<std::int64_t>(a.v);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  explicit PrimeField(std::uint32_t p) : p_(p) {}
  std::uint32_t p_;
};

}  // namespace koszul
