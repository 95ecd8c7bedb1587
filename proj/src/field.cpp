#include "koszul/field.hpp"

#include <array>

namespace koszul {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a proof for every n < 3.3e24.
  constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t a : bases) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  if ((n & 1) == 0) ++n;
  while (!is_prime(n)) n += 2;
  return n;
}

PrimeField PrimeField::create(std::uint64_t p) {
  if (p < kMinModulus) {
    throw InputError("modulus " + std::to_string(p) +
                     " is below the 2^20 threshold; small characteristic can make derivative "
                     "coefficients vanish and distort ranks");
  }
  if (p >= kMaxModulus) {
    throw InputError("modulus " + std::to_string(p) + " does not fit in 32 bits");
  }
  if (!is_prime(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
  return PrimeField(static_cast<std::uint32_t>(p));
}

Fp PrimeField::pow(Fp a, std::uint64_t e) const {
  return Fp(static_cast<std::uint32_t>(powmod64(a.v, e, p_)));
}

Fp PrimeField::inv(Fp a) const {
  if (a.is_zero()) throw DivisionByZero();
  // Extended Euclid; faster than Fermat for a single inverse.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a.v;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p_;
  return Fp(static_cast<std::uint32_t>(t));
}

}  // namespace koszul
