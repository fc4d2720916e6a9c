#include "modp.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kfold::modp {

uint64_t PrimeField::pow(uint64_t a, uint64_t e) const {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

namespace {

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = r * a % m;
    a = a * a % m;
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for n < 2^32.
bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2, 3, 5, 7, 11, 13}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2, 7, 61}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

PrimeField build_field(int m, int index) {
  const uint64_t top = (uint64_t{1} << 31) - 1;
  uint64_t cand = top - (top - 1) % static_cast<uint64_t>(m);  // largest <= top with cand = 1 mod m
  int found = -1;
  for (; cand > static_cast<uint64_t>(m); cand -= static_cast<uint64_t>(m)) {
    if (is_prime(cand) && ++found == index) break;
  }
  PrimeField f;
  f.p = cand;
  f.m = m;
  if (m == 1) return f;
  const auto qs = prime_factors(static_cast<uint64_t>(m));
  for (uint64_t g = 2; g < cand; ++g) {
    uint64_t w = powmod(g, (cand - 1) / m, cand);
    bool primitive = true;
    for (uint64_t q : qs)
      if (powmod(w, m / q, cand) == 1) {
        primitive = false;
        break;
      }
    if (primitive) {
      f.w = w;
      return f;
    }
  }
  throw std::logic_error("no primitive root of unity found");
}

}  // namespace

PrimeField field_for(int m, int index) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, PrimeField> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(m, index);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  PrimeField f = build_field(m, index);
  cache.emplace(key, f);
  return f;
}

std::optional<uint64_t> reduce(const Rational& q, const PrimeField& f) {
  mpz_class p(static_cast<unsigned long>(f.p));
  mpz_class num = q.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = q.get_den() % p;
  if (den == 0) return std::nullopt;
  uint64_t n = num.get_ui();
  uint64_t d = den.get_ui();
  return f.mul(n, f.inv(d));
}

std::optional<uint64_t> reduce(const CycloNum& a, const PrimeField& f) {
  const int k = a.conductor();
  if (k != 1 && f.m % k != 0) throw std::invalid_argument("prime field does not contain this conductor");
  // zeta_k maps to w^(m/k).
  const uint64_t zk = k == 1 ? 1 : f.pow(f.w, static_cast<uint64_t>(f.m / k));
  uint64_t acc = 0;
  uint64_t zp = 1;
  for (const auto& c : a.coeffs()) {
    if (sgn(c) != 0) {
      auto r = reduce(c, f);
      if (!r) return std::nullopt;
      acc = f.add(acc, f.mul(*r, zp));
    }
    zp = f.mul(zp, zk);
  }
  return acc;
}

}  // namespace kfold::modp
