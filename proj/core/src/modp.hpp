#pragma once

// Word-size prime fields used to accelerate large Macaulay eliminations.

#include <cstdint>
#include <optional>

#include "kfold/cyclotomic.hpp"

namespace kfold::modp {

struct PrimeField {
  uint64_t p = 0;
  uint64_t w = 1;  // primitive m-th root of unity mod p, image of zeta_m
  int m = 1;

  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
  uint64_t mul(uint64_t a, uint64_t b) const { return (a * b) % p; }
  uint64_t pow(uint64_t a, uint64_t e) const;
  uint64_t inv(uint64_t a) const { return pow(a, p - 2); }
};

// The index-th largest prime below 2^31 that is 1 mod m, with a fixed
// primitive m-th root of unity. Deterministic for a given (m, index).
PrimeField field_for(int m, int index);

// Image of a rational or cyclotomic number; nullopt when a denominator
// vanishes mod p.
std::optional<uint64_t> reduce(const Rational& q, const PrimeField& f);
std::optional<uint64_t> reduce(const CycloNum& a, const PrimeField& f);

}  // namespace kfold::modp
