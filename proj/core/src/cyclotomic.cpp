#include "kfold/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kfold {

namespace detail {

struct CycloTables {
  int k = 1;
  int phi = 1;
  std::vector<long> phi_poly;
  // zpow[e] = zeta^e in the power basis, for 0 <= e < k.
  std::vector<std::vector<long>> zpow;
  std::vector<std::complex<double>> basis;
};

}  // namespace detail

namespace {

using detail::CycloTables;

std::vector<long> poly_exact_div(std::vector<long> num, const std::vector<long>& den) {
  // den is monic; both constant term first.
  const int dn = static_cast<int>(den.size()) - 1;
  const int nn = static_cast<int>(num.size()) - 1;
  std::vector<long> q(nn - dn + 1, 0);
  for (int i = nn; i >= dn; --i) {
    long c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (int i = 0; i < dn; ++i)
    if (num[i] != 0) throw std::logic_error("cyclotomic division left a remainder");
  return q;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<int, std::unique_ptr<CycloTables>>& cache() {
  static std::map<int, std::unique_ptr<CycloTables>> c;
  return c;
}

std::map<int, std::vector<long>>& poly_cache() {
  static std::map<int, std::vector<long>> c;
  return c;
}

// Caller holds the cache mutex.
const std::vector<long>& cyclotomic_polynomial_locked(int n) {
  auto& pc = poly_cache();
  auto it = pc.find(n);
  if (it != pc.end()) return it->second;
  std::vector<long> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = poly_exact_div(std::move(p), cyclotomic_polynomial_locked(d));
  return pc.emplace(n, std::move(p)).first->second;
}

const CycloTables* tables_for(int k) {
  if (k < 1) throw std::invalid_argument("cyclotomic conductor must be >= 1");
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto& c = cache();
  auto it = c.find(k);
  if (it != c.end()) return it->second.get();
  auto t = std::make_unique<CycloTables>();
  t->k = k;
  t->phi_poly = cyclotomic_polynomial_locked(k);
  t->phi = static_cast<int>(t->phi_poly.size()) - 1;
  t->zpow.assign(k, std::vector<long>(t->phi, 0));
  std::vector<long> cur(t->phi, 0);
  cur[0] = 1;
  for (int e = 0; e < k; ++e) {
    t->zpow[e] = cur;
    // cur *= zeta, then eliminate zeta^phi using the monic relation.
    long top = cur[t->phi - 1];
    for (int i = t->phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (int i = 0; i < t->phi; ++i) cur[i] -= top * t->phi_poly[i];
  }
  t->basis.resize(t->phi);
  for (int i = 0; i < t->phi; ++i) {
    double ang = 2.0 * std::numbers::pi * i / k;
    t->basis[i] = {std::cos(ang), std::sin(ang)};
  }
  const CycloTables* out = t.get();
  c.emplace(k, std::move(t));
  return out;
}

bool all_zero_from(const std::vector<Rational>& c, size_t start) {
  for (size_t i = start; i < c.size(); ++i)
    if (sgn(c[i]) != 0) return false;
  return true;
}

// Accumulates coefficient v of zeta^e (any e >= 0) into out.
void add_power(const CycloTables* t, std::vector<Rational>& out, long e, const Rational& v) {
  const auto& row = t->zpow[e % t->k];
  for (int i = 0; i < t->phi; ++i) {
    if (row[i] == 0) continue;
    if (row[i] == 1)
      out[i] += v;
    else if (row[i] == -1)
      out[i] -= v;
    else
      out[i] += v * row[i];
  }
}

}  // namespace

int euler_phi(int n) {
  if (n < 1) throw std::invalid_argument("euler_phi needs n >= 1");
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

const std::vector<long>& cyclotomic_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic polynomial index must be >= 1");
  std::lock_guard<std::mutex> lock(cache_mutex());
  return cyclotomic_polynomial_locked(n);
}

long lcm_conductor(long a, long b) { return std::lcm(a, b); }

CycloNum::CycloNum() : t_(tables_for(1)), c_(1) {}

CycloNum::CycloNum(long v) : t_(tables_for(1)), c_{Rational(v)} {}

CycloNum::CycloNum(const Rational& q) : t_(tables_for(1)), c_{q} {}

CycloNum::CycloNum(int k, const Rational& q) : t_(tables_for(k)), c_(t_->phi) { c_[0] = q; }

CycloNum::CycloNum(int k, std::vector<Rational> coeffs) : t_(tables_for(k)), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) != t_->phi)
    throw std::invalid_argument("CycloNum for conductor " + std::to_string(k) + " needs " +
                                std::to_string(t_->phi) + " coefficients");
}

CycloNum::CycloNum(const CycloTables* t, std::vector<Rational> c) : t_(t), c_(std::move(c)) {}

CycloNum CycloNum::zero(int k) { return CycloNum(k, Rational(0)); }
CycloNum CycloNum::one(int k) { return CycloNum(k, Rational(1)); }

CycloNum CycloNum::root_of_unity(int k, long j) {
  if (k < 1) throw std::invalid_argument("root of unity needs k >= 1");
  const CycloTables* t = tables_for(k);
  long e = ((j % k) + k) % k;
  std::vector<Rational> c(t->phi);
  for (int i = 0; i < t->phi; ++i) c[i] = t->zpow[e][i];
  return CycloNum(t, std::move(c));
}

int CycloNum::conductor() const { return t_->k; }
int CycloNum::degree() const { return t_->phi; }

bool CycloNum::is_zero() const { return all_zero_from(c_, 0); }
bool CycloNum::is_one() const { return c_[0] == 1 && all_zero_from(c_, 1); }
bool CycloNum::is_rational() const { return all_zero_from(c_, 1); }

CycloNum CycloNum::promote(int m) const {
  if (m == t_->k) return *this;
  if (m % t_->k != 0)
    throw std::invalid_argument("cannot promote conductor " + std::to_string(t_->k) + " to " +
                                std::to_string(m));
  const CycloTables* t = tables_for(m);
  std::vector<Rational> out(t->phi);
  const long step = m / t_->k;
  for (int i = 0; i < t_->phi; ++i)
    if (sgn(c_[i]) != 0) add_power(t, out, i * step, c_[i]);
  return CycloNum(t, std::move(out));
}

CycloNum CycloNum::demote_if_rational() const {
  if (t_->k == 1 || !is_rational()) return *this;
  return CycloNum(c_[0]);
}

int CycloNum::common_conductor(const CycloNum& a, const CycloNum& b) {
  const int ka = a.t_->k, kb = b.t_->k;
  if (ka == kb) return ka;
  if (ka == 1) return kb;
  if (kb == 1) return ka;
  throw std::invalid_argument("mismatched cyclotomic conductors " + std::to_string(ka) + " and " +
                              std::to_string(kb));
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  const int k = common_conductor(*this, o);
  if (t_->k != k) *this = promote(k);
  if (o.t_->k == k) {
    for (int i = 0; i < t_->phi; ++i) c_[i] += o.c_[i];
  } else {
    c_[0] += o.c_[0];
  }
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) {
  const int k = common_conductor(*this, o);
  if (t_->k != k) *this = promote(k);
  if (o.t_->k == k) {
    for (int i = 0; i < t_->phi; ++i) c_[i] -= o.c_[i];
  } else {
    c_[0] -= o.c_[0];
  }
  return *this;
}

CycloNum& CycloNum::operator*=(const Rational& q) {
  for (auto& v : c_) v *= q;
  return *this;
}

CycloNum& CycloNum::operator*=(const CycloNum& o) {
  const int k = common_conductor(*this, o);
  if (o.is_rational()) {
    if (t_->k != k) *this = promote(k);
    return *this *= o.c_[0];
  }
  if (is_rational()) {
    Rational s = c_[0];
    *this = o.t_->k == k ? o : o.promote(k);
    return *this *= s;
  }
  // Neither side is rational here, so both already live in Q(zeta_k).
  const CycloTables* t = t_;
  std::vector<Rational> out(t->phi);
  const CycloNum& a = *this;
  const CycloNum& b = o;
  std::vector<Rational> conv(2 * t->phi - 1);
  for (int i = 0; i < t->phi; ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (int j = 0; j < t->phi; ++j) {
      if (sgn(b.c_[j]) == 0) continue;
      conv[i + j] += a.c_[i] * b.c_[j];
    }
  }
  for (int e = 0; e < static_cast<int>(conv.size()); ++e)
    if (sgn(conv[e]) != 0) add_power(t, out, e, conv[e]);
  c_ = std::move(out);
  return *this;
}

CycloNum CycloNum::operator-() const {
  CycloNum r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

CycloNum CycloNum::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in cyclotomic field");
  if (is_rational()) {
    CycloNum r = *this;
    r.c_[0] = 1 / c_[0];
    return r;
  }
  // Solve M x = e_0 where column i of M is this * zeta^i.
  const int n = t_->phi;
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (int i = 0; i < n; ++i) {
    CycloNum col = *this * root_of_unity(t_->k, i);
    for (int r = 0; r < n; ++r) m[r][i] = col.c_[r];
  }
  m[0][n] = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (sgn(m[r][col]) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::logic_error("singular multiplication matrix for nonzero element");
    std::swap(m[piv], m[col]);
    Rational inv = 1 / m[col][col];
    for (int c = col; c <= n; ++c) m[col][c] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col];
      for (int c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::vector<Rational> x(n);
  for (int i = 0; i < n; ++i) x[i] = m[i][n];
  return CycloNum(t_, std::move(x));
}

CycloNum& CycloNum::operator/=(const CycloNum& o) { return *this *= o.inverse(); }

CycloNum CycloNum::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycloNum result(t_, std::vector<Rational>(t_->phi));
  result.c_[0] = 1;
  CycloNum base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

CycloNum CycloNum::galois(long s) const {
  const long k = t_->k;
  if (std::gcd(((s % k) + k) % k, k) != 1 && k > 1)
    throw std::invalid_argument("galois exponent must be coprime to the conductor");
  std::vector<Rational> out(t_->phi);
  for (int i = 0; i < t_->phi; ++i) {
    if (sgn(c_[i]) == 0) continue;
    long e = ((static_cast<long>(i) * s) % k + k) % k;
    add_power(t_, out, e, c_[i]);
  }
  return CycloNum(t_, std::move(out));
}

CycloNum CycloNum::conj() const { return galois(-1); }

std::complex<double> CycloNum::to_complex() const {
  std::complex<double> z = 0.0;
  for (int i = 0; i < t_->phi; ++i)
    if (sgn(c_[i]) != 0) z += c_[i].get_d() * t_->basis[i];
  return z;
}

bool operator==(const CycloNum& a, const CycloNum& b) {
  if (a.t_->k == b.t_->k) return a.c_ == b.c_;
  if (a.t_->k == 1) return b.is_rational() && b.c_[0] == a.c_[0];
  if (b.t_->k == 1) return a.is_rational() && a.c_[0] == b.c_[0];
  throw std::invalid_argument("comparing values with mismatched cyclotomic conductors");
}

std::string CycloNum::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < t_->phi; ++i) {
    if (sgn(c_[i]) == 0) continue;
    std::string v = to_string(c_[i]);
    if (!first) {
      if (v[0] == '-') {
        os << " - ";
        v.erase(0, 1);
      } else {
        os << " + ";
      }
    }
    first = false;
    if (i == 0) {
      os << v;
    } else {
      if (v != "1") os << v << "*";
      os << "z" << t_->k;
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycloNum& a) { return os << a.str(); }

}  // namespace kfold
