#include "kfold/umbilic.hpp"

#include <algorithm>
#include <cmath>

namespace kfold {

namespace {

constexpr int kHypocycloidSamples = 1 << 16;

const std::vector<std::complex<double>>& cached_outer() {
  static const auto v = outer_hypocycloid(kHypocycloidSamples);
  return v;
}

const std::vector<std::complex<double>>& cached_inner() {
  static const auto v = inner_hypocycloid(kHypocycloidSamples);
  return v;
}

std::vector<std::complex<double>> hypocycloid(int n, double scale) {
  std::vector<std::complex<double>> out(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2 * M_PI * i / n;
    out[i] = scale * (2.0 * std::polar(1.0, 2 * t) + std::polar(1.0, -4 * t));
  }
  return out;
}

// Normalized discriminant, comparable against a tolerance.
double relative_discriminant(const BinaryCubic& c) {
  const double m = std::max({std::fabs(c[0]), std::fabs(c[1]), std::fabs(c[2]), std::fabs(c[3]), 1e-300});
  return cubic_discriminant({c[0] / m, c[1] / m, c[2] / m, c[3] / m});
}

}  // namespace

// C = (1+s)x^3 - t x^2 y + (s-3) x y^2 - t y^3 under x = X sin + Y cos, y = -X cos + Y sin.
BinaryCubic umbilic_a31_form(std::complex<double> beta) {
  const double s = beta.real(), t = beta.imag();
  return {s - 3, -t, 9 + s, -t};
}

BinaryCubic umbilic_a33_form(std::complex<double> beta) {
  const double s = beta.real(), t = beta.imag();
  return {1 + s, -t, s - 3, -t};
}

double eval_cubic(const BinaryCubic& c, double theta) {
  const double co = std::cos(theta), si = std::sin(theta);
  return c[0] * co * co * co + c[1] * co * co * si + c[2] * co * si * si + c[3] * si * si * si;
}

double cubic_discriminant(const BinaryCubic& c) {
  const double a = c[0], b = c[1], cc = c[2], d = c[3];
  return b * b * cc * cc - 4 * a * cc * cc * cc - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * cc * d;
}

int cubic_real_root_count(const BinaryCubic& c) { return cubic_discriminant(c) > 0 ? 3 : 1; }

std::vector<std::complex<double>> outer_hypocycloid(int n) { return hypocycloid(n, -3.0); }
std::vector<std::complex<double>> inner_hypocycloid(int n) { return hypocycloid(n, 1.0); }

int winding_number(const std::vector<std::complex<double>>& poly, std::complex<double> z) {
  int w = 0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const auto a = poly[i] - z, b = poly[(i + 1) % n] - z;
    const double cr = a.real() * b.imag() - a.imag() * b.real();
    if (a.imag() <= 0) {
      if (b.imag() > 0 && cr > 0) ++w;
    } else if (b.imag() <= 0 && cr < 0) {
      --w;
    }
  }
  return w;
}

UmbilicReport umbilic_analysis(std::complex<double> beta, double tau) {
  UmbilicReport r;
  r.beta = beta;
  const BinaryCubic m = umbilic_a31_form(beta), nf = umbilic_a33_form(beta);
  r.disc_m = cubic_discriminant(m);
  r.disc_n = cubic_discriminant(nf);
  r.m_dir_count = cubic_real_root_count(m);
  r.n_dir_count = cubic_real_root_count(nf);
  r.inside_outer = winding_number(cached_outer(), beta) != 0;
  r.inside_inner = winding_number(cached_inner(), beta) != 0;
  r.winding_consistent = r.inside_outer == (r.m_dir_count == 3) && r.inside_inner == (r.n_dir_count == 3);

  const double s = beta.real(), t = beta.imag();
  const double rho = std::abs(beta);
  // Distances to the three lines through 0 at angles 0, 60 and 120 degrees.
  const double d_line = std::min({std::fabs(t), std::fabs(std::sqrt(3.0) * s - t) / 2, std::fabs(std::sqrt(3.0) * s + t) / 2});
  const bool near_circle = std::fabs(rho - 1) < tau || std::fabs(rho - 3) < tau;
  const bool flat_disc = std::fabs(relative_discriminant(m)) < tau || std::fabs(relative_discriminant(nf)) < tau;
  r.degenerate = d_line < tau || near_circle || flat_disc;
  return r;
}

}  // namespace kfold
