#pragma once

#include <array>
#include <complex>
#include <vector>

namespace kfold {

// Binary cubic c0 cos^3 + c1 cos^2 sin + c2 cos sin^2 + c3 sin^3.
using BinaryCubic = std::array<double, 4>;

// Rotated coefficients a31 and a33 of the umbilic cubic Re(z^3 + beta z^2 conj(z))
// as cubic forms in (cos t, sin t).
BinaryCubic umbilic_a31_form(std::complex<double> beta);
BinaryCubic umbilic_a33_form(std::complex<double> beta);

double eval_cubic(const BinaryCubic& c, double theta);
double cubic_discriminant(const BinaryCubic& c);
// Distinct real roots on the projective line: 3 for a positive discriminant, 1 for negative.
int cubic_real_root_count(const BinaryCubic& c);

// -3(2e^{2it} + e^{-4it}) and 2e^{2it} + e^{-4it}, sampled at n points.
std::vector<std::complex<double>> outer_hypocycloid(int n);
std::vector<std::complex<double>> inner_hypocycloid(int n);

// Winding number of a closed polygon around z (signed crossing count).
int winding_number(const std::vector<std::complex<double>>& polygon, std::complex<double> z);

struct UmbilicReport {
  std::complex<double> beta;
  bool inside_outer = false;  // winding-number membership
  bool inside_inner = false;
  int m_dir_count = 1;        // real roots of a31, from the discriminant sign
  int n_dir_count = 1;        // real roots of a33
  double disc_m = 0, disc_n = 0;
  bool degenerate = false;    // near t(3s^2 - t^2) = 0, |beta| in {1, 3}, or a vanishing discriminant
  bool winding_consistent = true;
};

UmbilicReport umbilic_analysis(std::complex<double> beta, double tau = 1e-6);

}  // namespace kfold
