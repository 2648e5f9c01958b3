#pragma once

// Independent reference computations used by the tests. None of these call the
// library routine they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHbar = 6.62607015e-34 / (2.0 * kPi);
inline constexpr double kH = 6.62607015e-34;

// erfc(x) to 20 significant digits (mpmath, 40-digit working precision).
inline constexpr std::array<std::pair<double, double>, 20> kErfc{{
    {0.0, 1.0},
    {1e-8, 0.99999998871620832904},
    {0.01, 0.98871658444415038285},
    {0.1, 0.8875370839817151016},
    {0.25, 0.72367360983176306701},
    {0.5, 0.47950012218695346232},
    {0.75, 0.2888443663464848684},
    {1.0, 0.15729920705028513066},
    {1.25, 0.077099871743541769863},
    {1.5, 0.033894853524689272933},
    {2.0, 0.0046777349810472658379},
    {2.5, 0.00040695201744495893956},
    {3.0, 0.000022090496998585441373},
    {3.5, 7.4309837234141274552e-7},
    {4.0, 1.5417257900280018852e-8},
    {4.5, 1.9661604415428874763e-10},
    {5.0, 1.5374597944280348502e-12},
    {5.5, 7.3578479179743980631e-15},
    {6.0, 2.1519736712498913117e-17},
    {8.0, 1.122429717298292708e-29},
}};

// <(rho^2 - 2 z^2) / (rho^2 + z^2)^{5/2}> over a 2-D isotropic Gaussian of per-axis
// width a, by tanh-sinh quadrature in rho / a.
inline double radial_kernel(double z, double a) {
  const double u = z / a;
  auto f = [u](double r) {
    const double d = r * r + u * u;
    return r * std::exp(-0.5 * r * r) * (r * r - 2.0 * u * u) / (d * d * std::sqrt(d));
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  const double s = std::max(std::abs(u), 1e-3);
  double v = ts.integrate(f, 0.0, s) + ts.integrate(f, s, 10.0 * s);
  if (10.0 * s < 40.0) v += ts.integrate(f, 10.0 * s, 40.0);
  return v / (a * a * a);
}

// <delta^3(r_q - r_h - z0 zhat)> for independent Gaussian clouds: sample the header,
// evaluate the qubit density at the shifted point. Returns {mean, stderr}, in m^-3.
inline std::pair<double, double> contact_overlap_mc(double a_qr, double a_qz, double a_hr,
                                                    double a_hz, double z0, int n,
                                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  const double norm = 1.0 / (std::pow(2.0 * kPi, 1.5) * a_qr * a_qr * a_qz);
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = a_hr * g(rng), y = a_hr * g(rng), z = a_hz * g(rng) + z0;
    const double v = norm * std::exp(-0.5 * (x * x + y * y) / (a_qr * a_qr) -
                                     0.5 * z * z / (a_qz * a_qz));
    s += v;
    s2 += v * v;
  }
  const double mean = s / n;
  return {mean, std::sqrt((s2 / n - mean * mean) / (n - 1))};
}

// Forced oscillator in a truncated Fock basis. The force enters through
// g(s) = F(s / omega) x0 / hbar with x0 = sqrt(hbar / 2 M omega) and s = omega t.
// Interaction picture: i dc/ds = -(g(s)/omega) (a e^{-is} + a^dag e^{is}) c,
// integrated with classical RK4. Returns 1 - |c_0|^2.
template <class Force>
double fock_excitation(Force force, double s0, double s1, double mass, double omega,
                       int n_fock = 40, int steps = 200000) {
  using C = std::complex<double>;
  const double x0 = std::sqrt(kHbar / (2.0 * mass * omega));
  std::vector<C> c(static_cast<std::size_t>(n_fock), C(0.0));
  c[0] = 1.0;
  auto deriv = [&](double s, const std::vector<C>& v) {
    const double g = force(s / omega) * x0 / kHbar / omega;
    const C e = std::exp(C(0.0, -s));
    std::vector<C> out(v.size(), C(0.0));
    for (int n = 0; n < n_fock; ++n) {
      C acc = 0.0;
      if (n + 1 < n_fock) acc += std::sqrt(double(n + 1)) * e * v[static_cast<std::size_t>(n + 1)];
      if (n > 0) acc += std::sqrt(double(n)) * std::conj(e) * v[static_cast<std::size_t>(n - 1)];
      out[static_cast<std::size_t>(n)] = C(0.0, 1.0) * g * acc;
    }
    return out;
  };
  const double h = (s1 - s0) / steps;
  std::vector<C> tmp(c.size());
  for (int k = 0; k < steps; ++k) {
    const double s = s0 + k * h;
    const auto k1 = deriv(s, c);
    for (std::size_t i = 0; i < c.size(); ++i) tmp[i] = c[i] + 0.5 * h * k1[i];
    const auto k2 = deriv(s + 0.5 * h, tmp);
    for (std::size_t i = 0; i < c.size(); ++i) tmp[i] = c[i] + 0.5 * h * k2[i];
    const auto k3 = deriv(s + 0.5 * h, tmp);
    for (std::size_t i = 0; i < c.size(); ++i) tmp[i] = c[i] + h * k3[i];
    const auto k4 = deriv(s + h, tmp);
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
  }
  return 1.0 - std::norm(c[0]);
}

// <(1/R^3)(1 - 3 R_z^2/R^2)> for R Gaussian with per-axis widths (sr, sr, sz) centred at
// -z0 zhat, as a spherical principal value. Each sample is replaced by the density-weighted
// mean of f over its orbit under cyclic axis permutations and inversion. f sums to zero on
// the orbit, so the 1/R^3 singularity cancels and the variance stays finite. {mean, stderr}.
inline std::pair<double, double> dipolar_orbit_mc(double sr, double sz, double z0, long n,
                                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 5);
  auto image = [](const double* r, int k, double* out) {
    const double sign = k >= 3 ? -1.0 : 1.0;
    for (int i = 0; i < 3; ++i) out[i] = sign * r[(i + k) % 3];
  };
  double s = 0.0, s2 = 0.0;
  for (long i = 0; i < n; ++i) {
    const double r[3] = {sr * g(rng), sr * g(rng), sz * g(rng) - z0};
    double p[3];
    image(r, pick(rng), p);
    double logw[6], f[6], top = -1e300;
    for (int k = 0; k < 6; ++k) {
      double q[3];
      image(p, k, q);
      const double r2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
      f[k] = (1.0 - 3.0 * q[2] * q[2] / r2) / (r2 * std::sqrt(r2));
      const double dz = (q[2] + z0) / sz;
      logw[k] = -0.5 * ((q[0] * q[0] + q[1] * q[1]) / (sr * sr) + dz * dz);
      top = std::max(top, logw[k]);
    }
    double num = 0.0, den = 0.0;
    for (int k = 0; k < 6; ++k) {
      const double w = std::exp(logw[k] - top);
      num += w * f[k];
      den += w;
    }
    const double v = num / den;
    s += v;
    s2 += v * v;
  }
  const double mean = s / static_cast<double>(n);
  return {mean, std::sqrt((s2 / static_cast<double>(n) - mean * mean) / static_cast<double>(n - 1))};
}

// Least-squares line through (x, y); returns {slope, intercept, max |residual|}.
inline std::array<double, 3> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / n;
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    worst = std::max(worst, std::abs(y[i] - (slope * x[i] + icpt)));
  }
  return {slope, icpt, worst};
}

}  // namespace oracle
