#include "trapspin/interactions.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "trapspin/error.hpp"

namespace trapspin {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310002;  // sqrt(2 pi)

void require(bool ok, const char* msg) {
  if (!ok) throw DomainError(msg);
}

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

TrapGeometry TrapGeometry::from_bohr(double a_qr, double a_qz, double a_hr, double a_hz,
                                     double z0) {
  using units::bohr_to_m;
  return {bohr_to_m(a_qr), bohr_to_m(a_qz), bohr_to_m(a_hr), bohr_to_m(a_hz), bohr_to_m(z0)};
}

double TrapGeometry::a_r() const { return std::hypot(a_qr, a_hr); }
double TrapGeometry::a_z() const { return std::hypot(a_qz, a_hz); }

TrapGeometry TrapGeometry::with_z0(double z0_m) const {
  TrapGeometry g = *this;
  g.z0 = z0_m;
  return g;
}

void TrapGeometry::validate() const {
  require(positive_finite(a_qr) && positive_finite(a_qz) && positive_finite(a_hr) &&
              positive_finite(a_hz),
          "trap ground-state sizes must be positive");
  require(std::isfinite(z0), "trap separation z0 must be finite");
}

double ScatteringParams::reference_size() const {
  return ground_state_size(mass_kg, reference_trap);
}

void ScatteringParams::validate() const {
  require(positive_finite(mass_kg), "scattering mass must be positive");
  require(positive_finite(reference_trap.hz), "reference trap frequency must be positive");
  require(std::isfinite(a_triplet) && std::isfinite(a_singlet), "scattering lengths must be finite");
}

std::string to_string(CouplingMethod m) {
  switch (m) {
    case CouplingMethod::Quadrature:
      return "quadrature";
    case CouplingMethod::MonteCarlo:
      return "monte_carlo";
    case CouplingMethod::ClosedForm:
      return "closed_form";
  }
  return "unknown";
}

double dipole_prefactor(DipoleMode mode) {
  using namespace constants;
  switch (mode) {
    case DipoleMode::Calibrated:
      return kCalibratedDipoleHz * bohr_radius * bohr_radius * bohr_radius;
    case DipoleMode::FirstPrinciples:
      return mu0 / (4.0 * pi) * bohr_magneton * bohr_magneton / h;
  }
  throw DomainError("unknown dipole mode");
}

CouplingResult exchange_strength(const TrapGeometry& geom, const ScatteringParams& scat) {
  geom.validate();
  scat.validate();
  const double a = scat.reference_size();
  const double ar = geom.a_r();
  const double az = geom.a_z();
  const double value = 4.0 / kSqrt2Pi * (scat.a_triplet - scat.a_singlet) / az * (a * a) /
                       (ar * ar) * scat.reference_trap.hz *
                       std::exp(-geom.z0 * geom.z0 / (2.0 * az * az));
  return {value, CouplingMethod::ClosedForm, std::nullopt, 0, 0, 0.0};
}

CouplingResult dipole_strength(double r_m, DipoleMode mode) {
  require(positive_finite(r_m), "dipole separation R must be positive");
  return {dipole_prefactor(mode) / (r_m * r_m * r_m), CouplingMethod::ClosedForm, std::nullopt,
          0, 0, 0.0};
}

double radial_dipolar_kernel(double z, double a_r) {
  require(positive_finite(a_r), "radial width must be positive");
  const double az = std::abs(z);
  const double x = az / (std::sqrt(2.0) * a_r);
  if (x > 6.0) {
    // Asymptotic form: (1/|z|^3) sum_k e_k s^k, s = a_r^2/z^2,
    // e_k = -(-1)^k (2k+1)!! (2k+2). Truncated at the smallest term.
    const double s = (a_r * a_r) / (z * z);
    double sum = 0.0;
    double dfact = 1.0;  // (2k+1)!!
    double spow = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 200; ++k) {
      if (k > 0) dfact *= (2.0 * k + 1.0);
      const double term = ((k % 2 == 0) ? -1.0 : 1.0) * dfact * (2.0 * k + 2.0) * spow;
      if (std::abs(term) >= prev) break;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      prev = std::abs(term);
      spow *= s;
    }
    return sum / (az * az * az);
  }
  const double ar2 = a_r * a_r;
  const double scaled_erfc = std::exp(x * x) * std::erfc(x);
  const double bracket = 2.0 * az - (ar2 + z * z) * (kSqrt2Pi / a_r) * scaled_erfc;
  return bracket / (2.0 * ar2 * ar2);
}

double contact_density(const TrapGeometry& geom) {
  geom.validate();
  const double ar = geom.a_r();
  const double az = geom.a_z();
  const double rho0 = std::exp(-0.5 * (geom.z0 / az) * (geom.z0 / az)) /
                      (std::pow(2.0 * constants::pi, 1.5) * ar * ar * az);
  return 8.0 * constants::pi / 3.0 * rho0;
}

CouplingResult dipolar_average(const TrapGeometry& geom, const QuadratureOptions& opts) {
  geom.validate();
  const double ar = geom.a_r();
  const double az = geom.a_z();
  const double z0 = geom.z0;
  // Integrate in u = z / a_z so the interval widths handed to the rule are O(1);
  // the error estimate of the library rule is not rescaled by the interval width.
  auto integrand = [&](double u) {
    const double d = u - z0 / az;
    const double w = std::exp(-0.5 * d * d) / kSqrt2Pi;
    return w == 0.0 ? 0.0 : w * radial_dipolar_kernel(u * az, ar);
  };

  const double u0 = z0 / az;
  const double ur = ar / az;
  std::vector<double> breaks{u0 - opts.window_sigmas, u0 + opts.window_sigmas, 0.0, -5.0 * ur,
                             5.0 * ur, u0};
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double inner_tol = opts.rel_tol * 1e-2;
  double value = 0.0;
  double err = 0.0;
  double l1 = 0.0;
  auto piece = [&](double a, double b) {
    double e = 0.0;
    double piece_l1 = 0.0;
    value += GK::integrate(integrand, a, b, opts.max_depth, inner_tol, &e, &piece_l1);
    err += e;
    l1 += std::abs(piece_l1);
  };
  const double inf = std::numeric_limits<double>::infinity();
  // Tails outside the Gaussian window are integrated, not dropped.
  piece(-inf, breaks.front());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) piece(breaks[i], breaks[i + 1]);
  piece(breaks.back(), inf);

  const double scale = std::max(std::abs(value), 1e-6 * l1);
  if (!(err <= opts.rel_tol * scale) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << "dipolar_average: quadrature did not converge (value=" << value
        << " m^-3, error estimate=" << err << ", L1=" << l1 << ", a_r=" << ar << ", a_z=" << az
        << ", z0=" << z0 << ")";
    throw NumericalError(msg.str());
  }
  if (!opts.slab_ordered) value += contact_density(geom);
  CouplingResult r;
  r.value = value;
  r.method = CouplingMethod::Quadrature;
  r.abs_error_estimate = err;
  return r;
}

namespace {

struct ChunkStats {
  double sum = 0.0;
  double sumsq = 0.0;
  std::int64_t accepted = 0;
  std::int64_t rejected = 0;
};

ChunkStats run_chunk(const TrapGeometry& g, std::uint64_t seed, std::uint64_t chunk,
                     std::int64_t count, double cutoff) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> n01(0.0, 1.0);
  ChunkStats s;
  const double cutoff2 = cutoff * cutoff;
  for (std::int64_t i = 0; i < count; ++i) {
    const double qx = g.a_qr * n01(rng), qy = g.a_qr * n01(rng), qz = g.a_qz * n01(rng);
    const double hx = g.a_hr * n01(rng), hy = g.a_hr * n01(rng), hz = g.a_hz * n01(rng);
    const double rx = qx - hx, ry = qy - hy, rz = qz - hz - g.z0;
    const double r2 = rx * rx + ry * ry + rz * rz;
    if (r2 < cutoff2) {
      ++s.rejected;
      continue;
    }
    const double r = std::sqrt(r2);
    const double f = (1.0 - 3.0 * rz * rz / r2) / (r2 * r);
    s.sum += f;
    s.sumsq += f * f;
    ++s.accepted;
  }
  return s;
}

}  // namespace

CouplingResult dipolar_average_mc(const TrapGeometry& geom, std::int64_t n_samples,
                                  std::uint64_t seed, const MonteCarloOptions& opts) {
  geom.validate();
  require(n_samples >= kMinMonteCarloSamples, "dipolar_average_mc needs at least 1e4 samples");
  require(opts.chunk_size > 0, "chunk size must be positive");
  require(opts.core_cutoff_m >= 0.0, "core cutoff must be non-negative");

  const std::int64_t n_chunks = (n_samples + opts.chunk_size - 1) / opts.chunk_size;
  std::vector<ChunkStats> stats(static_cast<std::size_t>(n_chunks));
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t c = next++; c < n_chunks; c = next++) {
      const std::int64_t count = std::min(opts.chunk_size, n_samples - c * opts.chunk_size);
      stats[static_cast<std::size_t>(c)] =
          run_chunk(geom, seed, static_cast<std::uint64_t>(c), count, opts.core_cutoff_m);
    }
  };
  unsigned n_threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::int64_t>(n_threads, n_chunks));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }

  ChunkStats total;
  for (const auto& s : stats) {
    total.sum += s.sum;
    total.sumsq += s.sumsq;
    total.accepted += s.accepted;
    total.rejected += s.rejected;
  }
  if (total.accepted < 2) throw NumericalError("dipolar_average_mc: all samples rejected");
  const double n = static_cast<double>(total.accepted);
  const double mean = total.sum / n;
  const double var = std::max(0.0, (total.sumsq - n * mean * mean) / (n - 1.0));

  CouplingResult r;
  r.value = mean;
  r.method = CouplingMethod::MonteCarlo;
  r.stderr_value = std::sqrt(var / n);
  r.samples = n_samples;
  r.rejected = total.rejected;
  return r;
}

CouplingResult EffectiveJ::total() const {
  CouplingResult r;
  r.value = total_hz();
  r.method = method;
  r.stderr_value = stderr_hz;
  return r;
}

EffectiveJ effective_J(const TrapGeometry& geom, const ScatteringParams& scat,
                       const EffectiveJOptions& opts) {
  EffectiveJ j;
  if (opts.include_exchange) j.exchange_hz = exchange_strength(geom, scat).value;
  const double pref = dipole_prefactor(opts.dipole);
  j.method = opts.method;
  switch (opts.method) {
    case CouplingMethod::Quadrature:
      j.dipolar_hz = pref * dipolar_average(geom).value;
      break;
    case CouplingMethod::MonteCarlo: {
      const CouplingResult mc = dipolar_average_mc(geom, opts.mc_samples, opts.seed, opts.mc);
      j.dipolar_hz = pref * mc.value;
      j.stderr_hz = pref * *mc.stderr_value;
      break;
    }
    case CouplingMethod::ClosedForm:
      throw DomainError("effective_J: dipolar average has no closed form; use quadrature or MC");
  }
  return j;
}

TrapGeometry reference_geometry(double z0_m) {
  return TrapGeometry::from_bohr(400.0, 400.0, 100.0, 100.0, 0.0).with_z0(z0_m);
}

ScatteringParams reference_scattering() {
  ScatteringParams s;
  s.a_triplet = units::bohr_to_m(100.0);
  s.a_singlet = 0.0;
  s.mass_kg = units::amu_to_kg(87.0);
  s.reference_trap = Frequency::from_khz(982.0);
  return s;
}

std::vector<ScanRow> scan_couplings(const TrapGeometry& geom, const ScatteringParams& scat,
                                    const std::vector<double>& z0s_m,
                                    const EffectiveJOptions& opts) {
  std::vector<ScanRow> rows;
  rows.reserve(z0s_m.size());
  for (std::size_t i = 0; i < z0s_m.size(); ++i) {
    EffectiveJOptions o = opts;
    o.seed = opts.seed + i;
    const TrapGeometry g = geom.with_z0(z0s_m[i]);
    const EffectiveJ j = effective_J(g, scat, o);
    ScanRow row;
    row.z0_a0 = units::m_to_bohr(z0s_m[i]);
    row.exchange_hz = j.exchange_hz;
    row.dipolar_hz = j.dipolar_hz;
    row.total_hz = j.total_hz();
    row.method = j.method;
    row.stderr_hz = j.stderr_hz;
    row.point_dipole_hz = z0s_m[i] > 0.0 ? -2.0 * dipole_strength(z0s_m[i], opts.dipole).value
                                         : -std::numeric_limits<double>::infinity();
    rows.push_back(row);
  }
  return rows;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "z0_a0,J_exchange_Hz,J_dipolar_Hz,J_total_Hz,method,stderr_Hz,J_point_dipole_Hz\n";
  const auto old = os.precision(12);
  for (const auto& r : rows) {
    os << r.z0_a0 << ',' << r.exchange_hz << ',' << r.dipolar_hz << ',' << r.total_hz << ','
       << to_string(r.method) << ',';
    if (r.stderr_hz) os << *r.stderr_hz;
    os << ',' << r.point_dipole_hz << '\n';
  }
  os.precision(old);
}

}  // namespace trapspin
