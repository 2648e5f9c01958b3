#include <doctest.h>

#include <cmath>

#include "trapspin/error.hpp"
#include "trapspin/units.hpp"

using namespace trapspin;
using doctest::Approx;

namespace {
constexpr double kRb = units::amu_to_kg(87.0);
}

TEST_CASE("recoil frequency") {
  CHECK(recoil_frequency(kRb, 780e-9).khz() == Approx(3.7).epsilon(0.03));
  // h / (2 M lambda^2) evaluated by hand.
  const double direct = 6.62607015e-34 / (2.0 * kRb * 10.6e-6 * 10.6e-6);
  CHECK(recoil_frequency(kRb, 10.6e-6).hz == Approx(direct).epsilon(1e-12));
  CHECK(recoil_frequency(kRb, 10.6e-6).hz == Approx(20.4).epsilon(0.01));
  CHECK(recoil_frequency(kRb, 2 * 780e-9).hz ==
        Approx(recoil_frequency(kRb, 780e-9).hz / 4.0).epsilon(1e-14));
}

TEST_CASE("ground-state size") {
  CHECK(units::m_to_bohr(ground_state_size(kRb, Frequency::from_khz(172.0))) ==
        Approx(347.0).epsilon(0.01));
  CHECK(units::m_to_bohr(ground_state_size(kRb, Frequency::from_khz(982.0))) ==
        Approx(145.0).epsilon(0.01));
  const Frequency nu = Frequency::from_khz(300.0);
  const double a = ground_state_size(kRb, nu);
  CHECK(ground_state_size(4 * kRb, nu) == Approx(a / 2).epsilon(1e-14));
  CHECK(ground_state_size(kRb, Frequency{4 * nu.hz}) == Approx(a / 2).epsilon(1e-14));
  CHECK(trap_frequency_for_size(kRb, a).hz == Approx(nu.hz).epsilon(1e-12));
}

TEST_CASE("Lamb-Dicke identity k a_osc = sqrt(E_R / nu)") {
  for (double amu : {7.0, 23.0, 39.0, 87.0, 133.0}) {
    for (double lambda : {670e-9, 852e-9, 10.6e-6}) {
      for (double khz : {50.0, 172.0, 982.0}) {
        const double m = units::amu_to_kg(amu);
        const Frequency nu = Frequency::from_khz(khz);
        const double lhs = std::sqrt(recoil_frequency(m, lambda).hz / nu.hz);
        const double rhs = 2.0 * constants::pi / lambda * ground_state_size(m, nu);
        CHECK(lhs == Approx(rhs).epsilon(1e-12));
        CHECK(lamb_dicke(recoil_frequency(m, lambda), nu) == Approx(lhs).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("unit round trips") {
  for (double x : {1e-3, 1.0, 347.0, 1e6}) {
    CHECK(units::m_to_bohr(units::bohr_to_m(x)) == Approx(x).epsilon(1e-12));
    CHECK(units::kg_to_amu(units::amu_to_kg(x)) == Approx(x).epsilon(1e-12));
    CHECK(units::m_to_nm(units::nm_to_m(x)) == Approx(x).epsilon(1e-12));
    CHECK(units::si_to_w_per_cm2(units::w_per_cm2_to_si(x)) == Approx(x).epsilon(1e-12));
    CHECK(Frequency::from_angular(Frequency{x}.angular()).hz == Approx(x).epsilon(1e-12));
    CHECK(Frequency::from_energy(Frequency{x}.energy()).hz == Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(recoil_frequency(0.0, 1e-6), DomainError);
  CHECK_THROWS_AS(recoil_frequency(kRb, -1e-6), DomainError);
  CHECK_THROWS_AS(ground_state_size(kRb, Frequency{0.0}), DomainError);
  CHECK_THROWS_AS(ground_state_size(kRb, Frequency{std::nan("")}), DomainError);
  CHECK_THROWS_AS(lamb_dicke(Frequency{1.0}, Frequency{-1.0}), DomainError);
}
