#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>

#include "daqgo/rng.hpp"
#include "daqgo/state.hpp"

using namespace daqgo;
using cplx = std::complex<double>;

namespace {

StateVector random_state(int n, std::uint64_t seed) {
  Rng rng(seed);
  StateVector psi(n);
  double norm2 = 0.0;
  for (auto& a : psi.amps) {
    a = cplx(rng.normal(0.0, 1.0), rng.normal(0.0, 1.0));
    norm2 += std::norm(a);
  }
  for (auto& a : psi.amps) a /= std::sqrt(norm2);
  return psi;
}

}  // namespace

TEST_CASE("construction and basis states") {
  StateVector z = StateVector::zero_state(3);
  REQUIRE(z.dim() == 8);
  CHECK(z.amps[0] == cplx(1.0, 0.0));
  for (std::size_t u = 1; u < 8; ++u) CHECK(z.amps[u] == cplx(0.0, 0.0));

  StateVector b = StateVector::basis_state(3, 5);
  CHECK(b.amps[5] == cplx(1.0, 0.0));
  CHECK(b.norm() == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS(StateVector::basis_state(2, 4));
  CHECK_THROWS(StateVector(-1));
  CHECK_THROWS(StateVector(29));
}

TEST_CASE("initial plus state is the uniform superposition") {
  StateVector plus = initial_plus_state(4);
  REQUIRE(plus.dim() == 16);
  for (const auto& a : plus.amps) {
    CHECK(a.real() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(a.imag() == 0.0);
  }
  CHECK(plus.norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("inner product conjugates the left argument") {
  StateVector a(1), b(1);
  a.amps = {cplx(0.0, 1.0), cplx(0.0, 0.0)};  // i|0>
  b.amps = {cplx(1.0, 0.0), cplx(0.0, 0.0)};  // |0>
  // <a|b> = conj(i) * 1 = -i.
  cplx ip = inner_product(a, b);
  CHECK(ip.real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(ip.imag() == doctest::Approx(-1.0).epsilon(1e-15));

  StateVector x = random_state(3, 1), y = random_state(3, 2);
  cplx xy = inner_product(x, y), yx = inner_product(y, x);
  CHECK(xy.real() == doctest::Approx(yx.real()).epsilon(1e-13));
  CHECK(xy.imag() == doctest::Approx(-yx.imag()).epsilon(1e-13));
  CHECK(inner_product(x, x).real() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(inner_product(x, x).imag()) < 1e-14);
}

TEST_CASE("fidelity is the squared overlap and phase invariant") {
  StateVector x = random_state(3, 5), y = random_state(3, 6);
  CHECK(fidelity(x, y) == doctest::Approx(std::norm(inner_product(x, y))).epsilon(1e-13));
  CHECK(fidelity(x, x) == doctest::Approx(1.0).epsilon(1e-13));

  StateVector xr = x;
  for (auto& a : xr.amps) a *= std::polar(1.0, 0.731);
  CHECK(fidelity(xr, y) == doctest::Approx(fidelity(x, y)).epsilon(1e-12));
}

TEST_CASE("tensor puts the first factor in the low bits") {
  // low = |1> on one qubit, high = |0> on one qubit: product index is 0b01 = 1.
  StateVector low = StateVector::basis_state(1, 1);
  StateVector high = StateVector::basis_state(1, 0);
  StateVector prod = tensor(low, high);
  REQUIRE(prod.dim() == 4);
  CHECK(prod.amps[1] == cplx(1.0, 0.0));

  // Swapping the factors moves the set bit to the high position.
  StateVector prod2 = tensor(high, low);
  CHECK(prod2.amps[2] == cplx(1.0, 0.0));

  // Amplitudes multiply componentwise: index = u_low + 2^low_n * u_high.
  StateVector a = random_state(2, 9), b = random_state(1, 10);
  StateVector t = tensor(a, b);
  REQUIRE(t.dim() == 8);
  for (std::uint64_t uh = 0; uh < 2; ++uh)
    for (std::uint64_t ul = 0; ul < 4; ++ul) {
      cplx expect = a.amps[ul] * b.amps[uh];
      cplx got = t.amps[ul + 4 * uh];
      CHECK(got.real() == doctest::Approx(expect.real()).epsilon(1e-14));
      CHECK(got.imag() == doctest::Approx(expect.imag()).epsilon(1e-14));
    }
  CHECK(t.norm() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("qubit-zero probability marginalizes correctly") {
  // |psi> = sqrt(0.3)|00> + sqrt(0.7)|01>: qubit 0 reads 0 with prob 0.3,
  // qubit 1 always reads 0.
  StateVector psi(2);
  psi.amps = {cplx(std::sqrt(0.3), 0.0), cplx(std::sqrt(0.7), 0.0), 0.0, 0.0};
  CHECK(prob_qubit_zero(psi, 0) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(prob_qubit_zero(psi, 1) == doctest::Approx(1.0).epsilon(1e-14));

  StateVector plus = initial_plus_state(3);
  for (int q = 0; q < 3; ++q)
    CHECK(prob_qubit_zero(plus, q) == doctest::Approx(0.5).epsilon(1e-14));

  StateVector r = random_state(3, 11);
  for (int q = 0; q < 3; ++q) {
    double direct = 0.0;
    for (std::uint64_t u = 0; u < 8; ++u)
      if (((u >> q) & 1u) == 0) direct += std::norm(r.amps[u]);
    CHECK(prob_qubit_zero(r, q) == doctest::Approx(direct).epsilon(1e-13));
  }
  CHECK_THROWS(prob_qubit_zero(r, 3));
}

TEST_CASE("dump_state emits one parsable line per amplitude") {
  StateVector psi(1);
  psi.amps = {cplx(0.6, 0.0), cplx(0.0, 0.8)};
  std::ostringstream os;
  dump_state(psi, os);
  std::istringstream is(os.str());
  std::uint64_t idx;
  double re, im;
  REQUIRE((is >> idx >> re >> im));
  CHECK(idx == 0);
  CHECK(re == doctest::Approx(0.6).epsilon(1e-15));
  REQUIRE((is >> idx >> re >> im));
  CHECK(idx == 1);
  CHECK(im == doctest::Approx(0.8).epsilon(1e-15));
}
