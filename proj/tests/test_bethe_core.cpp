#include <doctest.h>

#include <numbers>
#include <random>

#include "bethe/bethe_core.hpp"
#include "bethe/errors.hpp"
#include "bethe/hamiltonian.hpp"
#include "bethe/su2_ops.hpp"
#include "oracles.hpp"

using namespace bethe;

namespace {

const Complex kI{0.0, 1.0};

Complex draw(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  const double re = d(rng);
  const double im = d(rng);
  return {re, im};
}

Momenta random_momenta(std::mt19937_64& rng, int m) {
  std::uniform_real_distribution<double> d(0.2, 2.0 * std::numbers::pi - 0.2);
  Momenta k;
  for (int j = 0; j < m; ++j) k.k.emplace_back(d(rng), 0.0);
  return k;
}

}  // namespace

TEST_CASE("rapidity and momentum maps invert each other") {
  std::mt19937_64 rng(5);
  for (int two_s = 1; two_s <= 4; ++two_s) {
    const Spin spin(two_s);
    for (int t = 0; t < 200; ++t) {
      const Complex lambda = draw(rng, 2.0);
      const Complex u = u_of_lambda(lambda, spin);
      CHECK(std::abs(u - oracle::u_of_lambda(lambda, two_s)) < 1e-13 * std::max(1.0, std::abs(u)));
      CHECK(std::abs(lambda_of_u(u, spin) - lambda) < 1e-10 * std::max(1.0, std::abs(lambda)));
      const Complex k = lambda_to_k(lambda, spin);
      CHECK(std::abs(std::exp(kI * k) - u) < 1e-12 * std::max(1.0, std::abs(u)));
      CHECK(std::abs(k_to_lambda(k, spin) - lambda) < 1e-10 * std::max(1.0, std::abs(lambda)));
    }
    const Complex is = kI * spin.value();
    CHECK_THROWS_AS((void)u_of_lambda(is, spin), DomainError);
    CHECK_THROWS_AS((void)lambda_to_k(-is, spin), DomainError);
    CHECK_THROWS_AS((void)lambda_of_u(1.0, spin), DomainError);
    CHECK_THROWS_AS((void)k_to_lambda(0.0, spin), DomainError);
    Rapidities r{{0.3, Complex(-0.2, 0.7)}};
    const Rapidities back = to_rapidities(to_momenta(r, spin), spin);
    for (std::size_t j = 0; j < r.size(); ++j) CHECK(std::abs(back.values[j] - r.values[j]) < 1e-12);
  }
}

TEST_CASE("scattering matrix: formula, unitarity, braid, rapidity form") {
  std::mt19937_64 rng(7);
  for (int two_s = 1; two_s <= 4; ++two_s) {
    const Spin spin(two_s);
    CHECK(std::abs(sigma_u(Complex(0.3, 0.8), Complex(0.3, 0.8), spin) + 1.0) < 1e-14);
    for (int t = 0; t < 300; ++t) {
      const Complex u = draw(rng);
      const Complex v = draw(rng);
      const Complex w = draw(rng);
      const Complex suv = sigma_u(u, v, spin);
      CHECK(std::abs(suv - oracle::sigma(u, v, two_s)) < 1e-12 * std::max(1.0, std::abs(suv)));
      CHECK(std::abs(suv * sigma_u(v, u, spin) - 1.0) < 1e-12);
      const Complex lhs = sigma_u(u, v, spin) * sigma_u(u, w, spin) * sigma_u(v, w, spin);
      const Complex rhs = sigma_u(v, w, spin) * sigma_u(u, w, spin) * sigma_u(u, v, spin);
      CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
      const Complex lambda = draw(rng, 2.0);
      const Complex mu = draw(rng, 2.0);
      const Complex via_u = sigma_u(u_of_lambda(lambda, spin), u_of_lambda(mu, spin), spin);
      CHECK(std::abs(via_u - sigma_lambda(lambda, mu)) < 1e-12 * std::max(1.0, std::abs(via_u)));
    }
    // Denominator root: v = ((2s+1)u - 1)/(u + 2s - 1).
    const Complex u = 0.4;
    const Complex v = (static_cast<double>(two_s + 1) * u - 1.0) / (u + static_cast<double>(two_s - 1));
    CHECK_THROWS_AS((void)sigma_u(u, v, spin), SingularPairError);
  }
}

TEST_CASE("permutations are listed lexicographically") {
  const auto perms = permutations_lex(3);
  REQUIRE(perms.size() == 6);
  CHECK(perms.front() == Permutation{0, 1, 2});
  CHECK(perms[1] == Permutation{0, 2, 1});
  CHECK(perms.back() == Permutation{2, 1, 0});
  CHECK(permutations_lex(4).size() == 24);
}

TEST_CASE("closed-form amplitudes follow the exchange rule along two reduced words") {
  std::mt19937_64 rng(11);
  for (int two_s = 1; two_s <= 4; ++two_s) {
    const Spin spin(two_s);
    for (int m = 2; m <= 4; ++m) {
      for (int t = 0; t < 20; ++t) {
        const Momenta k = random_momenta(rng, m);
        const auto u = k.u();
        const Permutation identity = permutations_lex(m).front();
        const Complex a_id = amplitude_AP(identity, k, spin);
        for (const Permutation& perm : permutations_lex(m)) {
          const Complex closed = amplitude_AP(perm, k, spin);
          const auto w1 = oracle::word_bubble(perm);
          const auto w2 = oracle::word_reverse_bubble(perm);
          const Complex r1 = oracle::amplitude_along(w1, u, two_s, a_id);
          const Complex r2 = oracle::amplitude_along(w2, u, two_s, a_id);
          const double scale = std::max(1.0, std::abs(closed));
          CHECK(std::abs(closed - r1) < 1e-12 * scale);
          CHECK(std::abs(closed - r2) < 1e-12 * scale);
        }
      }
    }
  }
}

TEST_CASE("amplitude_a obeys the coinciding-coordinate relation") {
  std::mt19937_64 rng(13);
  for (int two_s = 1; two_s <= 4; ++two_s) {
    const Spin spin(two_s);
    const double S = two_s;
    for (int m = 2; m <= 4; ++m) {
      for (int t = 0; t < 10; ++t) {
        const Momenta k = random_momenta(rng, m);
        for (int i = 0; i + 1 < m; ++i) {
          CoordinateTuple x(static_cast<std::size_t>(m));
          for (int j = 0; j < m; ++j) x[static_cast<std::size_t>(j)] = 3 * j + 2;
          x[static_cast<std::size_t>(i + 1)] = x[static_cast<std::size_t>(i)];
          const auto at = [&](int di, int dj) {
            CoordinateTuple y = x;
            y[static_cast<std::size_t>(i)] += di;
            y[static_cast<std::size_t>(i + 1)] += dj;
            // Direct plane-wave sum from the closed-form amplitudes.
            Complex sum = 0.0;
            for (const Permutation& p : permutations_lex(m)) {
              Complex phase = 0.0;
              for (int j = 0; j < m; ++j) {
                phase += k.k[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] *
                         static_cast<double>(y[static_cast<std::size_t>(j)]);
              }
              sum += amplitude_AP(p, k, spin) * std::exp(kI * phase);
            }
            const Complex lib = amplitude_a(y, k, spin);
            CHECK(std::abs(lib - sum) < 1e-11 * std::max(1.0, std::abs(sum)));
            return sum;
          };
          const Complex t11 = at(1, 1);
          const Complex t10 = (S - 1.0) * at(1, 0);
          const Complex t01 = (S + 1.0) * at(0, 1);
          const Complex t00 = at(0, 0);
          const double scale = std::max({1.0, std::abs(t11), std::abs(t10), std::abs(t01), std::abs(t00)});
          CHECK(std::abs(t11 + t10 - t01 + t00) < 1e-11 * scale);
        }
      }
    }
  }
}

TEST_CASE("coinciding momenta are rejected") {
  const Spin spin(2);
  const Momenta k{{0.7, 0.7}};
  CHECK_THROWS_AS((void)amplitude_AP({0, 1}, k, spin), DegenerateRootsError);
  CHECK_THROWS_AS(build_bethe_state(spin, 4, k), DegenerateRootsError);
  CHECK_THROWS_AS(build_bethe_state(spin, 4, Momenta{{0.0}}), DegenerateRootsError);
  CHECK_THROWS_AS(build_bethe_state(Spin(1), 2, Momenta{{0.3, 1.1, 2.0}}), DomainError);
  CHECK_THROWS_AS((void)amplitude_a({-1, 2}, Momenta{{0.3, 1.1}}, spin), DomainError);
}

TEST_CASE("spin-1/2 two-site singlet from k = pi") {
  const Spin spin(1);
  const BetheState st = build_bethe_state(spin, 2, Momenta{{std::numbers::pi}});
  REQUIRE(st.basis);
  CHECK(st.m() == 1);
  CHECK(std::abs(st.energy - Complex(-4.0)) < 1e-13);
  StateVector expected(2);
  expected << 1.0, -1.0;
  // Vector is proportional to |1> - |2>.
  const Complex ratio = st.vector(0) / expected(0);
  CHECK((st.vector - ratio * expected).norm() < 1e-13);
  const ChainHamiltonian h(spin, 2);
  CHECK((h.apply_in_sector(*st.basis, st.vector) + 4.0 * st.vector).norm() < 1e-12);
}

TEST_CASE("Bethe states have the expected S^z and norm") {
  const Spin spin(2);
  const BetheState st = build_bethe_state(spin, 5, Momenta{{0.9, 2.3}});
  const GlobalGenerator sz(spin, 5, Generator::z);
  const StateVector full = embed_in_full(*st.basis, st.vector);
  CHECK((sz.apply(full) - (5.0 - 2.0) * full).norm() < 1e-12 * full.norm());
  CHECK(st.norm == doctest::Approx(st.vector.norm()));
  CHECK_FALSE(st.regularized);
}

TEST_CASE("energy in momenta and in rapidities agree") {
  std::mt19937_64 rng(17);
  for (int two_s = 1; two_s <= 4; ++two_s) {
    const Spin spin(two_s);
    const double s = spin.value();
    for (int t = 0; t < 200; ++t) {
      Rapidities r;
      for (int j = 0; j < 3; ++j) r.values.push_back(draw(rng, 2.0));
      Complex direct = 0.0;
      for (const Complex& l : r.values) direct -= 2.0 * s / (l * l + s * s);
      const Complex el = energy_lambda(r, spin);
      const Complex ek = energy_k(to_momenta(r, spin), spin);
      const double scale = std::max(1.0, std::abs(direct));
      CHECK(std::abs(el - direct) < 1e-12 * scale);
      CHECK(std::abs(ek - direct) < 1e-12 * scale);
    }
  }
}

TEST_CASE("one-magnon states are eigenvectors for quantized momenta") {
  for (int two_s = 1; two_s <= 3; ++two_s) {
    const Spin spin(two_s);
    const int length = 5;
    const ChainHamiltonian h(spin, length);
    for (int n = 1; n < length; ++n) {
      const double k = 2.0 * std::numbers::pi * n / length;
      const BetheState st = build_bethe_state(spin, length, Momenta{{k}});
      const StateVector hv = h.apply_in_sector(*st.basis, st.vector);
      CHECK((hv - st.energy * st.vector).norm() < 1e-12 * st.vector.norm());
      CHECK(st.energy.real() == doctest::Approx(-(2.0 - 2.0 * std::cos(k)) / two_s).epsilon(1e-12));
    }
  }
}
