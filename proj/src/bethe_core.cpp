#include "bethe/bethe_core.hpp"

#include <cmath>
#include <string>

#include "bethe/detail/kernels.hpp"
#include "bethe/errors.hpp"

namespace bethe {

namespace {

constexpr Complex kI{0.0, 1.0};

// Relative size of a Bethe vector against its uncancelled terms below which
// it is considered to vanish.
constexpr double kZeroNormTolerance = 1e-10;

void check_pairwise_distinct(const std::vector<Complex>& u) {
  for (std::size_t j = 0; j < u.size(); ++j) {
    for (std::size_t l = j + 1; l < u.size(); ++l) {
      if (std::abs(u[j] - u[l]) < kDegeneracyTolerance) {
        throw DegenerateRootsError("coinciding momenta at positions " + std::to_string(j) +
                                   " and " + std::to_string(l));
      }
    }
  }
}

Complex energy_from_u(const std::vector<Complex>& u, Spin spin) {
  Complex total{};
  for (const Complex& z : u) total += 2.0 - z - 1.0 / z;
  return -total / static_cast<double>(spin.two_s());
}

BetheState build_from_u(Spin spin, int length, const std::vector<Complex>& u) {
  const int m = static_cast<int>(u.size());
  if (length < 2) throw DomainError("Bethe state: L must be at least 2");
  if (m > spin.two_s() * length) throw DomainError("Bethe state: m exceeds 2sL");
  for (const Complex& z : u) {
    if (std::abs(z - 1.0) < kDegeneracyTolerance) {
      throw DegenerateRootsError("zero momentum (u = 1) is a descendant direction");
    }
    if (std::abs(z) < kDegeneracyTolerance) {
      throw DegenerateRootsError("u = 0 has no plane-wave interpretation");
    }
  }
  check_pairwise_distinct(u);

  auto basis = std::make_shared<const SectorBasis>(spin, length, m);
  const detail::PlaneWaves<Complex, double> waves(u, 1.0 / spin.two_s(), length);
  StateVector v(static_cast<Eigen::Index>(basis->dim()));
  double scale = 0.0;
  for (std::size_t b = 0; b < basis->dim(); ++b) {
    const Occupation& occ = basis->state(b);
    double magnitude = 0.0;
    const Complex a = waves.evaluate(coordinates_of(occ), magnitude);
    const double weight = alpha_product(spin, occ);
    v[static_cast<Eigen::Index>(b)] = weight * a;
    scale = std::max(scale, weight * magnitude);
  }
  const double norm = v.norm();
  if (m > 0 && !(norm > kZeroNormTolerance * scale)) {
    throw DegenerateRootsError("Bethe vector vanishes for this root set");
  }
  BetheState state{spin, length, {}, {}, std::move(basis), std::move(v), energy_from_u(u, spin), norm};
  return state;
}

}  // namespace

std::vector<Complex> Momenta::u() const {
  std::vector<Complex> out;
  out.reserve(k.size());
  for (const Complex& kj : k) out.push_back(std::exp(kI * kj));
  return out;
}

Complex u_of_lambda(Complex lambda, Spin spin) {
  const Complex is = kI * spin.value();
  if (std::abs(lambda - is) < kPoleTolerance) throw DomainError("rapidity at the pole lambda = is");
  return (lambda + is) / (lambda - is);
}

Complex lambda_of_u(Complex u, Spin spin) {
  if (std::abs(u - 1.0) < kPoleTolerance) throw DomainError("u = 1 maps to infinite rapidity");
  return kI * spin.value() * (u + 1.0) / (u - 1.0);
}

Complex lambda_to_k(Complex lambda, Spin spin) {
  const Complex is = kI * spin.value();
  if (std::abs(lambda + is) < kPoleTolerance) throw DomainError("rapidity at the pole lambda = -is");
  return -kI * std::log(u_of_lambda(lambda, spin));
}

Complex k_to_lambda(Complex k, Spin spin) { return lambda_of_u(std::exp(kI * k), spin); }

Rapidities to_rapidities(const Momenta& momenta, Spin spin) {
  Rapidities out;
  for (const Complex& k : momenta.k) out.values.push_back(k_to_lambda(k, spin));
  return out;
}

Momenta to_momenta(const Rapidities& rapidities, Spin spin) {
  Momenta out;
  for (const Complex& l : rapidities.values) out.k.push_back(lambda_to_k(l, spin));
  return out;
}

Complex sigma_u(Complex u, Complex v, Spin spin) {
  const double t = spin.two_s();
  const Complex num = u * v + (t - 1.0) * u - (t + 1.0) * v + 1.0;
  const Complex den = u * v + (t - 1.0) * v - (t + 1.0) * u + 1.0;
  if (std::abs(den) < kSigmaDenominatorTolerance) {
    throw SingularPairError("scattering matrix denominator vanishes");
  }
  return -num / den;
}

Complex sigma_lambda(Complex lambda, Complex mu) {
  const Complex den = lambda - mu + kI;
  if (std::abs(den) < kSigmaDenominatorTolerance) {
    throw SingularPairError("scattering matrix pole at lambda - mu = -i");
  }
  return (lambda - mu - kI) / den;
}

std::vector<Permutation> permutations_lex(int m) { return detail::permutations_lex(m); }

Complex amplitude_AP(const Permutation& perm, const Momenta& momenta, Spin spin) {
  if (perm.size() != momenta.size()) throw DimensionMismatch("amplitude_AP: permutation size");
  const auto u = momenta.u();
  check_pairwise_distinct(u);
  return detail::amplitude_product(perm, u, 1.0 / spin.two_s());
}

Complex amplitude_a(const CoordinateTuple& x, const Momenta& momenta, Spin spin) {
  if (x.size() != momenta.size()) throw DimensionMismatch("amplitude_a: tuple size");
  if (x.empty()) return 1.0;
  const int length = *std::max_element(x.begin(), x.end());
  if (*std::min_element(x.begin(), x.end()) < 0) throw DomainError("amplitude_a: negative coordinate");
  const auto u = momenta.u();
  check_pairwise_distinct(u);
  // Extended precision: near-coinciding momenta make the terms large and the sum small.
  using LongComplex = std::complex<long double>;
  std::vector<LongComplex> ul(u.begin(), u.end());
  const detail::PlaneWaves<LongComplex, long double> waves(ul, 1.0L / spin.two_s(), length);
  long double magnitude = 0.0L;
  const LongComplex a = waves.evaluate(x, magnitude);
  return {static_cast<double>(a.real()), static_cast<double>(a.imag())};
}

Complex energy_k(const Momenta& momenta, Spin spin) {
  Complex total{};
  for (const Complex& k : momenta.k) total += 2.0 - std::exp(kI * k) - std::exp(-kI * k);
  return -total / static_cast<double>(spin.two_s());
}

Complex energy_lambda(const Rapidities& rapidities, Spin spin) {
  const double s = spin.value();
  const Complex is = kI * s;
  Complex total{};
  for (const Complex& l : rapidities.values) {
    if (std::abs(l - is) < kPoleTolerance || std::abs(l + is) < kPoleTolerance) {
      throw DomainError("energy: rapidity at a pole lambda = +-is");
    }
    total += 2.0 * s / (l * l + s * s);
  }
  return -total;
}

BetheState build_bethe_state(Spin spin, int length, const Momenta& momenta) {
  BetheState state = build_from_u(spin, length, momenta.u());
  state.momenta = momenta;
  state.rapidities = to_rapidities(momenta, spin);
  return state;
}

BetheState build_bethe_state(Spin spin, int length, const Rapidities& rapidities) {
  std::vector<Complex> u;
  for (const Complex& l : rapidities.values) {
    const Complex is = kI * spin.value();
    if (std::abs(l + is) < kPoleTolerance) throw DomainError("rapidity at the pole lambda = -is");
    u.push_back(u_of_lambda(l, spin));
  }
  BetheState state = build_from_u(spin, length, u);
  state.rapidities = rapidities;
  state.momenta = to_momenta(rapidities, spin);
  return state;
}

}  // namespace bethe
