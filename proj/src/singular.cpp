#include "bethe/singular.hpp"

#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "bethe/detail/kernels.hpp"
#include "bethe/errors.hpp"

namespace bethe {

namespace {

namespace mp = boost::multiprecision;
using MpReal = mp::number<mp::cpp_bin_float<250>, mp::et_off>;
using MpComplex = mp::number<mp::complex_adaptor<mp::cpp_bin_float<250>>, mp::et_off>;

MpComplex to_mp(Complex z) { return MpComplex(MpReal(z.real()), MpReal(z.imag())); }

Complex to_double(const MpComplex& z) {
  return {z.real().convert_to<double>(), z.imag().convert_to<double>()};
}

}  // namespace

std::optional<std::vector<std::size_t>> find_singular_string(const Rapidities& roots, Spin spin,
                                                             double tolerance) {
  const int members = spin.dim();
  if (static_cast<int>(roots.size()) < members) return std::nullopt;
  std::vector<std::size_t> positions;
  std::vector<bool> used(roots.size(), false);
  for (int t = 0; t < members; ++t) {
    const Complex target{0.0, spin.value() - t};
    std::optional<std::size_t> best;
    double best_dist = tolerance;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(roots.values[j] - target);
      if (dist <= best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    if (!best) return std::nullopt;
    used[*best] = true;
    positions.push_back(*best);
  }
  return positions;
}

BetheState regularize_singular(Spin spin, int length, const Rapidities& roots,
                               const std::vector<std::size_t>& string_positions) {
  if (length > kSingularMaxLength) {
    throw DomainError("singular regularization supports L <= " +
                      std::to_string(kSingularMaxLength));
  }
  if (static_cast<int>(string_positions.size()) != spin.dim()) {
    throw DomainError("singular regularization: string must have 2s+1 members");
  }
  const std::size_t m = roots.size();
  const MpReal s = MpReal(spin.two_s()) / 2;
  const MpReal eps(kSingularShift);

  // Snap the string onto its exact positions, shift it by epsilon.
  Rapidities snapped = roots;
  std::vector<MpComplex> lambda(m);
  for (std::size_t j = 0; j < m; ++j) lambda[j] = to_mp(roots.values[j]);
  for (std::size_t t = 0; t < string_positions.size(); ++t) {
    const std::size_t j = string_positions[t];
    snapped.values[j] = Complex{0.0, spin.value() - static_cast<double>(t)};
    lambda[j] = MpComplex(eps, s - MpReal(static_cast<int>(t)));
  }
  const std::size_t fixed = string_positions.back();  // the -is member

  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < m; ++j) {
    if (j != fixed) free.push_back(j);
  }
  const std::size_t n = free.size();

  const auto residual = [&](const std::vector<MpComplex>& l) {
    const auto poly = detail::bethe_polynomials(l, s, length);
    MpReal worst(0);
    MpReal scale(1);
    for (const std::size_t j : free) {
      worst = std::max(worst, MpReal(abs(poly.value[j])));
      scale = std::max(scale, MpReal(abs(poly.plus_term[j]) + abs(poly.minus_term[j])));
    }
    return MpReal(worst / scale);
  };

  const MpReal target("1e-200");
  MpReal current = residual(lambda);
  for (int iter = 0; iter < 200 && current > target; ++iter) {
    const auto poly = detail::bethe_polynomials(lambda, s, length);
    const auto jac = detail::bethe_jacobian(lambda, s, length);
    std::vector<MpComplex> sub(n * n);
    std::vector<MpComplex> rhs(n);
    for (std::size_t r = 0; r < n; ++r) {
      rhs[r] = poly.value[free[r]];
      for (std::size_t c = 0; c < n; ++c) sub[r * n + c] = jac[free[r] * m + free[c]];
    }
    if (!detail::solve_linear(sub, rhs)) break;
    // Damped step: halve until the residual decreases.
    MpReal step(1);
    std::vector<MpComplex> trial = lambda;
    MpReal trial_res = current;
    for (int halving = 0; halving < 30; ++halving) {
      for (std::size_t r = 0; r < n; ++r) trial[free[r]] = lambda[free[r]] - rhs[r] * MpComplex(step);
      trial_res = residual(trial);
      if (trial_res < current) break;
      step /= 2;
    }
    if (!(trial_res < current)) break;
    lambda = trial;
    current = trial_res;
  }
  if (current > MpReal("1e-150")) {
    throw DegenerateRootsError("singular regularization: reduced Bethe equations did not converge");
  }

  std::vector<MpComplex> u(m);
  const MpComplex is(MpReal(0), s);
  for (std::size_t j = 0; j < m; ++j) u[j] = (lambda[j] + is) / (lambda[j] - is);

  auto basis = std::make_shared<const SectorBasis>(spin, length, static_cast<int>(m));
  const detail::PlaneWaves<MpComplex, MpReal> waves(u, MpReal(1) / spin.two_s(), length);
  std::vector<MpComplex> components(basis->dim());
  MpReal largest(0);
  for (std::size_t b = 0; b < basis->dim(); ++b) {
    const Occupation& occ = basis->state(b);
    MpReal weight(1);
    for (const int digit : occ) weight *= sqrt(MpReal(binomial(spin.two_s(), digit)));
    MpReal magnitude;
    components[b] = waves.evaluate(coordinates_of(occ), magnitude) * MpComplex(weight);
    largest = std::max(largest, MpReal(abs(components[b])));
  }
  if (largest == 0) throw DegenerateRootsError("singular regularization: vector vanishes");

  StateVector v(static_cast<Eigen::Index>(basis->dim()));
  for (std::size_t b = 0; b < basis->dim(); ++b) {
    v[static_cast<Eigen::Index>(b)] = to_double(components[b] / MpComplex(largest));
  }
  v /= v.norm();

  MpComplex energy(0);
  for (const MpComplex& z : u) energy += MpComplex(2) - z - MpComplex(1) / z;
  energy /= MpComplex(-MpReal(spin.two_s()));

  BetheState state{spin, length, {}, snapped, std::move(basis), std::move(v), to_double(energy), 1.0};
  state.regularized = true;
  return state;
}

}  // namespace bethe
