#pragma once

// Scalar-generic kernels shared by the double-precision path and the
// multiprecision regularization of singular root sets. C is a complex type,
// R its real type.

#include <algorithm>
#include <cmath>
#include <vector>

#include "bethe/hilbert.hpp"

namespace bethe::detail {

template <class C>
C ipow(C base, int exponent) {
  C out(1);
  while (exponent > 0) {
    if (exponent & 1) out *= base;
    base *= base;
    exponent >>= 1;
  }
  return out;
}

/// Lexicographic enumeration of S_m as image vectors P = (P(0), ..., P(m-1)).
inline std::vector<std::vector<int>> permutations_lex(int m) {
  std::vector<int> p(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Two-magnon factor of the closed product formula for A_P, for the ordered
/// pair (u_first, u_second) = (e^{ik_{Pj}}, e^{ik_{Pk}}) with j < k:
/// 1 + (1/2s) (u_first - 1)(u_second - 1) / (u_second - u_first).
template <class C, class R>
C pair_factor(const C& u_first, const C& u_second, const R& inv_two_s) {
  const C one(1);
  return one + (u_first - one) * (u_second - one) / (u_second - u_first) * inv_two_s;
}

template <class C, class R>
C amplitude_product(const std::vector<int>& perm, const std::vector<C>& u, const R& inv_two_s) {
  C out(1);
  const std::size_t m = perm.size();
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j + 1; k < m; ++k) {
      out *= pair_factor(u[static_cast<std::size_t>(perm[j])], u[static_cast<std::size_t>(perm[k])],
                         inv_two_s);
    }
  }
  return out;
}

/// Precomputed plane-wave data for evaluating a(x_1, ..., x_m).
template <class C, class R>
struct PlaneWaves {
  std::vector<std::vector<int>> perms;
  std::vector<C> amplitudes;           // A_P in the order of perms
  std::vector<std::vector<C>> powers;  // powers[j][x] = u_j^x, x = 0..L

  PlaneWaves(const std::vector<C>& u, const R& inv_two_s, int length)
      : perms(permutations_lex(static_cast<int>(u.size()))) {
    amplitudes.reserve(perms.size());
    for (const auto& p : perms) amplitudes.push_back(amplitude_product(p, u, inv_two_s));
    powers.resize(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
      powers[j].resize(static_cast<std::size_t>(length) + 1);
      powers[j][0] = C(1);
      for (int x = 1; x <= length; ++x) {
        powers[j][static_cast<std::size_t>(x)] = powers[j][static_cast<std::size_t>(x - 1)] * u[j];
      }
    }
  }

  /// a(x) and, in `magnitude`, the sum of the moduli of its terms.
  template <class Real>
  C evaluate(const CoordinateTuple& x, Real& magnitude) const {
    using std::abs;
    C total(0);
    magnitude = Real(0);
    for (std::size_t p = 0; p < perms.size(); ++p) {
      C term = amplitudes[p];
      for (std::size_t j = 0; j < x.size(); ++j) {
        term *= powers[static_cast<std::size_t>(perms[p][j])][static_cast<std::size_t>(x[j])];
      }
      magnitude += abs(term);
      total += term;
    }
    return total;
  }
};

/// Polynomial-cleared Bethe equations
///   F_j = (l_j + is)^L prod_{k != j}(l_j - l_k - i) - (l_j - is)^L prod_{k != j}(l_j - l_k + i),
/// returned together with the two terms A_j, B_j of each difference.
template <class C>
struct BethePolynomials {
  std::vector<C> value;
  std::vector<C> plus_term;
  std::vector<C> minus_term;
};

template <class C, class R>
BethePolynomials<C> bethe_polynomials(const std::vector<C>& lambda, const R& s, int length) {
  const std::size_t m = lambda.size();
  const C i_unit(R(0), R(1));
  const C is(R(0), s);
  BethePolynomials<C> out;
  out.value.resize(m);
  out.plus_term.resize(m);
  out.minus_term.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    C a = ipow(C(lambda[j] + is), length);
    C b = ipow(C(lambda[j] - is), length);
    for (std::size_t k = 0; k < m; ++k) {
      if (k == j) continue;
      const C diff = lambda[j] - lambda[k];
      a *= diff - i_unit;
      b *= diff + i_unit;
    }
    out.plus_term[j] = a;
    out.minus_term[j] = b;
    out.value[j] = a - b;
  }
  return out;
}

/// Analytic Jacobian dF_j/dlambda_k of bethe_polynomials, row-major m x m,
/// computed division-free so it stays finite at the poles lambda = +-is.
template <class C, class R>
std::vector<C> bethe_jacobian(const std::vector<C>& lambda, const R& s, int length) {
  const std::size_t m = lambda.size();
  const C i_unit(R(0), R(1));
  const C is(R(0), s);
  std::vector<C> jac(m * m, C(0));
  for (std::size_t j = 0; j < m; ++j) {
    const C plus = lambda[j] + is;
    const C minus = lambda[j] - is;
    const C plus_pow = ipow(plus, length);
    const C minus_pow = ipow(minus, length);
    const C plus_pow_d = C(R(length)) * ipow(plus, length - 1);
    const C minus_pow_d = C(R(length)) * ipow(minus, length - 1);
    // Product over k != j, k != skip (skip = m means none).
    const auto partial = [&](std::size_t skip, const C& shift) {
      C prod(1);
      for (std::size_t k = 0; k < m; ++k) {
        if (k == j || k == skip) continue;
        prod *= lambda[j] - lambda[k] + shift;
      }
      return prod;
    };
    const C minus_i = -i_unit;
    C diag = plus_pow_d * partial(m, minus_i) - minus_pow_d * partial(m, i_unit);
    for (std::size_t k = 0; k < m; ++k) {
      if (k == j) continue;
      const C pa = plus_pow * partial(k, minus_i);
      const C pb = minus_pow * partial(k, i_unit);
      diag += pa - pb;
      jac[j * m + k] = -(pa - pb);
    }
    jac[j * m + j] = diag;
  }
  return jac;
}

/// Solves the m x m row-major system a x = b by Gaussian elimination with
/// partial pivoting. Returns false when a pivot vanishes.
template <class C>
bool solve_linear(std::vector<C> a, std::vector<C>& b) {
  using std::abs;
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    auto best = abs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const auto mag = abs(a[r * n + col]);
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0) return false;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const C factor = a[r * n + col] / a[col * n + col];
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
      b[r] -= factor * b[col];
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    C acc = b[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= a[r * n + c] * b[c];
    b[r] = acc / a[r * n + r];
  }
  return true;
}

}  // namespace bethe::detail
