// Brute-force reference implementations for the tests. Everything here is
// written from the defining formulas with dense matrices and no shortcuts,
// and shares no code with the library beyond Eigen.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline const cd I{0.0, 1.0};

// Index i <-> weight m = s - i.
inline Mat spin_plus(int two_s) {
  const double s = 0.5 * two_s;
  Mat m = Mat::Zero(two_s + 1, two_s + 1);
  for (int i = 1; i <= two_s; ++i) {
    const double w = s - i;
    m(i - 1, i) = std::sqrt(s * (s + 1) - w * (w + 1));
  }
  return m;
}

inline Mat spin_minus(int two_s) { return spin_plus(two_s).transpose(); }

inline Mat spin_z(int two_s) {
  Mat m = Mat::Zero(two_s + 1, two_s + 1);
  for (int i = 0; i <= two_s; ++i) m(i, i) = 0.5 * two_s - i;
  return m;
}

inline long double choose(int n, int k) {
  if (k < 0 || k > n) return 0.0L;
  return std::exp(std::lgamma(static_cast<long double>(n) + 1) - std::lgamma(static_cast<long double>(k) + 1) -
                  std::lgamma(static_cast<long double>(n - k) + 1));
}

inline bool in_window(int two_s, int m1, int m2, int n) {
  return n >= -std::min(m1, two_s - m2) && n <= std::min(m2, two_s - m1);
}

/// Zero outside the window.
inline double beta(int two_s, int m1, int m2, int n) {
  if (m1 < 0 || m2 < 0 || m1 > two_s || m2 > two_s || !in_window(two_s, m1, m2, n)) return 0.0;
  if (n < 0) return beta(two_s, m2, m1, -n);
  const int M1 = std::min(m1, two_s - m2);
  const int M2 = std::min(m2, two_s - m1);
  if (n == 0) {
    long double acc = 0.0L;
    for (int l = 0; l < M1; ++l) acc -= 1.0L / (two_s - l);
    for (int l = 0; l < M2; ++l) acc -= 1.0L / (two_s - l);
    return static_cast<double>(acc);
  }
  const long double ratio =
      choose(M1 + n, M1) * choose(M2, n) / (choose(two_s - M1, n) * choose(two_s - M2 + n, n));
  const long double sign = (n % 2 == 1) ? 1.0L : -1.0L;
  return static_cast<double>(sign / n * std::sqrt(ratio));
}

/// <(m1+n, m2-n)| h |(m1, m2)> in lowering counts, index a (2s+1) + b.
inline Mat local_h(int two_s) {
  const int d = two_s + 1;
  Mat h = Mat::Zero(d * d, d * d);
  for (int m1 = 0; m1 < d; ++m1) {
    for (int m2 = 0; m2 < d; ++m2) {
      for (int n = -two_s; n <= two_s; ++n) {
        if (!in_window(two_s, m1, m2, n)) continue;
        h((m1 + n) * d + (m2 - n), m1 * d + m2) += beta(two_s, m1, m2, n);
      }
    }
  }
  return h;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

inline int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Digits of a full-space index, site 0 most significant.
inline std::vector<int> digits(int index, int d, int length) {
  std::vector<int> out(static_cast<std::size_t>(length));
  for (int j = length - 1; j >= 0; --j) {
    out[static_cast<std::size_t>(j)] = index % d;
    index /= d;
  }
  return out;
}

inline int undigits(const std::vector<int>& occ, int d) {
  int idx = 0;
  for (const int a : occ) idx = idx * d + a;
  return idx;
}

/// Two-site operator on sites (j, j+1 mod L), by explicit index bookkeeping.
inline Mat bond_operator(const Mat& h2, int d, int length, int j) {
  const int dim = ipow(d, length);
  const int k = (j + 1) % length;
  Mat out = Mat::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const auto occ = digits(col, d, length);
    const int local_col = occ[static_cast<std::size_t>(j)] * d + occ[static_cast<std::size_t>(k)];
    for (int local_row = 0; local_row < d * d; ++local_row) {
      const double v = h2(local_row, local_col);
      if (v == 0.0) continue;
      auto next = occ;
      next[static_cast<std::size_t>(j)] = local_row / d;
      next[static_cast<std::size_t>(k)] = local_row % d;
      out(undigits(next, d), col) += v;
    }
  }
  return out;
}

inline Mat chain_h(int two_s, int length) {
  const int d = two_s + 1;
  const Mat h2 = local_h(two_s);
  Mat out = Mat::Zero(ipow(d, length), ipow(d, length));
  for (int j = 0; j < length; ++j) out += bond_operator(h2, d, length, j);
  return out;
}

/// op acting on site j of L.
inline Mat site_operator(const Mat& op, int length, int j) {
  const int d = static_cast<int>(op.rows());
  Mat out = Mat::Identity(1, 1);
  for (int site = 0; site < length; ++site) out = kron(out, site == j ? op : Mat(Mat::Identity(d, d)));
  return out;
}

inline Mat total_operator(const Mat& op, int length) {
  Mat out = site_operator(op, length, 0);
  for (int j = 1; j < length; ++j) out += site_operator(op, length, j);
  return out;
}

inline std::vector<double> spectrum(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return out;
}

inline double sqrt_clamped(double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }

/// Max violation of the two recursion relations on b(m1, m2, n), which must
/// return 0 outside the window and outside [0, 2s].
template <class Beta>
double recursion_violation(int two_s, Beta&& b) {
  const int S = two_s;
  double worst = 0.0;
  for (int m1 = 0; m1 <= S; ++m1) {
    for (int m2 = 0; m2 <= S; ++m2) {
      for (int n = -S - 1; n <= S + 1; ++n) {
        const double l1 = sqrt_clamped((m1 + 1.0) * (S - m1)) * b(m1 + 1, m2, n);
        const double r1 = sqrt_clamped((S + n - m2 + 1.0) * (m2 - n)) * b(m1, m2, n + 1) -
                          sqrt_clamped((m2 + 1.0) * (S - m2)) * b(m1, m2 + 1, n + 1) +
                          sqrt_clamped((S - n - m1 + 0.0) * (n + m1 + 1)) * b(m1, m2, n);
        const double l2 = sqrt_clamped(m1 * (S - m1 + 1.0)) * b(m1 - 1, m2, n);
        const double r2 = sqrt_clamped((S + n - m2 + 0.0) * (m2 - n + 1)) * b(m1, m2, n - 1) -
                          sqrt_clamped(m2 * (S - m2 + 1.0)) * b(m1, m2 - 1, n - 1) +
                          sqrt_clamped((S - n - m1 + 1.0) * (n + m1)) * b(m1, m2, n);
        worst = std::max({worst, std::abs(l1 - r1), std::abs(l2 - r2)});
      }
    }
  }
  return worst;
}

inline double recursion_violation(int two_s) {
  return recursion_violation(two_s, [&](int m1, int m2, int n) { return beta(two_s, m1, m2, n); });
}

inline cd sigma(cd u, cd v, int two_s) {
  const double S = two_s;
  return -(u * v + (S - 1.0) * u - (S + 1.0) * v + 1.0) / (u * v + (S - 1.0) * v - (S + 1.0) * u + 1.0);
}

/// Adjacent swaps (positions j, j+1) that take the identity array to `perm`.
/// Bubble sort of perm read backwards, scanning left to right.
inline std::vector<int> word_bubble(std::vector<int> perm) {
  std::vector<int> swaps;
  const int m = static_cast<int>(perm.size());
  for (bool changed = true; changed;) {
    changed = false;
    for (int j = 0; j + 1 < m; ++j) {
      if (perm[static_cast<std::size_t>(j)] > perm[static_cast<std::size_t>(j + 1)]) {
        std::swap(perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(j + 1)]);
        swaps.push_back(j);
        changed = true;
      }
    }
  }
  std::reverse(swaps.begin(), swaps.end());
  return swaps;
}

/// Same, sorting by scanning right to left.
inline std::vector<int> word_reverse_bubble(std::vector<int> perm) {
  std::vector<int> swaps;
  const int m = static_cast<int>(perm.size());
  for (bool changed = true; changed;) {
    changed = false;
    for (int j = m - 2; j >= 0; --j) {
      if (perm[static_cast<std::size_t>(j)] > perm[static_cast<std::size_t>(j + 1)]) {
        std::swap(perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(j + 1)]);
        swaps.push_back(j);
        changed = true;
      }
    }
  }
  std::reverse(swaps.begin(), swaps.end());
  return swaps;
}

/// A_P from A_Id by the exchange rule A_{Q T_j} = sigma(u_{Q(j)}, u_{Q(j+1)}) A_Q along `word`.
inline cd amplitude_along(const std::vector<int>& word, const std::vector<cd>& u, int two_s, cd a_id) {
  std::vector<int> q(u.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = static_cast<int>(i);
  cd a = a_id;
  for (const int j : word) {
    a *= sigma(u[static_cast<std::size_t>(q[static_cast<std::size_t>(j)])],
               u[static_cast<std::size_t>(q[static_cast<std::size_t>(j + 1)])], two_s);
    std::swap(q[static_cast<std::size_t>(j)], q[static_cast<std::size_t>(j + 1)]);
  }
  return a;
}

inline cd u_of_lambda(cd lambda, int two_s) {
  const cd is = I * (0.5 * two_s);
  return (lambda + is) / (lambda - is);
}

/// u_j^L - prod_{l != j} sigma(u_l, u_j).
inline std::vector<cd> k_form_residual(const std::vector<cd>& lambda, int two_s, int length) {
  std::vector<cd> u;
  for (const cd l : lambda) u.push_back(u_of_lambda(l, two_s));
  std::vector<cd> out;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cd prod = 1.0;
    for (std::size_t l = 0; l < u.size(); ++l) {
      if (l != j) prod *= sigma(u[l], u[j], two_s);
    }
    out.push_back(std::pow(u[j], length) - prod);
  }
  return out;
}

inline CMat finite_difference_jacobian(const std::function<std::vector<cd>(const std::vector<cd>&)>& f,
                                       const std::vector<cd>& x, double rel_step = 1e-7) {
  const auto f0 = f(x);
  CMat jac(static_cast<Eigen::Index>(f0.size()), static_cast<Eigen::Index>(x.size()));
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double h = rel_step * std::max(1.0, std::abs(x[k]));
    auto xp = x;
    auto xm = x;
    xp[k] += h;
    xm[k] -= h;
    const auto fp = f(xp);
    const auto fm = f(xm);
    for (std::size_t r = 0; r < f0.size(); ++r) {
      jac(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = (fp[r] - fm[r]) / (2.0 * h);
    }
  }
  return jac;
}

/// One-magnon monodromy state in the full space, by Kronecker products of
/// the local operators T_11, T_12, T_22 applied to the highest-weight state.
inline CVec aba_phi1(int two_s, int length, cd lambda) {
  const int d = two_s + 1;
  const cd is = I * (0.5 * two_s);
  const CMat id = CMat::Identity(d, d);
  const CMat sz = spin_z(two_s).cast<cd>();
  const CMat sm = spin_minus(two_s).cast<cd>();
  const CMat t11 = (lambda * id + I * sz) / (lambda - is);
  const CMat t12 = (I * sm) / (lambda - is);
  const CMat t22 = (lambda * id - I * sz) / (lambda - is);
  CVec top = CVec::Zero(d);
  top(0) = 1.0;
  CVec phi = CVec::Zero(ipow(d, length));
  for (int x = 0; x < length; ++x) {
    CMat op = CMat::Identity(1, 1);
    for (int j = 0; j < length; ++j) op = kron(op, j < x ? t11 : (j == x ? t12 : t22));
    CVec vac = CVec::Ones(1);
    for (int j = 0; j < length; ++j) vac = kron(CMat(vac), CMat(top)).col(0);
    phi += op * vac;
  }
  return phi;
}

}  // namespace oracle
