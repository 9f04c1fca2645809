#include "bethe/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bethe/errors.hpp"

namespace bethe {

int beta_M1(Spin spin, int m1, int m2) { return std::min(m1, spin.two_s() - m2); }
int beta_M2(Spin spin, int m1, int m2) { return std::min(m2, spin.two_s() - m1); }
int beta_n_min(Spin spin, int m1, int m2) { return -beta_M1(spin, m1, m2); }
int beta_n_max(Spin spin, int m1, int m2) { return beta_M2(spin, m1, m2); }

namespace {

void check_window(Spin spin, int m1, int m2, int n) {
  const int two_s = spin.two_s();
  if (m1 < 0 || m1 > two_s || m2 < 0 || m2 > two_s || n < beta_n_min(spin, m1, m2) ||
      n > beta_n_max(spin, m1, m2)) {
    throw DomainError("beta: (m1, m2, n) = (" + std::to_string(m1) + ", " + std::to_string(m2) +
                      ", " + std::to_string(n) + ") outside the admissible window for 2s = " +
                      std::to_string(two_s));
  }
}

double beta_positive(Spin spin, int m1, int m2, int n) {
  const int two_s = spin.two_s();
  const int M1 = beta_M1(spin, m1, m2);
  const int M2 = beta_M2(spin, m1, m2);
  const std::uint64_t num = binomial(M1 + n, M1) * binomial(M2, n);
  const std::uint64_t den = binomial(two_s - M1, n) * binomial(two_s - M2 + n, n);
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^{n-1}
  return sign / n * std::sqrt(static_cast<double>(num) / static_cast<double>(den));
}

double beta_zero(Spin spin, int m1, int m2) {
  const int two_s = spin.two_s();
  double out = 0.0;
  for (int l = 0; l < beta_M1(spin, m1, m2); ++l) out -= 1.0 / (two_s - l);
  for (int l = 0; l < beta_M2(spin, m1, m2); ++l) out -= 1.0 / (two_s - l);
  return out;
}

}  // namespace

double beta(Spin spin, int m1, int m2, int n) {
  check_window(spin, m1, m2, n);
  if (n > 0) return beta_positive(spin, m1, m2, n);
  if (n < 0) return beta(spin, m2, m1, -n);
  return beta_zero(spin, m1, m2);
}

BetaTable::BetaTable(Spin spin) : spin_(spin) {
  const int d = spin.dim();
  const int width = 2 * spin.two_s() + 1;
  dense_.assign(static_cast<std::size_t>(d * d * width), std::numeric_limits<double>::quiet_NaN());
  for (int m1 = 0; m1 < d; ++m1) {
    for (int m2 = 0; m2 < d; ++m2) {
      for (int n = beta_n_min(spin, m1, m2); n <= beta_n_max(spin, m1, m2); ++n) {
        const double value = beta(spin, m1, m2, n);
        entries_.push_back({m1, m2, n, value});
        dense_[slot(m1, m2, n)] = value;
      }
    }
  }
}

std::size_t BetaTable::slot(int m1, int m2, int n) const noexcept {
  const int d = spin_.dim();
  const int width = 2 * spin_.two_s() + 1;
  return static_cast<std::size_t>((m1 * d + m2) * width + n + spin_.two_s());
}

double BetaTable::at(int m1, int m2, int n) const {
  check_window(spin_, m1, m2, n);
  return dense_[slot(m1, m2, n)];
}

double BetaTable::get_or_zero(int m1, int m2, int n) const noexcept {
  const int two_s = spin_.two_s();
  if (m1 < 0 || m1 > two_s || m2 < 0 || m2 > two_s) return 0.0;
  if (n < beta_n_min(spin_, m1, m2) || n > beta_n_max(spin_, m1, m2)) return 0.0;
  return dense_[slot(m1, m2, n)];
}

LocalHamiltonian::LocalHamiltonian(const BetaTable& table) : spin_(table.spin()) {
  const int d = spin_.dim();
  matrix_ = Eigen::MatrixXd::Zero(d * d, d * d);
  // beta^n_{m1,m2} |s-m1-n><s-m1| (x) |s-m2+n><s-m2|: lowering counts go
  // (m1, m2) -> (m1 + n, m2 - n).
  for (const BetaEntry& e : table.entries()) {
    const int col = e.m1 * d + e.m2;
    const int row = (e.m1 + e.n) * d + (e.m2 - e.n);
    matrix_(row, col) += e.value;
  }
  columns_.resize(static_cast<std::size_t>(d * d));
  for (int col = 0; col < d * d; ++col) {
    for (int row = 0; row < d * d; ++row) {
      if (matrix_(row, col) != 0.0) columns_[static_cast<std::size_t>(col)].push_back({row, matrix_(row, col)});
    }
  }
}

LocalHamiltonian local_h(Spin spin) { return LocalHamiltonian(BetaTable(spin)); }

ChainHamiltonian::ChainHamiltonian(Spin spin, int length, std::uint64_t cap)
    : spin_(spin), length_(length), dim_(0) {
  if (length < 2) throw DomainError("chain Hamiltonian: L must be at least 2");
  dim_ = full_dimension(spin, length, cap);
  local_ = std::make_shared<const LocalHamiltonian>(BetaTable(spin));
}

StateVector ChainHamiltonian::apply(const StateVector& v) const {
  if (static_cast<std::uint64_t>(v.size()) != dim_) {
    throw DimensionMismatch("chain Hamiltonian: vector size differs from full dimension");
  }
  const auto d = static_cast<std::uint64_t>(spin_.dim());
  std::vector<std::uint64_t> place(static_cast<std::size_t>(length_));
  std::uint64_t p = 1;
  for (int j = length_ - 1; j >= 0; --j) {
    place[static_cast<std::size_t>(j)] = p;
    p *= d;
  }
  StateVector out = StateVector::Zero(v.size());
  for (std::uint64_t index = 0; index < dim_; ++index) {
    const Complex amp = v[static_cast<Eigen::Index>(index)];
    if (amp == Complex{}) continue;
    for (int j = 0; j < length_; ++j) {
      const int k = (j + 1) % length_;
      const std::uint64_t pj = place[static_cast<std::size_t>(j)];
      const std::uint64_t pk = place[static_cast<std::size_t>(k)];
      const auto a = (index / pj) % d;
      const auto b = (index / pk) % d;
      const std::uint64_t base = index - a * pj - b * pk;
      for (const auto& [row, value] : local_->column(static_cast<int>(a * d + b))) {
        const auto ra = static_cast<std::uint64_t>(row) / d;
        const auto rb = static_cast<std::uint64_t>(row) % d;
        out[static_cast<Eigen::Index>(base + ra * pj + rb * pk)] += value * amp;
      }
    }
  }
  return out;
}

StateVector ChainHamiltonian::apply_in_sector(const SectorBasis& basis, const StateVector& v) const {
  if (basis.spin() != spin_ || basis.length() != length_) {
    throw DimensionMismatch("chain Hamiltonian: sector built for a different chain");
  }
  if (static_cast<std::size_t>(v.size()) != basis.dim()) {
    throw DimensionMismatch("chain Hamiltonian: vector size differs from sector dimension");
  }
  const int d = spin_.dim();
  StateVector out = StateVector::Zero(v.size());
  Occupation work;
  for (std::size_t b = 0; b < basis.dim(); ++b) {
    const Complex amp = v[static_cast<Eigen::Index>(b)];
    if (amp == Complex{}) continue;
    work = basis.state(b);
    for (int j = 0; j < length_; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      const auto sk = static_cast<std::size_t>((j + 1) % length_);
      const int a = work[sj];
      const int c = work[sk];
      for (const auto& [row, value] : local_->column(a * d + c)) {
        work[sj] = row / d;
        work[sk] = row % d;
        out[static_cast<Eigen::Index>(basis.index_of(work))] += value * amp;
      }
      work[sj] = a;
      work[sk] = c;
    }
  }
  return out;
}

Eigen::MatrixXd ChainHamiltonian::dense() const {
  if (dim_ > kDenseLimit) {
    throw ResourceError("dense Hamiltonian: dimension " + std::to_string(dim_) +
                        " exceeds dense limit " + std::to_string(kDenseLimit));
  }
  const auto n = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXd out(n, n);
  StateVector unit = StateVector::Zero(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    unit[c] = 1.0;
    out.col(c) = apply(unit).real();
    unit[c] = 0.0;
  }
  return out;
}

Eigen::MatrixXd ChainHamiltonian::dense_in_sector(const SectorBasis& basis) const {
  if (basis.dim() > kDenseLimit) {
    throw ResourceError("dense sector Hamiltonian: dimension " + std::to_string(basis.dim()) +
                        " exceeds dense limit " + std::to_string(kDenseLimit));
  }
  const auto n = static_cast<Eigen::Index>(basis.dim());
  Eigen::MatrixXd out(n, n);
  StateVector unit = StateVector::Zero(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    unit[c] = 1.0;
    out.col(c) = apply_in_sector(basis, unit).real();
    unit[c] = 0.0;
  }
  return out;
}

ChainHamiltonian chain_h(Spin spin, int length, std::uint64_t cap) {
  return ChainHamiltonian(spin, length, cap);
}

StateVector apply_chain_h_in_sector(const ChainHamiltonian& h, const SectorBasis& basis,
                                    const StateVector& v) {
  return h.apply_in_sector(basis, v);
}

namespace {

// Radicands vanish at the edges of the representation; clamp the negative
// values that appear there (they always multiply a zero beta).
double root(int x) { return x > 0 ? std::sqrt(static_cast<double>(x)) : 0.0; }

}  // namespace

RecursionReport check_beta_recursions(Spin spin) {
  const BetaTable table(spin);
  const int S = spin.two_s();
  const auto b = [&](int m1, int m2, int n) { return table.get_or_zero(m1, m2, n); };
  RecursionReport report;
  for (int m1 = 0; m1 <= S; ++m1) {
    for (int m2 = 0; m2 <= S; ++m2) {
      for (int n = -S - 1; n <= S + 1; ++n) {
        const double lhs1 = root((m1 + 1) * (S - m1)) * b(m1 + 1, m2, n);
        const double rhs1 = root((S + n - m2 + 1) * (m2 - n)) * b(m1, m2, n + 1) -
                            root((m2 + 1) * (S - m2)) * b(m1, m2 + 1, n + 1) +
                            root((S - n - m1) * (n + m1 + 1)) * b(m1, m2, n);
        const double lhs2 = root(m1 * (S - m1 + 1)) * b(m1 - 1, m2, n);
        const double rhs2 = root((S + n - m2) * (m2 - n + 1)) * b(m1, m2, n - 1) -
                            root(m2 * (S - m2 + 1)) * b(m1, m2 - 1, n - 1) +
                            root((S - n - m1 + 1) * (n + m1)) * b(m1, m2, n);
        report.raising_violation = std::max(report.raising_violation, std::abs(lhs1 - rhs1));
        report.lowering_violation = std::max(report.lowering_violation, std::abs(lhs2 - rhs2));
        report.relations_checked += 2;
      }
    }
  }
  return report;
}

}  // namespace bethe
