#include "bethe/su2_ops.hpp"

#include <cmath>

#include "bethe/errors.hpp"

namespace bethe {

LocalOperator s_minus(Spin spin) {
  const int d = spin.dim();
  const int two_s = spin.two_s();
  LocalOperator op = LocalOperator::Zero(d, d);
  // |n> -> |n-1> with n = s - i: sqrt((s+n)(s-n+1)) = sqrt((2s-i)(i+1)).
  for (int i = 0; i < two_s; ++i) op(i + 1, i) = std::sqrt(double((two_s - i) * (i + 1)));
  return op;
}

LocalOperator s_plus(Spin spin) {
  const int d = spin.dim();
  const int two_s = spin.two_s();
  LocalOperator op = LocalOperator::Zero(d, d);
  // |n> -> |n+1> with n = s - i: sqrt((s-n)(s+n+1)) = sqrt(i(2s-i+1)).
  for (int i = 1; i <= two_s; ++i) op(i - 1, i) = std::sqrt(double(i * (two_s - i + 1)));
  return op;
}

LocalOperator s_z(Spin spin) {
  const int d = spin.dim();
  LocalOperator op = LocalOperator::Zero(d, d);
  for (int i = 0; i < d; ++i) op(i, i) = spin.value() - i;
  return op;
}

LocalOperator g_matrix(Spin spin) {
  const int d = spin.dim();
  const double top = static_cast<double>(factorial(spin.two_s()));
  LocalOperator op = LocalOperator::Zero(d, d);
  // s - n = i at row i.
  for (int i = 0; i < d; ++i) op(i, i) = top / static_cast<double>(factorial(i));
  return op;
}

LocalOperator e_minus(Spin spin) {
  const int d = spin.dim();
  const int two_s = spin.two_s();
  LocalOperator op = LocalOperator::Zero(d, d);
  for (int i = 0; i < two_s; ++i) op(i + 1, i) = std::sqrt(double(two_s - i) / double(i + 1));
  return op;
}

namespace {

LocalOperator local_generator(Spin spin, Generator alpha) {
  switch (alpha) {
    case Generator::z: return s_z(spin);
    case Generator::plus: return s_plus(spin);
    case Generator::minus: return s_minus(spin);
  }
  return s_z(spin);
}

}  // namespace

GlobalGenerator::GlobalGenerator(Spin spin, int length, Generator alpha, std::uint64_t cap)
    : spin_(spin), length_(length), alpha_(alpha), dim_(0), local_(local_generator(spin, alpha)) {
  if (length < 2) throw DomainError("global generator: L must be at least 2");
  dim_ = full_dimension(spin, length, cap);
}

StateVector GlobalGenerator::apply(const StateVector& v) const {
  if (static_cast<std::uint64_t>(v.size()) != dim_) {
    throw DimensionMismatch("global generator: vector size differs from full dimension");
  }
  const int d = spin_.dim();
  StateVector out = StateVector::Zero(v.size());
  // Site j (0-based) carries place value d^{L-1-j}.
  std::uint64_t place = 1;
  for (int j = length_ - 1; j >= 0; --j) {
    for (std::uint64_t index = 0; index < dim_; ++index) {
      const Complex amp = v[static_cast<Eigen::Index>(index)];
      if (amp == Complex{}) continue;
      const int digit = static_cast<int>((index / place) % static_cast<std::uint64_t>(d));
      for (int row = 0; row < d; ++row) {
        const double c = local_(row, digit);
        if (c == 0.0) continue;
        const std::uint64_t target =
            index + place * static_cast<std::uint64_t>(row) - place * static_cast<std::uint64_t>(digit);
        out[static_cast<Eigen::Index>(target)] += c * amp;
      }
    }
    place *= static_cast<std::uint64_t>(d);
  }
  return out;
}

GlobalGenerator global_generator(Spin spin, int length, Generator alpha, std::uint64_t cap) {
  return GlobalGenerator(spin, length, alpha, cap);
}

StateVector apply_generator(Generator alpha, const SectorBasis& from, const SectorBasis& to,
                            const StateVector& v) {
  if (static_cast<std::size_t>(v.size()) != from.dim()) {
    throw DimensionMismatch("apply_generator: vector size differs from source sector");
  }
  if (to.m() != from.m() + sector_shift(alpha) || to.length() != from.length() ||
      to.spin() != from.spin()) {
    throw DimensionMismatch("apply_generator: target sector does not match generator");
  }
  const LocalOperator local = local_generator(from.spin(), alpha);
  StateVector out = StateVector::Zero(static_cast<Eigen::Index>(to.dim()));
  Occupation work;
  for (std::size_t b = 0; b < from.dim(); ++b) {
    const Complex amp = v[static_cast<Eigen::Index>(b)];
    if (amp == Complex{}) continue;
    work = from.state(b);
    for (std::size_t j = 0; j < work.size(); ++j) {
      const int digit = work[j];
      const int row = digit + sector_shift(alpha);
      if (row < 0 || row > from.spin().two_s()) continue;
      const double c = local(row, digit);
      if (c == 0.0) continue;
      work[j] = row;
      out[static_cast<Eigen::Index>(to.index_of(work))] += c * amp;
      work[j] = digit;
    }
  }
  return out;
}

}  // namespace bethe
