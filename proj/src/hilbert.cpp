#include "bethe/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "bethe/errors.hpp"

namespace bethe {

std::uint64_t default_dimension_cap() {
  if (const char* env = std::getenv("BETHE_CAP"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != nullptr && *end == '\0' && value > 0) return value;
  }
  return kDefaultDimensionCap;
}

std::uint64_t full_dimension(Spin spin, int length, std::uint64_t cap) {
  if (length < 1) throw DomainError("chain length must be positive");
  const auto d = static_cast<std::uint64_t>(spin.dim());
  std::uint64_t dim = 1;
  for (int i = 0; i < length; ++i) {
    if (dim > cap / d) {
      throw ResourceError("dimension (2s+1)^L = " + std::to_string(d) + "^" +
                          std::to_string(length) + " exceeds cap " + std::to_string(cap));
    }
    dim *= d;
  }
  if (dim > cap) {
    throw ResourceError("dimension " + std::to_string(dim) + " exceeds cap " +
                        std::to_string(cap));
  }
  return dim;
}

std::uint64_t full_index(Spin spin, std::span<const int> occupation) {
  const auto d = static_cast<std::uint64_t>(spin.dim());
  std::uint64_t index = 0;
  for (const int digit : occupation) index = index * d + static_cast<std::uint64_t>(digit);
  return index;
}

Occupation decode_full_index(Spin spin, int length, std::uint64_t index) {
  const auto d = static_cast<std::uint64_t>(spin.dim());
  Occupation occ(static_cast<std::size_t>(length));
  for (int j = length - 1; j >= 0; --j) {
    occ[static_cast<std::size_t>(j)] = static_cast<int>(index % d);
    index /= d;
  }
  return occ;
}

std::uint64_t sector_dimension(Spin spin, int length, int m) {
  if (m < 0 || m > spin.two_s() * length) return 0;
  std::vector<std::uint64_t> poly{1};
  for (int site = 0; site < length; ++site) {
    std::vector<std::uint64_t> next(poly.size() + static_cast<std::size_t>(spin.two_s()), 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      for (int t = 0; t <= spin.two_s(); ++t) next[i + static_cast<std::size_t>(t)] += poly[i];
    }
    poly = std::move(next);
  }
  return poly[static_cast<std::size_t>(m)];
}

namespace {

void enumerate(int two_s, int site, int remaining, Occupation& current,
               std::vector<Occupation>& out) {
  const auto length = static_cast<int>(current.size());
  if (site == length) {
    if (remaining == 0) out.push_back(current);
    return;
  }
  const int capacity = two_s * (length - site - 1);
  // Ascending digit at the leading site gives lexicographic order.
  for (int digit = 0; digit <= std::min(two_s, remaining); ++digit) {
    if (remaining - digit > capacity) continue;
    current[static_cast<std::size_t>(site)] = digit;
    enumerate(two_s, site + 1, remaining - digit, current, out);
  }
  current[static_cast<std::size_t>(site)] = 0;
}

}  // namespace

SectorBasis::SectorBasis(Spin spin, int length, int m) : spin_(spin), length_(length), m_(m) {
  if (length < 1) throw DomainError("sector: chain length must be positive");
  if (m < 0 || m > spin.two_s() * length) {
    throw DomainError("sector: m = " + std::to_string(m) + " outside [0, 2sL]");
  }
  Occupation current(static_cast<std::size_t>(length), 0);
  enumerate(spin.two_s(), 0, m, current, states_);
  index_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(key(states_[i]), i);
}

std::uint64_t SectorBasis::key(std::span<const int> occupation) const {
  const auto d = static_cast<std::uint64_t>(spin_.dim());
  std::uint64_t k = 0;
  std::uint64_t place = 1;
  for (const int digit : occupation) {
    k += place * static_cast<std::uint64_t>(digit);
    place *= d;
  }
  return k;
}

std::optional<std::size_t> SectorBasis::find(std::span<const int> occupation) const {
  if (occupation.size() != static_cast<std::size_t>(length_)) return std::nullopt;
  int total = 0;
  for (const int digit : occupation) {
    if (digit < 0 || digit > spin_.two_s()) return std::nullopt;
    total += digit;
  }
  if (total != m_) return std::nullopt;
  const auto it = index_.find(key(occupation));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SectorBasis::index_of(std::span<const int> occupation) const {
  if (const auto i = find(occupation)) return *i;
  throw DomainError("sector: occupation not in sector m = " + std::to_string(m_));
}

SectorBasis sector_basis(Spin spin, int length, int m) { return SectorBasis(spin, length, m); }

void validate_coordinates(int length, const CoordinateTuple& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 1 || x[i] > length) throw DomainError("coordinates: site outside [1, L]");
    if (i > 0 && x[i] < x[i - 1]) throw DomainError("coordinates: tuple must be non-decreasing");
  }
}

Occupation occupation_of(int length, const CoordinateTuple& x) {
  validate_coordinates(length, x);
  Occupation occ(static_cast<std::size_t>(length), 0);
  for (const int site : x) ++occ[static_cast<std::size_t>(site - 1)];
  return occ;
}

CoordinateTuple coordinates_of(std::span<const int> occupation) {
  CoordinateTuple x;
  for (std::size_t j = 0; j < occupation.size(); ++j) {
    for (int c = 0; c < occupation[j]; ++c) x.push_back(static_cast<int>(j) + 1);
  }
  return x;
}

double alpha(Spin spin, int m) {
  if (m < 0 || m > spin.two_s()) return 0.0;
  return std::sqrt(static_cast<double>(binomial(spin.two_s(), m)));
}

double alpha_product(Spin spin, std::span<const int> occupation) {
  double out = 1.0;
  for (const int digit : occupation) out *= alpha(spin, digit);
  return out;
}

StateVector coords_to_vector(const SectorBasis& basis, const CoordinateTuple& x) {
  if (x.size() != static_cast<std::size_t>(basis.m())) {
    throw DimensionMismatch("coords_to_vector: tuple size differs from sector m");
  }
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(basis.dim()));
  const Occupation occ = occupation_of(basis.length(), x);
  const double norm = alpha_product(basis.spin(), occ);
  if (norm == 0.0) return v;
  v[static_cast<Eigen::Index>(basis.index_of(occ))] = norm;
  return v;
}

StateVector embed_in_full(const SectorBasis& basis, const StateVector& v) {
  if (static_cast<std::size_t>(v.size()) != basis.dim()) {
    throw DimensionMismatch("embed_in_full: vector size differs from sector dimension");
  }
  const auto dim = full_dimension(basis.spin(), basis.length());
  StateVector full = StateVector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    full[static_cast<Eigen::Index>(full_index(basis.spin(), basis.state(i)))] =
        v[static_cast<Eigen::Index>(i)];
  }
  return full;
}

StateVector project_to_sector(const SectorBasis& basis, const StateVector& full) {
  const auto dim = full_dimension(basis.spin(), basis.length());
  if (static_cast<std::uint64_t>(full.size()) != dim) {
    throw DimensionMismatch("project_to_sector: vector size differs from full dimension");
  }
  StateVector v(static_cast<Eigen::Index>(basis.dim()));
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    v[static_cast<Eigen::Index>(i)] =
        full[static_cast<Eigen::Index>(full_index(basis.spin(), basis.state(i)))];
  }
  return v;
}

}  // namespace bethe
