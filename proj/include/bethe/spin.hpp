#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace bethe {

/// Spin label s of the local su(2) representation, carried as the integer 2s.
class Spin {
 public:
  static constexpr int kMaxTwoS = 20;

  /// Throws DomainError unless 1 <= two_s <= kMaxTwoS.
  explicit Spin(int two_s);

  [[nodiscard]] int two_s() const noexcept { return two_s_; }
  [[nodiscard]] int dim() const noexcept { return two_s_ + 1; }
  [[nodiscard]] double value() const noexcept { return 0.5 * two_s_; }

  /// "1/2", "3/2", "1", "2", also "4/2". Anything that is not a positive
  /// multiple of 1/2 raises DomainError.
  static Spin parse(std::string_view text);

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(Spin, Spin) = default;

 private:
  int two_s_;
};

/// Exact n! for n <= 20.
std::uint64_t factorial(int n);

/// Exact binomial coefficient C(n, k); zero when k < 0 or k > n.
std::uint64_t binomial(int n, int k);

}  // namespace bethe
