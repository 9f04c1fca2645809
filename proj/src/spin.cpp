#include "bethe/spin.hpp"

#include <charconv>

#include "bethe/errors.hpp"

namespace bethe {

Spin::Spin(int two_s) : two_s_(two_s) {
  if (two_s < 1 || two_s > kMaxTwoS) {
    throw DomainError("spin: 2s must lie in [1, " + std::to_string(kMaxTwoS) +
                      "], got " + std::to_string(two_s));
  }
}

namespace {

bool parse_int(std::string_view text, int& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

Spin Spin::parse(std::string_view text) {
  const auto bad = [&]() {
    return DomainError("spin: expected a positive multiple of 1/2 such as "
                       "\"1/2\", \"1\" or \"3/2\", got \"" +
                       std::string(text) + "\"");
  };
  int num = 0;
  int den = 1;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    if (!parse_int(text.substr(0, slash), num) ||
        !parse_int(text.substr(slash + 1), den)) {
      throw bad();
    }
  } else if (!parse_int(text, num)) {
    throw bad();
  }
  if (den != 1 && den != 2) throw bad();
  const int two_s = den == 1 ? 2 * num : num;
  if (two_s < 1) throw bad();
  return Spin(two_s);
}

std::string Spin::to_string() const {
  if (two_s_ % 2 == 0) return std::to_string(two_s_ / 2);
  return std::to_string(two_s_) + "/2";
}

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw DomainError("factorial: argument out of [0, 20]");
  std::uint64_t out = 1;
  for (int i = 2; i <= n; ++i) out *= static_cast<std::uint64_t>(i);
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t out = 1;
  // Exact at every step: out * (n - i) is divisible by (i + 1).
  for (int i = 0; i < k; ++i) {
    out = out * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
  }
  return out;
}

}  // namespace bethe
