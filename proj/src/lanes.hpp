#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace energy::detail {

/// x_k patterns inside a 64-lane word for k < 6.
inline constexpr std::array<std::uint64_t, 6> kVarMask = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

/// Sixty-four independent counters stored as bit planes (vertical counters).
class LaneCounter {
 public:
  void add(std::uint64_t word) {
    std::uint64_t carry = word;
    for (std::size_t p = 0; carry != 0; ++p) {
      if (p == planes_.size()) planes_.push_back(0);
      const std::uint64_t next = planes_[p] & carry;
      planes_[p] ^= carry;
      carry = next;
    }
  }

  int lane(int j) const {
    int v = 0;
    for (std::size_t p = 0; p < planes_.size(); ++p) {
      v |= static_cast<int>((planes_[p] >> j) & 1u) << p;
    }
    return v;
  }

  void clear() { planes_.clear(); }

 private:
  std::vector<std::uint64_t> planes_;
};

}  // namespace energy::detail
