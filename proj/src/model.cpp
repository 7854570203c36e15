#include "relnet/model.hpp"

#include <algorithm>
#include <numeric>

namespace relnet {

Canonicalized canonicalize(const std::array<int, kNodeCount>& gains, const RateTuple& rates) {
  for (int g : gains)
    if (g < 0) throw std::invalid_argument("gains must be non-negative");
  rates.validate();

  std::array<int, kNodeCount> order{};
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return gains[a] > gains[b]; });

  Canonicalized out;
  std::array<int, kNodeCount> sorted{};
  for (int i = 0; i < kNodeCount; ++i) {
    sorted[i] = gains[order[i]];
    out.new_to_old[i] = order[i] + 1;
    out.old_to_new[order[i]] = i + 1;
  }
  out.gains = GainVector(sorted);
  out.rates = permute_rates(rates, out.new_to_old);
  return out;
}

RateTuple permute_rates(const RateTuple& rates, const std::array<int, kNodeCount>& new_to_old) {
  RateTuple out;
  for (int a = 1; a <= kNodeCount; ++a)
    for (int b = 1; b <= kNodeCount; ++b)
      if (a != b) out.at(a, b) = rates.at(new_to_old[a - 1], new_to_old[b - 1]);
  return out;
}

}  // namespace relnet
