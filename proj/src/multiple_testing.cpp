#include "mdf/multiple_testing.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mdf {

std::vector<double> holm_adjust(std::span<const double> pvalues) {
  const std::size_t m = pvalues.size();
  if (m == 0) throw std::invalid_argument("holm_adjust: no p-values");
  for (const double p : pvalues)
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("holm_adjust: p-value outside [0, 1]");

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pvalues[a] < pvalues[b]; });

  std::vector<double> adjusted(m);
  double running = 0.0;
  for (std::size_t rank = 0; rank < m; ++rank) {
    const double scaled = static_cast<double>(m - rank) * pvalues[order[rank]];
    running = std::min(1.0, std::max(running, scaled));
    adjusted[order[rank]] = running;
  }
  return adjusted;
}

}  // namespace mdf
