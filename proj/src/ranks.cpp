#include "mdf/ranks.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace mdf {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

}  // namespace

RankMatrix::RankMatrix(const DistanceMatrix& d) : n_(d.size()), r_(n_ * n_) {
  std::vector<std::uint32_t> order(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto row = d.row(i);
    std::iota(order.begin(), order.end(), 0U);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return row[a] < row[b]; });
    std::uint32_t rank = 0;
    for (std::size_t pos = 0; pos < n_; ++pos) {
      if (pos > 0 && row[order[pos]] != row[order[pos - 1]]) ++rank;
      r_[i * n_ + order[pos]] = rank;
    }
  }
}

DominanceCounter::DominanceCounter(std::size_t n, std::size_t components, std::size_t groups)
    : n_(n), components_(components), groups_(groups) {
  if (n == 0 || components == 0 || groups == 0)
    throw std::invalid_argument("DominanceCounter: sizes must be positive");
  if (groups > 255) throw std::invalid_argument("DominanceCounter: too many groups");
  if (components == 1) {
    hist_.resize(n * groups);
  } else if (components == 2) {
    bucket_start_.resize(n + 1);
    order_.resize(n);
    fenwick_.resize((n + 1) * groups);
  } else {
    const std::size_t words = word_count(n);
    prefix_bits_.resize(components * n * words);
    group_masks_.resize(groups * words);
    scratch_bits_.resize(words);
  }
}

void DominanceCounter::count(std::span<const std::span<const std::uint32_t>> ranks,
                             std::span<const std::uint8_t> group, std::span<std::uint32_t> counts) {
  if (ranks.size() != components_) throw std::invalid_argument("DominanceCounter: component count mismatch");
  if (counts.size() != n_ * groups_) throw std::invalid_argument("DominanceCounter: counts size mismatch");
  if (!group.empty() && group.size() != n_) throw std::invalid_argument("DominanceCounter: group size mismatch");
  for (const auto& r : ranks)
    if (r.size() != n_) throw std::invalid_argument("DominanceCounter: rank row size mismatch");

  if (components_ == 1) {
    count_one(ranks[0], group, counts);
  } else if (components_ == 2) {
    count_two(ranks[0], ranks[1], group, counts);
  } else {
    count_many(ranks, group, counts);
  }
}

void DominanceCounter::count_one(std::span<const std::uint32_t> rank, std::span<const std::uint8_t> group,
                                 std::span<std::uint32_t> counts) {
  const std::size_t g_count = groups_;
  std::fill(hist_.begin(), hist_.end(), 0U);
  for (std::size_t l = 0; l < n_; ++l) ++hist_[rank[l] * g_count + (group.empty() ? 0 : group[l])];
  for (std::size_t r = 1; r < n_; ++r)
    for (std::size_t g = 0; g < g_count; ++g) hist_[r * g_count + g] += hist_[(r - 1) * g_count + g];
  for (std::size_t v = 0; v < n_; ++v)
    for (std::size_t g = 0; g < g_count; ++g) counts[v * g_count + g] = hist_[rank[v] * g_count + g];
}

void DominanceCounter::count_two(std::span<const std::uint32_t> first, std::span<const std::uint32_t> second,
                                 std::span<const std::uint8_t> group, std::span<std::uint32_t> counts) {
  const std::size_t g_count = groups_;
  const std::size_t n = n_;

  // Counting sort of the points by first-component rank.
  std::fill(bucket_start_.begin(), bucket_start_.end(), 0U);
  for (std::size_t l = 0; l < n; ++l) ++bucket_start_[first[l] + 1];
  for (std::size_t r = 0; r < n; ++r) bucket_start_[r + 1] += bucket_start_[r];
  cursor_.assign(bucket_start_.begin(), bucket_start_.end() - 1);
  for (std::size_t l = 0; l < n; ++l) order_[cursor_[first[l]]++] = static_cast<std::uint32_t>(l);

  std::fill(fenwick_.begin(), fenwick_.end(), 0U);
  auto tree = [&](std::size_t g) { return fenwick_.data() + g * (n + 1); };

  for (std::size_t r = 0; r < n; ++r) {
    const std::uint32_t begin = bucket_start_[r];
    const std::uint32_t end = bucket_start_[r + 1];
    if (begin == end) continue;
    // All ties in the first component enter the ball together.
    for (std::uint32_t pos = begin; pos < end; ++pos) {
      const std::uint32_t l = order_[pos];
      std::uint32_t* t = tree(group.empty() ? 0 : group[l]);
      for (std::size_t idx = second[l] + 1; idx <= n; idx += idx & (~idx + 1)) ++t[idx];
    }
    for (std::uint32_t pos = begin; pos < end; ++pos) {
      const std::uint32_t v = order_[pos];
      for (std::size_t g = 0; g < g_count; ++g) {
        const std::uint32_t* t = tree(g);
        std::uint32_t total = 0;
        for (std::size_t idx = second[v] + 1; idx > 0; idx -= idx & (~idx + 1)) total += t[idx];
        counts[v * g_count + g] = total;
      }
    }
  }
}

void DominanceCounter::count_many(std::span<const std::span<const std::uint32_t>> ranks,
                                  std::span<const std::uint8_t> group, std::span<std::uint32_t> counts) {
  const std::size_t n = n_;
  const std::size_t words = word_count(n);
  const std::size_t g_count = groups_;

  std::fill(group_masks_.begin(), group_masks_.end(), 0ULL);
  for (std::size_t l = 0; l < n; ++l) {
    const std::size_t g = group.empty() ? 0 : group[l];
    group_masks_[g * words + l / kWordBits] |= 1ULL << (l % kWordBits);
  }

  // prefix_bits_[k][r] = { l : rank_k[l] <= r }
  for (std::size_t k = 0; k < components_; ++k) {
    const auto rank = ranks[k];
    std::uint64_t* base = prefix_bits_.data() + k * n * words;
    std::fill(base, base + n * words, 0ULL);
    for (std::size_t l = 0; l < n; ++l) base[rank[l] * words + l / kWordBits] |= 1ULL << (l % kWordBits);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t w = 0; w < words; ++w) base[r * words + w] |= base[(r - 1) * words + w];
  }

  for (std::size_t v = 0; v < n; ++v) {
    const std::uint64_t* first = prefix_bits_.data() + ranks[0][v] * words;
    std::copy(first, first + words, scratch_bits_.begin());
    for (std::size_t k = 1; k < components_; ++k) {
      const std::uint64_t* bits = prefix_bits_.data() + k * n * words + ranks[k][v] * words;
      for (std::size_t w = 0; w < words; ++w) scratch_bits_[w] &= bits[w];
    }
    for (std::size_t g = 0; g < g_count; ++g) {
      const std::uint64_t* mask = group_masks_.data() + g * words;
      std::uint32_t total = 0;
      for (std::size_t w = 0; w < words; ++w)
        total += static_cast<std::uint32_t>(std::popcount(scratch_bits_[w] & mask[w]));
      counts[v * g_count + g] = total;
    }
  }
}

}  // namespace mdf
