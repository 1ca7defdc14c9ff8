#include "plineq/generators.hpp"

#include <set>
#include <string>

namespace plineq {

void GenConfig::validate() const {
  if (n_breakpoints < 3) {
    throw std::invalid_argument("GenConfig: n_breakpoints must be >= 3, got " + std::to_string(n_breakpoints));
  }
  if (!(value_scale >= 0.0) || !std::isfinite(value_scale)) {
    throw std::invalid_argument("GenConfig: value_scale must be finite and >= 0");
  }
  if (!(domain_lo < domain_hi) || quantize(domain_lo) != domain_lo || quantize(domain_hi) != domain_hi) {
    throw std::invalid_argument("GenConfig: domain must be a proper interval with dyadic endpoints");
  }
}

namespace detail {

namespace {
constexpr int kRandomGridCells = 4096;
}

std::vector<double> make_grid(Rng& rng, GridKind kind, int n, double lo, double hi) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(n));
  if (kind == GridKind::uniform) {
    for (int i = 0; i < n; ++i) {
      xs.push_back(i == 0 ? lo : i == n - 1 ? hi : quantize(lo + (hi - lo) * i / (n - 1)));
    }
    return xs;
  }
  if (n > kRandomGridCells) throw std::invalid_argument("random grid supports at most 4096 breakpoints");
  std::set<std::uint64_t> cells;
  while (static_cast<int>(cells.size()) < n - 2) cells.insert(1 + rng.below(kRandomGridCells - 1));
  xs.push_back(lo);
  for (auto c : cells) xs.push_back(quantize(lo + (hi - lo) * static_cast<double>(c) / kRandomGridCells));
  xs.push_back(hi);
  return xs;
}

std::vector<double> make_half_grid(Rng& rng, GridKind kind, int n, double lo, double hi) {
  const int m = n / 2 + 1;
  return make_grid(rng, kind, m < 2 ? 2 : m, lo, (lo + hi) / 2);
}

std::vector<double> mirror_points(const std::vector<double>& half, double lo, double hi) {
  std::vector<double> out(half);
  for (std::size_t i = half.size() - 1; i-- > 0;) out.push_back(lo + hi - half[i]);
  return out;
}

}  // namespace detail
}  // namespace plineq
