#include "nnapprox/multi_index.hpp"

#include <cmath>
#include <numeric>

#include "nnapprox/error.hpp"

namespace nnapprox {

int MultiIndex::degree() const noexcept { return std::accumulate(k.begin(), k.end(), 0); }

double MultiIndex::monomial(std::span<const double> x) const {
  if (x.size() != k.size()) throw DimensionError("monomial: dimension mismatch");
  double v = 1.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (int j = 0; j < k[i]; ++j) v *= x[i];
  }
  return v;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(k[i]);
  }
  return s + ")";
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  return a.k < b.k;
}

namespace {

// Compositions of `remaining` into the slots [pos, d), lexicographic.
void compositions(std::vector<int>& cur, std::size_t pos, int remaining,
                  std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.push_back({cur});
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[pos] = v;
    compositions(cur, pos + 1, remaining - v, out);
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_multi_indices(int d, int gamma) {
  if (d < 1) throw Error("enumerate_multi_indices: d must be >= 1");
  if (gamma < 1) throw Error("enumerate_multi_indices: gamma must be >= 1");
  std::vector<MultiIndex> out;
  out.reserve(count_multi_indices(d, gamma));
  std::vector<int> cur(static_cast<std::size_t>(d), 0);
  for (int deg = 0; deg < gamma; ++deg) compositions(cur, 0, deg, out);
  return out;
}

std::size_t count_multi_indices(int d, int gamma) {
  // binom(d + gamma - 1, d), computed incrementally to stay exact
  std::size_t c = 1;
  for (int i = 1; i <= d; ++i) {
    c = c * static_cast<std::size_t>(gamma - 1 + i) / static_cast<std::size_t>(i);
  }
  return c;
}

}  // namespace nnapprox
