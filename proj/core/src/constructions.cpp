#include "nnapprox/constructions.hpp"

#include <cmath>
#include <vector>

#include "nnapprox/error.hpp"

namespace nnapprox {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConstructionError(what);
}

int ceil_log2(int r) {
  int q = 0;
  while ((1 << q) < r) ++q;
  return q;
}

// A_k: I_k with the extra row (-1/2, 0, ..., 0, 1) appended; (k+1) x k.
Matrix shift_append(int k) {
  std::vector<Matrix::Triplet> t;
  for (int i = 0; i < k; ++i) t.push_back({std::size_t(i), std::size_t(i), 1.0});
  t.push_back({std::size_t(k), 0, -0.5});
  t.push_back({std::size_t(k), std::size_t(k - 1), 1.0});
  return Matrix::from_triplets(k + 1, k, std::move(t));
}

// B_k: I_{k-1} in the top-left block, last row (1, 0, ..., 0, -2); k x k.
Matrix tent_close(int k) {
  std::vector<Matrix::Triplet> t;
  for (int i = 0; i < k - 1; ++i) t.push_back({std::size_t(i), std::size_t(i), 1.0});
  t.push_back({std::size_t(k - 1), 0, 1.0});
  t.push_back({std::size_t(k - 1), std::size_t(k - 1), -2.0});
  return Matrix::from_triplets(k, k, std::move(t));
}

// Pairing layer with `carry` trailing factors passed through unchanged.
Network pairing_with_carry(int m, int k, int carry, MultVariant v) {
  require(k >= 1 || carry >= 1, "pairing layer needs at least one factor");
  const std::size_t in = 1 + 2 * std::size_t(k) + std::size_t(carry);
  const std::size_t spread = 1 + 3 * std::size_t(k) + std::size_t(carry);
  // (1, x1, ..., x2k, y...) -> (1, [1, x_{2l-1}, x_{2l}]_l, y...)
  std::vector<Matrix::Triplet> t;
  t.push_back({0, 0, 1.0});
  for (int l = 0; l < k; ++l) {
    const std::size_t row = 1 + 3 * std::size_t(l);
    t.push_back({row, 0, 1.0});
    t.push_back({row + 1, 1 + 2 * std::size_t(l), 1.0});
    t.push_back({row + 2, 2 + 2 * std::size_t(l), 1.0});
  }
  for (int c = 0; c < carry; ++c) {
    t.push_back({1 + 3 * std::size_t(k) + std::size_t(c), 1 + 2 * std::size_t(k) + std::size_t(c), 1.0});
  }
  const Matrix spread_layer = Matrix::from_triplets(spread, in, std::move(t));

  const Network mult = build_mult(m, v);
  const Network carrier = identity_chain(1, mult.num_matrices(), Activation::abs());
  std::vector<Network> blocks;
  blocks.reserve(1 + std::size_t(k) + std::size_t(carry));
  blocks.push_back(carrier);
  for (int l = 0; l < k; ++l) blocks.push_back(mult);
  for (int c = 0; c < carry; ++c) blocks.push_back(carrier);
  return prepend_layer(parallel(blocks), spread_layer);
}

void stamp(Network& net, const std::string& construction, int m, MultVariant v) {
  net.set_meta("construction", construction);
  net.set_meta("m", m);
  net.set_meta("variant", to_string(v));
}

void record_shape(Network& net) {
  net.set_meta("num_matrices", net.num_matrices());
  net.set_meta("widths", net.widths());
  net.set_meta("max_width", net.max_width());
}

}  // namespace

std::string to_string(MultVariant v) {
  return v == MultVariant::PaperLiteral ? "paper" : "rescaled";
}

MultVariant parse_variant(std::string_view name) {
  if (name == "paper" || name == "paper-literal" || name == "literal") {
    return MultVariant::PaperLiteral;
  }
  if (name == "rescaled") return MultVariant::Rescaled;
  throw Error("unknown variant '" + std::string(name) + "' (expected paper or rescaled)");
}

double tent(double x) { return 1.0 - 2.0 * std::fabs(x - 0.5); }

double tent_iter(int s, double x) {
  for (int i = 0; i < s; ++i) x = tent(x);
  return x;
}

double fm_ref(int m, double x) {
  double acc = x;
  double g = x;
  double scale = 1.0;
  for (int s = 1; s <= m; ++s) {
    g = tent(g);
    scale *= 0.25;
    acc -= g * scale;
  }
  return acc;
}

double sq_error_bound(int m) { return std::ldexp(1.0, -2 * m - 2); }

double mult_error_bound(int m, MultVariant v) {
  return 3.0 * std::ldexp(1.0, v == MultVariant::PaperLiteral ? -2 * m - 3 : -2 * m - 2);
}

double multr_error_bound(int m, int r, MultVariant v) {
  const double base = double(r) * r * std::ldexp(1.0, -2 * m);
  return v == MultVariant::PaperLiteral ? base : 3.0 * base;
}

double mon_error_bound(int m, int gamma, MultVariant v) {
  const double base = double(gamma) * gamma * std::ldexp(1.0, -2 * m);
  return v == MultVariant::PaperLiteral ? base : 3.0 * base;
}

double multr_path_entry_bound(int r, MultVariant v) {
  return v == MultVariant::PaperLiteral ? 144.0 * std::pow(double(r), 4)
                                        : 2304.0 * std::pow(double(r), 5);
}

double mon_path_entry_bound(int gamma, MultVariant v) {
  return v == MultVariant::PaperLiteral ? 144.0 * std::pow(double(gamma + 1), 5)
                                        : 2304.0 * std::pow(double(gamma + 1), 6);
}

Network build_sq(int m) {
  if (m < 1) throw Error("build_sq: m must be >= 1");
  std::vector<Matrix> w;
  w.reserve(2 * std::size_t(m) + 1);
  for (int k = 2; k <= m + 1; ++k) {
    w.push_back(shift_append(k));
    w.push_back(tent_close(k + 1));
  }
  std::vector<Matrix::Triplet> s;
  s.push_back({0, 1, 1.0});
  for (int j = 1; j <= m; ++j) s.push_back({0, std::size_t(j + 1), -std::ldexp(1.0, -2 * j)});
  w.push_back(Matrix::from_triplets(1, std::size_t(m) + 2, std::move(s)));

  Network net(Activation::abs(), std::move(w));
  require(net.num_matrices() == 2 * std::size_t(m) + 1, "build_sq: unexpected depth");
  require(net.input_dim() == 2 && net.output_dim() == 1, "build_sq: unexpected shape");
  net.set_meta("construction", "sq");
  net.set_meta("m", m);
  net.set_meta("claimed_error_bound", sq_error_bound(m));
  net.set_meta("claimed_domain", "x in [0,1]");
  record_shape(net);
  return net;
}

Network build_mult(int m, MultVariant v) {
  if (m < 1) throw Error("build_mult: m must be >= 1");
  const Network sq = build_sq(m);
  const std::vector<Network> three{sq, sq, sq};
  // (1, x, y) -> (1, x, 1, y, 1, x+y) or (..., 1, (x+y)/2)
  const double sum_weight = v == MultVariant::PaperLiteral ? 1.0 : 0.5;
  const Matrix spread = Matrix::from_rows({{1, 0, 0},
                                           {0, 1, 0},
                                           {1, 0, 0},
                                           {0, 0, 1},
                                           {1, 0, 0},
                                           {0, sum_weight, sum_weight}});
  const double sum_out = v == MultVariant::PaperLiteral ? 0.5 : 2.0;
  const Matrix combine = Matrix::from_rows({{-0.5, -0.5, sum_out}});

  Network net = append_layer(prepend_layer(parallel(three), spread), combine);
  require(net.num_matrices() == 2 * std::size_t(m) + 3, "build_mult: depth != 2m+3");
  require(net.input_dim() == 3 && net.output_dim() == 1, "build_mult: unexpected shape");
  require(net.max_width() <= 3 * std::size_t(m) + 6, "build_mult: width exceeds 3m+6");
  stamp(net, "mult", m, v);
  net.set_meta("claimed_error_bound", mult_error_bound(m, v));
  net.set_meta("claimed_domain", v == MultVariant::PaperLiteral ? "x,y >= 0, x+y <= 1" : "[0,1]^2");
  record_shape(net);
  return net;
}

Network build_pairing_layer(int m, int k, MultVariant v) {
  if (m < 1) throw Error("build_pairing_layer: m must be >= 1");
  if (k < 1) throw Error("build_pairing_layer: k must be >= 1");
  Network net = pairing_with_carry(m, k, 0, v);
  require(net.num_matrices() == 2 * std::size_t(m) + 4, "pairing layer: depth != 2m+4");
  require(net.input_dim() == 2 * std::size_t(k) + 1, "pairing layer: p_0 != 2k+1");
  require(net.output_dim() == std::size_t(k) + 1, "pairing layer: output != k+1");
  stamp(net, "pairing", m, v);
  net.set_meta("k", k);
  record_shape(net);
  return net;
}

Network build_multr(int m, int r, MultVariant v) {
  if (m < 1) throw Error("build_multr: m must be >= 1");
  if (r < 2) throw Error("build_multr: r must be >= 2");
  const int q = ceil_log2(r);
  const std::size_t padded = std::size_t(1) << q;

  std::vector<Matrix::Triplet> t;
  for (int i = 0; i <= r; ++i) t.push_back({std::size_t(i), std::size_t(i), 1.0});
  std::size_t factors = std::size_t(r);
  if (v == MultVariant::Rescaled) {
    // (1, x_1, ..., x_r, 1, ..., 1)
    for (std::size_t i = std::size_t(r); i < padded; ++i) t.push_back({1 + i, 0, 1.0});
    factors = padded;
  }
  const Matrix first = Matrix::from_triplets(1 + factors, std::size_t(r) + 1, std::move(t));

  std::vector<Matrix> w{first};
  while (factors > 1) {
    const int pairs = int(factors / 2);
    const int carry = int(factors % 2);
    const Network level = pairing_with_carry(m, pairs, carry, v);
    w.insert(w.end(), level.weights().begin(), level.weights().end());
    factors = std::size_t(pairs + carry);
  }
  w.push_back(Matrix::from_rows({{0.0, 1.0}}));

  Network net(Activation::abs(), std::move(w));
  const std::size_t depth_bound = (2 * std::size_t(m) + 5) * std::size_t(q) + 1;
  require(net.num_matrices() == std::size_t(q) * (2 * std::size_t(m) + 4) + 2,
          "build_multr: unexpected depth");
  require(net.num_matrices() <= depth_bound, "build_multr: depth exceeds (2m+5)q+1");
  require(net.max_width() <= 6 * std::size_t(r) * (std::size_t(m) + 2) + 1,
          "build_multr: width exceeds 6r(m+2)+1");
  require(net.input_dim() == std::size_t(r) + 1 && net.output_dim() == 1,
          "build_multr: unexpected shape");
  stamp(net, "multr", m, v);
  net.set_meta("r", r);
  net.set_meta("claimed_error_bound", multr_error_bound(m, r, v));
  net.set_meta("claimed_domain", v == MultVariant::PaperLiteral ? "[0,1/2]^r" : "[0,1]^r");
  record_shape(net);
  return net;
}

Network build_mon(int m, int gamma, int d, MultVariant v) {
  if (m < 1) throw Error("build_mon: m must be >= 1");
  if (gamma < 2) throw Error("build_mon: gamma must be >= 2");
  if (d < 1) throw Error("build_mon: d must be >= 1");

  const auto indices = enumerate_multi_indices(d, gamma);
  // Replication matrix: one row per constant/linear channel in output order,
  // then for each |k| > 1 the block (1, x_1 (k_1 times), ..., x_d (k_d times)).
  std::vector<Matrix::Triplet> t;
  std::size_t row = 0;
  std::vector<Network> blocks;
  std::size_t direct = 0;
  for (const auto& idx : indices) {
    if (idx.degree() > 1) break;
    if (idx.degree() == 0) {
      t.push_back({row++, 0, 1.0});
    } else {
      for (int j = 0; j < d; ++j) {
        if (idx.k[std::size_t(j)] == 1) t.push_back({row++, std::size_t(j) + 1, 1.0});
      }
    }
    ++direct;
  }
  if (direct > 0) blocks.push_back(identity_chain(direct, 1, Activation::abs()));
  for (const auto& idx : indices) {
    if (idx.degree() <= 1) continue;
    t.push_back({row++, 0, 1.0});
    for (int j = 0; j < d; ++j) {
      for (int c = 0; c < idx.k[std::size_t(j)]; ++c) t.push_back({row++, std::size_t(j) + 1, 1.0});
    }
    blocks.push_back(build_multr(m, idx.degree(), v));
  }
  const Matrix replicate = Matrix::from_triplets(row, std::size_t(d) + 1, std::move(t));

  Network net = blocks.size() == 1 && blocks.front().num_matrices() == 1
                    ? Network(Activation::abs(), {replicate})
                    : prepend_layer(parallel(blocks), replicate);

  const int q = ceil_log2(gamma);
  const std::size_t c_count = count_multi_indices(d, gamma);
  require(net.output_dim() == c_count, "build_mon: output count != C_{d,gamma}");
  require(net.input_dim() == std::size_t(d) + 1, "build_mon: p_0 != d+1");
  require(net.num_matrices() <= std::size_t(q) * (2 * std::size_t(m) + 5) + 2,
          "build_mon: depth exceeds ceil(log2 gamma)(2m+5)+2");
  require(net.max_width() <= 6 * std::size_t(gamma) * (std::size_t(m) + 2) * c_count,
          "build_mon: width exceeds 6 gamma (m+2) C_{d,gamma}");

  stamp(net, "mon", m, v);
  net.set_meta("gamma", gamma);
  net.set_meta("d", d);
  net.set_meta("monomials", c_count);
  net.set_meta("claimed_error_bound", mon_error_bound(m, gamma, v));
  net.set_meta("claimed_domain", v == MultVariant::PaperLiteral ? "[0,1/2]^d" : "[0,1]^d");
  record_shape(net);
  return net;
}

}  // namespace nnapprox
