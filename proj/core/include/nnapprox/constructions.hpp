#pragma once

#include <string>
#include <string_view>

#include "nnapprox/multi_index.hpp"
#include "nnapprox/network.hpp"

namespace nnapprox {

/// How the multiplication network forms xy = ((x+y)^2 - x^2 - y^2) / 2.
///
/// PaperLiteral squares x + y directly; the squaring network is only accurate
/// on [0,1], so the product is accurate for x, y >= 0 with x + y <= 1.
/// Rescaled squares (x + y)/2 and reads the output with weight 2, which is
/// accurate on all of [0,1]^2 at twice the error constant.
enum class MultVariant { PaperLiteral, Rescaled };

std::string to_string(MultVariant v);
/// Accepts "paper", "paper-literal", "literal", "rescaled".
MultVariant parse_variant(std::string_view name);

// Closed-form references, total on R.

/// g(x) = 1 - 2|x - 1/2|
double tent(double x);
/// g_s = g o ... o g (s times)
double tent_iter(int s, double x);
/// f_m(x) = x - sum_{s=1}^m g_s(x) / 4^s
double fm_ref(int m, double x);

// Claimed error bounds on each builder's claimed domain.

double sq_error_bound(int m);
double mult_error_bound(int m, MultVariant v);
double multr_error_bound(int m, int r, MultVariant v);
double mon_error_bound(int m, int gamma, MultVariant v);
/// Bound on the entries of the product network's path vector.
double multr_path_entry_bound(int r, MultVariant v);
/// Bound on the entries of the monomial network's path matrix.
double mon_path_entry_bound(int gamma, MultVariant v);

/// (1, x) -> f_m(x); 2m + 1 weight matrices.
Network build_sq(int m);

/// (1, x, y) -> ~xy; 2m + 3 weight matrices, p_0 = 3.
Network build_mult(int m, MultVariant v);

/// N^k_m: (1, x_1, ..., x_2k) -> (1, ~x_1 x_2, ..., ~x_{2k-1} x_{2k}).
Network build_pairing_layer(int m, int k, MultVariant v);

/// (1, x_1, ..., x_r) -> ~prod x_i by a binary tree of pairing layers.
///
/// Rescaled pads the factors to 2^q with ones as the first layer. Pairing a
/// factor with 1 would push PaperLiteral outside its valid domain, so that
/// variant carries an odd trailing factor unchanged to the next level instead.
Network build_multr(int m, int r, MultVariant v);

/// (1, x) -> (x^k) over all |k|_1 < gamma in graded-lexicographic order.
Network build_mon(int m, int gamma, int d, MultVariant v);

}  // namespace nnapprox
