#include "nnapprox/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nnapprox/error.hpp"
#include "nnapprox/parallel.hpp"

namespace nnapprox {

std::vector<double> cheb_poly_coeffs(int n) {
  if (n < 0) throw Error("cheb_poly_coeffs: n must be >= 0");
  if (n > kMaxChebyshevDegree) {
    throw Error("cheb_poly_coeffs: n = " + std::to_string(n) +
                " exceeds the exactly representable range (n <= " +
                std::to_string(kMaxChebyshevDegree) + ")");
  }
  __extension__ typedef __int128 Int;
  std::vector<Int> prev{1};
  std::vector<Int> cur{0, 1};
  if (n == 0) return {1.0};
  for (int k = 1; k < n; ++k) {
    std::vector<Int> next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return std::vector<double>(cur.begin(), cur.end());
}

double cheb_eval(int n, double t) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = t;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

ChebyshevSeries::ChebyshevSeries(std::vector<int> degrees, std::vector<Interval> domain)
    : degrees_(std::move(degrees)), domain_(std::move(domain)) {
  if (degrees_.empty()) throw Error("Chebyshev series needs at least one axis");
  if (domain_.empty()) domain_.assign(degrees_.size(), Interval{-1.0, 1.0});
  if (domain_.size() != degrees_.size()) throw DimensionError("domain/degree count mismatch");
  strides_.assign(degrees_.size(), 1);
  std::size_t total = 1;
  for (std::size_t a = degrees_.size(); a-- > 0;) {
    if (degrees_[a] < 0) throw Error("Chebyshev degrees must be >= 0");
    if (!(domain_[a].hi > domain_[a].lo)) throw Error("Chebyshev axis interval is empty");
    strides_[a] = total;
    total *= std::size_t(degrees_[a]) + 1;
  }
  coeffs_.assign(total, 0.0);
}

std::vector<int> ChebyshevSeries::index_of(std::size_t flat) const {
  std::vector<int> k(degrees_.size());
  for (std::size_t a = 0; a < degrees_.size(); ++a) {
    k[a] = int((flat / strides_[a]) % (std::size_t(degrees_[a]) + 1));
  }
  return k;
}

std::size_t ChebyshevSeries::flat_index(std::span<const int> k) const {
  if (k.size() != degrees_.size()) throw DimensionError("Chebyshev index has wrong dimension");
  std::size_t flat = 0;
  for (std::size_t a = 0; a < k.size(); ++a) {
    if (k[a] < 0 || k[a] > degrees_[a]) throw DimensionError("Chebyshev index out of range");
    flat += std::size_t(k[a]) * strides_[a];
  }
  return flat;
}

void ChebyshevSeries::set_coefficient(std::span<const int> k, double value) {
  set_flat(flat_index(k), value);
}

void ChebyshevSeries::set_flat(std::size_t flat, double value) {
  if (!std::isfinite(value)) throw NumericError("Chebyshev coefficient is not finite");
  coeffs_.at(flat) = value;
}

double ChebyshevSeries::to_unit(std::size_t axis, double x) const {
  const auto& iv = domain_[axis];
  return (2.0 * x - iv.lo - iv.hi) / (iv.hi - iv.lo);
}

double ChebyshevSeries::eval(std::span<const double> x) const {
  if (x.size() != degrees_.size()) throw DimensionError("Chebyshev eval: dimension mismatch");
  // T_k(t_a) tables per axis
  std::vector<std::vector<double>> tables(degrees_.size());
  for (std::size_t a = 0; a < degrees_.size(); ++a) {
    const double t = to_unit(a, x[a]);
    auto& row = tables[a];
    row.resize(std::size_t(degrees_[a]) + 1);
    row[0] = 1.0;
    if (row.size() > 1) row[1] = t;
    for (std::size_t k = 2; k < row.size(); ++k) row[k] = 2.0 * t * row[k - 1] - row[k - 2];
  }
  double s = 0.0;
  for (std::size_t flat = 0; flat < coeffs_.size(); ++flat) {
    if (coeffs_[flat] == 0.0) continue;
    double term = coeffs_[flat];
    for (std::size_t a = 0; a < degrees_.size(); ++a) {
      term *= tables[a][(flat / strides_[a]) % (std::size_t(degrees_[a]) + 1)];
    }
    s += term;
  }
  return s;
}

ChebyshevSeries ChebyshevSeries::truncated(int total_degree) const {
  ChebyshevSeries out = *this;
  for (std::size_t flat = 0; flat < coeffs_.size(); ++flat) {
    const auto k = index_of(flat);
    int deg = 0;
    for (int v : k) deg += v;
    if (deg > total_degree) out.coeffs_[flat] = 0.0;
  }
  return out;
}

namespace {

// cos(pi r / n) folded onto [0, pi/2] so that symmetric nodes cancel exactly
// and the quarter period is an exact zero.
double cos_pi_ratio(std::size_t r, std::size_t n) {
  r %= 2 * n;
  if (r > n) r = 2 * n - r;
  double sign = 1.0;
  if (2 * r > n) {
    r = n - r;
    sign = -1.0;
  }
  if (2 * r == n) return 0.0;
  return sign * std::cos(std::numbers::pi * double(r) / double(n));
}

}  // namespace

ChebyshevSeries cheb_fit(const AnalyticTarget& target, std::vector<int> degrees) {
  if (int(degrees.size()) != target.dim) {
    throw DimensionError("cheb_fit: need one degree per target dimension");
  }
  std::vector<Interval> domain;
  for (std::size_t a = 0; a < degrees.size(); ++a) domain.push_back(target.axis(a));
  ChebyshevSeries series(degrees, domain);

  auto node = [](int n, int j) {
    return n == 0 ? 0.0 : cos_pi_ratio(std::size_t(j), std::size_t(n));
  };

  // sample the target on the tensor node grid
  std::vector<double> values(series.size());
  auto sample = [&](std::size_t begin, std::size_t end) {
    std::vector<double> x(degrees.size());
    for (std::size_t flat = begin; flat < end; ++flat) {
      const auto j = series.index_of(flat);
      for (std::size_t a = 0; a < degrees.size(); ++a) {
        const double t = node(degrees[a], j[a]);
        x[a] = domain[a].lo + (t + 1.0) * 0.5 * (domain[a].hi - domain[a].lo);
      }
      const double v = target(x);
      if (!std::isfinite(v)) throw NumericError("cheb_fit: target is not finite at a node");
      values[flat] = v;
    }
  };
  if (target.concurrent_safe) {
    parallel_for(values.size(), sample);
  } else {
    sample(0, values.size());
  }

  // discrete cosine transform (type I) along each axis
  std::size_t stride = values.size();
  for (std::size_t a = 0; a < degrees.size(); ++a) {
    const int n = degrees[a];
    const std::size_t len = std::size_t(n) + 1;
    stride /= len;
    if (n == 0) continue;
    std::vector<double> line(len);
    std::vector<double> out(len);
    for (std::size_t base = 0; base < values.size(); ++base) {
      if ((base / stride) % len != 0) continue;
      for (std::size_t j = 0; j < len; ++j) line[j] = values[base + j * stride];
      for (std::size_t k = 0; k < len; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < len; ++j) {
          const double w = (j == 0 || j == len - 1) ? 0.5 : 1.0;
          acc += w * line[j] * cos_pi_ratio(j * k, std::size_t(n));
        }
        acc *= 2.0 / double(n);
        if (k == 0 || k == len - 1) acc *= 0.5;
        out[k] = acc;
      }
      for (std::size_t k = 0; k < len; ++k) values[base + k * stride] = out[k];
    }
  }
  for (std::size_t flat = 0; flat < values.size(); ++flat) series.set_flat(flat, values[flat]);
  return series;
}

MonomialPolynomial cheb_to_monomial(const ChebyshevSeries& series, int gamma) {
  if (gamma < 0) throw Error("cheb_to_monomial: gamma must be >= 0");
  const std::size_t d = std::size_t(series.dim());
  // per axis: monomial coefficients in x of T_k(alpha x + beta)
  std::vector<std::vector<std::vector<double>>> axis_polys(d);
  for (std::size_t a = 0; a < d; ++a) {
    const auto& iv = series.domain()[a];
    const double alpha = 2.0 / (iv.hi - iv.lo);
    const double beta = -(iv.hi + iv.lo) / (iv.hi - iv.lo);
    const int kmax = std::min(series.degrees()[a], gamma);
    for (int k = 0; k <= kmax; ++k) {
      const auto c = cheb_poly_coeffs(k);
      std::vector<double> p(std::size_t(k) + 1, 0.0);
      // (alpha x + beta)^j = sum_e binom(j, e) alpha^e beta^{j-e} x^e
      for (int j = 0; j <= k; ++j) {
        if (c[std::size_t(j)] == 0.0) continue;
        double binom = 1.0;
        for (int e = 0; e <= j; ++e) {
          p[std::size_t(e)] += c[std::size_t(j)] * binom * std::pow(alpha, e) * std::pow(beta, j - e);
          binom = binom * double(j - e) / double(e + 1);
        }
      }
      axis_polys[a].push_back(std::move(p));
    }
  }

  MonomialPolynomial out(series.dim());
  const auto truncated = series.truncated(gamma);
  const auto coeffs = truncated.coefficients();
  for (std::size_t flat = 0; flat < coeffs.size(); ++flat) {
    if (coeffs[flat] == 0.0) continue;
    const auto k = truncated.index_of(flat);
    // expand the tensor product prod_a P_{k_a}(x_a)
    std::vector<int> e(d, 0);
    while (true) {
      double c = coeffs[flat];
      for (std::size_t a = 0; a < d; ++a) c *= axis_polys[a][std::size_t(k[a])][std::size_t(e[a])];
      if (c != 0.0) out.add_term(MultiIndex{e}, c);
      std::size_t a = 0;
      while (a < d && e[a] == k[a]) e[a++] = 0;
      if (a == d) break;
      ++e[a];
    }
  }
  return out;
}

namespace {

double l2_norm(const std::vector<int>& k) {
  double s = 0.0;
  for (int v : k) s += double(v) * v;
  return std::sqrt(s);
}

}  // namespace

GeometricDecayFit fit_geometric_decay(const ChebyshevSeries& series, double relative_floor) {
  const auto coeffs = series.coefficients();
  double amax = 0.0;
  for (double c : coeffs) amax = std::max(amax, std::fabs(c));
  GeometricDecayFit fit;
  if (amax == 0.0) return fit;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::vector<std::pair<double, double>> used;
  for (std::size_t flat = 0; flat < coeffs.size(); ++flat) {
    const double a = std::fabs(coeffs[flat]);
    if (a <= relative_floor * amax) continue;
    const double x = l2_norm(series.index_of(flat));
    const double y = std::log(a);
    used.emplace_back(x, a);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.used = used.size();
  const double n = double(used.size());
  const double denom = n * sxx - sx * sx;
  const double slope = (used.size() >= 2 && denom > 0.0) ? (n * sxy - sx * sy) / denom : 0.0;
  fit.rho = std::exp(-slope);
  for (const auto& [x, a] : used) fit.constant = std::max(fit.constant, a * std::pow(fit.rho, x));
  return fit;
}

double geometric_constant(const ChebyshevSeries& series, double rho) {
  const auto coeffs = series.coefficients();
  double c = 0.0;
  for (std::size_t flat = 0; flat < coeffs.size(); ++flat) {
    c = std::max(c, std::fabs(coeffs[flat]) * std::pow(rho, l2_norm(series.index_of(flat))));
  }
  return c;
}

}  // namespace nnapprox
