#include "nnapprox/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "nnapprox/error.hpp"

namespace nnapprox {

MonomialPolynomial::MonomialPolynomial(int dim) : dim_(dim) {
  if (dim < 1) throw Error("polynomial dimension must be >= 1");
}

void MonomialPolynomial::add_term(const MultiIndex& k, double coefficient) {
  if (k.dim() != std::size_t(dim_)) throw DimensionError("polynomial term has wrong dimension");
  if (!std::isfinite(coefficient)) throw NumericError("polynomial coefficient is not finite");
  terms_[k] += coefficient;
}

double MonomialPolynomial::coefficient(const MultiIndex& k) const {
  const auto it = terms_.find(k);
  return it == terms_.end() ? 0.0 : it->second;
}

int MonomialPolynomial::degree() const {
  int deg = -1;
  for (const auto& [k, c] : terms_) deg = std::max(deg, k.degree());
  return deg;
}

double MonomialPolynomial::abs_coefficient_sum() const {
  double s = 0.0;
  for (const auto& [k, c] : terms_) s += std::fabs(c);
  return s;
}

double MonomialPolynomial::max_abs_coefficient() const {
  double s = 0.0;
  for (const auto& [k, c] : terms_) s = std::max(s, std::fabs(c));
  return s;
}

double MonomialPolynomial::eval(std::span<const double> x) const {
  double s = 0.0;
  for (const auto& [k, c] : terms_) s += c * k.monomial(x);
  return s;
}

nlohmann::json MonomialPolynomial::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : terms_) terms.push_back({{"k", k.k}, {"a", c}});
  return {{"d", dim_}, {"terms", terms}};
}

MonomialPolynomial MonomialPolynomial::from_json(const nlohmann::json& doc) {
  MonomialPolynomial p(doc.at("d").get<int>());
  for (const auto& t : doc.at("terms")) {
    p.add_term(MultiIndex{t.at("k").get<std::vector<int>>()}, t.at("a").get<double>());
  }
  return p;
}

}  // namespace nnapprox
