#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cliffcut {

// Sparse weighted distribution over fixed-width bitstrings. Keys are strings
// of '0'/'1' with char j holding the j-th measured qubit (ascending global
// index). Weights may be negative while a quasi-probability is being
// assembled; finalize() in the recombiner restores a true distribution.
struct Distribution {
  uint32_t n_bits = 0;
  std::map<std::string, double> weights;

  Distribution() = default;
  explicit Distribution(uint32_t bits) : n_bits(bits) {}

  void add(const std::string& key, double w) {
    auto [it, inserted] = weights.try_emplace(key, w);
    if (!inserted) it->second += w;
  }

  double at(const std::string& key) const {
    auto it = weights.find(key);
    return it == weights.end() ? 0.0 : it->second;
  }

  double total() const {
    double s = 0;
    for (const auto& [k, w] : weights) s += w;
    return s;
  }

  // Sum of |w| over negative entries.
  double negative_mass() const {
    double s = 0;
    for (const auto& [k, w] : weights) {
      if (w < 0) s -= w;
    }
    return s;
  }

  void prune(double eps = 1e-12) {
    for (auto it = weights.begin(); it != weights.end();) {
      if (std::abs(it->second) < eps) {
        it = weights.erase(it);
      } else {
        ++it;
      }
    }
  }

  void scale(double f) {
    for (auto& [k, w] : weights) w *= f;
  }

  bool is_normalized(double tol = 1e-6) const {
    if (std::abs(total() - 1.0) > tol) return false;
    for (const auto& [k, w] : weights) {
      if (w < -tol) return false;
    }
    return true;
  }

  // Marginal of one bit position: {p(bit=0), p(bit=1)}.
  std::pair<double, double> bit_marginal(uint32_t pos) const {
    double p0 = 0, p1 = 0;
    for (const auto& [k, w] : weights) {
      (k[pos] == '0' ? p0 : p1) += w;
    }
    return {p0, p1};
  }
};

inline double total_variation(const Distribution& a, const Distribution& b) {
  if (a.n_bits != b.n_bits)
    throw std::invalid_argument("total_variation: bit-width mismatch");
  double s = 0;
  auto ia = a.weights.begin();
  auto ib = b.weights.begin();
  while (ia != a.weights.end() || ib != b.weights.end()) {
    if (ib == b.weights.end() || (ia != a.weights.end() && ia->first < ib->first)) {
      s += std::abs(ia->second);
      ++ia;
    } else if (ia == a.weights.end() || ib->first < ia->first) {
      s += std::abs(ib->second);
      ++ib;
    } else {
      s += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return 0.5 * s;
}

}  // namespace cliffcut
