#pragma once

#include "ngeo/rational.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace ngeo::rr {

/// A cyclic quotient point of type 1/r(1, -1, b) with gcd(r, b) = 1 and
/// 1 <= b <= r/2.
class BasketPoint {
 public:
  BasketPoint(std::int64_t r, std::int64_t b);

  std::int64_t r() const { return r_; }
  std::int64_t b() const { return b_; }

  /// b(r - b) / (2r).
  Rational l2() const;

  friend auto operator<=>(const BasketPoint&, const BasketPoint&) = default;

 private:
  std::int64_t r_;
  std::int64_t b_;
};

/// Multiset of basket points, kept sorted by (r, b).
class Basket {
 public:
  Basket() = default;
  explicit Basket(std::vector<BasketPoint> points);

  const std::vector<BasketPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  Basket merged(const Basket& other) const;

  /// "empty", "(2,1)", "2x(2,1)", "(2,1)+(5,2)".
  std::string str() const;

  friend auto operator<=>(const Basket&, const Basket&) = default;
  friend bool operator==(const Basket&, const Basket&) = default;

 private:
  std::vector<BasketPoint> points_;
};

/// Parses the format produced by Basket::str().
Basket parse_basket(const std::string& text);

/// Sum of b(r - b)/(2r) over the points.
Rational l2_of(const Basket& basket);

struct Plurigenus2 {
  Rational value;
  bool integral = false;
};

/// P_2 = K^3/2 + 3 chi(omega) + l_2. Throws DomainError when K3 <= 0.
Plurigenus2 plurigenus2(const Rational& k3, std::int64_t chi_omega, const Basket& basket);

/// chi(omega_X) = p_g - 1. Valid for threefolds fibred by (1,2)-surfaces whose
/// canonical image is a surface, which requires p_g >= 3.
std::int64_t chi_from_pg(std::int64_t p_g);

/// Every basket with at most max_points points, all with r <= r_max, whose l_2
/// equals target exactly. Sorted by size, then lexicographically.
std::vector<Basket> enumerate_baskets(const Rational& target, std::int64_t r_max, std::int64_t max_points);

/// Every basket within the same bounds whose l_2 is at most `budget`.
std::vector<Basket> enumerate_baskets_up_to(const Rational& budget, std::int64_t r_max, std::int64_t max_points);

struct L2Interpretation {
  bool definitive = false;               // false: no classification is known for this value
  std::string summary;
  std::vector<std::string> realizations; // geometric singularity configurations
  Basket basket;                         // basket-level representative when definitive
};

/// Geometric meaning of l_2 in {0, 1/4, 1/2}. Throws DomainError for l_2 < 0.
L2Interpretation interpret_l2(const Rational& l2);

}  // namespace ngeo::rr
