#include "ngeo/reid_rr.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <regex>

namespace ngeo::rr {

BasketPoint::BasketPoint(std::int64_t r, std::int64_t b) : r_(r), b_(b) {
  if (r < 2) throw DomainError("basket point needs r >= 2, got r = " + std::to_string(r));
  if (b < 1 || 2 * b > r)
    throw DomainError("basket point needs 1 <= b <= r/2, got (" + std::to_string(r) + "," + std::to_string(b) + ")");
  if (std::gcd(r, b) != 1)
    throw DomainError("basket point needs gcd(r, b) = 1, got (" + std::to_string(r) + "," + std::to_string(b) + ")");
}

Rational BasketPoint::l2() const { return Rational(b_ * (r_ - b_), 2 * r_); }

Basket::Basket(std::vector<BasketPoint> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
}

Basket Basket::merged(const Basket& other) const {
  std::vector<BasketPoint> all = points_;
  all.insert(all.end(), other.points_.begin(), other.points_.end());
  return Basket(std::move(all));
}

std::string Basket::str() const {
  if (points_.empty()) return "empty";
  std::string out;
  for (std::size_t i = 0; i < points_.size();) {
    std::size_t j = i;
    while (j < points_.size() && points_[j] == points_[i]) ++j;
    if (!out.empty()) out += "+";
    if (j - i > 1) out += std::to_string(j - i) + "x";
    out += "(" + std::to_string(points_[i].r()) + "," + std::to_string(points_[i].b()) + ")";
    i = j;
  }
  return out;
}

Basket parse_basket(const std::string& text) {
  if (text == "empty") return Basket{};
  static const std::regex term(R"((?:(\d+)x)?\((\d+),(\d+)\))");
  std::vector<BasketPoint> points;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (!points.empty()) {
      if (text[pos] != '+') throw DomainError("malformed basket: '" + text + "'");
      ++pos;
    }
    std::smatch m;
    std::string rest = text.substr(pos);
    if (!std::regex_search(rest, m, term, std::regex_constants::match_continuous))
      throw DomainError("malformed basket: '" + text + "'");
    std::int64_t count = m[1].matched ? std::stoll(m[1].str()) : 1;
    for (std::int64_t c = 0; c < count; ++c) points.emplace_back(std::stoll(m[2].str()), std::stoll(m[3].str()));
    pos += static_cast<std::size_t>(m.length(0));
  }
  if (points.empty()) throw DomainError("malformed basket: '" + text + "'");
  return Basket(std::move(points));
}

Rational l2_of(const Basket& basket) {
  Rational total;
  for (const auto& p : basket.points()) total += p.l2();
  return total;
}

Plurigenus2 plurigenus2(const Rational& k3, std::int64_t chi_omega, const Basket& basket) {
  if (k3.sign() <= 0) throw DomainError("K^3 must be positive, got " + k3.str());
  Rational value = k3 / Rational(2) + Rational(3 * chi_omega) + l2_of(basket);
  return {value, value.is_integer()};
}

std::int64_t chi_from_pg(std::int64_t p_g) {
  if (p_g < 3) throw DomainError("chi(omega) = p_g - 1 is only established for p_g >= 3, got " + std::to_string(p_g));
  return p_g - 1;
}

namespace {

std::vector<BasketPoint> all_points(std::int64_t r_max) {
  std::vector<BasketPoint> pts;
  for (std::int64_t r = 2; r <= r_max; ++r)
    for (std::int64_t b = 1; 2 * b <= r; ++b)
      if (std::gcd(r, b) == 1) pts.emplace_back(r, b);
  return pts;
}

// Depth-first search over non-decreasing index sequences. Every point has
// l_2 >= 1/4, which bounds the depth by 4 * budget.
template <class Accept>
void search(const std::vector<BasketPoint>& pts, const std::vector<Rational>& weights, std::size_t first,
            const Rational& remaining, std::int64_t slots, std::vector<BasketPoint>& chosen, Accept&& accept) {
  accept(chosen, remaining);
  if (slots == 0) return;
  for (std::size_t i = first; i < pts.size(); ++i) {
    if (weights[i] > remaining) continue;
    chosen.push_back(pts[i]);
    search(pts, weights, i, remaining - weights[i], slots - 1, chosen, accept);
    chosen.pop_back();
  }
}

void sort_baskets(std::vector<Basket>& out) {
  std::sort(out.begin(), out.end(), [](const Basket& a, const Basket& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
}

std::vector<Basket> enumerate(const Rational& bound, std::int64_t r_max, std::int64_t max_points, bool exact) {
  if (bound.sign() < 0) throw DomainError("l_2 target must be >= 0, got " + bound.str());
  if (r_max < 2) throw DomainError("r_max must be >= 2, got " + std::to_string(r_max));
  if (max_points < 0) throw DomainError("max_points must be >= 0, got " + std::to_string(max_points));
  const auto pts = all_points(r_max);
  std::vector<Rational> weights;
  weights.reserve(pts.size());
  for (const auto& p : pts) weights.push_back(p.l2());

  std::vector<Basket> out;
  std::vector<BasketPoint> chosen;
  search(pts, weights, 0, bound, max_points, chosen, [&](const std::vector<BasketPoint>& c, const Rational& rem) {
    if (!exact || rem.is_zero()) out.emplace_back(c);
  });
  sort_baskets(out);
  return out;
}

}  // namespace

std::vector<Basket> enumerate_baskets(const Rational& target, std::int64_t r_max, std::int64_t max_points) {
  return enumerate(target, r_max, max_points, true);
}

std::vector<Basket> enumerate_baskets_up_to(const Rational& budget, std::int64_t r_max, std::int64_t max_points) {
  return enumerate(budget, r_max, max_points, false);
}

L2Interpretation interpret_l2(const Rational& l2) {
  if (l2.sign() < 0) throw DomainError("l_2 is never negative, got " + l2.str());
  if (l2.is_zero()) return {true, "Gorenstein", {"Gorenstein (no non-Gorenstein points)"}, Basket{}};
  if (l2 == Rational(1, 4))
    return {true, "one 1/2(1,-1,1)", {"one non-Gorenstein point, of type 1/2(1,-1,1)"}, Basket({{2, 1}})};
  if (l2 == Rational(1, 2))
    return {true,
            "two 1/2(1,-1,1) or one cA1/mu2",
            {"two non-Gorenstein points, both of type 1/2(1,-1,1)", "one non-Gorenstein point, of type cA1/mu2"},
            Basket({{2, 1}, {2, 1}})};
  return {false, "no classification known for l_2 = " + l2.str(), {}, Basket{}};
}

}  // namespace ngeo::rr
