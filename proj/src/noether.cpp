#include "ngeo/noether.hpp"

namespace ngeo::noether {

namespace {

void require_pg(std::int64_t p_g) {
  if (p_g < 3) throw DomainError("p_g must be >= 3, got " + std::to_string(p_g));
}

void require_degree(std::int64_t d) {
  if (d < 1) throw DomainError("canonical image degree must be >= 1, got " + std::to_string(d));
}

Rational line_offset(int line) {
  switch (line) {
    case 1: return Rational(10, 3);
    case 2: return Rational(19, 6);
    case 3: return Rational(3);
    default: throw DomainError("Noether line index must be 1, 2 or 3, got " + std::to_string(line));
  }
}

Region on_line_region(int line) {
  switch (line) {
    case 1: return Region::OnFirst;
    case 2: return Region::OnSecond;
    default: return Region::OnThird;
  }
}

Region place(std::int64_t p_g, const Rational& k3) {
  const Rational first = line_value(p_g, 1);
  const Rational second = line_value(p_g, 2);
  const Rational third = line_value(p_g, 3);
  auto on = [&](int line) { return residue_line(p_g) == line ? on_line_region(line) : Region::CongruenceExcluded; };
  if (k3 < first) return Region::BelowFirst;
  if (k3 == first) return on(1);
  if (k3 < second) return Region::ExcludedStrip12;
  if (k3 == second) return on(2);
  if (k3 < third) return Region::ExcludedStrip23;
  if (k3 == third) return on(3);
  return Region::AboveThird;
}

}  // namespace

Rational small_volume_threshold(std::int64_t p_g) { return Rational(4 * p_g, 3) - Rational(8, 3); }

std::string to_string(Region r) {
  switch (r) {
    case Region::BelowFirst: return "BelowFirst";
    case Region::OnFirst: return "OnFirst";
    case Region::ExcludedStrip12: return "ExcludedStrip12";
    case Region::OnSecond: return "OnSecond";
    case Region::ExcludedStrip23: return "ExcludedStrip23";
    case Region::OnThird: return "OnThird";
    case Region::AboveThird: return "AboveThird";
    case Region::CongruenceExcluded: return "CongruenceExcluded";
    case Region::OutOfTheoremScope: return "OutOfTheoremScope";
  }
  return "?";
}

std::string to_string(DerivedFact f) {
  switch (f) {
    case DerivedFact::Gorenstein: return "Gorenstein";
    case DerivedFact::Factorial: return "Factorial";
    case DerivedFact::IrregularityVanishes: return "IrregularityVanishes";
    case DerivedFact::CanonicalImageSurface: return "CanonicalImageSurface";
    case DerivedFact::CanonicalImageSmooth: return "CanonicalImageSmooth";
    case DerivedFact::SimplyConnected: return "SimplyConnected";
  }
  return "?";
}

std::optional<int> LineClassification::line() const {
  switch (placement) {
    case Region::OnFirst: return 1;
    case Region::OnSecond: return 2;
    case Region::OnThird: return 3;
    default: return std::nullopt;
  }
}

Rational line_value(std::int64_t p_g, int line) {
  Rational offset = line_offset(line);
  require_pg(p_g);
  return Rational(4 * p_g, 3) - offset;
}

int residue_line(std::int64_t p_g) {
  switch (((p_g % 3) + 3) % 3) {
    case 1: return 1;
    case 2: return 2;
    default: return 3;
  }
}

rr::Basket line_basket(int line) {
  switch (line) {
    case 1: return rr::Basket{};
    case 2: return rr::Basket({{2, 1}});
    case 3: return rr::Basket({{2, 1}, {2, 1}});
    default: throw DomainError("Noether line index must be 1, 2 or 3, got " + std::to_string(line));
  }
}

LineClassification classify(std::int64_t p_g, const Rational& k3) {
  require_pg(p_g);
  if (k3.sign() <= 0) throw DomainError("K^3 must be positive, got " + k3.str());

  LineClassification out;
  out.placement = place(p_g, k3);
  if (p_g < kTheoremMinPg) {
    out.region = Region::OutOfTheoremScope;
    return out;
  }
  out.region = out.placement;

  bool realizable = out.region == Region::OnFirst || out.region == Region::OnSecond ||
                    out.region == Region::OnThird || out.region == Region::AboveThird;
  if (auto line = out.line(); line && realizable) {
    out.forced_baskets.push_back(line_basket(*line));
    if (*line == 1) {
      out.derived_facts.push_back(DerivedFact::Gorenstein);
      out.derived_facts.push_back(DerivedFact::Factorial);
    }
  }
  if (realizable && k3 < small_volume_threshold(p_g)) {
    out.derived_facts.push_back(DerivedFact::IrregularityVanishes);
    out.derived_facts.push_back(DerivedFact::CanonicalImageSurface);
    if (p_g >= 23) out.derived_facts.push_back(DerivedFact::CanonicalImageSmooth);
    out.derived_facts.push_back(DerivedFact::SimplyConnected);
  }
  return out;
}

Rational gamma_lower_bound(std::int64_t d) {
  require_degree(d);
  return Rational(2 * (d - 2), 3).ceil() / Rational(2);
}

Rational min_k3_fibered(std::int64_t d) { return Rational(d) + gamma_lower_bound(d); }

std::int64_t p2_upper_bound(std::int64_t p_g, const Rational& k3) {
  require_pg(p_g);
  if (k3.sign() <= 0) throw DomainError("K^3 must be positive, got " + k3.str());
  const Rational twice = Rational(2) * k3;
  const Rational second = twice - Rational(5 * (p_g - 1), 3);
  return twice.floor().to_int64() + second.floor().to_int64() + 7;
}

SideBounds side_bounds(std::int64_t p_g) {
  require_pg(p_g);
  SideBounds out{Rational(2 * p_g - 6), small_volume_threshold(p_g), {}};
  if (p_g < kTheoremMinPg)
    out.notes.push_back("canonical-image-curve bound is established only for p_g >= 11");
  return out;
}

std::vector<rr::Basket> admissible_baskets(std::int64_t p_g, const Rational& k3, std::int64_t r_max,
                                           std::int64_t max_points) {
  if (p_g < kTheoremMinPg) throw DomainError("basket solver needs p_g >= 11, got " + std::to_string(p_g));
  LineClassification c = classify(p_g, k3);
  if (!(c.region == Region::OnFirst || c.region == Region::OnSecond || c.region == Region::OnThird))
    throw DomainError("basket solver needs a point on a Noether line, got " + to_string(c.region));

  const Rational base = k3 / Rational(2) + Rational(3 * (p_g - 1));
  const Rational budget = Rational(p2_upper_bound(p_g, k3)) - base;
  std::vector<rr::Basket> out;
  if (budget.sign() < 0) return out;
  for (auto& basket : rr::enumerate_baskets_up_to(budget, r_max, max_points))
    if ((base + rr::l2_of(basket)).is_integer()) out.push_back(std::move(basket));
  return out;
}

}  // namespace ngeo::noether
