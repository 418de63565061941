#pragma once

#include "ngeo/rational.hpp"
#include "ngeo/reid_rr.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ngeo::noether {

/// The three Noether lines K^3 = 4/3 p_g - c hold as theorems for p_g >= 11.
inline constexpr std::int64_t kTheoremMinPg = 11;

/// Below 4/3 p_g - 8/3 the canonical image is forced to be a surface.
Rational small_volume_threshold(std::int64_t p_g);

/// Intermediate bound 4/3 p_g - 17/6 appearing as the alternative in the P_2
/// upper-bound dichotomy. Documented only; never used as a region boundary.
inline const Rational kPlurigenusAlternativeOffset{17, 6};

enum class Region {
  BelowFirst,
  OnFirst,
  ExcludedStrip12,
  OnSecond,
  ExcludedStrip23,
  OnThird,
  AboveThird,
  CongruenceExcluded,
  OutOfTheoremScope,
};

std::string to_string(Region r);

enum class DerivedFact {
  Gorenstein,
  Factorial,
  IrregularityVanishes,  // h^1(O_X) = h^2(O_X) = 0
  CanonicalImageSurface, // non-degenerate surface of degree p_g - 2
  CanonicalImageSmooth,  // additionally smooth (p_g >= 23)
  SimplyConnected,
};

std::string to_string(DerivedFact f);

struct LineClassification {
  /// Verdict of the classification theorems.
  Region region = Region::OutOfTheoremScope;
  /// Position relative to the three lines with the congruence applied, ignoring
  /// the p_g >= 11 hypothesis. Equal to `region` whenever p_g >= 11.
  Region placement = Region::OutOfTheoremScope;
  std::vector<rr::Basket> forced_baskets;
  std::vector<DerivedFact> derived_facts;

  /// 1, 2 or 3 when the placement is on a line.
  std::optional<int> line() const;
};

/// 4/3 p_g - c with c = 10/3, 19/6, 3 for lines 1, 2, 3.
Rational line_value(std::int64_t p_g, int line);

/// The line whose equality case is allowed for this residue of p_g mod 3.
int residue_line(std::int64_t p_g);

/// Basket forced on line 1, 2, 3: empty, (2,1), 2x(2,1).
rr::Basket line_basket(int line);

LineClassification classify(std::int64_t p_g, const Rational& k3);

/// d + ceil(2(d-2)/3)/2, the lower bound for K^3 of a (1,2)-surface fibration
/// whose canonical image has degree d.
Rational min_k3_fibered(std::int64_t d);

/// ceil(2(d-2)/3)/2, the lower bound for (K_X . Gamma).
Rational gamma_lower_bound(std::int64_t d);

/// floor(2K^3) + floor(2K^3 - 5(p_g-1)/3) + 7.
std::int64_t p2_upper_bound(std::int64_t p_g, const Rational& k3);

struct SideBounds {
  Rational canonical_image_threefold;  // 2p_g - 6
  Rational canonical_image_curve;      // 4/3 p_g - 8/3
  std::vector<std::string> notes;
};

SideBounds side_bounds(std::int64_t p_g);

/// Baskets compatible with Riemann-Roch for P_2 and the P_2 upper bound:
/// l_2 <= p2_upper_bound - (K^3/2 + 3(p_g - 1)) and K^3/2 + 3(p_g - 1) + l_2
/// integral. Requires p_g >= 11 and an on-line classification.
std::vector<rr::Basket> admissible_baskets(std::int64_t p_g, const Rational& k3, std::int64_t r_max,
                                           std::int64_t max_points);

}  // namespace ngeo::noether
