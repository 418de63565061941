#pragma once

#include "ngeo/chow.hpp"
#include "ngeo/noether.hpp"
#include "ngeo/reid_rr.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ngeo::families {

/// Parameters of the double-cover construction: F_e, D = 2s + al, and the
/// residual branch class 5V + p*(10s + 2bl).
struct FamilyParams {
  std::int64_t e = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;

  /// Names of violated constraints ("e >= 3 violated", ...); empty when valid.
  std::vector<std::string> violations() const;

  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

/// Explicit bounds for basket enumeration. There are no defaults.
struct BasketSearch {
  std::int64_t r_max = 0;
  std::int64_t max_points = 0;
};

enum class BasketStatus {
  Forced,        // forced by the classification theorems (p_g >= 11, on a line)
  Informational, // on a line but p_g < 11: the line's basket, not theorem-backed
  Undetermined,  // off the lines: no statement available
};

std::string to_string(BasketStatus s);

/// Which Noether-line example a record was built as.
struct ExampleTag {
  int line = 0;
  std::int64_t e = 0;
  std::int64_t k = 0;
};

struct FamilyRecord {
  FamilyParams params;
  std::int64_t p_g = 0;
  Rational k3;
  std::int64_t chi_omega = 0;
  bool smooth_total_space = false;
  noether::LineClassification classification;
  BasketStatus basket_status = BasketStatus::Undetermined;
  std::optional<rr::Basket> basket;
  std::optional<std::int64_t> p2;
  std::vector<rr::Basket> basket_candidates;
  chow::NefCertificate nef_certificate;
  std::optional<ExampleTag> example;
};

/// Builds F_e -> Y -> X' and computes every invariant through intersection
/// arithmetic. Throws DomainError naming each violated constraint. With a
/// search bound, off-line records list the baskets making P_2 integral.
FamilyRecord build_family(const FamilyParams& params, const std::optional<BasketSearch>& search = std::nullopt);

/// (a, b) realizing the Noether-line example X_{e,k} on the given line.
FamilyParams example_params(int line, std::int64_t e, std::int64_t k);

/// The example X_{e,k} on line 1, 2 or 3.
FamilyRecord noether_example(int line, std::int64_t e, std::int64_t k);

struct StructureModel {
  std::int64_t m = 0;
  std::int64_t e = 0;
  std::int64_t k = 0;
  std::int64_t p_g = 0;
  Rational k3;
  chow::SurfaceDivisor twist;            // D = 2s + (m+e)l
  chow::ThreefoldDivisor b1;             // relative hyperplane section V
  chow::ThreefoldDivisor b2;             // 5B_1 + q*(10s + 5(m+e)l)
  chow::SurfaceDivisor b2_on_b1;         // B_2|_{B_1}
  std::pair<std::int64_t, std::int64_t> hodge_degrees;  // f_* omega = O(k) + O(e+k)
  Rational gamma_degree;                 // (K . Gamma_0)
  bool canonical_model = false;          // X_0 is the canonical model (p_g >= 23)
  bool cone_canonical_image = false;     // k = 0
  noether::LineClassification classification;
  chow::CoverRef cover;
};

/// Relative canonical model of a threefold on the first Noether line with
/// p_g = 3m - 2 over F_e. Needs m >= 5, 0 <= e <= 3m - 4, e = 3m - 4 mod 2.
StructureModel structure_model(std::int64_t m, std::int64_t e);

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = -1;  // inclusive; empty when hi < lo
};

/// Noether-line examples over the grid, ordered by (line, e, k). Grid points
/// are evaluated on up to `threads` workers; the output does not depend on it.
std::vector<FamilyRecord> scan(IntRange e_range, IntRange k_range, const std::set<int>& lines,
                               unsigned threads = 1);

}  // namespace ngeo::families
