#pragma once

// Intersection arithmetic on the tower
//
//   F_e  <--p--  Y = P(O + O(-D))  <--rho--  X' (double cover)  --pi-->  X
//
// Every space is an immutable descriptor shared by the divisor classes that
// live on it. Classes on different spaces never mix: arithmetic across spaces
// throws SpaceMismatch.

#include "ngeo/rational.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ngeo::chow {

class SpaceMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

struct HirzebruchSpace;
struct BundleSpace;
struct CoverSpace;

using HirzebruchRef = std::shared_ptr<const HirzebruchSpace>;
using BundleRef = std::shared_ptr<const BundleSpace>;
using CoverRef = std::shared_ptr<const CoverSpace>;

/// A class in the Picard group (tensored with Q) of one space, written in the
/// space's ordered basis.
///
/// Surfaces use the basis (s, l). The bundle Y uses (V, p*s, p*l) and the
/// cover X' uses (E, rho*p*s, rho*p*l); for both, coefficient 0 is the
/// distinguished divisor and coefficients 1, 2 are the pulled-back s and l.
template <class Space>
class Divisor {
 public:
  static constexpr std::size_t rank = Space::rank;
  using Coefficients = std::array<Rational, rank>;

  Divisor(std::shared_ptr<const Space> space, Coefficients coeffs)
      : space_(std::move(space)), coeffs_(std::move(coeffs)) {
    if (!space_) throw DomainError("divisor without a space");
  }

  static Divisor zero(std::shared_ptr<const Space> space) { return Divisor(std::move(space), Coefficients{}); }

  /// The i-th basis vector.
  static Divisor basis(std::shared_ptr<const Space> space, std::size_t i) {
    Coefficients c{};
    c.at(i) = 1;
    return Divisor(std::move(space), c);
  }

  const Space& space() const { return *space_; }
  const std::shared_ptr<const Space>& space_ref() const { return space_; }
  const Coefficients& coefficients() const { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_.at(i); }

  /// Coefficient of the (pulled-back) section class s.
  const Rational& s() const { return coeffs_[rank - 2]; }
  /// Coefficient of the (pulled-back) fiber class l.
  const Rational& l() const { return coeffs_[rank - 1]; }
  /// Coefficient of the distinguished divisor V (on Y) or E (on X').
  const Rational& top() const requires(rank == 3) { return coeffs_[0]; }

  bool is_integral() const {
    for (const auto& c : coeffs_)
      if (!c.is_integer()) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  Divisor& operator+=(const Divisor& o) {
    require_same_space(*this, o);
    for (std::size_t i = 0; i < rank; ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Divisor& operator-=(const Divisor& o) {
    require_same_space(*this, o);
    for (std::size_t i = 0; i < rank; ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  Divisor& operator*=(const Rational& k) {
    for (auto& c : coeffs_) c *= k;
    return *this;
  }

  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator*(const Rational& k, Divisor d) { return d *= k; }
  friend Divisor operator*(Divisor d, const Rational& k) { return d *= k; }
  friend Divisor operator-(Divisor d) { return d *= Rational(-1); }

  /// Equal as classes: same space and same coefficients.
  friend bool operator==(const Divisor& a, const Divisor& b) {
    return same_space(a, b) && a.coeffs_ == b.coeffs_;
  }

  friend bool same_space(const Divisor& a, const Divisor& b) {
    return a.space_ == b.space_ || *a.space_ == *b.space_;
  }

  friend void require_same_space(const Divisor& a, const Divisor& b) {
    if (!same_space(a, b))
      throw SpaceMismatch("divisor classes live on different spaces: " + a.space_->describe() + " vs " +
                          b.space_->describe());
  }

  /// Human-readable form in the space's basis names, e.g. "2*s + 6*l".
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < rank; ++i) {
      const Rational& c = coeffs_[i];
      if (c.is_zero()) continue;
      bool neg = c.sign() < 0;
      Rational mag = neg ? -c : c;
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      if (mag != Rational(1)) out += mag.str() + "*";
      out += Space::basis_names[i];
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::shared_ptr<const Space> space_;
  Coefficients coeffs_;
};

// ---------------------------------------------------------------------------
// Hirzebruch surface F_e

struct HirzebruchSpace {
  static constexpr std::size_t rank = 2;
  static constexpr std::array<const char*, 2> basis_names{"s", "l"};

  std::int64_t e;

  std::string describe() const { return "F_" + std::to_string(e); }
  friend bool operator==(const HirzebruchSpace&, const HirzebruchSpace&) = default;
};

using SurfaceDivisor = Divisor<HirzebruchSpace>;

/// F_e with basis (s, l), s^2 = -e, s.l = 1, l^2 = 0. Rejects e < 0.
HirzebruchRef make_hirzebruch(std::int64_t e);

SurfaceDivisor surface_divisor(const HirzebruchRef& space, Rational s, Rational l);

Rational surface_intersect(const SurfaceDivisor& a, const SurfaceDivisor& b);

/// K = -2s - (e+2)l.
SurfaceDivisor surface_canonical(const HirzebruchRef& space);

/// h^0(F_e, as + bl) = sum_{i=0..a} max(0, b - ie + 1), and 0 when a < 0.
/// Throws DomainError for non-integral classes.
std::int64_t surface_h0(const SurfaceDivisor& d);

struct Positivity {
  bool nef = false;
  bool ample = false;
  bool base_point_free = false;
};

/// Cone membership for integral classes: nef iff a >= 0 and b >= ae,
/// ample iff a > 0 and b > ae; base point freeness coincides with nefness.
Positivity surface_positivity(const SurfaceDivisor& d);

// ---------------------------------------------------------------------------
// P^1-bundle Y = P(O + O(-D)) over F_e

struct BundleSpace {
  static constexpr std::size_t rank = 3;
  static constexpr std::array<const char*, 3> basis_names{"V", "p*s", "p*l"};

  HirzebruchRef base;
  SurfaceDivisor twist;  // D, integral

  std::string describe() const { return "P(O + O(-(" + twist.str() + "))) over " + base->describe(); }
  friend bool operator==(const BundleSpace& a, const BundleSpace& b) {
    return *a.base == *b.base && a.twist.coefficients() == b.twist.coefficients();
  }
};

using ThreefoldDivisor = Divisor<BundleSpace>;

/// Y with the relation O_V(V) = O_V(-p*D). D must be integral.
BundleRef make_proj_bundle(const HirzebruchRef& base, const SurfaceDivisor& twist);

ThreefoldDivisor threefold_divisor(const BundleRef& space, Rational v, Rational s, Rational l);

/// p*: Pic(F_e) -> Pic(Y).
ThreefoldDivisor bundle_pullback(const BundleRef& space, const SurfaceDivisor& d);

/// Triple intersection on Y.
Rational bundle_intersect3(const ThreefoldDivisor& a, const ThreefoldDivisor& b, const ThreefoldDivisor& c);

/// K_Y = -2V + p*(K_F - D).
ThreefoldDivisor bundle_canonical(const BundleRef& space);

/// Restriction to the section V, identified with F_e: V|_V = -D.
SurfaceDivisor bundle_restrict_to_section(const ThreefoldDivisor& d);

/// h^0(Y, cV + p*M) = sum_{i=0..c} h^0(F_e, M - iD), 0 when c < 0.
std::int64_t bundle_h0(const ThreefoldDivisor& d);

// ---------------------------------------------------------------------------
// Double cover X' -> Y branched along B = V + H, 2L ~ B

struct CoverSpace {
  static constexpr std::size_t rank = 3;
  static constexpr std::array<const char*, 3> basis_names{"E", "rho*p*s", "rho*p*l"};

  BundleRef target;
  ThreefoldDivisor half_branch;  // L, integral

  /// B = 2L.
  ThreefoldDivisor branch_class() const { return Rational(2) * half_branch; }
  /// H = B - V, the residual branch component.
  ThreefoldDivisor residual_branch() const;
  /// X' is smooth when the residual branch component misses V, i.e. H|_V ~ 0.
  bool smooth_total_space() const;

  std::string describe() const { return "double cover of " + target->describe() + " with L = " + half_branch.str(); }
  friend bool operator==(const CoverSpace& a, const CoverSpace& b) {
    return *a.target == *b.target && a.half_branch.coefficients() == b.half_branch.coefficients();
  }
};

using CoverDivisor = Divisor<CoverSpace>;

/// The cover branched along V + H with 2L ~ V + H. L must be integral with an
/// odd positive V-coefficient, so that V is a reduced branch component and
/// rho*V = 2E.
CoverRef make_double_cover(const BundleRef& target, const ThreefoldDivisor& half_branch);

CoverDivisor cover_divisor(const CoverRef& space, Rational e, Rational s, Rational l);

/// rho*: V -> 2E, p*a -> rho*p*a.
CoverDivisor cover_pullback(const CoverRef& space, const ThreefoldDivisor& d);

/// Triple intersection on X'. A monomial with j copies of E and 3 - j
/// pullbacks equals 2^(1-j) times the same monomial on Y with E replaced by V.
Rational cover_intersect3(const CoverDivisor& a, const CoverDivisor& b, const CoverDivisor& c);

/// K_X' = rho*(K_Y + L).
CoverDivisor cover_canonical(const CoverRef& space);

/// Restriction to E, identified with F_e: E|_E = -D/2.
SurfaceDivisor cover_restrict_to_E(const CoverDivisor& d);

/// The pushed-down part N of K_Y + L = cV + p*N.
SurfaceDivisor canonical_base_part(const CoverRef& space);

/// A = K_X' - E, the pullback of K_X under the contraction of the rulings of E.
CoverDivisor contraction_pullback_class(const CoverRef& space);

/// K_X^3 = (K_X' - E)^3.
Rational contracted_canonical_cube(const CoverRef& space);

/// p_g(X') = h^0(Y, K_Y + L) + h^0(Y, K_Y), from rho_* omega_X' = omega_Y(L) + omega_Y.
std::int64_t cover_geometric_genus(const CoverRef& space);

struct NefCertificate {
  bool nef = false;
  bool big = false;
  Rational volume;                 // A^3
  SurfaceDivisor restriction_to_E; // A|_E
  SurfaceDivisor base_part;        // N with A = E + rho*N
  Rational ruling_dot_A;           // (A . Gamma) for a ruling Gamma of E
  Rational ruling_dot_E;           // (E . Gamma)
  Rational ruling_dot_K;           // (K_X' . Gamma)
  std::vector<std::string> failed; // names of the sufficient conditions that failed
};

/// Checks the sufficient conditions for A = K_X' - E to be nef and big:
/// K_Y + L = V + p*N, A|_E a non-negative multiple of the fiber, N ample on
/// F_e, and A^3 > 0. Also reports the intersection numbers with a ruling of E.
NefCertificate nef_certificate_A(const CoverRef& space);

}  // namespace ngeo::chow
