#include "ngeo/chow.hpp"

#include <algorithm>

namespace ngeo::chow {

namespace {

constexpr std::size_t kTop = 0;
constexpr std::size_t kS = 1;
constexpr std::size_t kL = 2;

SurfaceDivisor base_class(const HirzebruchRef& base, std::size_t pulled_index) {
  return SurfaceDivisor::basis(base, pulled_index - 1);
}

// Monomial V^j . p*x . p*y ... on Y; indices are bundle basis indices.
Rational bundle_monomial(const BundleSpace& y, std::size_t i, std::size_t j, std::size_t k) {
  std::array<std::size_t, 3> idx{i, j, k};
  int tops = static_cast<int>(std::count(idx.begin(), idx.end(), kTop));
  std::vector<SurfaceDivisor> pulled;
  for (auto n : idx)
    if (n != kTop) pulled.push_back(base_class(y.base, n));
  switch (tops) {
    case 0:
      return 0;
    case 1:
      return surface_intersect(pulled[0], pulled[1]);
    case 2:
      return -surface_intersect(y.twist, pulled[0]);
    default:
      return surface_intersect(y.twist, y.twist);
  }
}

template <class Space, class Monomial>
Rational trilinear(const Divisor<Space>& a, const Divisor<Space>& b, const Divisor<Space>& c, Monomial&& mono) {
  require_same_space(a, b);
  require_same_space(a, c);
  Rational total;
  for (std::size_t i = 0; i < 3; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < 3; ++j) {
      if (b[j].is_zero()) continue;
      for (std::size_t k = 0; k < 3; ++k) {
        if (c[k].is_zero()) continue;
        total += a[i] * b[j] * c[k] * mono(i, j, k);
      }
    }
  }
  return total;
}

void require_integral(const SurfaceDivisor& d, const char* what) {
  if (!d.is_integral()) throw DomainError(std::string(what) + " requires an integral class, got " + d.str());
}

}  // namespace

// ---------------------------------------------------------------------------

HirzebruchRef make_hirzebruch(std::int64_t e) {
  if (e < 0) throw DomainError("Hirzebruch index must be >= 0, got " + std::to_string(e));
  return std::make_shared<const HirzebruchSpace>(HirzebruchSpace{e});
}

SurfaceDivisor surface_divisor(const HirzebruchRef& space, Rational s, Rational l) {
  return SurfaceDivisor(space, {std::move(s), std::move(l)});
}

Rational surface_intersect(const SurfaceDivisor& a, const SurfaceDivisor& b) {
  require_same_space(a, b);
  const Rational e(a.space().e);
  return -e * a.s() * b.s() + a.s() * b.l() + a.l() * b.s();
}

SurfaceDivisor surface_canonical(const HirzebruchRef& space) {
  return surface_divisor(space, -2, -(space->e + 2));
}

std::int64_t surface_h0(const SurfaceDivisor& d) {
  require_integral(d, "h^0");
  const std::int64_t alpha = d.s().to_int64();
  const std::int64_t beta = d.l().to_int64();
  const std::int64_t e = d.space().e;
  std::int64_t total = 0;
  for (std::int64_t i = 0; i <= alpha; ++i) total += std::max<std::int64_t>(0, beta - i * e + 1);
  return total;
}

Positivity surface_positivity(const SurfaceDivisor& d) {
  require_integral(d, "positivity test");
  const Rational& alpha = d.s();
  const Rational& beta = d.l();
  const Rational ae = alpha * Rational(d.space().e);
  Positivity p;
  p.nef = alpha.sign() >= 0 && beta >= ae;
  p.ample = alpha.sign() > 0 && beta > ae;
  p.base_point_free = p.nef;
  return p;
}

// ---------------------------------------------------------------------------

BundleRef make_proj_bundle(const HirzebruchRef& base, const SurfaceDivisor& twist) {
  if (!(*twist.space_ref() == *base)) throw SpaceMismatch("bundle twist must live on " + base->describe());
  if (!twist.is_integral()) throw DomainError("bundle twist D must be integral, got " + twist.str());
  return std::make_shared<const BundleSpace>(BundleSpace{base, SurfaceDivisor(base, twist.coefficients())});
}

ThreefoldDivisor threefold_divisor(const BundleRef& space, Rational v, Rational s, Rational l) {
  return ThreefoldDivisor(space, {std::move(v), std::move(s), std::move(l)});
}

ThreefoldDivisor bundle_pullback(const BundleRef& space, const SurfaceDivisor& d) {
  if (!(d.space() == *space->base)) throw SpaceMismatch("cannot pull back a class from " + d.space().describe() +
                                                       " to a bundle over " + space->base->describe());
  return threefold_divisor(space, 0, d.s(), d.l());
}

Rational bundle_intersect3(const ThreefoldDivisor& a, const ThreefoldDivisor& b, const ThreefoldDivisor& c) {
  const BundleSpace& y = a.space();
  return trilinear(a, b, c, [&](std::size_t i, std::size_t j, std::size_t k) { return bundle_monomial(y, i, j, k); });
}

ThreefoldDivisor bundle_canonical(const BundleRef& space) {
  SurfaceDivisor down = surface_canonical(space->base) - space->twist;
  return threefold_divisor(space, -2, down.s(), down.l());
}

SurfaceDivisor bundle_restrict_to_section(const ThreefoldDivisor& d) {
  const BundleSpace& y = d.space();
  return surface_divisor(y.base, d.s(), d.l()) - d.top() * y.twist;
}

std::int64_t bundle_h0(const ThreefoldDivisor& d) {
  if (!d.is_integral()) throw DomainError("h^0 requires an integral class, got " + d.str());
  const std::int64_t c = d.top().to_int64();
  const BundleSpace& y = d.space();
  SurfaceDivisor m = surface_divisor(y.base, d.s(), d.l());
  std::int64_t total = 0;
  for (std::int64_t i = 0; i <= c; ++i) total += surface_h0(m - Rational(i) * y.twist);
  return total;
}

// ---------------------------------------------------------------------------

ThreefoldDivisor CoverSpace::residual_branch() const {
  return branch_class() - ThreefoldDivisor::basis(target, kTop);
}

bool CoverSpace::smooth_total_space() const { return bundle_restrict_to_section(residual_branch()).is_zero(); }

CoverRef make_double_cover(const BundleRef& target, const ThreefoldDivisor& half_branch) {
  if (!(half_branch.space() == *target)) throw SpaceMismatch("half-branch class must live on " + target->describe());
  if (!half_branch.is_integral())
    throw DomainError("half-branch class L must be integral, got " + half_branch.str());
  const Rational& v = half_branch.top();
  if (v.sign() <= 0 || v.numerator() % 2 == 0)
    throw DomainError("V must be a reduced component of the branch locus: the V-coefficient of L must be an "
                      "odd positive integer, got " + v.str());
  return std::make_shared<const CoverSpace>(
      CoverSpace{target, ThreefoldDivisor(target, half_branch.coefficients())});
}

CoverDivisor cover_divisor(const CoverRef& space, Rational e, Rational s, Rational l) {
  return CoverDivisor(space, {std::move(e), std::move(s), std::move(l)});
}

CoverDivisor cover_pullback(const CoverRef& space, const ThreefoldDivisor& d) {
  if (!(d.space() == *space->target))
    throw SpaceMismatch("cannot pull back a class from " + d.space().describe() + " to " + space->describe());
  return cover_divisor(space, Rational(2) * d.top(), d.s(), d.l());
}

Rational cover_intersect3(const CoverDivisor& a, const CoverDivisor& b, const CoverDivisor& c) {
  const BundleSpace& y = *a.space().target;
  return trilinear(a, b, c, [&](std::size_t i, std::size_t j, std::size_t k) {
    int tops = (i == kTop) + (j == kTop) + (k == kTop);
    // 2^(1 - tops): 2, 1, 1/2, 1/4
    static const std::array<Rational, 4> factor{Rational(2), Rational(1), Rational(1, 2), Rational(1, 4)};
    return factor[tops] * bundle_monomial(y, i, j, k);
  });
}

CoverDivisor cover_canonical(const CoverRef& space) {
  return cover_pullback(space, bundle_canonical(space->target) + space->half_branch);
}

SurfaceDivisor cover_restrict_to_E(const CoverDivisor& d) {
  const BundleSpace& y = *d.space().target;
  return surface_divisor(y.base, d.s(), d.l()) - (d.top() / Rational(2)) * y.twist;
}

SurfaceDivisor canonical_base_part(const CoverRef& space) {
  ThreefoldDivisor k = bundle_canonical(space->target) + space->half_branch;
  return surface_divisor(space->target->base, k.s(), k.l());
}

CoverDivisor contraction_pullback_class(const CoverRef& space) {
  return cover_canonical(space) - CoverDivisor::basis(space, kTop);
}

Rational contracted_canonical_cube(const CoverRef& space) {
  CoverDivisor a = contraction_pullback_class(space);
  return cover_intersect3(a, a, a);
}

std::int64_t cover_geometric_genus(const CoverRef& space) {
  const ThreefoldDivisor k = bundle_canonical(space->target);
  return bundle_h0(k + space->half_branch) + bundle_h0(k);
}

NefCertificate nef_certificate_A(const CoverRef& space) {
  const HirzebruchRef& base = space->target->base;
  const CoverDivisor a = contraction_pullback_class(space);
  const CoverDivisor e = CoverDivisor::basis(space, kTop);
  const SurfaceDivisor fiber = SurfaceDivisor::basis(base, 1);
  const SurfaceDivisor a_on_e = cover_restrict_to_E(a);
  const SurfaceDivisor e_on_e = cover_restrict_to_E(e);

  NefCertificate cert{
      .nef = false,
      .big = false,
      .volume = cover_intersect3(a, a, a),
      .restriction_to_E = a_on_e,
      .base_part = canonical_base_part(space),
      .ruling_dot_A = surface_intersect(a_on_e, fiber),
      .ruling_dot_E = surface_intersect(e_on_e, fiber),
      .ruling_dot_K = surface_intersect(cover_restrict_to_E(cover_canonical(space)), fiber),
      .failed = {},
  };

  const ThreefoldDivisor ky_plus_l = bundle_canonical(space->target) + space->half_branch;
  if (ky_plus_l.top() != Rational(1)) cert.failed.push_back("K_Y + L = V + p*N");
  if (!a_on_e.s().is_zero() || a_on_e.l().sign() < 0) cert.failed.push_back("A|_E is a non-negative multiple of l");
  if (!cert.base_part.is_integral() || !surface_positivity(cert.base_part).ample) cert.failed.push_back("N ample");
  cert.nef = cert.failed.empty();
  if (cert.volume.sign() <= 0) cert.failed.push_back("A^3 > 0");
  cert.big = cert.nef && cert.volume.sign() > 0;
  return cert;
}

}  // namespace ngeo::chow
