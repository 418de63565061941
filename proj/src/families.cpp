#include "ngeo/families.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace ngeo::families {

using chow::SurfaceDivisor;
using chow::ThreefoldDivisor;

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

chow::CoverRef build_cover(std::int64_t e, const Rational& a, const Rational& b) {
  auto f = chow::make_hirzebruch(e);
  auto y = chow::make_proj_bundle(f, chow::surface_divisor(f, 2, a));
  auto l = chow::threefold_divisor(y, 3, 5, b);
  return chow::make_double_cover(y, l);
}

}  // namespace

std::vector<std::string> FamilyParams::violations() const {
  std::vector<std::string> out;
  if (e < 3) out.push_back("e >= 3 violated");
  if (a < 2 * e) out.push_back("a >= 2e violated");
  if (2 * b < 5 * a) out.push_back("2b >= 5a violated");
  return out;
}

std::string to_string(BasketStatus s) {
  switch (s) {
    case BasketStatus::Forced: return "forced";
    case BasketStatus::Informational: return "informational";
    case BasketStatus::Undetermined: return "undetermined";
  }
  return "?";
}

FamilyRecord build_family(const FamilyParams& params, const std::optional<BasketSearch>& search) {
  if (auto bad = params.violations(); !bad.empty())
    throw DomainError("invalid family (e,a,b) = (" + std::to_string(params.e) + "," + std::to_string(params.a) + "," +
                      std::to_string(params.b) + "): " + join(bad, "; "));

  auto cover = build_cover(params.e, params.a, params.b);
  auto cert = chow::nef_certificate_A(cover);
  if (!cert.big) throw DomainError("nef certificate failed: " + join(cert.failed, "; "));

  const Rational k3 = chow::contracted_canonical_cube(cover);
  const std::int64_t p_g = chow::cover_geometric_genus(cover);

  FamilyRecord rec{
      .params = params,
      .p_g = p_g,
      .k3 = k3,
      .chi_omega = rr::chi_from_pg(p_g),
      .smooth_total_space = cover->smooth_total_space(),
      .classification = noether::classify(p_g, k3),
      .basket_status = BasketStatus::Undetermined,
      .basket = std::nullopt,
      .p2 = std::nullopt,
      .basket_candidates = {},
      .nef_certificate = std::move(cert),
      .example = std::nullopt,
  };

  const auto& cls = rec.classification;
  if (cls.forced_baskets.size() == 1 && cls.line()) {
    rec.basket_status = BasketStatus::Forced;
    rec.basket = cls.forced_baskets.front();
  } else if (cls.region == noether::Region::OutOfTheoremScope && cls.line()) {
    rec.basket_status = BasketStatus::Informational;
    rec.basket = noether::line_basket(*cls.line());
  } else if (search) {
    // Every point contributes at most r/8 to l_2, so this budget admits every basket in range.
    const Rational cap = Rational(search->max_points) * Rational(search->r_max, 8);
    const Rational base = k3 / Rational(2) + Rational(3 * rec.chi_omega);
    for (auto& bk : rr::enumerate_baskets_up_to(cap, search->r_max, search->max_points))
      if ((base + rr::l2_of(bk)).is_integer()) rec.basket_candidates.push_back(std::move(bk));
  }

  if (rec.basket) {
    auto p2 = rr::plurigenus2(k3, rec.chi_omega, *rec.basket);
    if (!p2.integral)
      throw std::logic_error("non-integral P_2 = " + p2.value.str() + " for basket " + rec.basket->str());
    rec.p2 = p2.value.to_int64();
  }
  return rec;
}

FamilyParams example_params(int line, std::int64_t e, std::int64_t k) {
  const std::int64_t t = e + k;
  switch (line) {
    case 1: return {e, 2 * t, 5 * t};
    case 2: return {e, 2 * t + 1, 5 * t + 3};
    case 3: return {e, 2 * t, 5 * t + 1};
    default: throw DomainError("Noether line index must be 1, 2 or 3, got " + std::to_string(line));
  }
}

FamilyRecord noether_example(int line, std::int64_t e, std::int64_t k) {
  if (e < 3) throw DomainError("example needs e >= 3, got " + std::to_string(e));
  if (k < 0) throw DomainError("example needs k >= 0, got " + std::to_string(k));
  FamilyRecord rec = build_family(example_params(line, e, k));
  if (rec.k3 != noether::line_value(rec.p_g, line) || noether::residue_line(rec.p_g) != line)
    throw std::logic_error("example (line " + std::to_string(line) + ", e=" + std::to_string(e) + ", k=" +
                           std::to_string(k) + ") missed its line: p_g=" + std::to_string(rec.p_g) +
                           " K3=" + rec.k3.str());
  rec.example = ExampleTag{line, e, k};
  return rec;
}

StructureModel structure_model(std::int64_t m, std::int64_t e) {
  std::vector<std::string> bad;
  if (m < 5) bad.push_back("m >= 5 violated");
  if (e < 0) bad.push_back("e >= 0 violated");
  if (e > 3 * m - 4) bad.push_back("e <= 3m - 4 violated");
  if (((3 * m - 4 - e) % 2 + 2) % 2 != 0) bad.push_back("e = 3m - 4 (mod 2) violated");
  if (!bad.empty())
    throw DomainError("invalid structure model (m,e) = (" + std::to_string(m) + "," + std::to_string(e) +
                      "): " + join(bad, "; "));

  const std::int64_t k = (3 * m - 4 - e) / 2;
  // a = m + e and 2b = 5a; the parity constraint makes m + e even, so L is integral.
  auto cover = build_cover(e, Rational(m + e), Rational(5 * (m + e), 2));
  const auto& y = cover->target;
  const auto& f = y->base;

  const ThreefoldDivisor b1 = ThreefoldDivisor::basis(y, 0);
  const ThreefoldDivisor b2 = Rational(5) * b1 + chow::bundle_pullback(y, chow::surface_divisor(f, 10, 5 * (m + e)));

  // f_* omega = p_*O(N) = O(c) + O(c - e) for N = s + cl.
  const SurfaceDivisor n = chow::canonical_base_part(cover);
  const std::int64_t c = n.l().to_int64();

  const Rational k3 = chow::contracted_canonical_cube(cover);
  const std::int64_t p_g = chow::cover_geometric_genus(cover);
  const SurfaceDivisor a_on_e = chow::cover_restrict_to_E(chow::contraction_pullback_class(cover));

  return StructureModel{
      .m = m,
      .e = e,
      .k = k,
      .p_g = p_g,
      .k3 = k3,
      .twist = y->twist,
      .b1 = b1,
      .b2 = b2,
      .b2_on_b1 = chow::bundle_restrict_to_section(b2),
      .hodge_degrees = {c - e, c},
      .gamma_degree = chow::surface_intersect(a_on_e, SurfaceDivisor::basis(f, 0)),
      .canonical_model = p_g >= 23,
      .cone_canonical_image = k == 0,
      .classification = noether::classify(p_g, k3),
      .cover = cover,
  };
}

std::vector<FamilyRecord> scan(IntRange e_range, IntRange k_range, const std::set<int>& lines, unsigned threads) {
  for (int line : lines)
    if (line < 1 || line > 3) throw DomainError("Noether line index must be 1, 2 or 3, got " + std::to_string(line));

  struct Task {
    int line;
    std::int64_t e, k;
  };
  std::vector<Task> tasks;
  for (int line : lines)
    for (std::int64_t e = e_range.lo; e <= e_range.hi; ++e)
      for (std::int64_t k = k_range.lo; k <= k_range.hi; ++k) tasks.push_back({line, e, k});

  std::vector<std::optional<FamilyRecord>> slots(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        slots[i] = noether_example(tasks[i].line, tasks[i].e, tasks[i].k);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const unsigned n_workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < n_workers; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::vector<FamilyRecord> out;
  out.reserve(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace ngeo::families
