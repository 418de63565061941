#include "ngeo/cli.hpp"

#include "ngeo/dsl.hpp"
#include "ngeo/families.hpp"
#include "ngeo/noether.hpp"
#include "ngeo/output.hpp"
#include "ngeo/reid_rr.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace ngeo::cli {

namespace {

using output::OutputRow;

struct Options {
  std::string format = "tsv";
  std::string out_path;
  int line = 0;
  std::int64_t e = 0, k = 0, a = 0, b = 0, m = 0;
  std::int64_t pg = 0;
  std::string k3, l2;
  std::int64_t rmax = 0, max_points = 0;
  std::string e_range, k_range;
  std::vector<int> lines{1, 2, 3};
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string script;
};

const CLI::Validator kRational(
    [](std::string& text) -> std::string {
      try {
        Rational::parse(text);
        return {};
      } catch (const DomainError& err) {
        return err.what();
      }
    },
    "RAT", "exact rational p/q");

const CLI::Validator kRange(
    [](std::string& text) -> std::string {
      auto colon = text.find(':');
      if (colon == std::string::npos) return "range must look like lo:hi";
      try {
        std::size_t used = 0;
        std::stoll(text.substr(0, colon), &used);
        if (used != colon) return "bad lower bound in '" + text + "'";
        std::stoll(text.substr(colon + 1), &used);
        if (used != text.size() - colon - 1) return "bad upper bound in '" + text + "'";
      } catch (const std::exception&) {
        return "range must look like lo:hi";
      }
      return {};
    },
    "LO:HI", "inclusive integer range");

families::IntRange to_range(const std::string& text) {
  auto colon = text.find(':');
  return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
}

OutputRow record_row(const families::FamilyRecord& r) {
  OutputRow row;
  row.line = r.classification.line();
  if (r.example) row.k = r.example->k;
  row.e = r.params.e;
  row.a = r.params.a;
  row.b = r.params.b;
  row.p_g = r.p_g;
  row.k3 = r.k3.str();
  row.p2 = r.p2;
  if (r.basket) row.basket = r.basket->str();
  row.region = noether::to_string(r.classification.region);
  return row;
}

std::optional<std::int64_t> integral_p2(const Rational& k3, std::int64_t p_g, const rr::Basket& basket) {
  if (p_g < 3) return std::nullopt;
  auto p2 = rr::plurigenus2(k3, rr::chi_from_pg(p_g), basket);
  if (!p2.integral) return std::nullopt;
  return p2.value.to_int64();
}

std::vector<OutputRow> cmd_family(const Options& o, bool searched) {
  std::optional<families::BasketSearch> search;
  if (searched) search = families::BasketSearch{o.rmax, o.max_points};
  auto rec = families::build_family({o.e, o.a, o.b}, search);
  OutputRow row = record_row(rec);
  if (rec.basket || rec.basket_candidates.empty()) return {row};
  std::vector<OutputRow> rows;
  for (const auto& bk : rec.basket_candidates) {
    OutputRow cand = row;
    cand.basket = bk.str();
    cand.p2 = integral_p2(rec.k3, rec.p_g, bk);
    rows.push_back(std::move(cand));
  }
  return rows;
}

std::vector<OutputRow> cmd_model(const Options& o) {
  auto model = families::structure_model(o.m, o.e);
  OutputRow row;
  row.line = model.classification.line();
  row.e = model.e;
  row.k = model.k;
  row.a = model.m + model.e;
  row.b = 5 * (model.m + model.e) / 2;
  row.m = model.m;
  row.p_g = model.p_g;
  row.k3 = model.k3.str();
  if (model.classification.forced_baskets.size() == 1) {
    const auto& bk = model.classification.forced_baskets.front();
    row.basket = bk.str();
    row.p2 = integral_p2(model.k3, model.p_g, bk);
  }
  row.region = noether::to_string(model.classification.region);
  return {row};
}

std::vector<OutputRow> cmd_classify(const Options& o) {
  const Rational k3 = Rational::parse(o.k3);
  auto cls = noether::classify(o.pg, k3);
  OutputRow row;
  row.line = cls.line();
  row.p_g = o.pg;
  row.k3 = k3.str();
  if (cls.forced_baskets.size() == 1) {
    row.basket = cls.forced_baskets.front().str();
    row.p2 = integral_p2(k3, o.pg, cls.forced_baskets.front());
  }
  row.region = noether::to_string(cls.region);
  return {row};
}

std::vector<OutputRow> cmd_baskets(const Options& o, bool by_l2) {
  std::vector<OutputRow> rows;
  if (by_l2) {
    for (const auto& bk : rr::enumerate_baskets(Rational::parse(o.l2), o.rmax, o.max_points)) {
      OutputRow row;
      row.basket = bk.str();
      rows.push_back(std::move(row));
    }
    return rows;
  }
  const Rational k3 = Rational::parse(o.k3);
  auto cls = noether::classify(o.pg, k3);
  for (const auto& bk : noether::admissible_baskets(o.pg, k3, o.rmax, o.max_points)) {
    OutputRow row;
    row.line = cls.line();
    row.p_g = o.pg;
    row.k3 = k3.str();
    row.p2 = integral_p2(k3, o.pg, bk);
    row.basket = bk.str();
    row.region = noether::to_string(cls.region);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string emit(const Options& o, const std::string& command, const std::vector<OutputRow>& rows) {
  return o.format == "json" ? output::to_json(command, rows) : output::to_tsv(rows);
}

std::string emit_lines(const Options& o, const std::vector<std::string>& lines) {
  if (o.format == "json") {
    nlohmann::ordered_json doc;
    doc["command"] = "eval";
    doc["output"] = lines;
    return doc.dump() + "\n";
  }
  std::string text;
  for (const auto& l : lines) text += l + "\n";
  return text;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"tsv", "json"}));
  sub->add_option("--out", o.out_path, "write data to PATH instead of standard output");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact invariants of threefolds near the Noether lines", "ngeo"};
  app.require_subcommand(1);

  auto* family = app.add_subcommand("family", "double-cover family over F_e with parameters (e, a, b)");
  family->add_option("-e", o.e)->required();
  family->add_option("-a", o.a)->required();
  family->add_option("-b", o.b)->required();
  auto* fam_rmax = family->add_option("--rmax", o.rmax, "basket search: largest index");
  auto* fam_pts = family->add_option("--max-points", o.max_points, "basket search: most points");
  fam_rmax->needs(fam_pts);
  fam_pts->needs(fam_rmax);
  add_common(family, o);

  auto* example = app.add_subcommand("example", "the example X_{e,k} on a Noether line");
  example->add_option("--line", o.line)->required()->check(CLI::Range(1, 3));
  example->add_option("-e", o.e)->required();
  example->add_option("-k", o.k)->required();
  add_common(example, o);

  auto* model = app.add_subcommand("model", "relative canonical model with p_g = 3m - 2 over F_e");
  model->add_option("-m", o.m)->required();
  model->add_option("-e", o.e)->required();
  add_common(model, o);

  auto* scan = app.add_subcommand("scan", "Noether-line examples over an (e, k) grid");
  scan->add_option("--e-range", o.e_range)->required()->check(kRange);
  scan->add_option("--k-range", o.k_range)->required()->check(kRange);
  scan->add_option("--lines", o.lines, "subset of 1,2,3")->delimiter(',')->check(CLI::Range(1, 3));
  scan->add_option("--threads", o.threads)->check(CLI::PositiveNumber);
  add_common(scan, o);

  auto* classify = app.add_subcommand("classify", "place (p_g, K^3) against the Noether lines");
  classify->add_option("--pg", o.pg)->required();
  classify->add_option("--k3", o.k3)->required()->check(kRational);
  add_common(classify, o);

  auto* baskets = app.add_subcommand("baskets", "enumerate baskets by l_2, or solve them for (p_g, K^3)");
  auto* opt_l2 = baskets->add_option("--l2", o.l2)->check(kRational);
  auto* opt_pg = baskets->add_option("--pg", o.pg);
  auto* opt_k3 = baskets->add_option("--k3", o.k3)->check(kRational);
  baskets->add_option("--rmax", o.rmax)->required();
  baskets->add_option("--max-points", o.max_points)->required();
  opt_l2->excludes(opt_pg)->excludes(opt_k3);
  opt_pg->needs(opt_k3);
  opt_k3->needs(opt_pg);
  add_common(baskets, o);

  auto* eval = app.add_subcommand("eval", "run a script");
  eval->add_option("script", o.script, "script file")->required()->check(CLI::ExistingFile);
  add_common(eval, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (baskets->parsed() && !opt_l2->count() && !opt_pg->count())
      throw CLI::RequiredError("baskets needs --l2, or --pg with --k3");
  } catch (const CLI::CallForHelp&) {
    auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    auto subs = app.get_subcommands();
    err << "error: " << e.what() << "\n" << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  std::string data;
  int code = kExitOk;
  try {
    if (family->parsed()) {
      data = emit(o, "family", cmd_family(o, fam_rmax->count() > 0));
    } else if (example->parsed()) {
      data = emit(o, "example", {record_row(families::noether_example(o.line, o.e, o.k))});
    } else if (model->parsed()) {
      data = emit(o, "model", cmd_model(o));
    } else if (scan->parsed()) {
      std::set<int> lines(o.lines.begin(), o.lines.end());
      std::vector<OutputRow> rows;
      for (const auto& rec : families::scan(to_range(o.e_range), to_range(o.k_range), lines, o.threads))
        rows.push_back(record_row(rec));
      data = emit(o, "scan", rows);
    } else if (classify->parsed()) {
      data = emit(o, "classify", cmd_classify(o));
    } else if (baskets->parsed()) {
      data = emit(o, "baskets", cmd_baskets(o, opt_l2->count() > 0));
    } else if (eval->parsed()) {
      std::ifstream in(o.script, std::ios::binary);
      std::stringstream buf;
      buf << in.rdbuf();
      auto result = dsl::run_script(buf.str());
      for (const auto& d : result.diagnostics) err << o.script << ":" << d.str() << "\n";
      data = emit_lines(o, result.output);
      if (!result.ok()) code = kExitDomain;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }

  if (o.out_path.empty()) {
    out << data;
  } else {
    std::ofstream file(o.out_path, std::ios::binary);
    if (!(file << data)) {
      err << "error: cannot write " << o.out_path << "\n";
      return kExitDomain;
    }
  }
  return code;
}

}  // namespace ngeo::cli
