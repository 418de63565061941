#include "ngeo/output.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>

namespace ngeo::output {

namespace {

using json = nlohmann::ordered_json;

template <class T>
std::string cell(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, std::string>) return *v;
  else return std::to_string(*v);
}

template <class T>
json node(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

template <class T>
std::optional<T> read_cell(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if constexpr (std::is_same_v<T, std::string>) {
    return text;
  } else {
    std::size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument("bad integer cell '" + text + "'");
    return static_cast<T>(v);
  }
}

template <class T>
std::optional<T> read_node(const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

}  // namespace

const std::vector<std::string>& columns() {
  static const std::vector<std::string> cols{"line", "e", "k", "a", "b", "m", "p_g", "K3", "P2", "basket", "region"};
  return cols;
}

std::string to_tsv(const std::vector<OutputRow>& rows) {
  std::ostringstream os;
  const auto& cols = columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "\t" : "") << cols[i];
  os << '\n';
  for (const auto& r : rows) {
    os << cell(r.line) << '\t' << cell(r.e) << '\t' << cell(r.k) << '\t' << cell(r.a) << '\t' << cell(r.b) << '\t'
       << cell(r.m) << '\t' << cell(r.p_g) << '\t' << cell(r.k3) << '\t' << cell(r.p2) << '\t' << cell(r.basket)
       << '\t' << cell(r.region) << '\n';
  }
  return os.str();
}

std::string to_json(const std::string& command, const std::vector<OutputRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json o = json::object();
    o["line"] = node(r.line);
    o["e"] = node(r.e);
    o["k"] = node(r.k);
    o["a"] = node(r.a);
    o["b"] = node(r.b);
    o["m"] = node(r.m);
    o["p_g"] = node(r.p_g);
    o["K3"] = node(r.k3);
    o["P2"] = node(r.p2);
    o["basket"] = node(r.basket);
    o["region"] = node(r.region);
    arr.push_back(std::move(o));
  }
  json doc = json::object();
  doc["command"] = command;
  doc["rows"] = std::move(arr);
  return doc.dump() + "\n";
}

std::vector<OutputRow> from_tsv(const std::string& text) {
  auto lines = split(text, '\n');
  if (lines.empty() || split(lines[0], '\t') != columns()) throw std::invalid_argument("missing or wrong TSV header");
  std::vector<OutputRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty() && i + 1 == lines.size()) break;
    auto c = split(lines[i], '\t');
    if (c.size() != columns().size()) throw std::invalid_argument("TSV row " + std::to_string(i) + " has wrong width");
    rows.push_back({read_cell<int>(c[0]), read_cell<std::int64_t>(c[1]), read_cell<std::int64_t>(c[2]),
                    read_cell<std::int64_t>(c[3]), read_cell<std::int64_t>(c[4]), read_cell<std::int64_t>(c[5]),
                    read_cell<std::int64_t>(c[6]), read_cell<std::string>(c[7]), read_cell<std::int64_t>(c[8]),
                    read_cell<std::string>(c[9]), read_cell<std::string>(c[10])});
  }
  return rows;
}

std::vector<OutputRow> from_json(const std::string& text) {
  try {
    json doc = json::parse(text);
    std::vector<OutputRow> rows;
    for (const auto& o : doc.at("rows")) {
      rows.push_back({read_node<int>(o, "line"), read_node<std::int64_t>(o, "e"), read_node<std::int64_t>(o, "k"),
                      read_node<std::int64_t>(o, "a"), read_node<std::int64_t>(o, "b"),
                      read_node<std::int64_t>(o, "m"), read_node<std::int64_t>(o, "p_g"),
                      read_node<std::string>(o, "K3"), read_node<std::int64_t>(o, "P2"),
                      read_node<std::string>(o, "basket"), read_node<std::string>(o, "region")});
    }
    return rows;
  } catch (const nlohmann::json::exception& err) {
    throw std::invalid_argument(err.what());
  }
}

}  // namespace ngeo::output
