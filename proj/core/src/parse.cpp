#include "qcdense/parse.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>

namespace qcdense {

namespace {

std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::int64_t parse_int64(const std::string& s) {
  std::size_t pos = 0;
  std::int64_t v = std::stoll(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

}  // namespace

std::vector<std::string> split_top_level(const std::string& text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  std::string last = strip(cur);
  if (!last.empty() || !out.empty()) out.push_back(last);
  return out;
}

FiniteAbelianGroup parse_group(const std::string& text) {
  std::string s = strip(text);
  std::vector<std::int64_t> orders;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] != 'Z') {
      throw std::invalid_argument("bad group '" + text + "': expected Z<n>");
    }
    ++pos;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) {
      throw std::invalid_argument("bad group '" + text + "': missing order");
    }
    orders.push_back(parse_int64(s.substr(start, pos - start)));
    if (pos < s.size()) {
      if (s[pos] != 'x') {
        throw std::invalid_argument("bad group '" + text + "': expected 'x'");
      }
      ++pos;
    }
  }
  if (orders.empty()) throw std::invalid_argument("empty group spec");
  return FiniteAbelianGroup(orders);
}

GroupElement parse_element(const FiniteAbelianGroup& g, const std::string& text) {
  std::string s = strip(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    throw std::invalid_argument("bad element '" + text + "': expected (a,b,...)");
  }
  std::vector<std::string> parts = split_top_level(s.substr(1, s.size() - 2), ',');
  if (parts.size() != g.num_factors()) {
    throw std::invalid_argument("element '" + text + "' has " +
                                std::to_string(parts.size()) +
                                " coordinates, group " + g.to_string() +
                                " needs " + std::to_string(g.num_factors()));
  }
  std::vector<std::int64_t> coords;
  coords.reserve(parts.size());
  for (const std::string& p : parts) coords.push_back(parse_int64(p));
  return g.reduce(coords);
}

std::vector<GroupElement> parse_element_set(const FiniteAbelianGroup& g,
                                            const std::string& text) {
  std::string s = strip(text);
  std::vector<GroupElement> out;
  if (s.empty()) return out;
  for (const std::string& part : split_top_level(s, ',')) {
    out.push_back(parse_element(g, part));
  }
  return out;
}

CompactModel parse_model(const std::string& text) {
  std::string s = strip(text);
  if (s == "T") return CompactModel::torus();
  if (s.rfind("Zp(", 0) == 0 && s.back() == ')') {
    return CompactModel::p_adic(parse_int64(s.substr(3, s.size() - 4)));
  }
  if (s.rfind("prod(", 0) == 0 && s.back() == ')') {
    std::vector<CompactModel> factors;
    for (const std::string& part :
         split_top_level(s.substr(5, s.size() - 6), ',')) {
      factors.push_back(parse_model(part));
    }
    return CompactModel::product(std::move(factors));
  }
  throw std::invalid_argument("bad model '" + text +
                              "': expected T, Zp(p) or prod(...)");
}

ModelPoint parse_point(const CompactModel& m, const std::string& text) {
  std::string s = strip(text);
  switch (m.kind()) {
    case CompactModel::Kind::Torus:
      return ModelPoint{TorusValue::canonicalize(parse_rational(s))};
    case CompactModel::Kind::PAdic: {
      Int v(s);
      if (v < 0) {
        throw std::invalid_argument("p-adic points are nonnegative integers");
      }
      return ModelPoint{std::move(v)};
    }
    case CompactModel::Kind::Product: {
      if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
        throw std::invalid_argument("bad product point '" + text + "'");
      }
      std::vector<std::string> parts =
          split_top_level(s.substr(1, s.size() - 2), ',');
      if (parts.size() != m.factors().size()) {
        throw std::invalid_argument("product point arity mismatch in '" + text +
                                    "'");
      }
      std::vector<ModelPoint> coords;
      coords.reserve(parts.size());
      for (std::size_t i = 0; i < parts.size(); ++i) {
        coords.push_back(parse_point(m.factors()[i], parts[i]));
      }
      return ModelPoint{std::move(coords)};
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<ModelPoint> parse_point_set(const CompactModel& m,
                                        const std::string& text) {
  std::string s = strip(text);
  std::vector<ModelPoint> out;
  if (s.empty()) return out;
  for (const std::string& part : split_top_level(s, ',')) {
    out.push_back(parse_point(m, part));
  }
  return out;
}

Homomorphism parse_homomorphism_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("bad homomorphism JSON: ") + e.what());
  }
  if (!j.contains("source") || !j.contains("target") || !j.contains("matrix")) {
    throw std::invalid_argument(
        "homomorphism JSON needs source, target and matrix");
  }
  FiniteAbelianGroup source = parse_group(j["source"].get<std::string>());
  FiniteAbelianGroup target = parse_group(j["target"].get<std::string>());
  std::vector<std::vector<std::int64_t>> matrix;
  for (const auto& row : j["matrix"]) {
    matrix.push_back(row.get<std::vector<std::int64_t>>());
  }
  return Homomorphism(std::move(source), std::move(target), std::move(matrix));
}

std::string homomorphism_to_json(const Homomorphism& f) {
  nlohmann::ordered_json j;
  j["source"] = f.source().to_string();
  j["target"] = f.target().to_string();
  j["matrix"] = f.matrix();
  return j.dump();
}

}  // namespace qcdense
