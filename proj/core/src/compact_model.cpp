#include "qcdense/compact_model.hpp"

#include <algorithm>
#include <sstream>

namespace qcdense {

CompactModel CompactModel::torus() {
  CompactModel m;
  m.kind_ = Kind::Torus;
  return m;
}

CompactModel CompactModel::p_adic(std::int64_t p) {
  if (!is_prime(p)) {
    throw std::invalid_argument("Zp(" + std::to_string(p) + "): not a prime");
  }
  CompactModel m;
  m.kind_ = Kind::PAdic;
  m.prime_ = p;
  return m;
}

CompactModel CompactModel::product(std::vector<CompactModel> factors) {
  if (factors.empty()) {
    throw std::invalid_argument("product model needs at least one factor");
  }
  CompactModel m;
  m.kind_ = Kind::Product;
  m.factors_ = std::move(factors);
  return m;
}

std::int64_t CompactModel::prime() const {
  if (kind_ != Kind::PAdic) throw std::logic_error("prime(): not a Zp model");
  return prime_;
}

const std::vector<CompactModel>& CompactModel::factors() const {
  if (kind_ != Kind::Product) throw std::logic_error("factors(): not a product");
  return factors_;
}

std::string CompactModel::to_string() const {
  switch (kind_) {
    case Kind::Torus:
      return "T";
    case Kind::PAdic:
      return "Zp(" + std::to_string(prime_) + ")";
    case Kind::Product: {
      std::ostringstream out;
      out << "prod(";
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out << ',';
        out << factors_[i].to_string();
      }
      out << ')';
      return out.str();
    }
  }
  return {};
}

bool operator==(const CompactModel& a, const CompactModel& b) {
  return a.kind_ == b.kind_ && a.prime_ == b.prime_ && a.factors_ == b.factors_;
}

bool ModelPoint::is_zero() const {
  if (const auto* t = std::get_if<TorusValue>(&value)) return t->is_zero();
  if (const auto* z = std::get_if<Int>(&value)) return *z == 0;
  const auto& parts = std::get<std::vector<ModelPoint>>(value);
  return std::all_of(parts.begin(), parts.end(),
                     [](const ModelPoint& p) { return p.is_zero(); });
}

bool model_point_less(const ModelPoint& a, const ModelPoint& b) {
  if (a.value.index() != b.value.index()) return a.value.index() < b.value.index();
  if (const auto* t = std::get_if<TorusValue>(&a.value)) {
    return *t < std::get<TorusValue>(b.value);
  }
  if (const auto* z = std::get_if<Int>(&a.value)) {
    return *z < std::get<Int>(b.value);
  }
  const auto& pa = std::get<std::vector<ModelPoint>>(a.value);
  const auto& pb = std::get<std::vector<ModelPoint>>(b.value);
  return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end(),
                                      model_point_less);
}

std::string model_point_to_string(const ModelPoint& p) {
  if (const auto* t = std::get_if<TorusValue>(&p.value)) return t->to_string();
  if (const auto* z = std::get_if<Int>(&p.value)) return z->str();
  std::ostringstream out;
  out << '(';
  const auto& parts = std::get<std::vector<ModelPoint>>(p.value);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out << ',';
    out << model_point_to_string(parts[i]);
  }
  out << ')';
  return out.str();
}

bool operator==(const ProductChar& a, const ProductChar& b) {
  return a.support == b.support;
}

bool operator==(const ModelCharacter& a, const ModelCharacter& b) {
  return a.value == b.value;
}

bool ModelCharacter::is_zero() const {
  if (const auto* t = std::get_if<TorusChar>(&value)) return t->m == 0;
  if (const auto* z = std::get_if<PAdicChar>(&value)) return z->m == 0;
  return std::get<ProductChar>(value).support.empty();
}

PAdicChar make_padic_char(std::int64_t p, const Int& m_in, int level_in) {
  if (level_in < 0) throw std::invalid_argument("negative character level");
  Int modulus = int_pow(p, level_in);
  Int m = level_in == 0 ? Int(0) : m_in % modulus;
  if (m < 0) m += modulus;
  int level = level_in;
  while (level > 0 && m != 0 && m % p == 0) {
    m /= p;
    --level;
  }
  if (m == 0) return PAdicChar{Int(0), 0};
  return PAdicChar{std::move(m), level};
}

std::string model_character_to_string(const ModelCharacter& chi) {
  if (const auto* t = std::get_if<TorusChar>(&chi.value)) return t->m.str();
  if (const auto* z = std::get_if<PAdicChar>(&chi.value)) {
    return "(" + z->m.str() + "," + std::to_string(z->level) + ")";
  }
  const auto& prod = std::get<ProductChar>(chi.value);
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [idx, sub] : prod.support) {
    if (!first) out << ',';
    first = false;
    out << idx << ':' << model_character_to_string(sub);
  }
  out << '}';
  return out.str();
}

ModelPoint zero_point(const CompactModel& m) {
  switch (m.kind()) {
    case CompactModel::Kind::Torus:
      return ModelPoint{TorusValue()};
    case CompactModel::Kind::PAdic:
      return ModelPoint{Int(0)};
    case CompactModel::Kind::Product: {
      std::vector<ModelPoint> parts;
      parts.reserve(m.factors().size());
      for (const CompactModel& f : m.factors()) parts.push_back(zero_point(f));
      return ModelPoint{std::move(parts)};
    }
  }
  throw std::logic_error("unreachable");
}

ModelCharacter zero_character(const CompactModel& m) {
  switch (m.kind()) {
    case CompactModel::Kind::Torus:
      return ModelCharacter{TorusChar{Int(0)}};
    case CompactModel::Kind::PAdic:
      return ModelCharacter{PAdicChar{Int(0), 0}};
    case CompactModel::Kind::Product:
      return ModelCharacter{ProductChar{}};
  }
  throw std::logic_error("unreachable");
}

bool point_matches(const CompactModel& m, const ModelPoint& x) {
  switch (m.kind()) {
    case CompactModel::Kind::Torus:
      return std::holds_alternative<TorusValue>(x.value);
    case CompactModel::Kind::PAdic:
      return std::holds_alternative<Int>(x.value) && std::get<Int>(x.value) >= 0;
    case CompactModel::Kind::Product: {
      const auto* parts = std::get_if<std::vector<ModelPoint>>(&x.value);
      if (!parts || parts->size() != m.factors().size()) return false;
      for (std::size_t i = 0; i < parts->size(); ++i) {
        if (!point_matches(m.factors()[i], (*parts)[i])) return false;
      }
      return true;
    }
  }
  return false;
}

bool character_matches(const CompactModel& m, const ModelCharacter& chi) {
  switch (m.kind()) {
    case CompactModel::Kind::Torus:
      return std::holds_alternative<TorusChar>(chi.value);
    case CompactModel::Kind::PAdic: {
      const auto* z = std::get_if<PAdicChar>(&chi.value);
      if (!z) return false;
      PAdicChar normal = make_padic_char(m.prime(), z->m, z->level);
      return normal == *z;
    }
    case CompactModel::Kind::Product: {
      const auto* prod = std::get_if<ProductChar>(&chi.value);
      if (!prod) return false;
      for (const auto& [idx, sub] : prod->support) {
        if (idx >= m.factors().size()) return false;
        if (sub.is_zero()) return false;
        if (!character_matches(m.factors()[idx], sub)) return false;
      }
      return true;
    }
  }
  return false;
}

TorusValue model_pairing(const CompactModel& m, const ModelCharacter& chi,
                         const ModelPoint& x) {
  if (!point_matches(m, x) || !character_matches(m, chi)) {
    throw std::invalid_argument("model pairing shape mismatch");
  }
  switch (m.kind()) {
    case CompactModel::Kind::Torus:
      return scale(std::get<TorusChar>(chi.value).m,
                   std::get<TorusValue>(x.value));
    case CompactModel::Kind::PAdic: {
      const auto& c = std::get<PAdicChar>(chi.value);
      if (c.m == 0) return TorusValue();
      return TorusValue::canonicalize(c.m * std::get<Int>(x.value),
                                      int_pow(m.prime(), c.level));
    }
    case CompactModel::Kind::Product: {
      const auto& prod = std::get<ProductChar>(chi.value);
      const auto& parts = std::get<std::vector<ModelPoint>>(x.value);
      TorusValue acc;
      for (const auto& [idx, sub] : prod.support) {
        acc = add(acc, model_pairing(m.factors()[idx], sub, parts[idx]));
      }
      return acc;
    }
  }
  throw std::logic_error("unreachable");
}

std::string CharBound::to_string() const {
  std::ostringstream out;
  out << "char-bound=" << torus_m_max << ",levels=" << padic_levels;
  if (max_support != SIZE_MAX) out << ",support=" << max_support;
  return out.str();
}

namespace {

std::vector<ModelCharacter> enumerate_factor(const CompactModel& m,
                                             const CharBound& b) {
  std::vector<ModelCharacter> out;
  switch (m.kind()) {
    case CompactModel::Kind::Torus: {
      for (std::int64_t v = -b.torus_m_max; v <= b.torus_m_max; ++v) {
        out.push_back(ModelCharacter{TorusChar{Int(v)}});
      }
      break;
    }
    case CompactModel::Kind::PAdic: {
      out.push_back(ModelCharacter{PAdicChar{Int(0), 0}});
      Int pn = 1;
      for (int n = 1; n <= b.padic_levels; ++n) {
        pn *= m.prime();
        for (Int v = 1; v < pn; ++v) {
          if (v % m.prime() == 0) continue;
          out.push_back(ModelCharacter{PAdicChar{v, n}});
        }
      }
      break;
    }
    case CompactModel::Kind::Product:
      throw std::invalid_argument("nested product models are not enumerable");
  }
  return out;
}

}  // namespace

std::vector<ModelCharacter> enumerate_characters_bounded(const CompactModel& m,
                                                         const CharBound& b) {
  if (m.kind() != CompactModel::Kind::Product) return enumerate_factor(m, b);

  std::vector<std::vector<ModelCharacter>> per_factor;
  per_factor.reserve(m.factors().size());
  for (const CompactModel& f : m.factors()) {
    per_factor.push_back(enumerate_factor(f, b));
  }
  std::vector<ModelCharacter> out;
  std::vector<std::size_t> idx(per_factor.size(), 0);
  for (;;) {
    ProductChar pc;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const ModelCharacter& sub = per_factor[i][idx[i]];
      if (!sub.is_zero()) pc.support.emplace(i, sub);
    }
    if (pc.support.size() <= b.max_support) {
      out.push_back(ModelCharacter{std::move(pc)});
    }
    std::size_t i = idx.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++idx[i] < per_factor[i].size()) {
        done = false;
        break;
      }
      idx[i] = 0;
    }
    if (done) break;
  }
  return out;
}

}  // namespace qcdense
