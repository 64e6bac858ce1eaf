#include "qcdense/homomorphism.hpp"

#include <numeric>
#include <set>

namespace qcdense {

Homomorphism::Homomorphism(FiniteAbelianGroup source, FiniteAbelianGroup target,
                           std::vector<std::vector<std::int64_t>> matrix)
    : source_(std::move(source)),
      target_(std::move(target)),
      matrix_(std::move(matrix)) {
  const auto& src_orders = source_.orders();
  const auto& tgt_orders = target_.orders();
  if (matrix_.size() != tgt_orders.size()) {
    throw std::invalid_argument("matrix row count must match target factors");
  }
  for (const auto& row : matrix_) {
    if (row.size() != src_orders.size()) {
      throw std::invalid_argument("matrix column count must match source factors");
    }
  }
  // Well-definedness: column i, as a target element, must have order
  // dividing the source factor order.
  for (std::size_t i = 0; i < src_orders.size(); ++i) {
    std::vector<std::int64_t> col(tgt_orders.size());
    for (std::size_t j = 0; j < tgt_orders.size(); ++j) col[j] = matrix_[j][i];
    GroupElement col_elem = target_.reduce(col);
    std::int64_t ord = target_.element_order(col_elem);
    if (src_orders[i] % ord != 0) {
      throw std::invalid_argument(
          "matrix does not define a homomorphism: column " + std::to_string(i) +
          " has order " + std::to_string(ord) + " in " + target_.to_string() +
          ", which does not divide " + std::to_string(src_orders[i]));
    }
  }
}

GroupElement Homomorphism::apply(const GroupElement& x) const {
  if (!source_.is_valid(x)) {
    throw std::invalid_argument("element not in the source group");
  }
  std::vector<std::int64_t> out(target_.orders().size(), 0);
  for (std::size_t j = 0; j < out.size(); ++j) {
    std::int64_t n = target_.orders()[j];
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
      std::int64_t term = ((matrix_[j][i] % n) * (x.coords[i] % n)) % n;
      acc = (acc + term) % n;
    }
    out[j] = acc < 0 ? acc + n : acc;
  }
  return GroupElement{std::move(out)};
}

std::vector<GroupElement> Homomorphism::kernel(std::int64_t cap) const {
  std::vector<GroupElement> out;
  GroupElement zero = target_.zero();
  source_.for_each_element(
      [&](const GroupElement& x) {
        if (apply(x) == zero) out.push_back(x);
      },
      cap);
  return out;
}

std::vector<GroupElement> Homomorphism::image(std::int64_t cap) const {
  std::set<GroupElement> img;
  source_.for_each_element(
      [&](const GroupElement& x) { img.insert(apply(x)); }, cap);
  return {img.begin(), img.end()};
}

bool Homomorphism::is_surjective(std::int64_t cap) const {
  return Int(image(cap).size()) == target_.order();
}

Homomorphism Homomorphism::identity(const FiniteAbelianGroup& g) {
  std::size_t k = g.orders().size();
  std::vector<std::vector<std::int64_t>> m(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) m[i][i] = 1;
  return Homomorphism(g, g, std::move(m));
}

Homomorphism dual_hom(const Homomorphism& f) {
  const auto& src = f.source().orders();  // n_i
  const auto& tgt = f.target().orders();  // m_j
  // dual matrix entry D[i][j] = n_i * M[j][i] / m_j, an integer because
  // well-definedness forces (m_j / gcd(M_ji, m_j)) | n_i.
  std::vector<std::vector<std::int64_t>> d(src.size(),
                                           std::vector<std::int64_t>(tgt.size()));
  for (std::size_t i = 0; i < src.size(); ++i) {
    for (std::size_t j = 0; j < tgt.size(); ++j) {
      Int num = Int(src[i]) * f.matrix()[j][i];
      if (num % tgt[j] != 0) {
        throw std::logic_error("dual matrix entry is not integral");
      }
      Int entry = (num / tgt[j]) % src[i];
      if (entry < 0) entry += src[i];
      d[i][j] = static_cast<std::int64_t>(entry);
    }
  }
  return Homomorphism(f.target(), f.source(), std::move(d));
}

Character apply_dual(const Homomorphism& dual, const Character& xi) {
  GroupElement out = dual.apply(GroupElement{xi.coords});
  return Character{out.coords};
}

}  // namespace qcdense
