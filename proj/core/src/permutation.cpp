#include "patind/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "patind/errors.hpp"

namespace patind {

Permutation::Permutation(std::vector<std::int32_t> entries) : entries_(std::move(entries)) {
  const int n = size();
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (const std::int32_t v : entries_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw ParameterOutOfRange("permutation entries must be a bijection of {1,...,n}");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<std::int32_t> e(static_cast<std::size_t>(n));
  std::iota(e.begin(), e.end(), 1);
  Permutation p;
  p.entries_ = std::move(e);
  return p;
}

Permutation Permutation::reversal(int n) {
  std::vector<std::int32_t> e(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = n - i;
  Permutation p;
  p.entries_ = std::move(e);
  return p;
}

Permutation Permutation::inverse() const {
  const int n = size();
  std::vector<std::int32_t> e(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(entries_[static_cast<std::size_t>(i)] - 1)] = i + 1;
  Permutation p;
  p.entries_ = std::move(e);
  return p;
}

Permutation Permutation::reversed() const {
  std::vector<std::int32_t> e(entries_.rbegin(), entries_.rend());
  Permutation p;
  p.entries_ = std::move(e);
  return p;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < size(); ++i) {
    if (i) os << ',';
    os << entries_[static_cast<std::size_t>(i)];
  }
  os << ')';
  return os.str();
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw ParameterOutOfRange("compose: length mismatch");
  const int n = p.size();
  std::vector<std::int32_t> e(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = p[q[i] - 1];
  return Permutation(std::move(e));
}

Permutation ranks(std::span<const double> values) {
  const int n = static_cast<int>(values.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)]; });
  for (int i = 0; i + 1 < n; ++i) {
    if (values[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] ==
        values[static_cast<std::size_t>(order[static_cast<std::size_t>(i) + 1])]) {
      throw TieError("tied values at positions " + std::to_string(order[static_cast<std::size_t>(i)]) +
                     " and " + std::to_string(order[static_cast<std::size_t>(i) + 1]));
    }
  }
  std::vector<std::int32_t> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i + 1;
  Permutation p(std::move(r));
  return p;
}

Permutation permutation_from_sample(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw ParameterOutOfRange("coordinate lengths differ");
  const Permutation q = ranks(xs);
  const Permutation r = ranks(ys);
  return compose(r, q.inverse());
}

Permutation random_permutation(int n, Rng& rng) {
  if (n < 1) throw ParameterOutOfRange("random_permutation: n must be >= 1");
  std::vector<std::int32_t> e(static_cast<std::size_t>(n));
  std::iota(e.begin(), e.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(e[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(j)]);
  }
  return Permutation(std::move(e));
}

const std::array<GroupElement, 8>& GroupElement::all() {
  static const std::array<GroupElement, 8> elems = {
      GroupElement(false, false, false), GroupElement(false, true, false),
      GroupElement(false, false, true),  GroupElement(false, true, true),
      GroupElement(true, false, false),  GroupElement(true, true, false),
      GroupElement(true, false, true),   GroupElement(true, true, true),
  };
  return elems;
}

GroupElement GroupElement::then(const GroupElement& h) const {
  // This element maps a point as N(a,b) ∘ S^s; composing with h = N(c,d) ∘ S^t
  // uses S ∘ N(a,b) = N(b,a) ∘ S.
  if (!h.swap_) {
    return GroupElement(swap_, neg_pos_ != h.neg_pos_, neg_val_ != h.neg_val_);
  }
  return GroupElement(!swap_, neg_val_ != h.neg_pos_, neg_pos_ != h.neg_val_);
}

Permutation GroupElement::apply(const Permutation& p) const {
  const int n = p.size();
  std::vector<std::int32_t> e(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::int32_t pos = i + 1;
    std::int32_t val = p[i];
    if (swap_) std::swap(pos, val);
    if (neg_pos_) pos = n + 1 - pos;
    if (neg_val_) val = n + 1 - val;
    e[static_cast<std::size_t>(pos - 1)] = val;
  }
  return Permutation(std::move(e));
}

std::string GroupElement::name() const {
  std::string s;
  if (swap_) s += "inv";
  if (neg_pos_) s += s.empty() ? "rev" : ".rev";
  if (neg_val_) s += s.empty() ? "comp" : ".comp";
  return s.empty() ? "id" : s;
}

}  // namespace patind
