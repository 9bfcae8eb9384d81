#include "patind/pattern_counts.hpp"

#include <algorithm>

#include "patind/errors.hpp"

namespace patind {

std::int64_t choose4(int n) {
  if (n < 4) return 0;
  const auto m = static_cast<std::int64_t>(n);
  return m * (m - 1) / 2 * (m - 2) / 3 * (m - 3) / 4;
}

const std::array<Permutation, 24>& s4_patterns() {
  static const std::array<Permutation, 24> table = [] {
    std::array<Permutation, 24> t;
    std::vector<std::int32_t> e = {1, 2, 3, 4};
    for (int i = 0; i < 24; ++i) {
      t[static_cast<std::size_t>(i)] = Permutation(e);
      std::next_permutation(e.begin(), e.end());
    }
    return t;
  }();
  return table;
}

int s4_index(const Permutation& p) {
  // Lehmer code: lexicographic rank from counts of smaller later entries.
  const auto a = p[0], b = p[1], c = p[2], d = p[3];
  const int l1 = (b < a) + (c < a) + (d < a);
  const int l2 = (c < b) + (d < b);
  const int l3 = (d < c);
  return l1 * 6 + l2 * 2 + l3;
}

namespace {

struct S4Tables {
  std::array<std::array<std::uint8_t, 24>, 24> compose;
  std::array<std::array<std::uint8_t, 24>, 8> group_action;

  S4Tables() {
    const auto& s4 = s4_patterns();
    for (int a = 0; a < 24; ++a) {
      for (int b = 0; b < 24; ++b) {
        compose[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            static_cast<std::uint8_t>(s4_index(patind::compose(s4[a], s4[b])));
      }
    }
    const auto& elems = GroupElement::all();
    for (int g = 0; g < 8; ++g) {
      for (int a = 0; a < 24; ++a) {
        group_action[static_cast<std::size_t>(g)][static_cast<std::size_t>(a)] =
            static_cast<std::uint8_t>(s4_index(elems[static_cast<std::size_t>(g)].apply(s4[a])));
      }
    }
  }
};

const S4Tables& s4_tables() {
  static const S4Tables t;
  return t;
}

}  // namespace

int s4_compose(int a, int b) {
  return s4_tables().compose[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

int s4_apply(const GroupElement& g, int a) {
  const auto& elems = GroupElement::all();
  for (int i = 0; i < 8; ++i) {
    if (elems[static_cast<std::size_t>(i)] == g) {
      return s4_tables().group_action[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
    }
  }
  return s4_index(g.apply(s4_patterns()[static_cast<std::size_t>(a)]));
}

PatternCounts count_patterns4_oracle(const Permutation& p) {
  PatternCounts out;
  const int n = p.size();
  out.n = n;
  for (int i = 0; i < n; ++i) {
    const auto a = p[i];
    for (int j = i + 1; j < n; ++j) {
      const auto b = p[j];
      for (int k = j + 1; k < n; ++k) {
        const auto c = p[k];
        for (int l = k + 1; l < n; ++l) {
          const auto d = p[l];
          const int l1 = (b < a) + (c < a) + (d < a);
          const int l2 = (c < b) + (d < b);
          const int l3 = (d < c);
          ++out.counts[static_cast<std::size_t>(l1 * 6 + l2 * 2 + l3)];
        }
      }
    }
  }
  return out;
}

namespace {

// Triple (p_i,p_j,p_k) classified by relative order; id built from the three
// comparison bits (a<b, a<c, b<c).  Bit combinations 010 and 101 cannot occur.
constexpr std::int8_t kTripleId[8] = {
    5,   // a>=b, a>=c, b>=c : 321
    4,   // a>=b, a>=c, b<c  : 312
    -1,  //
    2,   // a>=b, a<c,  b<c  : 213
    3,   // a<b,  a>=c, b>=c : 231
    -1,  //
    1,   // a<b,  a<c,  b>=c : 132
    0,   // a<b,  a<c,  b<c  : 123
};

// kPattern4[triple id][region] = lexicographic S4 index of the quadruple
// pattern when the fourth value lies in region r of the three sorted values
// (0: below all, 1: between low and mid, 2: between mid and high, 3: above).
struct Pattern4Lut {
  std::uint8_t at[6][4];
  Pattern4Lut() {
    // Triples in the id order above are the permutations 123,132,213,231,312,321.
    static constexpr int kTriples[6][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3},
                                           {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    for (int t = 0; t < 6; ++t) {
      for (int r = 0; r < 4; ++r) {
        std::vector<std::int32_t> e(4);
        for (int m = 0; m < 3; ++m) {
          const int rank3 = kTriples[t][m];
          e[static_cast<std::size_t>(m)] = rank3 + (rank3 > r ? 1 : 0);
        }
        e[3] = r + 1;
        at[t][r] = static_cast<std::uint8_t>(s4_index(Permutation(e)));
      }
    }
  }
};

}  // namespace

PatternCounts count_patterns4(const Permutation& p) {
  static const Pattern4Lut lut;
  PatternCounts out;
  const int n = p.size();
  out.n = n;
  if (n < 4) return out;

  // suffix[v] = #{l > k : p_l <= v}, maintained while k walks down.
  std::vector<std::int32_t> suffix(static_cast<std::size_t>(n) + 1, 0);
  std::array<std::int64_t, 24> counts{};

  for (int k = n - 2; k >= 2; --k) {
    for (int v = p[k + 1]; v <= n; ++v) ++suffix[static_cast<std::size_t>(v)];
    const std::int32_t c = p[k];
    const std::int32_t tail = suffix[static_cast<std::size_t>(n)];
    for (int j = 1; j < k; ++j) {
      const std::int32_t b = p[j];
      const int bc = b < c;
      for (int i = 0; i < j; ++i) {
        const std::int32_t a = p[i];
        const int key = ((a < b) << 2) | ((a < c) << 1) | bc;
        const int tri = kTripleId[key];
        const std::int32_t lo = std::min(a, std::min(b, c));
        const std::int32_t hi = std::max(a, std::max(b, c));
        const std::int32_t mid = a + b + c - lo - hi;
        const std::int32_t n0 = suffix[static_cast<std::size_t>(lo - 1)];
        const std::int32_t n1 = suffix[static_cast<std::size_t>(mid - 1)] - suffix[static_cast<std::size_t>(lo)];
        const std::int32_t n2 = suffix[static_cast<std::size_t>(hi - 1)] - suffix[static_cast<std::size_t>(mid)];
        const std::int32_t n3 = tail - suffix[static_cast<std::size_t>(hi)];
        const auto* row = lut.at[tri];
        counts[row[0]] += n0;
        counts[row[1]] += n1;
        counts[row[2]] += n2;
        counts[row[3]] += n3;
      }
    }
  }
  out.counts = counts;
  return out;
}

}  // namespace patind
