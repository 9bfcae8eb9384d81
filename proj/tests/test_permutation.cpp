#include <doctest.h>

#include <algorithm>
#include <array>
#include <map>
#include <vector>

#include "patind/errors.hpp"
#include "patind/pattern_counts.hpp"
#include "patind/permutation.hpp"

using namespace patind;

TEST_CASE("ranks of distinct reals") {
  const std::vector<double> v1 = {3.1, 1.2, 2.7};
  CHECK(ranks(v1) == Permutation({3, 1, 2}));

  const std::vector<double> sorted = {-2.0, -0.5, 0.0, 1.5, 9.0, 11.0};
  CHECK(ranks(sorted) == Permutation::identity(6));

  const std::vector<double> v2 = {0.5, 0.9, 0.1, 0.7};
  CHECK(ranks(v2) == Permutation({2, 4, 1, 3}));

  const std::vector<double> tied = {1.0, 2.0, 1.0};
  CHECK_THROWS_AS(ranks(tied), TieError);
}

TEST_CASE("permutation generated by a sample") {
  const std::vector<double> xs = {1, 2, 3};
  const std::vector<double> ys = {10, 30, 20};
  CHECK(permutation_from_sample(xs, ys) == Permutation({1, 3, 2}));

  // comonotone and antitone data
  const std::vector<double> x2 = {0.3, 1.0, 2.5, 7.0, 9.1};
  std::vector<double> inc = {1, 4, 9, 16, 25};
  CHECK(permutation_from_sample(x2, inc) == Permutation::identity(5));
  std::vector<double> dec = {5, 4, 3, 2, 1};
  CHECK(permutation_from_sample(x2, dec) == Permutation::reversal(5));
}

TEST_CASE("sample permutation is invariant under point reordering") {
  Rng rng(2024);
  std::vector<double> xs(12), ys(12);
  for (int i = 0; i < 12; ++i) {
    xs[i] = rng.uniform();
    ys[i] = rng.uniform();
  }
  const Permutation base = permutation_from_sample(xs, ys);
  std::vector<int> order(12);
  for (int i = 0; i < 12; ++i) order[i] = i;
  for (int trial = 0; trial < 20; ++trial) {
    for (int i = 11; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    std::vector<double> px(12), py(12);
    for (int i = 0; i < 12; ++i) {
      px[i] = xs[order[i]];
      py[i] = ys[order[i]];
    }
    CHECK(permutation_from_sample(px, py) == base);
  }
}

TEST_CASE("group generators") {
  CHECK(GroupElement::rev().apply(Permutation({1, 3, 2})) == Permutation({2, 3, 1}));
  CHECK(GroupElement::inv().apply(Permutation({2, 3, 1})) == Permutation({3, 1, 2}));

  Rng rng(7);
  const Permutation p = random_permutation(9, rng);
  CHECK(GroupElement::inv().apply(GroupElement::inv().apply(p)) == p);
  CHECK(GroupElement::rev().apply(GroupElement::rev().apply(p)) == p);
  CHECK(GroupElement::inv().apply(p) == p.inverse());
  CHECK(GroupElement::rev().apply(p) == p.reversed());
}

TEST_CASE("the group closes with eight distinct elements") {
  const auto& all = GroupElement::all();
  // distinct as actions: single permutations can have nontrivial stabilizers,
  // but the joint action on this pair is free
  const Permutation ref({2, 4, 1, 3});
  const Permutation ref2({1, 2, 4, 3});
  std::vector<std::string> images;
  for (const auto& g : all) images.push_back(g.apply(ref).to_string() + g.apply(ref2).to_string());
  std::sort(images.begin(), images.end());
  CHECK(std::adjacent_find(images.begin(), images.end()) == images.end());

  // closure: every product is again one of the eight, and products act
  // correctly (apply g then h equals applying g.then(h))
  for (const auto& g : all) {
    for (const auto& h : all) {
      const GroupElement gh = g.then(h);
      CHECK(std::count(all.begin(), all.end(), gh) == 1);
      CHECK(h.apply(g.apply(ref)) == gh.apply(ref));
    }
  }
}

TEST_CASE("pattern counting is equivariant under the group") {
  Rng rng(99);
  const auto& s4 = s4_patterns();
  for (int trial = 0; trial < 5; ++trial) {
    const Permutation p = random_permutation(9, rng);
    const PatternCounts base = count_patterns4_oracle(p);
    for (const auto& g : GroupElement::all()) {
      const PatternCounts moved = count_patterns4_oracle(g.apply(p));
      for (int s = 0; s < 24; ++s) {
        const int gs = s4_index(g.apply(s4[s]));
        CHECK(moved.counts[gs] == base.counts[s]);
      }
    }
  }
}

TEST_CASE("uniform random permutations") {
  Rng rng(5);
  for (int i = 0; i < 10; ++i) CHECK(random_permutation(1, rng) == Permutation({1}));

  // n = 3: all six permutations equally likely
  std::map<std::string, int> freq;
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) ++freq[random_permutation(3, rng).to_string()];
  CHECK(freq.size() == 6);
  for (const auto& [key, cnt] : freq) {
    CHECK(std::abs(cnt / static_cast<double>(draws) - 1.0 / 6.0) < 0.01);
  }

  // fixed seed, identical sequence
  Rng a(123), b(123);
  for (int i = 0; i < 10; ++i) CHECK(random_permutation(8, a) == random_permutation(8, b));
}

TEST_CASE("pattern frequencies of uniform permutations are flat" * doctest::timeout(120)) {
  // Average relative frequency of each length-4 pattern over uniform draws;
  // each must sit within 3 standard errors of 1/24.
  const int n = 20;
  const int reps = 100000;
  const double denom = static_cast<double>(choose4(n));
  std::array<double, 24> mean{}, msq{};
  Rng rng(31);
  for (int r = 0; r < reps; ++r) {
    const PatternCounts c = count_patterns4(random_permutation(n, rng));
    for (int s = 0; s < 24; ++s) {
      const double t = c.counts[s] / denom;
      mean[s] += t;
      msq[s] += t * t;
    }
  }
  for (int s = 0; s < 24; ++s) {
    const double m = mean[s] / reps;
    const double var = msq[s] / reps - m * m;
    const double se = std::sqrt(var / reps);
    CHECK(std::abs(m - 1.0 / 24.0) < 3.0 * se + 1e-12);
  }
}
