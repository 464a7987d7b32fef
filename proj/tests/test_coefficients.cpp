// Exact re-derivation of the hodograph, end-point and A_p coefficient tables
// from the Bernstein product expansion, in rational arithmetic.
#include <gtest/gtest.h>

#include <map>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "phodcos/coefficients.hpp"

using boost::multiprecision::cpp_rational;
namespace coef = phodcos::coefficients;

namespace {

using Pair = std::pair<int, int>;
// Coefficients of the symmetric products A_i * A_j (i <= j).
using StarCombination = std::map<Pair, cpp_rational>;

cpp_rational binom(int n, int k) {
  cpp_rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// A(xi) i A(xi)* with A of degree 8 has control points
// h_k = sum_{i+j=k} C(8,i) C(8,j) / C(16,k) A_i i A_j*; pairing (i,j) with
// (j,i) turns each pair into 2 A_i * A_j.
StarCombination hodograph_row(int k) {
  StarCombination row;
  for (int i = 0; i <= 8; ++i) {
    const int j = k - i;
    if (j < i || j > 8) continue;
    const cpp_rational mult = i == j ? 1 : 2;
    row[{i, j}] = mult * binom(8, i) * binom(8, j) / binom(16, k);
  }
  return row;
}

// p_e - p_b = (1/17) sum_k h_k.
StarCombination chord() {
  StarCombination c;
  for (int k = 0; k <= 16; ++k) {
    for (const auto& [ij, v] : hodograph_row(k)) c[ij] += v / 17;
  }
  return c;
}

}  // namespace

TEST(Coefficients, RawExpansionDenominators) {
  // h_k's raw weights sum to C(16,k) (Vandermonde), e.g. 120 for h_2, 1820 for h_4.
  const int expected[] = {1, 16, 120, 560, 1820, 4368, 8008, 11440, 12870};
  for (int k = 0; k <= 8; ++k) {
    cpp_rational sum = 0;
    for (int i = 0; i <= k; ++i) sum += binom(8, i) * binom(8, k - i);
    EXPECT_EQ(sum, cpp_rational(expected[k]));
    EXPECT_EQ(binom(16, k), cpp_rational(expected[k]));
  }
}

TEST(Coefficients, HodographTableIsExact) {
  for (int k = 0; k <= 16; ++k) {
    const auto& row = coef::kHodograph[static_cast<std::size_t>(k)];
    StarCombination table;
    for (int t = 0; t < row.count; ++t) {
      const auto& term = row.terms[static_cast<std::size_t>(t)];
      table[{term.i, term.j}] = cpp_rational(term.num) / row.den;
    }
    EXPECT_EQ(table, hodograph_row(k)) << "row " << k;
  }
}

TEST(Coefficients, ApWeightsCancelEveryA4Term) {
  // w_4 chord - (sum w_i A_i)^2* has no A_4 terms iff w_4 = S(4,4) and
  // 2 w_i w_4 = w_4 S(i,4), i.e. w_i = S(i,4) / 2.
  const StarCombination s = chord();
  for (int i = 0; i <= 8; ++i) {
    const Pair key = i <= 4 ? Pair{i, 4} : Pair{4, i};
    const cpp_rational expected = i == 4 ? s.at(key) : s.at(key) / 2;
    const auto& w = coef::kApWeights[static_cast<std::size_t>(i)];
    EXPECT_EQ(cpp_rational(w.num) / w.den, expected) << "weight " << i;
  }
  EXPECT_EQ(cpp_rational(coef::kApWeights[4].num) / coef::kApWeights[4].den,
            cpp_rational(490, 21879));
}

TEST(Coefficients, MiddleOffsetTableIsExact) {
  const StarCombination s = chord();
  std::array<cpp_rational, 9> w;
  for (int i = 0; i <= 8; ++i) {
    const auto& r = coef::kApWeights[static_cast<std::size_t>(i)];
    w[static_cast<std::size_t>(i)] = cpp_rational(r.num) / r.den;
  }
  StarCombination derived;
  for (int i = 0; i <= 8; ++i) {
    for (int j = i; j <= 8; ++j) {
      const cpp_rational mult = i == j ? 1 : 2;
      const cpp_rational v = w[4] * s.at({i, j}) -
                             mult * w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)];
      if (i == 4 || j == 4) {
        EXPECT_EQ(v, 0) << i << "," << j;
      } else {
        derived[{i, j}] = v;
      }
    }
  }
  StarCombination table;
  for (const auto& t : coef::kCp) table[{t.i, t.j}] = cpp_rational(t.num) / coef::kCpDen;
  EXPECT_EQ(table.size(), 36u);
  EXPECT_EQ(table, derived);
  // The coefficient printed with a stray prefix.
  EXPECT_EQ(derived.at({1, 3}) * coef::kCpDen, 38808);
  EXPECT_EQ(derived.at({5, 7}) * coef::kCpDen, 38808);
}
