#pragma once

#include <array>
#include <cstdint>

// Rational constants of the degree-8 preimage / degree-16 hodograph map and
// of the closed-form solve for the middle preimage control point. Each term
// multiplies A_i * A_j (the commutative star product; A_i^2* when i == j).

namespace phodcos::coefficients {

struct StarTerm {
  int i;
  int j;
  std::int64_t num;
};

struct HodographRow {
  std::int64_t den;
  int count;
  std::array<StarTerm, 5> terms;
};

/// h_k = (1/den) sum num * (A_i * A_j), k = 0..16.
inline constexpr std::array<HodographRow, 17> kHodograph{{
    {1, 1, {{{0, 0, 1}}}},
    {1, 1, {{{0, 1, 1}}}},
    {15, 2, {{{0, 2, 7}, {1, 1, 8}}}},
    {10, 2, {{{0, 3, 2}, {1, 2, 8}}}},
    {65, 3, {{{0, 4, 5}, {1, 3, 32}, {2, 2, 28}}}},
    {39, 3, {{{0, 5, 1}, {1, 4, 10}, {2, 3, 28}}}},
    {143, 4, {{{0, 6, 1}, {1, 5, 16}, {2, 4, 70}, {3, 3, 56}}}},
    {715, 4, {{{0, 7, 1}, {1, 6, 28}, {2, 5, 196}, {3, 4, 490}}}},
    {6435, 5, {{{0, 8, 1}, {1, 7, 64}, {2, 6, 784}, {3, 5, 3136}, {4, 4, 2450}}}},
    {715, 4, {{{1, 8, 1}, {2, 7, 28}, {3, 6, 196}, {4, 5, 490}}}},
    {143, 4, {{{2, 8, 1}, {3, 7, 16}, {4, 6, 70}, {5, 5, 56}}}},
    {39, 3, {{{3, 8, 1}, {4, 7, 10}, {5, 6, 28}}}},
    {65, 3, {{{4, 8, 5}, {5, 7, 32}, {6, 6, 28}}}},
    {10, 2, {{{5, 8, 2}, {6, 7, 8}}}},
    {15, 2, {{{6, 8, 7}, {7, 7, 8}}}},
    {1, 1, {{{7, 8, 1}}}},
    {1, 1, {{{8, 8, 1}}}},
}};

/// Common denominator of c_p.
inline constexpr std::int64_t kCpDen = 112633092;

/// c_p = (1/kCpDen) sum num * (A_i * A_j); A_4 does not appear.
inline constexpr std::array<StarTerm, 36> kCp{{
    {0, 0, 147807}, {0, 1, 144540}, {0, 2, 61908},  {0, 3, 19404},  {0, 5, -6468},
    {0, 6, -6300},  {0, 7, -3636},  {0, 8, -1130},  {1, 1, 72732},  {1, 2, 94248},
    {1, 3, 38808},  {1, 5, -17640}, {1, 6, -18648}, {1, 7, -11336}, {1, 8, -3636},
    {2, 2, 40572},  {2, 3, 41160},  {2, 5, -24696}, {2, 6, -28616}, {2, 7, -18648},
    {2, 8, -6300},  {3, 3, 12348},  {3, 5, -19208}, {3, 6, -24696}, {3, 7, -17640},
    {3, 8, -6468},  {5, 5, 12348},  {5, 6, 41160},  {5, 7, 38808},  {5, 8, 19404},
    {6, 6, 40572},  {6, 7, 94248},  {6, 8, 61908},  {7, 7, 72732},  {7, 8, 144540},
    {8, 8, 147807},
}};

struct Ratio {
  std::int64_t num;
  std::int64_t den;
};

/// A_p = sum_i w_i A_i, with A_p^2* = w_4 (p_e - p_b) - c_p.
inline constexpr std::array<Ratio, 9> kApWeights{{
    {1, 442},
    {5, 663},
    {35, 2431},
    {49, 2431},
    {490, 21879},
    {49, 2431},
    {35, 2431},
    {5, 663},
    {1, 442},
}};

}  // namespace phodcos::coefficients
