#pragma once

#include <cstdint>
#include <vector>

#include "dynsbm/matrix.hpp"
#include "dynsbm/types.hpp"

// Data-parallel inner loops. Each kernel has an OpenMP version (the default
// entry point) and a serial reference used by the tests and the benchmark.
// Counts are integers and per-pair samples write disjoint cells, so results
// are bit-identical across thread counts.

namespace dynsbm::kernels {

// Ordered-pair edge counts per block pair: counts(r,s) = sum over i != j
// with g_i = r, g_j = s of A_ij. Within-block edges are therefore counted
// twice, matching the |r|(|r|-1) denominator downstream.
using CountMatrix = std::vector<std::int64_t>;  // k*k row-major

CountMatrix block_pair_counts(const BinaryMatrix& A, const Membership& g);
CountMatrix block_pair_counts_serial(const BinaryMatrix& A,
                                     const Membership& g);

// Unordered-pair transition counts for a consecutive snapshot pair:
// n[prev][cur](r,s) counts pairs i<j with {g_i,g_j} = {r,s}, each pair
// once, stored at r <= s (upper triangle).
struct TransitionCounts {
  int k = 0;
  CountMatrix n00, n01, n10, n11;

  std::int64_t at(const CountMatrix& m, int r, int s) const {
    return m[static_cast<std::size_t>(r) * k + s];
  }
};

TransitionCounts transition_counts(const BinaryMatrix& prev,
                                   const BinaryMatrix& cur,
                                   const Membership& g);
TransitionCounts transition_counts_serial(const BinaryMatrix& prev,
                                          const BinaryMatrix& cur,
                                          const Membership& g);

// Running sum of co-membership indicator matrices: out_ij += 1 when
// g_i = g_j. out must be n*n, row-major.
void accumulate_comembership(const Membership& g, std::vector<std::int32_t>& out);
void accumulate_comembership_serial(const Membership& g,
                                    std::vector<std::int32_t>& out);

// Fresh SBM snapshot: edge (i,j) present w.p. W(g_i, g_j), drawn from the
// counter stream keyed by (seed, Edge|t, pair index).
BinaryMatrix sample_sbm(const Membership& g, const BlockMatrix& W,
                        std::uint64_t seed, int t);
BinaryMatrix sample_sbm_serial(const Membership& g, const BlockMatrix& W,
                               std::uint64_t seed, int t);

// One Markov step: pair (i,j) gets an edge w.p. h(g_i,g_j) when it had one,
// f(g_i,g_j) when it did not. Same keyed stream as sample_sbm.
BinaryMatrix step_markov(const BinaryMatrix& prev, const Membership& g,
                         const BlockMatrix& f, const BlockMatrix& h,
                         std::uint64_t seed, int t);
BinaryMatrix step_markov_serial(const BinaryMatrix& prev, const Membership& g,
                                const BlockMatrix& f, const BlockMatrix& h,
                                std::uint64_t seed, int t);

}  // namespace dynsbm::kernels
