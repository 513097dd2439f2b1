#include "dynsbm/kernels.hpp"

#include <omp.h>

#include "dynsbm/rng.hpp"

namespace dynsbm::kernels {

namespace {

inline std::uint64_t pair_index(int n, int i, int j) {
  return static_cast<std::uint64_t>(i) * n + j;
}

}  // namespace

CountMatrix block_pair_counts_serial(const BinaryMatrix& A,
                                     const Membership& g) {
  const int n = A.n();
  const int k = g.k;
  CountMatrix counts(static_cast<std::size_t>(k) * k, 0);
  for (int i = 0; i < n; ++i) {
    const int r = g.labels[i] - 1;
    const std::uint8_t* row = A.row(i);
    for (int j = 0; j < n; ++j) {
      if (row[j]) counts[static_cast<std::size_t>(r) * k + g.labels[j] - 1]++;
    }
  }
  return counts;
}

CountMatrix block_pair_counts(const BinaryMatrix& A, const Membership& g) {
  const int n = A.n();
  const int k = g.k;
  CountMatrix counts(static_cast<std::size_t>(k) * k, 0);
#pragma omp parallel
  {
    CountMatrix local(counts.size(), 0);
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      const int r = g.labels[i] - 1;
      const std::uint8_t* row = A.row(i);
      for (int j = 0; j < n; ++j) {
        if (row[j]) local[static_cast<std::size_t>(r) * k + g.labels[j] - 1]++;
      }
    }
#pragma omp critical
    for (std::size_t idx = 0; idx < counts.size(); ++idx) {
      counts[idx] += local[idx];
    }
  }
  return counts;
}

namespace {

inline void add_transition(TransitionCounts& tc, int r, int s,
                           std::uint8_t prev, std::uint8_t cur) {
  if (r > s) std::swap(r, s);
  const std::size_t idx = static_cast<std::size_t>(r) * tc.k + s;
  if (prev) {
    (cur ? tc.n11 : tc.n10)[idx]++;
  } else {
    (cur ? tc.n01 : tc.n00)[idx]++;
  }
}

inline void merge(CountMatrix& into, const CountMatrix& from) {
  for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
}

TransitionCounts make_counts(int k) {
  TransitionCounts tc;
  tc.k = k;
  const std::size_t sz = static_cast<std::size_t>(k) * k;
  tc.n00.assign(sz, 0);
  tc.n01.assign(sz, 0);
  tc.n10.assign(sz, 0);
  tc.n11.assign(sz, 0);
  return tc;
}

}  // namespace

TransitionCounts transition_counts_serial(const BinaryMatrix& prev,
                                          const BinaryMatrix& cur,
                                          const Membership& g) {
  const int n = prev.n();
  TransitionCounts tc = make_counts(g.k);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      add_transition(tc, g.labels[i] - 1, g.labels[j] - 1, prev(i, j),
                     cur(i, j));
    }
  }
  return tc;
}

TransitionCounts transition_counts(const BinaryMatrix& prev,
                                   const BinaryMatrix& cur,
                                   const Membership& g) {
  const int n = prev.n();
  TransitionCounts tc = make_counts(g.k);
#pragma omp parallel
  {
    TransitionCounts local = make_counts(g.k);
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        add_transition(local, g.labels[i] - 1, g.labels[j] - 1, prev(i, j),
                       cur(i, j));
      }
    }
#pragma omp critical
    {
      merge(tc.n00, local.n00);
      merge(tc.n01, local.n01);
      merge(tc.n10, local.n10);
      merge(tc.n11, local.n11);
    }
  }
  return tc;
}

void accumulate_comembership_serial(const Membership& g,
                                    std::vector<std::int32_t>& out) {
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    const int gi = g.labels[i];
    std::int32_t* row = out.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      if (gi == g.labels[j]) row[j]++;
    }
  }
}

void accumulate_comembership(const Membership& g,
                             std::vector<std::int32_t>& out) {
  const int n = g.n();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const int gi = g.labels[i];
    std::int32_t* row = out.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      if (gi == g.labels[j]) row[j]++;
    }
  }
}

BinaryMatrix sample_sbm_serial(const Membership& g, const BlockMatrix& W,
                               std::uint64_t seed, int t) {
  const int n = g.n();
  BinaryMatrix A(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double p = W(g.labels[i] - 1, g.labels[j] - 1);
      const double u = uniform_at(seed, Stream::Edge, static_cast<std::uint64_t>(t),
                                  pair_index(n, i, j));
      A.set_symmetric(i, j, u < p ? 1 : 0);
    }
  }
  return A;
}

BinaryMatrix sample_sbm(const Membership& g, const BlockMatrix& W,
                        std::uint64_t seed, int t) {
  const int n = g.n();
  BinaryMatrix A(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double p = W(g.labels[i] - 1, g.labels[j] - 1);
      const double u = uniform_at(seed, Stream::Edge, static_cast<std::uint64_t>(t),
                                  pair_index(n, i, j));
      A.set_symmetric(i, j, u < p ? 1 : 0);
    }
  }
  return A;
}

BinaryMatrix step_markov_serial(const BinaryMatrix& prev, const Membership& g,
                                const BlockMatrix& f, const BlockMatrix& h,
                                std::uint64_t seed, int t) {
  const int n = prev.n();
  BinaryMatrix A(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int r = g.labels[i] - 1, s = g.labels[j] - 1;
      const double p = prev(i, j) ? h(r, s) : f(r, s);
      const double u = uniform_at(seed, Stream::Edge, static_cast<std::uint64_t>(t),
                                  pair_index(n, i, j));
      A.set_symmetric(i, j, u < p ? 1 : 0);
    }
  }
  return A;
}

BinaryMatrix step_markov(const BinaryMatrix& prev, const Membership& g,
                         const BlockMatrix& f, const BlockMatrix& h,
                         std::uint64_t seed, int t) {
  const int n = prev.n();
  BinaryMatrix A(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int r = g.labels[i] - 1, s = g.labels[j] - 1;
      const double p = prev(i, j) ? h(r, s) : f(r, s);
      const double u = uniform_at(seed, Stream::Edge, static_cast<std::uint64_t>(t),
                                  pair_index(n, i, j));
      A.set_symmetric(i, j, u < p ? 1 : 0);
    }
  }
  return A;
}

}  // namespace dynsbm::kernels
