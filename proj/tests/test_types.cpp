#include <doctest.h>

#include "dynsbm/metrics.hpp"
#include "dynsbm/rng.hpp"
#include "dynsbm/types.hpp"

using namespace dynsbm;

namespace {

Membership make_g(std::vector<int> labels, int k) {
  Membership g;
  g.labels = std::move(labels);
  g.k = k;
  return g;
}

Membership random_membership(int n, int k, std::uint64_t seed) {
  SeqRng rng(seed, Stream::ParamDraw);
  Membership g;
  g.k = k;
  g.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    g.labels[i] = static_cast<int>(rng.below(k)) + 1;
  }
  return g;
}

}  // namespace

TEST_CASE("cluster_matrix basic examples") {
  const BinaryMatrix y = cluster_matrix(make_g({1, 1, 2}, 2));
  CHECK(y(0, 1) == 1);
  CHECK(y(1, 0) == 1);
  CHECK(y(0, 2) == 0);
  CHECK(y(2, 2) == 1);

  const BinaryMatrix ones = cluster_matrix(make_g({1, 1, 1}, 1));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(ones(i, j) == 1);
  }

  CHECK(cluster_matrix(make_g({1, 1, 2}, 2)) ==
        cluster_matrix(make_g({2, 2, 1}, 2)));
}

TEST_CASE("membership_from_cluster_matrix") {
  const Membership g =
      membership_from_cluster_matrix(cluster_matrix(make_g({1, 1, 2}, 2)), 2);
  CHECK(g.labels == std::vector<int>{1, 1, 2});

  BinaryMatrix eye(4);
  for (int i = 0; i < 4; ++i) eye(i, i) = 1;
  const Membership singletons = membership_from_cluster_matrix(eye, 4);
  CHECK(singletons.labels == std::vector<int>{1, 2, 3, 4});

  BinaryMatrix bad(3);
  for (int i = 0; i < 3; ++i) bad(i, i) = 1;
  bad.set_symmetric(0, 1, 1);
  bad.set_symmetric(1, 2, 1);  // 0-2 missing -> not transitive
  CHECK_THROWS_AS(membership_from_cluster_matrix(bad, 2),
                  std::invalid_argument);
}

TEST_CASE("cluster matrix round trips") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Membership g = random_membership(30, 4, seed);
    const BinaryMatrix y = cluster_matrix(g);
    const Membership back = membership_from_cluster_matrix(y, 4);
    CHECK(cluster_matrix(back) == y);
    CHECK(nmi(back, g) == doctest::Approx(1.0));
  }
}

TEST_CASE("cluster_matrix is label-permutation invariant") {
  const Membership g = random_membership(25, 3, 99);
  // Rotate labels 1->2->3->1.
  Membership rotated = g;
  for (int& l : rotated.labels) l = l % 3 + 1;
  CHECK(cluster_matrix(g) == cluster_matrix(rotated));
}

TEST_CASE("validate_sequence reports violations with indices") {
  GraphSequence seq;
  seq.n = 3;
  seq.adj.assign(2, BinaryMatrix(3));
  seq.adj[0].set_symmetric(0, 1, 1);
  CHECK(validate_sequence(seq).ok);

  seq.adj[0](0, 0) = 1;
  const SequenceDiagnostics diag = validate_sequence(seq);
  CHECK_FALSE(diag.ok);
  REQUIRE(diag.issues.size() == 1);
  CHECK(diag.issues[0] == "nonzero diagonal at (t=1,i=1)");

  seq.adj[0](0, 0) = 0;
  seq.adj[1](0, 1) = 1;  // asymmetric
  const SequenceDiagnostics diag2 = validate_sequence(seq);
  CHECK_FALSE(diag2.ok);
  CHECK(diag2.issues[0].find("asymmetric at (t=2)") != std::string::npos);
}

TEST_CASE("dynamics validation enforces the type-I feasibility region") {
  DynamicsParams p;
  p.model = Model::TypeI;
  p.W.assign(1, BlockMatrix::Constant(2, 2, 0.3));
  p.mu = BlockMatrix::Constant(2, 2, 0.6);
  CHECK_NOTHROW(validate_dynamics(p));
  p.mu = BlockMatrix::Constant(2, 2, 0.8);  // 0.8 * 1.3 > 1
  CHECK_THROWS_AS(validate_dynamics(p), std::invalid_argument);
}
