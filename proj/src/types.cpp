#include "dynsbm/types.hpp"

#include <stdexcept>

namespace dynsbm {

namespace {

void check_probability_matrix(const BlockMatrix& m, const char* name) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(name) + " is not square");
  }
  for (int r = 0; r < m.rows(); ++r) {
    for (int s = 0; s < m.cols(); ++s) {
      const double v = m(r, s);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(name) +
                                    " has an entry outside [0,1]");
      }
      if (m(r, s) != m(s, r)) {
        throw std::invalid_argument(std::string(name) + " is not symmetric");
      }
    }
  }
}

}  // namespace

void validate_dynamics(const DynamicsParams& p) {
  if (p.W.empty()) throw std::invalid_argument("dynamics: W missing");
  for (const auto& w : p.W) check_probability_matrix(w, "W");
  switch (p.model) {
    case Model::TypeI: {
      check_probability_matrix(p.mu, "mu");
      const BlockMatrix& w = p.W[0];
      if (p.mu.rows() != w.rows()) {
        throw std::invalid_argument("dynamics: mu / W size mismatch");
      }
      for (int r = 0; r < w.rows(); ++r) {
        for (int s = 0; s < w.cols(); ++s) {
          if (p.mu(r, s) * (1.0 + w(r, s)) > 1.0 + 1e-12) {
            throw std::invalid_argument(
                "dynamics: type-I requires mu*(1+W) <= 1 entrywise");
          }
        }
      }
      break;
    }
    case Model::TypeII:
      if (!(p.xi >= 0.0 && p.xi <= 1.0)) {
        throw std::invalid_argument("dynamics: xi outside [0,1]");
      }
      break;
    case Model::General:
      check_probability_matrix(p.f, "f");
      check_probability_matrix(p.h, "h");
      break;
  }
}

bool is_valid_membership(const Membership& g) {
  if (g.k < 1) return false;
  for (int v : g.labels) {
    if (v < 1 || v > g.k) return false;
  }
  return true;
}

BinaryMatrix cluster_matrix(const Membership& g) {
  const int n = g.n();
  BinaryMatrix Y(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Y(i, j) = g.labels[i] == g.labels[j] ? 1 : 0;
    }
  }
  return Y;
}

Membership membership_from_cluster_matrix(const BinaryMatrix& Y, int k) {
  const int n = Y.n();
  for (int i = 0; i < n; ++i) {
    if (Y(i, i) != 1) {
      throw std::invalid_argument("cluster matrix: diagonal must be ones");
    }
    for (int j = 0; j < n; ++j) {
      if (Y(i, j) != Y(j, i)) {
        throw std::invalid_argument("cluster matrix: not symmetric");
      }
    }
  }

  Membership g;
  g.labels.assign(n, 0);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (g.labels[i] != 0) continue;
    ++next;
    g.labels[i] = next;
    for (int j = i + 1; j < n; ++j) {
      if (Y(i, j)) {
        if (g.labels[j] != 0) {
          throw std::invalid_argument("cluster matrix: not transitive");
        }
        g.labels[j] = next;
      }
    }
  }
  // Transitivity: members of one block must agree on every column.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((g.labels[i] == g.labels[j]) != (Y(i, j) == 1)) {
        throw std::invalid_argument("cluster matrix: not transitive");
      }
    }
  }
  if (next > k) {
    throw std::invalid_argument("cluster matrix: more than k blocks");
  }
  g.k = k;
  return g;
}

SequenceDiagnostics validate_sequence(const GraphSequence& seq) {
  SequenceDiagnostics d;
  for (int t = 0; t < seq.T(); ++t) {
    const BinaryMatrix& a = seq.adj[t];
    if (a.n() != seq.n) {
      d.issues.push_back("snapshot t=" + std::to_string(t + 1) + " has n=" +
                         std::to_string(a.n()) + ", expected " +
                         std::to_string(seq.n));
      continue;
    }
    for (int i = 0; i < a.n(); ++i) {
      if (a(i, i) != 0) {
        d.issues.push_back("nonzero diagonal at (t=" + std::to_string(t + 1) +
                           ",i=" + std::to_string(i + 1) + ")");
      }
      for (int j = i + 1; j < a.n(); ++j) {
        if (a(i, j) != a(j, i)) {
          d.issues.push_back("asymmetric at (t=" + std::to_string(t + 1) +
                             ") entry (" + std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + ")");
        }
      }
    }
  }
  d.ok = d.issues.empty();
  return d;
}

}  // namespace dynsbm
