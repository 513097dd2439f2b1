#include "dynsbm/predict.hpp"

#include <stdexcept>

namespace dynsbm {

Eigen::MatrixXd predict_links(const BinaryMatrix& A_prev, const Membership& g,
                              const DynamicsParams& params) {
  const int n = A_prev.n();
  if (g.n() != n) throw std::invalid_argument("predict: size mismatch");
  const int k = g.k;

  BlockMatrix f, h;
  switch (params.model) {
    case Model::TypeI:
      f = params.mu.cwiseProduct(params.W_at(1));
      h = BlockMatrix::Ones(k, k) - params.mu;
      break;
    case Model::TypeII:
      f = (1.0 - params.xi) * params.W_at(1);
      h = f.array() + params.xi;
      break;
    case Model::General:
      f = params.f;
      h = params.h;
      break;
  }

  Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int r = g.labels[i] - 1, s = g.labels[j] - 1;
      const double p = A_prev(i, j) ? h(r, s) : f(r, s);
      scores(i, j) = scores(j, i) = p;
    }
  }
  return scores;
}

}  // namespace dynsbm
