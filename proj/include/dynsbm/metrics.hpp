#pragma once

#include <vector>

#include "dynsbm/types.hpp"

namespace dynsbm {

// Normalized mutual information between two label partitions, natural
// logs, normalized by the arithmetic mean of the entropies. Both
// partitions single-cluster -> 1 by convention.
double nmi(const Membership& g1, const Membership& g2);

// Minimum over label permutations of the fraction of mismatched nodes
// (exact, via assignment on the confusion matrix).
double misclassification(const Membership& g_hat, const Membership& g_star);

// ||P' W_hat P - W_true||_F / ||W_true||_F minimized over simultaneous
// row/column permutations. Throws on a zero W_true.
double frob_error(const BlockMatrix& W_hat, const BlockMatrix& W_true);

// Mann-Whitney AUC with midranks for ties. Throws unless both classes
// are present.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

// NMI restricted to a node subset (used for minority-node error curves).
double nmi_subset(const Membership& g1, const Membership& g2,
                  const std::vector<int>& nodes);

}  // namespace dynsbm
