#pragma once

#include "dynsfm/seg/potentials.hpp"
#include "dynsfm/seg/types.hpp"

namespace dynsfm::seg {

// Factorized mean-field inference for the two-layer CRF: Q(z) = prod_i
// Q_i^O(x_i) Q_i^M(y_i). Updates are synchronous (all cells from the
// previous iterate), computed separately per layer; iteration stops when
// the largest per-pixel total-variation change drops below tol or after
// max_iters sweeps. Marginals are normalized after every update.
MarginalFields mean_field_infer(const UnaryField& unary, const CompatibilityMatrix& lambda,
                                const PairwiseGraph& graph, int max_iters, double tol);

// Per-pixel argmax of each layer's marginal; ties break to the lowest index.
JointLabeling decode(const MarginalFields& marginals);

// Exact CRF energy of a labeling: joint unaries plus both Potts families,
// each unordered neighbor pair counted once.
double energy(const JointLabeling& labeling, const UnaryField& unary,
              const CompatibilityMatrix& lambda, const PairwiseGraph& graph);

}  // namespace dynsfm::seg
