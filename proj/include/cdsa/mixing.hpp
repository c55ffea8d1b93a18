#pragma once

#include <Eigen/Dense>

#include "cdsa/topology.hpp"

namespace cdsa {

// Doubly stochastic mixing matrix together with the spectral radius of its
// deviation part W - (1/n) * ones * ones^T. rho_w < 1 iff the graph mixes.
struct WeightMatrix {
    Eigen::MatrixXd w;
    double rho_w = 1.0;
};

struct SpectralGap {
    double rho_w;
    double gap;  // 1 - rho_w
};

// Metropolis-Hastings weights: w_ij = 1 / (1 + max(deg_i, deg_j)) on each
// edge, diagonal completes the row to 1. Symmetric and doubly stochastic on
// any connected undirected graph.
WeightMatrix metropolis_weights(const Topology& t);

// Spectral radius of W - (1/n) * ones * ones^T by power iteration on the
// matrix-free deviation operator (absolute tolerance 1e-10, cap 100000
// iterations, restart with a fresh start vector on stagnation). Requires W
// symmetric and doubly stochastic within 1e-12; throws otherwise, and throws
// if the iteration fails to settle within the cap.
SpectralGap spectral_gap(const Eigen::MatrixXd& w);

}  // namespace cdsa
