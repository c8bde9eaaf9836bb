#pragma once

// Random instances for property checks. Deterministic for a given engine
// state; shared by the invariant suite and the test binaries.

#include <random>

#include <Eigen/Dense>

#include "vomech/dynamics.hpp"

namespace vomech::random {

using Engine = std::mt19937_64;

// Gaussian entries, then shifted so that max Re(lambda) = -margin with
// margin drawn from [0.05, 1].
Eigen::MatrixXd stable_matrix(Engine& rng, int n);

// Gaussian entries shifted by a random multiple of the identity; roughly
// half are stable. Matrices with |max Re(lambda)| < gap are redrawn.
Eigen::MatrixXd non_marginal_matrix(Engine& rng, int n, double gap = 1e-3);

// B B^T with Gaussian B: symmetric positive semidefinite.
Eigen::MatrixXd diffusion(Engine& rng, int n);

// S diag(nu) S^T with nu >= 1/2 and S a random product of local
// rotations, squeezers, beam splitters and two-mode squeezers.
Eigen::MatrixXd physical_cm(Engine& rng, int modes);

// Drawn until the drift matrix is stable.
LinearModel linear_model(Engine& rng);

} // namespace vomech::random
