// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "fdedit/flow_problem.hpp"

namespace fdedit {

/// Dense check of the small-mu behaviour of D(A) = mu A^T (mu A A^T + L kron I2)^-1 A.
///
/// With (sigma_i, u_i) the eigenpairs of L (sigma_1 = 0 dropped), U = (u_2..u_n),
/// U_bar = A^T (U kron I2), E_bar = A^T (1 kron I2), P = E_bar (E_bar^T E_bar)^+ E_bar^T
/// and Lp = U_bar (Sigma^-1 kron I2) U_bar^T:
///
///   D(A) = P + mu (Lp - P Lp - Lp P + P Lp P) + O(mu^2)
///
/// `approx_literal` omits the P Lp P term; that truncation leaves an O(mu)
/// remainder and is reported for comparison only.
struct ExpansionReport {
    double mu = 0.0;
    Eigen::VectorXd exact;           ///< D(A) b via the Schur-complement block inverse
    Eigen::VectorXd direct;          ///< D(A) b via a dense solve of the 2n x 2n system
    Eigen::VectorXd approx;          ///< (P + mu G) b, consistent first order
    Eigen::VectorXd approx_literal;  ///< (P + mu (Lp - P Lp - Lp P)) b
    Eigen::VectorXd leading;         ///< P b, the mu -> 0 limit

    double error = 0.0;          ///< ||exact - approx||
    double error_literal = 0.0;  ///< ||exact - approx_literal||
    double leading_error = 0.0;  ///< ||exact - leading||
    double schur_direct_diff = 0.0;

    int rank_e = 0;  ///< rank of E_bar (0..2)
    Eigen::MatrixXd e_bar;   ///< n x 2
    Eigen::MatrixXd u_bar;   ///< n x 2(n-1)
    Eigen::MatrixXd u;       ///< eigenvectors u_2..u_n of L
    Eigen::VectorXd sigma;   ///< eigenvalues sigma_2..sigma_n
};

/// Requires a grid of at most 12 x 12 (dense eigendecomposition of L). Throws
/// DegenerateError when every gradient is zero (E_bar^T E_bar = 0); a rank-1
/// E_bar is handled with pseudo-inverses.
ExpansionReport small_mu_expansion(const FlowProblem& prob);

/// Dense mu A^T (mu A A^T + L kron I2)^+ A, the projector form of the score.
Eigen::MatrixXd dense_projector(const FlowProblem& prob);

}  // namespace fdedit
