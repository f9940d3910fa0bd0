// SPDX-License-Identifier: Apache-2.0
#include "fdedit/expansion.hpp"

#include <cmath>

#include "fdedit/error.hpp"

namespace fdedit {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd pinv_symmetric(const MatrixXd& m, int* rank = nullptr) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
    const VectorXd& ev = es.eigenvalues();
    const double cutoff = 1e-10 * ev.cwiseAbs().maxCoeff();
    VectorXd inv = VectorXd::Zero(ev.size());
    int r = 0;
    for (Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i)) > cutoff && ev.cwiseAbs().maxCoeff() > 0.0) {
            inv(i) = 1.0 / ev(i);
            ++r;
        }
    }
    if (rank) *rank = r;
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

// A^T as an n x 2n matrix.
MatrixXd a_transpose(const FlowProblem& prob) {
    const auto n = static_cast<Index>(prob.pixels());
    MatrixXd at = MatrixXd::Zero(n, 2 * n);
    for (Index p = 0; p < n; ++p) {
        at(p, 2 * p) = prob.ax.data()[p];
        at(p, 2 * p + 1) = prob.ay.data()[p];
    }
    return at;
}

MatrixXd system_matrix(const FlowProblem& prob, const MatrixXd& at) {
    const MatrixXd L = prob.laplacian.dense();
    const auto n = L.rows();
    MatrixXd k = prob.mu * at.transpose() * at;
    for (Index p = 0; p < n; ++p)
        for (Index q = 0; q < n; ++q) {
            k(2 * p, 2 * q) += L(p, q);
            k(2 * p + 1, 2 * q + 1) += L(p, q);
        }
    return k;
}

VectorXd b_vector(const FlowProblem& prob) {
    return Eigen::Map<const VectorXd>(prob.b.data().data(), static_cast<Index>(prob.pixels()));
}

}  // namespace

MatrixXd dense_projector(const FlowProblem& prob) {
    const MatrixXd at = a_transpose(prob);
    const MatrixXd k = system_matrix(prob, at);
    Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(k);
    return prob.mu * at * cod.solve(at.transpose());
}

ExpansionReport small_mu_expansion(const FlowProblem& prob) {
    if (prob.b.height() > 12 || prob.b.width() > 12) {
        throw ConfigError("small_mu_expansion: grid must be at most 12x12 (dense eigendecomposition)");
    }
    const auto n = static_cast<Index>(prob.pixels());
    const double mu = prob.mu;
    ExpansionReport rep;
    rep.mu = mu;

    Eigen::SelfAdjointEigenSolver<MatrixXd> es(prob.laplacian.dense());
    rep.u = es.eigenvectors().rightCols(n - 1);
    rep.sigma = es.eigenvalues().tail(n - 1);

    rep.e_bar.resize(n, 2);
    rep.u_bar.resize(n, 2 * (n - 1));
    for (Index p = 0; p < n; ++p) {
        const double a[2] = {prob.ax.data()[p], prob.ay.data()[p]};
        rep.e_bar(p, 0) = a[0];
        rep.e_bar(p, 1) = a[1];
        for (Index k = 0; k < n - 1; ++k) {
            rep.u_bar(p, 2 * k) = a[0] * rep.u(p, k);
            rep.u_bar(p, 2 * k + 1) = a[1] * rep.u(p, k);
        }
    }

    const MatrixXd ete = rep.e_bar.transpose() * rep.e_bar;
    if (!(ete.trace() > 0.0)) throw DegenerateError("small_mu_expansion: all image gradients are zero");
    const MatrixXd ete_pinv = pinv_symmetric(ete, &rep.rank_e);

    const VectorXd b = b_vector(prob);
    VectorXd sigma_inv2(2 * (n - 1));
    for (Index k = 0; k < n - 1; ++k) sigma_inv2(2 * k) = sigma_inv2(2 * k + 1) = 1.0 / rep.sigma(k);

    auto project = [&](const VectorXd& v) -> VectorXd { return rep.e_bar * (ete_pinv * (rep.e_bar.transpose() * v)); };
    auto lplus = [&](const VectorXd& v) -> VectorXd {
        return rep.u_bar * sigma_inv2.cwiseProduct(rep.u_bar.transpose() * v);
    };

    // First-order expansion.
    const VectorXd pb = project(b);
    const VectorXd lb = lplus(b);
    const VectorXd plb = project(lb);
    const VectorXd lpb = lplus(pb);
    const VectorXd plpb = project(lpb);
    rep.leading = pb;
    rep.approx_literal = pb + mu * (lb - plb - lpb);
    rep.approx = rep.approx_literal + mu * plpb;

    // Exact D(A) b through the 2x2 block inverse in the orthonormal basis
    // (U, 1/sqrt(n)) kron I2. Each block is scaled by mu so nothing is formed
    // at the 1/mu scale:
    //   B = Sigma + mu U_bar^T U_bar,   W = U_bar^T E_n,
    //   S = E_n^T E_n - mu W^T B^-1 W   (mu * Schur complement),
    //   mu M22 = S^+,  mu M12 = -mu B^-1 W S^+,
    //   mu M11 = mu B^-1 + mu^2 B^-1 W S^+ W^T B^-1.
    const MatrixXd e_n = rep.e_bar / std::sqrt(static_cast<double>(n));
    MatrixXd bmat = mu * rep.u_bar.transpose() * rep.u_bar;
    for (Index k = 0; k < n - 1; ++k) {
        bmat(2 * k, 2 * k) += rep.sigma(k);
        bmat(2 * k + 1, 2 * k + 1) += rep.sigma(k);
    }
    const Eigen::LLT<MatrixXd> bllt(bmat);
    const MatrixXd w = rep.u_bar.transpose() * e_n;
    const MatrixXd binv_w = bllt.solve(w);
    const MatrixXd s_pinv = pinv_symmetric(e_n.transpose() * e_n - mu * w.transpose() * binv_w);

    const VectorXd y_u = rep.u_bar.transpose() * b;
    const VectorXd y_e = e_n.transpose() * b;
    const VectorXd binv_yu = bllt.solve(y_u);
    const VectorXd top = mu * binv_yu + mu * mu * (binv_w * (s_pinv * (binv_w.transpose() * y_u))) -
                         mu * (binv_w * (s_pinv * y_e));
    const VectorXd bottom = -mu * (s_pinv * (binv_w.transpose() * y_u)) + s_pinv * y_e;
    rep.exact = rep.u_bar * top + e_n * bottom;

    rep.direct = dense_projector(prob) * b;

    rep.error = (rep.exact - rep.approx).norm();
    rep.error_literal = (rep.exact - rep.approx_literal).norm();
    rep.leading_error = (rep.exact - rep.leading).norm();
    rep.schur_direct_diff = (rep.exact - rep.direct).norm();
    return rep;
}

}  // namespace fdedit
