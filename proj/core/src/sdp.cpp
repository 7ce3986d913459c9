// twrbeam - distributed beamforming and achievable rate regions for
// two-way amplify-and-forward relay networks
// Copyright (C) 2026 the twrbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "twrbeam/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Conic core: min <C,X> + c.u  s.t.  <A_j,X> + a_j.u = b_j,  X PSD,  u >= 0.
// Solved with an infeasible-start primal-dual path-following method using
// Nesterov-Todd scaling and a Mehrotra-style adaptive centering parameter.
// ---------------------------------------------------------------------------

struct ConicProblem {
    Eigen::Index n = 0; // PSD block size
    Eigen::Index q = 0; // nonnegative scalars
    Eigen::MatrixXd c_psd;
    Eigen::VectorXd c_lin;
    std::vector<Eigen::MatrixXd> a_psd;
    Eigen::MatrixXd a_lin; // m x q
    Eigen::VectorXd b;

    Eigen::Index rows() const { return b.size(); }
};

struct ConicResult {
    bool converged = false;
    int iterations = 0;
    Eigen::MatrixXd x;
    Eigen::VectorXd u;
    Eigen::VectorXd y;
    Eigen::MatrixXd z_psd;
    Eigen::VectorXd z_lin;
    double pobj = 0.0;
    double dobj = 0.0;
    double kkt = kInf;
};

Eigen::VectorXd apply_primal(const ConicProblem& p, const Eigen::MatrixXd& x, const Eigen::VectorXd& u) {
    Eigen::VectorXd out(p.rows());
    for (Eigen::Index j = 0; j < p.rows(); ++j)
        out(j) = p.a_psd[static_cast<std::size_t>(j)].cwiseProduct(x).sum();
    if (p.q > 0) out += p.a_lin * u;
    return out;
}

Eigen::MatrixXd apply_adjoint(const ConicProblem& p, const Eigen::VectorXd& y) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(p.n, p.n);
    for (Eigen::Index j = 0; j < p.rows(); ++j)
        out += y(j) * p.a_psd[static_cast<std::size_t>(j)];
    return out;
}

// Largest step alpha with X + alpha*D staying PSD, via the smallest
// eigenvalue of L^{-1} D L^{-T}.
double psd_step_length(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::MatrixXd& d) {
    const Eigen::MatrixXd l = llt.matrixL();
    Eigen::MatrixXd t = l.triangularView<Eigen::Lower>().solve(d);
    t = l.triangularView<Eigen::Lower>().solve(t.transpose());
    t = 0.5 * (t + t.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t, Eigen::EigenvaluesOnly);
    const double lambda_min = es.eigenvalues().minCoeff();
    if (lambda_min >= -1e-14) return kInf;
    return -1.0 / lambda_min;
}

double lin_step_length(const Eigen::VectorXd& u, const Eigen::VectorXd& du) {
    double alpha = kInf;
    for (Eigen::Index i = 0; i < u.size(); ++i)
        if (du(i) < 0.0) alpha = std::min(alpha, -u(i) / du(i));
    return alpha;
}

ConicResult solve_conic(const ConicProblem& p, double tol, int max_iter) {
    const Eigen::Index n = p.n;
    const Eigen::Index q = p.q;
    const Eigen::Index m = p.rows();
    const double cone_dim = static_cast<double>(n + q);

    double norm_a_max = 1.0;
    for (Eigen::Index j = 0; j < m; ++j) {
        double na = p.a_psd[static_cast<std::size_t>(j)].norm();
        if (q > 0) na = std::hypot(na, p.a_lin.row(j).norm());
        norm_a_max = std::max(norm_a_max, na);
    }
    const double norm_b = p.b.size() ? p.b.lpNorm<Eigen::Infinity>() : 0.0;
    double norm_c = p.c_psd.norm();
    if (q > 0) norm_c = std::hypot(norm_c, p.c_lin.norm());

    const double x0 = std::max({10.0, std::sqrt(cone_dim), cone_dim * (1.0 + norm_b) / (1.0 + norm_a_max)});
    const double z0 = std::max({10.0, std::sqrt(cone_dim), norm_a_max, norm_c});

    ConicResult res;
    res.x = x0 * Eigen::MatrixXd::Identity(n, n);
    res.u = Eigen::VectorXd::Constant(q, x0);
    res.y = Eigen::VectorXd::Zero(m);
    res.z_psd = z0 * Eigen::MatrixXd::Identity(n, n);
    res.z_lin = Eigen::VectorXd::Constant(q, z0);

    for (int iter = 0; iter < max_iter; ++iter) {
        res.iterations = iter;

        const Eigen::VectorXd rp = p.b - apply_primal(p, res.x, res.u);
        Eigen::MatrixXd rd_psd = p.c_psd - res.z_psd - apply_adjoint(p, res.y);
        Eigen::VectorXd rd_lin = p.c_lin - res.z_lin;
        if (q > 0) rd_lin -= p.a_lin.transpose() * res.y;

        res.pobj = p.c_psd.cwiseProduct(res.x).sum() + (q > 0 ? p.c_lin.dot(res.u) : 0.0);
        res.dobj = p.b.dot(res.y);
        const double gap = res.x.cwiseProduct(res.z_psd).sum() + (q > 0 ? res.u.dot(res.z_lin) : 0.0);
        const double mu = gap / cone_dim;

        const double pinf = rp.norm() / (1.0 + p.b.norm());
        const double dinf = std::hypot(rd_psd.norm(), rd_lin.norm()) / (1.0 + norm_c);
        const double gap_rel = gap / (1.0 + std::min(std::abs(res.pobj), std::abs(res.dobj)));
        res.kkt = std::max({pinf, dinf, gap_rel});
        // Primal residuals collapse quickly; insisting on 1e-7 there keeps
        // recovered matrices constraint-accurate even at loose gap tolerances.
        if (pinf <= std::min(tol, 1e-7) && dinf <= tol && gap_rel <= tol) {
            res.converged = true;
            return res;
        }

        // Nesterov-Todd scaling point W with W Z W = X.
        Eigen::LLT<Eigen::MatrixXd> llt_x(res.x);
        Eigen::LLT<Eigen::MatrixXd> llt_z(res.z_psd);
        if (llt_x.info() != Eigen::Success || llt_z.info() != Eigen::Success) return res;
        const Eigen::MatrixXd lx = llt_x.matrixL();
        const Eigen::MatrixXd lz = llt_z.matrixL();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(lz.transpose() * lx,
                                              Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd sv = svd.singularValues();
        if (sv.minCoeff() <= 0.0) return res;
        const Eigen::MatrixXd e = lx * svd.matrixV() * sv.cwiseSqrt().cwiseInverse().asDiagonal();
        const Eigen::MatrixXd w = e * e.transpose();
        const Eigen::VectorXd w2 = q > 0 ? (res.u.cwiseQuotient(res.z_lin)).eval() : Eigen::VectorXd();

        // Schur complement M(j,k) = <A_j, W A_k W> + sum_i w2_i a_ji a_ki.
        std::vector<Eigen::MatrixXd> waw(static_cast<std::size_t>(m));
        for (Eigen::Index j = 0; j < m; ++j)
            waw[static_cast<std::size_t>(j)] = w * p.a_psd[static_cast<std::size_t>(j)] * w;
        Eigen::MatrixXd schur(m, m);
        for (Eigen::Index j = 0; j < m; ++j)
            for (Eigen::Index k = j; k < m; ++k) {
                double v = p.a_psd[static_cast<std::size_t>(j)].cwiseProduct(waw[static_cast<std::size_t>(k)]).sum();
                if (q > 0) v += p.a_lin.row(j).cwiseProduct(w2.transpose()).dot(p.a_lin.row(k));
                schur(j, k) = v;
                schur(k, j) = v;
            }
        Eigen::LDLT<Eigen::MatrixXd> schur_fact(schur);
        if (schur_fact.info() != Eigen::Success) {
            schur += 1e-12 * std::max(1.0, schur.trace() / static_cast<double>(m)) *
                     Eigen::MatrixXd::Identity(m, m);
            schur_fact.compute(schur);
            if (schur_fact.info() != Eigen::Success) return res;
        }
        // The Schur matrix picks up huge rank-one terms from basic scalar
        // variables near the optimum; refinement keeps the directions usable.
        auto schur_solve = [&](const Eigen::VectorXd& rhs) {
            Eigen::VectorXd sol = schur_fact.solve(rhs);
            for (int pass = 0; pass < 2; ++pass) sol += schur_fact.solve(rhs - schur * sol);
            return sol;
        };

        const Eigen::MatrixXd z_inv = llt_z.solve(Eigen::MatrixXd::Identity(n, n));
        const Eigen::MatrixXd w_rd_w = w * rd_psd * w;

        struct Direction {
            Eigen::MatrixXd dx, dz;
            Eigen::VectorXd du, dzl, dy;
            double alpha_p = 0.0, alpha_d = 0.0;
        };

        // One Newton solve of the Z^{-1}-linearized system; the corrector
        // pass feeds the affine direction back in as a second-order term.
        auto compute_direction = [&](double sigma_mu, const Direction* second_order) {
            Direction dir;
            Eigen::MatrixXd v_psd = sigma_mu * z_inv - res.x - w_rd_w;
            Eigen::VectorXd v_lin(q);
            for (Eigen::Index i = 0; i < q; ++i)
                v_lin(i) = sigma_mu / res.z_lin(i) - res.u(i) - w2(i) * rd_lin(i);
            if (second_order) {
                const Eigen::MatrixXd cross = second_order->dx * second_order->dz * z_inv;
                v_psd -= 0.5 * (cross + cross.transpose());
                for (Eigen::Index i = 0; i < q; ++i)
                    v_lin(i) -= second_order->du(i) * second_order->dzl(i) / res.z_lin(i);
            }

            Eigen::VectorXd rhs = rp - apply_primal(p, v_psd, v_lin);
            dir.dy = schur_solve(rhs);
            dir.dz = rd_psd - apply_adjoint(p, dir.dy);
            dir.dzl = rd_lin;
            if (q > 0) dir.dzl -= p.a_lin.transpose() * dir.dy;
            dir.dx = v_psd + w * (apply_adjoint(p, dir.dy)) * w;
            dir.dx = 0.5 * (dir.dx + dir.dx.transpose()).eval();
            dir.du = v_lin;
            for (Eigen::Index i = 0; i < q; ++i) dir.du(i) += w2(i) * (p.a_lin.col(i).dot(dir.dy));

            dir.alpha_p = std::min({1.0, 0.98 * psd_step_length(llt_x, dir.dx),
                                    0.98 * lin_step_length(res.u, dir.du)});
            dir.alpha_d = std::min({1.0, 0.98 * psd_step_length(llt_z, dir.dz),
                                    0.98 * lin_step_length(res.z_lin, dir.dzl)});
            return dir;
        };

        // Predictor pass, then a small search over centering weights; the
        // Mehrotra guess alone throttles badly when strict complementarity
        // fails (routine for rank-one-recovery relaxations).
        const Direction affine = compute_direction(0.0, nullptr);
        auto gap_after = [&](const Direction& d) {
            double g = (res.x + d.alpha_p * d.dx).cwiseProduct(res.z_psd + d.alpha_d * d.dz).sum();
            if (q > 0) g += (res.u + d.alpha_p * d.du).dot(res.z_lin + d.alpha_d * d.dzl);
            return std::max(g, 0.0);
        };
        const double sigma_mehrotra =
            std::clamp(std::pow(gap_after(affine) / gap, 3.0), 1e-8, 1.0);

        Direction dir = compute_direction(sigma_mehrotra * mu, &affine);
        if (std::min(dir.alpha_p, dir.alpha_d) < 0.3) {
            // Escape hatch for degenerate endgames: scan a few centering
            // weights and keep whichever cuts the gap most.
            double best_gap = gap_after(dir);
            for (double sigma : {0.8, 0.5, 0.2, 0.05}) {
                Direction cand = compute_direction(sigma * mu, &affine);
                const double g = gap_after(cand);
                if (g < best_gap) {
                    best_gap = g;
                    dir = std::move(cand);
                }
            }
            if (best_gap > 0.999 * gap) { // corrector hurt; try the plain step
                Direction cand = compute_direction(sigma_mehrotra * mu, nullptr);
                if (gap_after(cand) < best_gap) dir = std::move(cand);
            }
        }

        // Guard against rounding pushing an iterate off the cone.
        for (int back = 0; back < 10; ++back) {
            const Eigen::MatrixXd x_next = res.x + dir.alpha_p * dir.dx;
            const Eigen::MatrixXd z_next = res.z_psd + dir.alpha_d * dir.dz;
            if (Eigen::LLT<Eigen::MatrixXd>(x_next).info() == Eigen::Success &&
                Eigen::LLT<Eigen::MatrixXd>(z_next).info() == Eigen::Success)
                break;
            dir.alpha_p *= 0.8;
            dir.alpha_d *= 0.8;
        }

        res.x += dir.alpha_p * dir.dx;
        res.u += dir.alpha_p * dir.du;
        res.y += dir.alpha_d * dir.dy;
        res.z_psd += dir.alpha_d * dir.dz;
        res.z_lin += dir.alpha_d * dir.dzl;

        if (std::max(dir.alpha_p, dir.alpha_d) < 1e-10) return res; // stalled
    }
    res.iterations = max_iter;
    return res;
}

// ---------------------------------------------------------------------------
// Problem assembly
// ---------------------------------------------------------------------------

struct EmbeddedData {
    Eigen::Index k = 0;           // complex dimension
    Eigen::Index n = 0;           // 2k
    std::vector<Eigen::MatrixXd> a_half; // 0.5 * embed(B_j), constraint order
    std::vector<ConstraintSense> senses;
    Eigen::VectorXd bounds;
    Eigen::VectorXd row_scale;
    Eigen::VectorXd diag_bounds;  // may be empty
    Eigen::MatrixXd c_half;       // 0.5 * embed(C) (zero when feasibility-only)
    bool has_objective = false;
};

EmbeddedData embed_problem(const HermitianTraceSdp& p) {
    EmbeddedData d;
    d.k = p.dim;
    d.n = 2 * p.dim;
    const std::size_t m = p.constraints.size();
    d.a_half.reserve(m);
    d.senses.reserve(m);
    d.bounds.resize(static_cast<Eigen::Index>(m));
    d.row_scale.resize(static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j) {
        Eigen::MatrixXd a = 0.5 * real_embed(p.constraints[j].matrix);
        const double scale = std::max(1.0, a.norm());
        d.a_half.push_back(a / scale);
        d.senses.push_back(p.constraints[j].sense);
        d.bounds(static_cast<Eigen::Index>(j)) = p.constraints[j].bound / scale;
        d.row_scale(static_cast<Eigen::Index>(j)) = scale;
    }
    d.diag_bounds = p.diag_upper_bounds;
    if (p.objective) {
        d.has_objective = true;
        d.c_half = 0.5 * real_embed(*p.objective);
    } else {
        d.c_half = Eigen::MatrixXd::Zero(d.n, d.n);
    }
    return d;
}

// PSD coefficient of a diagonal-pair bound row: 0.5*(e_i e_i^T + e_{i+k} e_{i+k}^T),
// whose inner product with the embedding equals the complex X_ii.
Eigen::MatrixXd diag_pair_matrix(Eigen::Index k, Eigen::Index i) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * k, 2 * k);
    m(i, i) = 0.5;
    m(i + k, i + k) = 0.5;
    return m;
}

bool zero_matrix_feasible(const EmbeddedData& d) {
    for (std::size_t j = 0; j < d.a_half.size(); ++j) {
        const double bound = d.bounds(static_cast<Eigen::Index>(j));
        if (d.senses[j] == ConstraintSense::GreaterEqual && bound > 0.0) return false;
        if (d.senses[j] == ConstraintSense::LessEqual && bound < 0.0) return false;
    }
    return true; // diagonal bounds are validated nonnegative
}

struct MarginOutcome {
    bool solved = false;
    double margin = -kInf;
    Eigen::MatrixXd x_hat;  // embedded primal PSD block
    double tau = 0.0;
    Eigen::VectorXd row_multipliers; // per inequality row, solver scaling removed
    double kkt = kInf;
};

// Max-margin homogenized feasibility problem:
//   max s   s.t. value_j(X, tau) >= s (general rows), diag rows plain,
//               tr(X) + tau = 1, X PSD, tau >= 0,
// written with s = s_tilde - L so every variable is conic.
MarginOutcome solve_margin(const EmbeddedData& d, double tol, int max_iter) {
    const Eigen::Index m_general = static_cast<Eigen::Index>(d.a_half.size());
    const Eigen::Index m_diag = d.diag_bounds.size();
    const Eigen::Index m_rows = m_general + m_diag + 1;

    double big_l = 1.0;
    for (Eigen::Index j = 0; j < m_general; ++j)
        big_l = std::max(big_l, d.a_half[static_cast<std::size_t>(j)].norm() * 2.0 +
                                    std::abs(d.bounds(j)));

    ConicProblem cp;
    cp.n = d.n;
    cp.q = 2 + m_general + m_diag; // tau, s_tilde, slacks
    cp.c_psd = Eigen::MatrixXd::Zero(d.n, d.n);
    cp.c_lin = Eigen::VectorXd::Zero(cp.q);
    cp.c_lin(1) = -1.0; // maximize s_tilde
    cp.a_lin = Eigen::MatrixXd::Zero(m_rows, cp.q);
    cp.b = Eigen::VectorXd::Zero(m_rows);
    cp.a_psd.resize(static_cast<std::size_t>(m_rows));

    for (Eigen::Index j = 0; j < m_general; ++j) {
        const bool ge = d.senses[static_cast<std::size_t>(j)] == ConstraintSense::GreaterEqual;
        const double sign = ge ? 1.0 : -1.0;
        cp.a_psd[static_cast<std::size_t>(j)] = sign * d.a_half[static_cast<std::size_t>(j)];
        cp.a_lin(j, 0) = -sign * d.bounds(j); // tau
        cp.a_lin(j, 1) = -1.0;                // s_tilde
        cp.a_lin(j, 2 + j) = -1.0;            // slack
        cp.b(j) = -big_l;
    }
    for (Eigen::Index i = 0; i < m_diag; ++i) {
        const Eigen::Index row = m_general + i;
        cp.a_psd[static_cast<std::size_t>(row)] = -diag_pair_matrix(d.k, i);
        cp.a_lin(row, 0) = d.diag_bounds(i);
        cp.a_lin(row, 2 + m_general + i) = -1.0;
        cp.b(row) = 0.0;
    }
    {
        const Eigen::Index row = m_general + m_diag;
        cp.a_psd[static_cast<std::size_t>(row)] = 0.5 * Eigen::MatrixXd::Identity(d.n, d.n);
        cp.a_lin(row, 0) = 1.0;
        cp.b(row) = 1.0;
    }

    const ConicResult cr = solve_conic(cp, tol, max_iter);
    MarginOutcome out;
    out.solved = cr.converged;
    out.kkt = cr.kkt;
    out.margin = cr.u(1) - big_l;
    out.x_hat = cr.x;
    out.tau = cr.u(0);
    // Undo the per-row normalization so the multipliers pair with the
    // original constraint data.
    out.row_multipliers = cr.y.head(m_general + m_diag);
    for (Eigen::Index j = 0; j < m_general; ++j) out.row_multipliers(j) /= d.row_scale(j);
    return out;
}

// Smallest normalized slack of X against the original problem data; strictly
// positive means X is a verified strictly feasible witness.
double direct_margin(const HermitianTraceSdp& p, const Eigen::MatrixXcd& x) {
    double margin = kInf;
    for (const auto& c : p.constraints) {
        const double scale = std::max(1.0, c.matrix.norm());
        const double value = c.matrix.cwiseProduct(x.conjugate()).sum().real();
        const double slack = c.sense == ConstraintSense::GreaterEqual ? value - c.bound
                                                                      : c.bound - value;
        margin = std::min(margin, slack / scale);
    }
    for (Eigen::Index i = 0; i < p.diag_upper_bounds.size(); ++i)
        margin = std::min(margin, p.diag_upper_bounds(i) - x(i, i).real());
    return margin;
}

// Farkas-type certificate check: with nonnegative row multipliers y,
//   sum_{>=} y_j B_j - sum_{<=} y_j B_j - sum_diag y_i E_ii  must be
// negative semidefinite while the matching bound combination stays positive.
bool validate_certificate(const HermitianTraceSdp& p, const Eigen::VectorXd& y) {
    const Eigen::Index m_general = static_cast<Eigen::Index>(p.constraints.size());
    const Eigen::Index m_diag = p.diag_upper_bounds.size();
    if (y.size() != m_general + m_diag) return false;
    if (y.minCoeff() < -1e-9 * std::max(1.0, y.cwiseAbs().maxCoeff())) return false;

    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(p.dim, p.dim);
    double combo = 0.0;
    for (Eigen::Index j = 0; j < m_general; ++j) {
        const auto& c = p.constraints[static_cast<std::size_t>(j)];
        const double sign = c.sense == ConstraintSense::GreaterEqual ? 1.0 : -1.0;
        g += sign * y(j) * c.matrix;
        combo += sign * y(j) * c.bound;
    }
    for (Eigen::Index i = 0; i < m_diag; ++i) {
        g(i, i) -= y(m_general + i);
        combo -= y(m_general + i) * p.diag_upper_bounds(i);
    }
    if (combo <= 0.0) return false;
    g /= combo;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    return es.eigenvalues().maxCoeff() <= 1e-6 * scale;
}

SdpOutcome optimize_stage(const HermitianTraceSdp& p, const EmbeddedData& d, double tol, int max_iter) {
    const Eigen::Index m_general = static_cast<Eigen::Index>(d.a_half.size());
    const Eigen::Index m_diag = d.diag_bounds.size();
    const Eigen::Index m_rows = m_general + m_diag;

    ConicProblem cp;
    cp.n = d.n;
    cp.q = m_rows; // one slack per inequality
    cp.c_psd = d.c_half;
    cp.c_lin = Eigen::VectorXd::Zero(cp.q);
    cp.a_lin = Eigen::MatrixXd::Zero(m_rows, cp.q);
    cp.b = Eigen::VectorXd::Zero(m_rows);
    cp.a_psd.resize(static_cast<std::size_t>(m_rows));

    for (Eigen::Index j = 0; j < m_general; ++j) {
        const bool ge = d.senses[static_cast<std::size_t>(j)] == ConstraintSense::GreaterEqual;
        cp.a_psd[static_cast<std::size_t>(j)] = d.a_half[static_cast<std::size_t>(j)];
        cp.a_lin(j, j) = ge ? -1.0 : 1.0;
        cp.b(j) = d.bounds(j);
    }
    for (Eigen::Index i = 0; i < m_diag; ++i) {
        const Eigen::Index row = m_general + i;
        cp.a_psd[static_cast<std::size_t>(row)] = diag_pair_matrix(d.k, i);
        cp.a_lin(row, row) = 1.0;
        cp.b(row) = d.diag_bounds(i);
    }

    const ConicResult cr = solve_conic(cp, tol, max_iter);

    // The iterate is reported even without convergence; callers holding a
    // direct feasibility check can still certify near-converged results.
    SdpOutcome out;
    out.kkt_residual = cr.kkt;
    out.status = cr.converged ? SdpStatus::Optimal : SdpStatus::MaxIterations;
    out.x_matrix = complex_recover(cr.x);
    out.objective_value = p.objective
        ? p.objective->cwiseProduct(out.x_matrix.conjugate()).sum().real()
        : 0.0;
    out.dual_objective = cr.dobj;
    out.dual_slack = 2.0 * complex_recover(cr.z_psd);
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

Eigen::MatrixXd real_embed(const Eigen::MatrixXcd& m) {
    const Eigen::Index k = m.rows();
    if (m.cols() != k) throw DimensionError("real_embed expects a square matrix");
    Eigen::MatrixXd out(2 * k, 2 * k);
    out.topLeftCorner(k, k) = m.real();
    out.topRightCorner(k, k) = -m.imag();
    out.bottomLeftCorner(k, k) = m.imag();
    out.bottomRightCorner(k, k) = m.real();
    return out;
}

Eigen::MatrixXcd complex_recover(const Eigen::MatrixXd& m_hat) {
    const Eigen::Index n = m_hat.rows();
    if (m_hat.cols() != n || n % 2 != 0)
        throw DimensionError("complex_recover expects an even-sized square matrix");
    const Eigen::Index k = n / 2;
    Eigen::MatrixXcd out(k, k);
    out.real() = 0.5 * (m_hat.topLeftCorner(k, k) + m_hat.bottomRightCorner(k, k));
    out.imag() = 0.5 * (m_hat.bottomLeftCorner(k, k) - m_hat.topRightCorner(k, k));
    return out;
}

void HermitianTraceSdp::validate() const {
    if (dim < 1) throw DimensionError("sdp dimension must be at least 1");
    auto check_hermitian = [&](const Eigen::MatrixXcd& m, const char* what) {
        if (m.rows() != dim || m.cols() != dim)
            throw DimensionError(std::string(what) + " has the wrong dimension");
        const double scale = std::max(1.0, m.norm());
        if ((m - m.adjoint()).norm() > 1e-12 * scale)
            throw ParameterError(std::string(what) + " is not Hermitian");
    };
    if (objective) check_hermitian(*objective, "objective matrix");
    for (const auto& c : constraints) {
        check_hermitian(c.matrix, "constraint matrix");
        if (!std::isfinite(c.bound)) throw ParameterError("constraint bound must be finite");
    }
    if (diag_upper_bounds.size() != 0) {
        if (diag_upper_bounds.size() != dim)
            throw DimensionError("diagonal bound vector has the wrong dimension");
        if (!diag_upper_bounds.allFinite()) throw ParameterError("diagonal bounds must be finite");
    }
}

RealTraceSdp real_embed(const HermitianTraceSdp& p) {
    p.validate();
    RealTraceSdp r;
    r.dim = 2 * p.dim;
    if (p.objective) r.objective = real_embed(*p.objective);
    r.constraints.reserve(p.constraints.size());
    for (const auto& c : p.constraints)
        r.constraints.push_back({real_embed(c.matrix), c.sense, c.bound});
    r.diag_pair_upper_bounds = p.diag_upper_bounds;
    return r;
}

SdpOutcome solve(const HermitianTraceSdp& p, const SdpOptions& options) {
    p.validate();
    if (p.dim > 64) throw ParameterError("sdp engine is limited to K <= 64");
    if (!(options.tolerance >= 1e-10 && options.tolerance <= 1e-4))
        throw ParameterError("sdp tolerance must lie in [1e-10, 1e-4]");
    if (options.max_iterations < 1) throw ParameterError("iteration cap must be positive");

    const EmbeddedData data = embed_problem(p);

    // A negative diagonal cap can never be met by a PSD matrix.
    for (Eigen::Index i = 0; i < data.diag_bounds.size(); ++i) {
        if (data.diag_bounds(i) < 0.0) {
            SdpOutcome out;
            out.status = SdpStatus::Infeasible;
            out.certificate = Eigen::VectorXd::Zero(
                static_cast<Eigen::Index>(p.constraints.size()) + data.diag_bounds.size());
            out.certificate(static_cast<Eigen::Index>(p.constraints.size()) + i) = 1.0;
            out.feasibility_margin = data.diag_bounds(i);
            return out;
        }
    }

    const bool trivially_feasible = zero_matrix_feasible(data);
    double margin = trivially_feasible ? 0.0 : -kInf;
    MarginOutcome margin_result;
    Eigen::MatrixXcd witness;
    bool have_witness = false;

    if (!trivially_feasible) {
        margin_result = solve_margin(data, options.tolerance, options.max_iterations);
        margin = margin_result.margin;
        // Certify feasibility from the recovered iterate itself; the solver
        // status alone is not trusted near degenerate optima.
        if (margin_result.x_hat.size() > 0 && margin_result.tau > 1e-12) {
            const Eigen::MatrixXcd candidate =
                complex_recover(margin_result.x_hat) / margin_result.tau;
            if (direct_margin(p, candidate) > 0.0) {
                witness = candidate;
                have_witness = true;
            }
        }
        const double threshold = std::max(options.tolerance, 1e-9);
        const bool feasible = have_witness || (margin_result.solved && margin > threshold);
        if (!feasible) {
            SdpOutcome out;
            out.feasibility_margin = margin;
            out.kkt_residual = margin_result.kkt;
            Eigen::VectorXd y = margin_result.row_multipliers.cwiseMax(0.0);
            if (y.size() > 0 && validate_certificate(p, y)) {
                out.status = SdpStatus::Infeasible;
                out.certificate = y;
            } else {
                out.status = SdpStatus::MaxIterations;
            }
            return out;
        }
    }

    if (!data.has_objective) {
        SdpOutcome out;
        out.feasibility_margin = margin;
        if (trivially_feasible) {
            out.status = SdpStatus::Optimal;
            out.x_matrix = Eigen::MatrixXcd::Zero(p.dim, p.dim);
            out.dual_slack = Eigen::MatrixXcd::Zero(p.dim, p.dim);
            out.kkt_residual = 0.0;
            return out;
        }
        if (!have_witness) {
            out.status = SdpStatus::MaxIterations;
            out.kkt_residual = margin_result.kkt;
            return out;
        }
        // The witness is verified against the constraints directly.
        out.status = SdpStatus::Optimal;
        out.x_matrix = witness;
        out.dual_slack = Eigen::MatrixXcd::Zero(p.dim, p.dim);
        out.kkt_residual = 0.0;
        return out;
    }

    // With a PSD objective the zero matrix is already optimal when feasible.
    if (trivially_feasible) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(*p.objective, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() >= 0.0) {
            SdpOutcome out;
            out.status = SdpStatus::Optimal;
            out.x_matrix = Eigen::MatrixXcd::Zero(p.dim, p.dim);
            out.dual_slack = *p.objective;
            out.objective_value = 0.0;
            out.dual_objective = 0.0;
            out.kkt_residual = 0.0;
            out.feasibility_margin = margin;
            return out;
        }
    }

    SdpOutcome out = optimize_stage(p, data, options.tolerance, options.max_iterations);
    out.feasibility_margin = margin;
    return out;
}

SdpOutcome solve(const HermitianTraceSdp& p, double tolerance) {
    SdpOptions opt;
    opt.tolerance = tolerance;
    return solve(p, opt);
}

} // namespace twr
