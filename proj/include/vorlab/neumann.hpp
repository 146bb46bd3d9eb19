// Neumann-series resolvent for the mirrored-pair operator: lobe-local
// solves against the plus/minus blocks plus the geometric series in the
// cross-lobe coupling U_R g = remainder(omega_app[g]),
//   omega = omega_app[g] + omega_app[sum_{k>=1} U_R^k g].
#pragma once
#include "assemble.hpp"
#include "eig.hpp"

namespace vorlab {

struct NeumannReport {
    CVec omega;
    std::vector<double> term_norms;  // ||U_R^k g|| for k = 1,2,...
    double norm_UR = 0.0;            // sigma_max of the composed operator
    int terms_used = 0;
    bool geometric = true;  // successive ratios within 20% of each other
};

class NeumannResolventER {
  public:
    NeumannResolventER(const LambdaERParts& parts, Complex lambda)
        : parts_(&parts), lambda_(lambda) {
        const DomainRestriction& R = parts.full.dofs;
        for (int q = 0; q < R.size(); ++q)
            (parts.in_upper[q] ? up_ : lo_).push_back(q);
        Eigen::MatrixXd P = parts.plus.to_dense(), M = parts.minus.to_dense();
        auto block = [&](const Eigen::MatrixXd& A, const std::vector<int>& idx) {
            Eigen::MatrixXcd B(idx.size(), idx.size());
            for (size_t r = 0; r < idx.size(); ++r)
                for (size_t c = 0; c < idx.size(); ++c) B(r, c) = -A(idx[r], idx[c]);
            B.diagonal().array() += lambda;
            return B;
        };
        lu_up_.compute(block(P, up_));
        lu_lo_.compute(block(M, lo_));
    }

    // Block-diagonal approximate resolvent omega_app[g].
    CVec omega_app(const CVec& g) const {
        CVec out = CVec::Zero(g.size());
        scatter(out, up_, lu_up_.solve(gather(g, up_)));
        scatter(out, lo_, lu_lo_.solve(gather(g, lo_)));
        return out;
    }

    CVec apply_UR(const CVec& g) const { return parts_->remainder.apply(omega_app(g)); }

    // sigma_max of the dense composed operator.
    double measure_norm_UR() const {
        const int n = parts_->full.size();
        Eigen::MatrixXcd M(n, n);
        CVec e = CVec::Zero(n);
        for (int c = 0; c < n; ++c) {
            e[c] = 1.0;
            M.col(c) = apply_UR(e);
            e[c] = 0.0;
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
        return svd.singularValues()[0];
    }

    NeumannReport solve(const CVec& g, int kmax = 64, double term_tol = 1e-14,
                        bool measure_norm = false) const {
        NeumannReport rep;
        if (measure_norm) {
            rep.norm_UR = measure_norm_UR();
            if (rep.norm_UR >= 1.0)
                throw SeriesDiverges("measured ||U_R|| = " + std::to_string(rep.norm_UR));
        }
        const double g0 = g.norm();
        CVec term = apply_UR(g);
        CVec series = CVec::Zero(g.size());
        double prev = g0;
        for (int k = 1; k <= kmax; ++k) {
            const double tn = term.norm();
            rep.term_norms.push_back(tn);
            if (tn >= prev && tn > 1e-12 * g0)
                throw SeriesDiverges("term " + std::to_string(k) + " grew to " +
                                     std::to_string(tn));
            series += term;
            rep.terms_used = k;
            if (tn <= term_tol * g0) break;
            prev = tn;
            term = apply_UR(term);
        }
        // ratio consistency across successive terms
        for (size_t k = 1; k + 1 < rep.term_norms.size(); ++k) {
            const double r0 = rep.term_norms[k] / rep.term_norms[k - 1];
            const double r1 = rep.term_norms[k + 1] / rep.term_norms[k];
            if (rep.term_norms[k + 1] > 1e-10 * g0 && std::abs(r1 - r0) > 0.2 * r0)
                rep.geometric = false;
        }
        rep.omega = omega_app(g) + omega_app(series);
        return rep;
    }

  private:
    static CVec gather(const CVec& x, const std::vector<int>& idx) {
        CVec out(idx.size());
        for (size_t k = 0; k < idx.size(); ++k) out[k] = x[idx[k]];
        return out;
    }
    static void scatter(CVec& x, const std::vector<int>& idx, const CVec& v) {
        for (size_t k = 0; k < idx.size(); ++k) x[idx[k]] = v[k];
    }

    const LambdaERParts* parts_;
    Complex lambda_;
    std::vector<int> up_, lo_;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu_up_, lu_lo_;
};

}  // namespace vorlab
