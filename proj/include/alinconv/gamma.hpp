#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "alinconv/algebra.hpp"
#include "alinconv/errors.hpp"

namespace alinconv {

// Sylvester-Hadamard matrix of order 2^k by recursive doubling. Exact in any
// scalar type; instantiate with an integer scalar for exact arithmetic.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> hadamard_matrix(int k) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (k < 0) throw DimensionMismatch("hadamard order must be nonnegative");
    if ((1 << k) > 64) throw DimensionTooLarge("hadamard order 2^" + std::to_string(k) + " exceeds 64");
    Mat h(1, 1);
    h(0, 0) = Scalar(1);
    for (int step = 0; step < k; ++step) {
        int n = static_cast<int>(h.rows());
        Mat next(2 * n, 2 * n);
        next.topLeftCorner(n, n) = h;
        next.topRightCorner(n, n) = h;
        next.bottomLeftCorner(n, n) = h;
        next.bottomRightCorner(n, n) = -h;
        h = std::move(next);
    }
    return h;
}

// The coordinate-change matrix Gamma (first row all ones, invertible) and its
// inverse eta. Immutable once built.
class GammaFrame {
public:
    // Validates the unit first row and invertibility; kind is a label kept
    // for configs and reports.
    GammaFrame(Eigen::MatrixXd gamma, std::string kind);

    int dim() const { return static_cast<int>(gamma_.rows()); }
    const Eigen::MatrixXd& gamma() const { return gamma_; }
    const Eigen::MatrixXd& eta() const { return eta_; }
    const std::string& kind() const { return kind_; }

private:
    Eigen::MatrixXd gamma_;
    Eigen::MatrixXd eta_;
    std::string kind_;
};

GammaFrame hadamard_gamma(int k);
GammaFrame vandermonde_gamma(int m);
// Hadamard when m is a power of two, Vandermonde on nodes 1..m otherwise.
GammaFrame default_gamma(int m);
GammaFrame custom_gamma(const Eigen::MatrixXd& gamma);

// Bold components of one slot: row l holds the coefficients of z^l, i.e. the
// basis summands of z scaled by row l of Gamma. Row 0 reproduces z itself.
Eigen::MatrixXd bold_components(const Algebra& algebra, const GammaFrame& frame, const Element& z);

// One m-by-m bold block per coordinate slot.
using BoldVector = std::vector<Eigen::MatrixXd>;

// Bold blocks of an ambient vector in R^{mn}, slot-major layout.
BoldVector bold_vector(const Algebra& algebra, const GammaFrame& frame, const Eigen::VectorXd& ambient, int n);

// Recovers the real coefficients from a consistent bold block by
// x_l = e_l^{-1} sum_p eta_{lp} z^p; raises InconsistentBold when that
// expression is not a real multiple of the identity.
Eigen::VectorXd reconstruct_real(const Algebra& algebra, const GammaFrame& frame, const Eigen::MatrixXd& bold);

// Formal first derivatives a_j^p: per slot j, row p holds the coefficients
// of sum_l eta_{lp} g_{jl} e_l^{-1}.
class FormalGradient {
public:
    FormalGradient(int n, int m) : n_(n), m_(m), slots_(n, Eigen::MatrixXd::Zero(m, m)) {}
    int slots() const { return n_; }
    int algebra_dim() const { return m_; }
    const Eigen::MatrixXd& slot(int j) const { return slots_[j]; }
    Eigen::MatrixXd& slot(int j) { return slots_[j]; }
    Element at(int j, int p) const { return slots_[j].row(p).transpose(); }

private:
    int n_, m_;
    std::vector<Eigen::MatrixXd> slots_;
};

// Formal second derivatives a_{ji}^{pq}, symmetric under (j,p) <-> (i,q).
class FormalHessian {
public:
    FormalHessian(int n, int m) : n_(n), m_(m), data_(static_cast<std::size_t>(n* m) * n * m, Element::Zero(m)) {}
    int slots() const { return n_; }
    int algebra_dim() const { return m_; }
    const Element& at(int j, int p, int i, int q) const { return data_[index(j, p, i, q)]; }
    Element& at(int j, int p, int i, int q) { return data_[index(j, p, i, q)]; }

private:
    std::size_t index(int j, int p, int i, int q) const {
        return (static_cast<std::size_t>(j) * m_ + p) * (static_cast<std::size_t>(n_) * m_) +
               static_cast<std::size_t>(i) * m_ + q;
    }
    int n_, m_;
    std::vector<Element> data_;
};

// real_grad is n-by-m, row j = partials with respect to slot j.
FormalGradient formal_gradient(const Algebra& algebra, const GammaFrame& frame, const Eigen::MatrixXd& real_grad);

// real_hess is mn-by-mn in ambient layout (j, l) -> j*m + l; must be
// symmetric to 1e-9 relative.
FormalHessian formal_hessian(const Algebra& algebra, const GammaFrame& frame, const Eigen::MatrixXd& real_hess);

// sum_j sum_p a_j^p z_j^p.
Element linear_form_value(const Algebra& algebra, const FormalGradient& fg, const BoldVector& bold);

// sum_{j,i} sum_{p,q} a_{ji}^{pq} z_i^q z_j^p.
Element quadratic_form_value(const Algebra& algebra, const FormalHessian& fh, const BoldVector& bold);

}  // namespace alinconv
