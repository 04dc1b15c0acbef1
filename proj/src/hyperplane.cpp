#include "alinconv/hyperplane.hpp"

#include <cmath>

namespace alinconv {

Eigen::MatrixXd embed_real_hyperplane(const Algebra& algebra, const Eigen::MatrixXd& a) {
    int m = algebra.dim();
    if (a.cols() != m || a.rows() < 1) throw DimensionMismatch("real coefficients must be n-by-m");
    if (!a.allFinite()) throw NonFiniteValue("real coefficients have a non-finite entry");
    if (a.cwiseAbs().maxCoeff() == 0.0) throw ZeroCoefficients("real hyperplane coefficients are all zero");
    return algebra.eta_ptilde() * a.transpose();
}

Eigen::MatrixXd constraint_matrix(const Algebra& algebra, const Eigen::MatrixXd& coeffs) {
    int m = algebra.dim();
    if (coeffs.rows() != m || coeffs.cols() < 1) throw DimensionMismatch("coefficients must be m-by-n");
    int n = static_cast<int>(coeffs.cols());
    Eigen::MatrixXd constraint(m, static_cast<Eigen::Index>(m) * n);
    for (int j = 0; j < n; ++j) {
        constraint.block(0, static_cast<Eigen::Index>(j) * m, m, m) =
            regular_representation(algebra, Element(coeffs.col(j)));
    }
    return constraint;
}

TangentFrame tangent_frame(const Algebra& algebra, const DefiningFunction& domain, const Eigen::VectorXd& w) {
    int m = algebra.dim();
    if (domain.algebra_dim() != m) throw DimensionMismatch("domain algebra dimension does not match algebra");
    int n = domain.slots();
    Eigen::VectorXd g = domain.gradient(w);
    if (g.norm() <= 1e-8 * domain.scale_at(w)) {
        throw DegenerateGradient("gradient vanishes at the anchor point");
    }
    Eigen::MatrixXd a(n, m);
    for (int j = 0; j < n; ++j) a.row(j) = g.segment(static_cast<Eigen::Index>(j) * m, m).transpose();

    TangentFrame frame;
    frame.anchor = w;
    frame.coeffs = embed_real_hyperplane(algebra, a);
    frame.constraint = constraint_matrix(algebra, frame.coeffs);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(frame.constraint, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cutoff = kRankTolerance * (sv.size() > 0 ? sv(0) : 0.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff && sv(i) > 0.0) ++rank;
    }
    frame.kernel_dim = n * m - rank;
    frame.kernel_basis = svd.matrixV().rightCols(frame.kernel_dim);
    return frame;
}

bool contains(const Algebra& algebra, const AHyperplane& hyperplane, const Eigen::VectorXd& s) {
    Eigen::MatrixXd constraint = constraint_matrix(algebra, hyperplane.coeffs);
    if (s.size() != constraint.cols()) throw DimensionMismatch("direction has wrong ambient dimension");
    double scale = 1.0 + hyperplane.coeffs.norm() * s.norm();
    return (constraint * s).norm() <= 1e-9 * scale;
}

}  // namespace alinconv
