#pragma once

#include <Eigen/Dense>

#include "alinconv/algebra.hpp"
#include "alinconv/domain.hpp"
#include "alinconv/errors.hpp"

namespace alinconv {

// Zero set of sum_j c_j s_j translated to the anchor; coeffs column j = c_j.
struct AHyperplane {
    Eigen::VectorXd anchor;
    Eigen::MatrixXd coeffs;
};

// The tangent hyperplane data at a boundary point: algebra coefficients, the
// m-by-mn real linearization of sum_j c_j s_j, and an orthonormal basis of
// its kernel.
struct TangentFrame {
    Eigen::VectorXd anchor;
    Eigen::MatrixXd coeffs;
    Eigen::MatrixXd constraint;
    Eigen::MatrixXd kernel_basis;
    int kernel_dim = 0;
};

// c_j = eta * a_j from the distinguished inverse; the resulting plane lies in
// the real hyperplane with coefficients a. Input a is n-by-m, row j = slot j.
Eigen::MatrixXd embed_real_hyperplane(const Algebra& algebra, const Eigen::MatrixXd& a);

// Horizontal stack of the regular representations of the c_j; for any
// ambient s, constraint * s gives the coefficients of sum_j c_j s_j.
Eigen::MatrixXd constraint_matrix(const Algebra& algebra, const Eigen::MatrixXd& coeffs);

// Builds the tangent frame from the real gradient of rho at w.
TangentFrame tangent_frame(const Algebra& algebra, const DefiningFunction& domain, const Eigen::VectorXd& w);

// Membership of the direction s in the homogeneous equation of the plane.
bool contains(const Algebra& algebra, const AHyperplane& hyperplane, const Eigen::VectorXd& s);

}  // namespace alinconv
