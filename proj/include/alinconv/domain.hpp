#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "alinconv/errors.hpp"

namespace alinconv {

// A smooth defining function rho on R^{mn} with Omega = {rho < 0}. Derivatives
// come from closed forms when provided and central differences otherwise.
class DefiningFunction {
public:
    using Evaluator = std::function<double(const Eigen::VectorXd&)>;
    using GradientFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
    using HessianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

    DefiningFunction(int n, int m, std::string name, Evaluator rho);
    DefiningFunction(int n, int m, std::string name, Evaluator rho, GradientFn grad, HessianFn hess);

    int slots() const { return n_; }
    int algebra_dim() const { return m_; }
    int ambient_dim() const { return n_ * m_; }
    const std::string& name() const { return name_; }
    bool has_analytic_derivatives() const { return static_cast<bool>(grad_); }

    double value(const Eigen::VectorXd& z) const;
    Eigen::VectorXd gradient(const Eigen::VectorXd& z) const;
    // Symmetrized as (H + H^T)/2 on both paths.
    Eigen::MatrixXd hessian(const Eigen::VectorXd& z) const;

    // Central-difference paths regardless of analytic availability, for
    // cross-checks.
    Eigen::VectorXd fd_gradient(const Eigen::VectorXd& z) const;
    Eigen::MatrixXd fd_hessian(const Eigen::VectorXd& z) const;

    // Tolerance scale 1 + |rho(z)| + ||z||^2.
    double scale_at(const Eigen::VectorXd& z) const;

private:
    void check_point(const Eigen::VectorXd& z) const;

    int n_, m_;
    std::string name_;
    Evaluator rho_;
    GradientFn grad_;
    HessianFn hess_;
};

struct BoundaryPoint {
    Eigen::VectorXd w;
    double residual = 0.0;
};

// Damped Newton along the gradient until |rho| <= 1e-10 * scale(z0), at most
// 100 iterations. A vanishing gradient triggers a deterministic nudge small
// enough that an ill-posed start (e.g. the exact center of a ball) still
// fails rather than picking an arbitrary boundary point.
BoundaryPoint project_to_boundary(const DefiningFunction& f, const Eigen::VectorXd& z0);

// Uniform draws in the box, projected and deduplicated (distance 1e-6);
// points with a degenerate gradient are discarded. Deterministic per seed.
std::vector<BoundaryPoint> sample_boundary(const DefiningFunction& f, int count, std::uint64_t seed,
                                           double box_lo = -2.0, double box_hi = 2.0);

// One power of one real coordinate x_{component}^{slot}.
struct MonomialFactor {
    int slot = 0;
    int component = 0;
    int power = 1;
};

// coefficient times a product of factors; an empty factor list is a constant.
struct Monomial {
    std::vector<MonomialFactor> factors;
    double coefficient = 0.0;
};

// rho = sum of squares of all coordinates minus radius^2.
DefiningFunction ball_domain(int n, int m, double radius);
// rho = sum_j signs[j] * ||z_j||^2 - radius^2 with signs[j] in {+1, -1}.
DefiningFunction signed_quadric_domain(const std::vector<int>& signs, int m, double radius);
// rho = <normal, z> - offset on R^{mn}.
DefiningFunction halfspace_domain(const Eigen::VectorXd& normal, double offset, int n, int m);
// Sparse polynomial with analytic derivatives by exponent shift. Repeated
// factors of one coordinate are merged; raises MalformedMonomials on
// out-of-range indices or negative powers.
DefiningFunction polynomial_domain(const std::vector<Monomial>& monomials, int n, int m);

}  // namespace alinconv
