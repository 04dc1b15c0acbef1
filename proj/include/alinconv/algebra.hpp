#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "alinconv/errors.hpp"

namespace alinconv {

// Coefficient vector of an algebra element in the basis {e_0, ..., e_{m-1}};
// e_0 is the identity.
using Element = Eigen::VectorXd;

// Scale-invariant singularity threshold shared across the library: a matrix
// counts as degenerate when sigma_min <= kRankTolerance * sigma_max.
inline constexpr double kRankTolerance = 1e-10;

bool is_degenerate(const Eigen::MatrixXd& a);

// Structure constants gamma_{lk}^p of a finite-dimensional real algebra,
// stored as m dense matrices G^p with (G^p)(l, k) = gamma_{lk}^p, so that
// e_l e_k = sum_p gamma_{lk}^p e_p.
class StructureTensor {
public:
    explicit StructureTensor(int m);

    // Sparse triples (l, k, p, value); omitted entries are zero. If every
    // entry involving the identity index on either side is omitted, the
    // identity products e_0 e_k = e_k e_0 = e_k are filled in.
    static StructureTensor from_sparse(
        int m, const std::vector<std::array<double, 4>>& triples);

    int dim() const { return m_; }

    double at(int l, int k, int p) const { return gamma_[p](l, k); }
    void set(int l, int k, int p, double value) { gamma_[p](l, k) = value; }

    // G^p as a matrix over (l, k).
    const Eigen::MatrixXd& gamma_matrix(int p) const { return gamma_[p]; }

    double max_abs() const;

private:
    int m_;
    std::vector<Eigen::MatrixXd> gamma_;
};

// Multiplication table of a named standard algebra:
//   complex     m=2, e_1^2 = -1
//   hyperbolic  m=2, e_1^2 = +1
//   dual        m=2, e_1^2 =  0   (rejected downstream: e_1 not invertible)
//   bicomplex   m=4, basis 1, i, j, ij
//   direct-product(a,b)  product table on basis pairs e_i (x) f_j
StructureTensor builtin_algebra(const std::string& name);

// Product algebra table: basis pairs ordered (i, j) -> i * dim(b) + j.
StructureTensor tensor_product(const StructureTensor& a, const StructureTensor& b);

// A structure tensor together with the derived data certified by
// validate_algebra. Immutable; safe to share across threads.
class Algebra {
public:
    int dim() const { return tensor_.dim(); }
    const StructureTensor& tensor() const { return tensor_; }

    // Column k holds the coefficients of e_k^{-1}.
    const Eigen::MatrixXd& basis_inverses() const { return basis_inverses_; }
    Element basis_inverse(int k) const { return basis_inverses_.col(k); }

    // Index of the certified nondegenerate G^p and its inverse.
    int ptilde() const { return ptilde_; }
    const Eigen::MatrixXd& eta_ptilde() const { return eta_ptilde_; }

    // det G^p for every p (reported by the CLI).
    const Eigen::VectorXd& gamma_determinants() const { return gamma_dets_; }

    Element identity() const;
    Element basis_element(int k) const;

private:
    friend Algebra validate_algebra(const StructureTensor&, std::optional<int>);
    Algebra(StructureTensor tensor, Eigen::MatrixXd basis_inverses, int ptilde,
            Eigen::MatrixXd eta_ptilde, Eigen::VectorXd gamma_dets);

    StructureTensor tensor_;
    Eigen::MatrixXd basis_inverses_;
    int ptilde_;
    Eigen::MatrixXd eta_ptilde_;
    Eigen::VectorXd gamma_dets_;
};

// Checks, in order: commutativity, identity row/column, associativity,
// existence of a nondegenerate G^p, invertibility of every basis element.
// ptilde_override skips the conditioning-based selection after a
// nondegeneracy check on the requested index.
Algebra validate_algebra(const StructureTensor& tensor,
                         std::optional<int> ptilde_override = std::nullopt);

// (a b)_p = sum_{l,k} a_l b_k gamma_{lk}^p.
Element mul(const StructureTensor& tensor, const Element& a, const Element& b);
Element mul(const Algebra& algebra, const Element& a, const Element& b);

// Matrix of multiplication by a: M(a) x = coeffs(a x); row p = a^T G^p.
Eigen::MatrixXd regular_representation(const StructureTensor& tensor, const Element& a);
Eigen::MatrixXd regular_representation(const Algebra& algebra, const Element& a);

// Solves M(a) x = e_0; NotInvertible when M(a) is singular.
Element invert(const Algebra& algebra, const Element& a);

}  // namespace alinconv
