#include "alinconv/gamma.hpp"

#include <cmath>
#include <utility>

namespace alinconv {

namespace {

constexpr int kMaxDimension = 64;

void check_bold_shape(const Algebra& algebra, const GammaFrame& frame, const Eigen::MatrixXd& bold) {
    int m = algebra.dim();
    if (frame.dim() != m) throw DimensionMismatch("gamma frame dimension does not match algebra");
    if (bold.rows() != m || bold.cols() != m) throw DimensionMismatch("bold block must be m-by-m");
}

}  // namespace

GammaFrame::GammaFrame(Eigen::MatrixXd gamma, std::string kind) : gamma_(std::move(gamma)), kind_(std::move(kind)) {
    if (gamma_.rows() != gamma_.cols() || gamma_.rows() < 1) {
        throw DimensionMismatch("gamma matrix must be square and nonempty");
    }
    if (gamma_.rows() > kMaxDimension) {
        throw DimensionTooLarge("gamma matrix order exceeds " + std::to_string(kMaxDimension));
    }
    if (!gamma_.allFinite()) throw NonFiniteValue("gamma matrix has a non-finite entry");
    for (int q = 0; q < gamma_.cols(); ++q) {
        if (std::abs(gamma_(0, q) - 1.0) > 1e-12) {
            throw ConfigError("gamma matrix first row must be all ones");
        }
    }
    if (is_degenerate(gamma_)) throw ConfigError("gamma matrix is singular");
    if (kind_ == "hadamard") {
        // Sylvester-Hadamard satisfies Gamma^2 = m I, so the inverse is exact.
        eta_ = gamma_ / static_cast<double>(gamma_.rows());
    } else {
        eta_ = gamma_.fullPivLu().inverse();
    }
}

GammaFrame hadamard_gamma(int k) { return GammaFrame(hadamard_matrix<double>(k), "hadamard"); }

GammaFrame vandermonde_gamma(int m) {
    if (m < 1) throw DimensionMismatch("gamma order must be positive");
    if (m > kMaxDimension) throw DimensionTooLarge("gamma order exceeds " + std::to_string(kMaxDimension));
    Eigen::MatrixXd g(m, m);
    for (int q = 0; q < m; ++q) {
        double node = static_cast<double>(q + 1);
        double power = 1.0;
        for (int l = 0; l < m; ++l) {
            g(l, q) = power;
            power *= node;
        }
    }
    return GammaFrame(std::move(g), "vandermonde");
}

GammaFrame default_gamma(int m) {
    if (m >= 1 && (m & (m - 1)) == 0) {
        int k = 0;
        while ((1 << k) < m) ++k;
        return hadamard_gamma(k);
    }
    return vandermonde_gamma(m);
}

GammaFrame custom_gamma(const Eigen::MatrixXd& gamma) { return GammaFrame(gamma, "custom"); }

Eigen::MatrixXd bold_components(const Algebra& algebra, const GammaFrame& frame, const Element& z) {
    int m = algebra.dim();
    if (frame.dim() != m) throw DimensionMismatch("gamma frame dimension does not match algebra");
    if (z.size() != m) throw DimensionMismatch("element has wrong dimension");
    return frame.gamma() * z.asDiagonal();
}

BoldVector bold_vector(const Algebra& algebra, const GammaFrame& frame, const Eigen::VectorXd& ambient, int n) {
    int m = algebra.dim();
    if (n < 1) throw DimensionMismatch("slot count must be positive");
    if (ambient.size() != static_cast<Eigen::Index>(n) * m) {
        throw DimensionMismatch("ambient vector has wrong dimension");
    }
    BoldVector out;
    out.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        out.push_back(bold_components(algebra, frame, ambient.segment(static_cast<Eigen::Index>(j) * m, m)));
    }
    return out;
}

Eigen::VectorXd reconstruct_real(const Algebra& algebra, const GammaFrame& frame, const Eigen::MatrixXd& bold) {
    check_bold_shape(algebra, frame, bold);
    int m = algebra.dim();
    double scale = 1.0 + bold.cwiseAbs().maxCoeff();
    // Row l of eta * bold collects sum_p eta_{lp} z^p, which must equal x_l e_l.
    Eigen::MatrixXd collapsed = frame.eta() * bold;
    Eigen::VectorXd x(m);
    for (int l = 0; l < m; ++l) {
        Element v = mul(algebra, algebra.basis_inverse(l), Element(collapsed.row(l).transpose()));
        for (int r = 1; r < m; ++r) {
            if (std::abs(v(r)) > 1e-8 * scale) {
                throw InconsistentBold("bold block row mixture is not a real multiple of basis element " +
                                       std::to_string(l));
            }
        }
        x(l) = v(0);
    }
    return x;
}

FormalGradient formal_gradient(const Algebra& algebra, const GammaFrame& frame, const Eigen::MatrixXd& real_grad) {
    int m = algebra.dim();
    if (frame.dim() != m) throw DimensionMismatch("gamma frame dimension does not match algebra");
    if (real_grad.cols() != m || real_grad.rows() < 1) {
        throw DimensionMismatch("real gradient must be n-by-m");
    }
    if (!real_grad.allFinite()) throw NonFiniteValue("real gradient has a non-finite entry");
    int n = static_cast<int>(real_grad.rows());
    FormalGradient fg(n, m);
    const Eigen::MatrixXd& inv = algebra.basis_inverses();
    for (int j = 0; j < n; ++j) {
        // Coefficient r of a_j^p is sum_l inv(r,l) g_{jl} eta(l,p).
        fg.slot(j) = (inv * real_grad.row(j).asDiagonal() * frame.eta()).transpose();
    }
    return fg;
}

FormalHessian formal_hessian(const Algebra& algebra, const GammaFrame& frame, const Eigen::MatrixXd& real_hess) {
    int m = algebra.dim();
    if (frame.dim() != m) throw DimensionMismatch("gamma frame dimension does not match algebra");
    if (real_hess.rows() != real_hess.cols() || real_hess.rows() < m || real_hess.rows() % m != 0) {
        throw DimensionMismatch("real hessian must be mn-by-mn");
    }
    if (!real_hess.allFinite()) throw NonFiniteValue("real hessian has a non-finite entry");
    double scale = 1.0 + real_hess.cwiseAbs().maxCoeff();
    if ((real_hess - real_hess.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
        throw AsymmetricInput("real hessian is not symmetric");
    }
    int n = static_cast<int>(real_hess.rows()) / m;

    // pair_coeff[r](l, k) holds coefficient r of e_l^{-1} e_k^{-1}.
    std::vector<Eigen::MatrixXd> pair_coeff(static_cast<std::size_t>(m), Eigen::MatrixXd(m, m));
    for (int l = 0; l < m; ++l) {
        for (int k = 0; k < m; ++k) {
            Element prod = mul(algebra, algebra.basis_inverse(l), algebra.basis_inverse(k));
            for (int r = 0; r < m; ++r) pair_coeff[static_cast<std::size_t>(r)](l, k) = prod(r);
        }
    }

    FormalHessian fh(n, m);
    const Eigen::MatrixXd& eta = frame.eta();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            Eigen::MatrixXd block = real_hess.block(static_cast<Eigen::Index>(j) * m, static_cast<Eigen::Index>(i) * m, m, m);
            for (int r = 0; r < m; ++r) {
                Eigen::MatrixXd coeff = eta.transpose() * block.cwiseProduct(pair_coeff[static_cast<std::size_t>(r)]) * eta;
                for (int p = 0; p < m; ++p) {
                    for (int q = 0; q < m; ++q) fh.at(j, p, i, q)(r) = coeff(p, q);
                }
            }
        }
    }
    return fh;
}

Element linear_form_value(const Algebra& algebra, const FormalGradient& fg, const BoldVector& bold) {
    int m = algebra.dim();
    int n = fg.slots();
    if (fg.algebra_dim() != m) throw DimensionMismatch("formal gradient dimension does not match algebra");
    if (static_cast<int>(bold.size()) != n) throw DimensionMismatch("bold vector has wrong slot count");
    Element acc = Element::Zero(m);
    for (int j = 0; j < n; ++j) {
        if (bold[static_cast<std::size_t>(j)].rows() != m || bold[static_cast<std::size_t>(j)].cols() != m) {
            throw DimensionMismatch("bold block must be m-by-m");
        }
        for (int p = 0; p < m; ++p) {
            acc += mul(algebra, fg.at(j, p), Element(bold[static_cast<std::size_t>(j)].row(p).transpose()));
        }
    }
    return acc;
}

Element quadratic_form_value(const Algebra& algebra, const FormalHessian& fh, const BoldVector& bold) {
    int m = algebra.dim();
    int n = fh.slots();
    if (fh.algebra_dim() != m) throw DimensionMismatch("formal hessian dimension does not match algebra");
    if (static_cast<int>(bold.size()) != n) throw DimensionMismatch("bold vector has wrong slot count");
    for (const auto& block : bold) {
        if (block.rows() != m || block.cols() != m) throw DimensionMismatch("bold block must be m-by-m");
    }
    Element acc = Element::Zero(m);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            for (int p = 0; p < m; ++p) {
                Element zj = bold[static_cast<std::size_t>(j)].row(p).transpose();
                for (int q = 0; q < m; ++q) {
                    Element zi = bold[static_cast<std::size_t>(i)].row(q).transpose();
                    acc += mul(algebra, fh.at(j, p, i, q), mul(algebra, zi, zj));
                }
            }
        }
    }
    return acc;
}

}  // namespace alinconv
