#include "alinconv/algebra.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <sstream>

namespace alinconv {

namespace {

constexpr int kMaxDimension = 64;

void check_dimension(int m) {
    if (m < 1) throw DimensionMismatch("algebra dimension must be positive, got " + std::to_string(m));
    if (m > kMaxDimension)
        throw DimensionTooLarge("algebra dimension " + std::to_string(m) + " exceeds the dense-storage cap of " +
                                std::to_string(kMaxDimension));
}

void check_element(const StructureTensor& tensor, const Element& a, const char* what) {
    if (a.size() != tensor.dim())
        throw DimensionMismatch(std::string(what) + ": coefficient length " + std::to_string(a.size()) +
                                " does not match algebra dimension " + std::to_string(tensor.dim()));
}

std::string index3(int l, int k, int p) {
    std::ostringstream os;
    os << "(l=" << l << ", k=" << k << ", p=" << p << ")";
    return os.str();
}

}  // namespace

bool is_degenerate(const Eigen::MatrixXd& a) {
    if (a.rows() == 0 || a.cols() == 0) return true;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sigma = svd.singularValues();
    double smax = sigma(0);
    double smin = sigma(sigma.size() - 1);
    return smin <= kRankTolerance * smax;
}

StructureTensor::StructureTensor(int m) : m_(m) {
    check_dimension(m);
    gamma_.assign(m, Eigen::MatrixXd::Zero(m, m));
}

StructureTensor StructureTensor::from_sparse(int m, const std::vector<std::array<double, 4>>& triples) {
    StructureTensor t(m);
    bool identity_touched = false;
    for (const auto& entry : triples) {
        int l = static_cast<int>(entry[0]);
        int k = static_cast<int>(entry[1]);
        int p = static_cast<int>(entry[2]);
        if (l < 0 || l >= m || k < 0 || k >= m || p < 0 || p >= m)
            throw DimensionMismatch("sparse tensor entry " + index3(l, k, p) + " out of range for m=" +
                                    std::to_string(m));
        if (!std::isfinite(entry[3]))
            throw ConfigError("sparse tensor entry " + index3(l, k, p) + " is not finite");
        t.gamma_[p](l, k) = entry[3];
        if (l == 0 || k == 0) identity_touched = true;
    }
    if (!identity_touched) {
        for (int k = 0; k < m; ++k) {
            t.gamma_[k](0, k) = 1.0;
            t.gamma_[k](k, 0) = 1.0;
        }
    }
    return t;
}

double StructureTensor::max_abs() const {
    double v = 0.0;
    for (const auto& g : gamma_) v = std::max(v, g.cwiseAbs().maxCoeff());
    return v;
}

StructureTensor builtin_algebra(const std::string& name) {
    if (name == "complex" || name == "hyperbolic" || name == "dual") {
        StructureTensor t(2);
        t.set(0, 0, 0, 1.0);
        t.set(0, 1, 1, 1.0);
        t.set(1, 0, 1, 1.0);
        double square = name == "complex" ? -1.0 : (name == "hyperbolic" ? 1.0 : 0.0);
        t.set(1, 1, 0, square);
        return t;
    }
    if (name == "bicomplex")
        return tensor_product(builtin_algebra("complex"), builtin_algebra("complex"));
    if (name.rfind("direct-product(", 0) == 0 && name.back() == ')') {
        std::string inner = name.substr(15, name.size() - 16);
        // Split at the comma not enclosed by nested parentheses.
        int depth = 0;
        for (std::size_t i = 0; i < inner.size(); ++i) {
            char c = inner[i];
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 0)
                return tensor_product(builtin_algebra(inner.substr(0, i)),
                                      builtin_algebra(inner.substr(i + 1)));
        }
    }
    throw UnknownAlgebra("unknown builtin algebra '" + name + "'");
}

StructureTensor tensor_product(const StructureTensor& a, const StructureTensor& b) {
    int ma = a.dim(), mb = b.dim();
    check_dimension(ma * mb);
    StructureTensor t(ma * mb);
    for (int la = 0; la < ma; ++la)
        for (int lb = 0; lb < mb; ++lb)
            for (int ka = 0; ka < ma; ++ka)
                for (int kb = 0; kb < mb; ++kb)
                    for (int pa = 0; pa < ma; ++pa)
                        for (int pb = 0; pb < mb; ++pb) {
                            double v = a.at(la, ka, pa) * b.at(lb, kb, pb);
                            if (v != 0.0) t.set(la * mb + lb, ka * mb + kb, pa * mb + pb, v);
                        }
    return t;
}

Element mul(const StructureTensor& tensor, const Element& a, const Element& b) {
    check_element(tensor, a, "mul");
    check_element(tensor, b, "mul");
    int m = tensor.dim();
    Element out(m);
    for (int p = 0; p < m; ++p) out(p) = a.dot(tensor.gamma_matrix(p) * b);
    return out;
}

Element mul(const Algebra& algebra, const Element& a, const Element& b) {
    return mul(algebra.tensor(), a, b);
}

Eigen::MatrixXd regular_representation(const StructureTensor& tensor, const Element& a) {
    check_element(tensor, a, "regular_representation");
    int m = tensor.dim();
    Eigen::MatrixXd rep(m, m);
    for (int p = 0; p < m; ++p) rep.row(p) = a.transpose() * tensor.gamma_matrix(p);
    return rep;
}

Eigen::MatrixXd regular_representation(const Algebra& algebra, const Element& a) {
    return regular_representation(algebra.tensor(), a);
}

Element invert(const Algebra& algebra, const Element& a) {
    check_element(algebra.tensor(), a, "invert");
    Eigen::MatrixXd rep = regular_representation(algebra, a);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rep, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    if (sigma(sigma.size() - 1) <= kRankTolerance * sigma(0))
        throw NotInvertible("element is a zero divisor or zero: multiplication matrix is singular");
    return svd.solve(algebra.identity());
}

Algebra::Algebra(StructureTensor tensor, Eigen::MatrixXd basis_inverses, int ptilde, Eigen::MatrixXd eta_ptilde,
                 Eigen::VectorXd gamma_dets)
    : tensor_(std::move(tensor)),
      basis_inverses_(std::move(basis_inverses)),
      ptilde_(ptilde),
      eta_ptilde_(std::move(eta_ptilde)),
      gamma_dets_(std::move(gamma_dets)) {}

Element Algebra::identity() const { return basis_element(0); }

Element Algebra::basis_element(int k) const {
    Element e = Element::Zero(dim());
    e(k) = 1.0;
    return e;
}

Algebra validate_algebra(const StructureTensor& tensor, std::optional<int> ptilde_override) {
    int m = tensor.dim();
    double scale = std::max(1.0, tensor.max_abs());

    for (int p = 0; p < m; ++p)
        if (!tensor.gamma_matrix(p).allFinite())
            throw ConfigError("structure tensor has non-finite entries in G^" + std::to_string(p));

    // gamma_{lk}^p = gamma_{kl}^p
    double comm_tol = 1e-12 * scale;
    for (int p = 0; p < m; ++p)
        for (int l = 0; l < m; ++l)
            for (int k = l + 1; k < m; ++k)
                if (std::abs(tensor.at(l, k, p) - tensor.at(k, l, p)) > comm_tol)
                    throw ValidationError(ValidationError::Kind::Commutativity, {l, k, p, -1},
                                          "structure constants not symmetric at " + index3(l, k, p));

    // e_0 e_k = e_k
    double id_tol = 1e-12 * scale;
    for (int k = 0; k < m; ++k)
        for (int p = 0; p < m; ++p) {
            double expected = k == p ? 1.0 : 0.0;
            if (std::abs(tensor.at(0, k, p) - expected) > id_tol)
                throw ValidationError(ValidationError::Kind::Identity, {0, k, p, -1},
                                      "e_0 does not act as the identity at " + index3(0, k, p));
        }

    // sum_r gamma_{lk}^r gamma_{rq}^p = sum_r gamma_{kq}^r gamma_{lr}^p
    double assoc_tol = 1e-10 * scale * scale * m;
    for (int l = 0; l < m; ++l)
        for (int k = 0; k < m; ++k)
            for (int q = 0; q < m; ++q)
                for (int p = 0; p < m; ++p) {
                    double lhs = 0.0, rhs = 0.0;
                    for (int r = 0; r < m; ++r) {
                        lhs += tensor.at(l, k, r) * tensor.at(r, q, p);
                        rhs += tensor.at(k, q, r) * tensor.at(l, r, p);
                    }
                    if (std::abs(lhs - rhs) > assoc_tol) {
                        std::ostringstream os;
                        os << "(e_" << l << " e_" << k << ") e_" << q << " != e_" << l << " (e_" << k << " e_" << q
                           << ") in component " << p;
                        throw ValidationError(ValidationError::Kind::Associativity, {l, k, q, p}, os.str());
                    }
                }

    // Condition 2: at least one nondegenerate G^p. Among the nondegenerate
    // ones pick the best conditioned: maximize |det| / sigma_max^m, i.e. the
    // product of sigma_i / sigma_max; ties resolved by smallest index.
    Eigen::VectorXd dets(m);
    int best_p = -1;
    double best_measure = -1.0;
    for (int p = 0; p < m; ++p) {
        const Eigen::MatrixXd& g = tensor.gamma_matrix(p);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
        const auto& sigma = svd.singularValues();
        double smax = sigma(0);
        dets(p) = g.determinant();
        if (smax <= 0.0 || sigma(m - 1) <= kRankTolerance * smax) continue;
        double measure = 1.0;
        for (int i = 0; i < m; ++i) measure *= sigma(i) / smax;
        if (measure > best_measure * (1.0 + 1e-12)) {
            best_measure = measure;
            best_p = p;
        }
    }
    if (best_p < 0)
        throw ValidationError(ValidationError::Kind::Condition2, {-1, -1, -1, -1},
                              "every matrix G^p of structure constants is singular");
    int ptilde = best_p;
    if (ptilde_override) {
        int p = *ptilde_override;
        if (p < 0 || p >= m)
            throw ConfigError("ptilde override " + std::to_string(p) + " out of range for m=" + std::to_string(m));
        if (is_degenerate(tensor.gamma_matrix(p)))
            throw ValidationError(ValidationError::Kind::Condition2, {-1, -1, -1, p},
                                  "requested ptilde=" + std::to_string(p) + " indexes a singular G^p");
        ptilde = p;
    }
    Eigen::MatrixXd eta = tensor.gamma_matrix(ptilde).fullPivLu().inverse();

    // Condition 1: every basis element invertible, certified by a residual
    // check against the identity.
    Eigen::MatrixXd inverses(m, m);
    Element e0 = Element::Zero(m);
    e0(0) = 1.0;
    for (int k = 0; k < m; ++k) {
        Element ek = Element::Zero(m);
        ek(k) = 1.0;
        Eigen::MatrixXd rep = regular_representation(tensor, ek);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(rep, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sigma = svd.singularValues();
        if (sigma(m - 1) <= kRankTolerance * sigma(0))
            throw ValidationError(ValidationError::Kind::Condition1, {k, -1, -1, -1},
                                  "basis element e_" + std::to_string(k) + " is not invertible");
        Element inv = svd.solve(e0);
        if ((mul(tensor, ek, inv) - e0).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, scale))
            throw ValidationError(ValidationError::Kind::Condition1, {k, -1, -1, -1},
                                  "inverse of e_" + std::to_string(k) + " fails the residual check");
        inverses.col(k) = inv;
    }

    return Algebra(tensor, std::move(inverses), ptilde, std::move(eta), std::move(dets));
}

}  // namespace alinconv
