#include "alinconv/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "alinconv/rng.hpp"

namespace alinconv {

namespace {

constexpr int kMaxAmbient = 256;

double ipow(double x, int p) {
    double out = 1.0;
    for (int i = 0; i < p; ++i) out *= x;
    return out;
}

}  // namespace

DefiningFunction::DefiningFunction(int n, int m, std::string name, Evaluator rho)
    : DefiningFunction(n, m, std::move(name), std::move(rho), GradientFn(), HessianFn()) {}

DefiningFunction::DefiningFunction(int n, int m, std::string name, Evaluator rho, GradientFn grad, HessianFn hess)
    : n_(n), m_(m), name_(std::move(name)), rho_(std::move(rho)), grad_(std::move(grad)), hess_(std::move(hess)) {
    if (n_ < 1 || m_ < 1) throw DimensionMismatch("defining function needs positive slot count and algebra dimension");
    if (n_ * m_ > kMaxAmbient) {
        throw DimensionTooLarge("ambient dimension exceeds " + std::to_string(kMaxAmbient));
    }
    if (!rho_) throw ConfigError("defining function needs an evaluator");
    if (static_cast<bool>(grad_) != static_cast<bool>(hess_)) {
        throw ConfigError("analytic gradient and hessian must be provided together");
    }
}

void DefiningFunction::check_point(const Eigen::VectorXd& z) const {
    if (z.size() != ambient_dim()) throw DimensionMismatch("point has wrong ambient dimension");
    if (!z.allFinite()) throw NonFiniteValue("point has a non-finite coordinate");
}

double DefiningFunction::value(const Eigen::VectorXd& z) const {
    check_point(z);
    double v = rho_(z);
    if (!std::isfinite(v)) throw NonFiniteValue("defining function value is not finite");
    return v;
}

Eigen::VectorXd DefiningFunction::gradient(const Eigen::VectorXd& z) const {
    if (!grad_) return fd_gradient(z);
    check_point(z);
    Eigen::VectorXd g = grad_(z);
    if (g.size() != ambient_dim()) throw DimensionMismatch("analytic gradient has wrong dimension");
    if (!g.allFinite()) throw NonFiniteValue("gradient is not finite");
    return g;
}

Eigen::MatrixXd DefiningFunction::hessian(const Eigen::VectorXd& z) const {
    if (!hess_) return fd_hessian(z);
    check_point(z);
    Eigen::MatrixXd h = hess_(z);
    if (h.rows() != ambient_dim() || h.cols() != ambient_dim()) {
        throw DimensionMismatch("analytic hessian has wrong dimension");
    }
    if (!h.allFinite()) throw NonFiniteValue("hessian is not finite");
    return 0.5 * (h + h.transpose());
}

Eigen::VectorXd DefiningFunction::fd_gradient(const Eigen::VectorXd& z) const {
    check_point(z);
    double eps = std::numeric_limits<double>::epsilon();
    double base = std::cbrt(eps);
    int dim = ambient_dim();
    Eigen::VectorXd g(dim);
    Eigen::VectorXd zp = z, zm = z;
    for (int i = 0; i < dim; ++i) {
        double h = base * (1.0 + std::abs(z(i)));
        zp(i) = z(i) + h;
        zm(i) = z(i) - h;
        g(i) = (value(zp) - value(zm)) / (2.0 * h);
        zp(i) = z(i);
        zm(i) = z(i);
    }
    return g;
}

Eigen::MatrixXd DefiningFunction::fd_hessian(const Eigen::VectorXd& z) const {
    check_point(z);
    double eps = std::numeric_limits<double>::epsilon();
    double base = std::pow(eps, 0.25);
    int dim = ambient_dim();
    Eigen::VectorXd steps(dim);
    for (int i = 0; i < dim; ++i) steps(i) = base * (1.0 + std::abs(z(i)));
    double center = value(z);
    Eigen::MatrixXd hess(dim, dim);
    Eigen::VectorXd u = z;
    for (int i = 0; i < dim; ++i) {
        double hi = steps(i);
        u(i) = z(i) + hi;
        double fp = value(u);
        u(i) = z(i) - hi;
        double fm = value(u);
        u(i) = z(i);
        hess(i, i) = (fp - 2.0 * center + fm) / (hi * hi);
        for (int j = i + 1; j < dim; ++j) {
            double hj = steps(j);
            u(i) = z(i) + hi;
            u(j) = z(j) + hj;
            double fpp = value(u);
            u(j) = z(j) - hj;
            double fpm = value(u);
            u(i) = z(i) - hi;
            double fmm = value(u);
            u(j) = z(j) + hj;
            double fmp = value(u);
            u(i) = z(i);
            u(j) = z(j);
            double mixed = (fpp - fpm - fmp + fmm) / (4.0 * hi * hj);
            hess(i, j) = mixed;
            hess(j, i) = mixed;
        }
    }
    return 0.5 * (hess + hess.transpose());
}

double DefiningFunction::scale_at(const Eigen::VectorXd& z) const {
    return 1.0 + std::abs(value(z)) + z.squaredNorm();
}

BoundaryPoint project_to_boundary(const DefiningFunction& f, const Eigen::VectorXd& z0) {
    if (z0.size() != f.ambient_dim()) throw DimensionMismatch("start point has wrong ambient dimension");
    if (!z0.allFinite()) throw NonFiniteValue("start point has a non-finite coordinate");
    double scale = f.scale_at(z0);
    // The certified bound is 1e-10 * scale; aiming two digits tighter leaves
    // sampled quadric points well inside it.
    double contract = 1e-10 * scale;
    double target = 1e-12 * scale;
    Eigen::VectorXd z = z0;
    int nudges = 0;
    for (int iter = 0; iter < 100; ++iter) {
        double r = f.value(z);
        if (std::abs(r) <= target) return BoundaryPoint{z, std::abs(r)};
        Eigen::VectorXd g = f.gradient(z);
        double gn2 = g.squaredNorm();
        if (std::sqrt(gn2) <= 1e-10 * (1.0 + z.norm())) {
            // The nudge is far below the backtracking floor's reach, so a
            // genuinely singular start (ball center) still fails.
            if (nudges >= 3) throw ProjectionFailed("vanishing gradient");
            z(iter % f.ambient_dim()) += 1e-8 * (1.0 + z.norm());
            ++nudges;
            continue;
        }
        Eigen::VectorXd step = (r / gn2) * g;
        bool accepted = false;
        for (double t = 1.0; t >= 1.0 / 1024.0; t *= 0.5) {
            Eigen::VectorXd zn = z - t * step;
            double rn = f.value(zn);
            if (std::isfinite(rn) && std::abs(rn) <= (1.0 - 0.25 * t) * std::abs(r)) {
                z = std::move(zn);
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            if (std::abs(r) <= contract) return BoundaryPoint{z, std::abs(r)};
            throw ProjectionFailed("no descent step from the current iterate");
        }
    }
    double r = f.value(z);
    if (std::abs(r) <= contract) return BoundaryPoint{z, std::abs(r)};
    throw ProjectionFailed("maximum iterations reached");
}

std::vector<BoundaryPoint> sample_boundary(const DefiningFunction& f, int count, std::uint64_t seed,
                                           double box_lo, double box_hi) {
    if (count < 1) throw ConfigError("sample count must be positive");
    if (!(box_lo < box_hi)) throw ConfigError("sampling box is empty");
    Rng rng(seed);
    std::vector<BoundaryPoint> accepted;
    accepted.reserve(static_cast<std::size_t>(count));
    int dim = f.ambient_dim();
    long budget = 100L * count;
    for (long draw = 0; draw < budget && static_cast<int>(accepted.size()) < count; ++draw) {
        Eigen::VectorXd z0(dim);
        for (int i = 0; i < dim; ++i) z0(i) = rng.uniform(box_lo, box_hi);
        BoundaryPoint bp;
        try {
            bp = project_to_boundary(f, z0);
        } catch (const ProjectionFailed&) {
            continue;
        } catch (const NonFiniteValue&) {
            continue;
        }
        if (f.gradient(bp.w).norm() <= 1e-8 * f.scale_at(bp.w)) continue;
        bool duplicate = false;
        for (const auto& prev : accepted) {
            if ((prev.w - bp.w).norm() < 1e-6) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) accepted.push_back(std::move(bp));
    }
    if (static_cast<int>(accepted.size()) < count) {
        throw InsufficientSamples("found " + std::to_string(accepted.size()) + " of " + std::to_string(count) +
                                  " boundary points within the draw budget");
    }
    return accepted;
}

DefiningFunction ball_domain(int n, int m, double radius) {
    if (!(radius > 0.0)) throw ConfigError("ball radius must be positive");
    double r2 = radius * radius;
    int dim = n * m;
    return DefiningFunction(
        n, m, "ball",
        [r2](const Eigen::VectorXd& z) { return z.squaredNorm() - r2; },
        [](const Eigen::VectorXd& z) { return Eigen::VectorXd(2.0 * z); },
        [dim](const Eigen::VectorXd&) { return Eigen::MatrixXd(2.0 * Eigen::MatrixXd::Identity(dim, dim)); });
}

DefiningFunction signed_quadric_domain(const std::vector<int>& signs, int m, double radius) {
    if (signs.empty()) throw ConfigError("signed quadric needs at least one sign");
    for (int s : signs) {
        if (s != 1 && s != -1) throw ConfigError("signed quadric signs must be +1 or -1");
    }
    if (!(radius > 0.0)) throw ConfigError("signed quadric radius must be positive");
    int n = static_cast<int>(signs.size());
    double r2 = radius * radius;
    auto sgn = [signs, m](int coord) { return static_cast<double>(signs[static_cast<std::size_t>(coord / m)]); };
    return DefiningFunction(
        n, m, "signed-quadric",
        [r2, sgn](const Eigen::VectorXd& z) {
            double acc = -r2;
            for (int i = 0; i < z.size(); ++i) acc += sgn(static_cast<int>(i)) * z(i) * z(i);
            return acc;
        },
        [sgn](const Eigen::VectorXd& z) {
            Eigen::VectorXd g(z.size());
            for (int i = 0; i < z.size(); ++i) g(i) = 2.0 * sgn(static_cast<int>(i)) * z(i);
            return g;
        },
        [sgn](const Eigen::VectorXd& z) {
            Eigen::MatrixXd h = Eigen::MatrixXd::Zero(z.size(), z.size());
            for (int i = 0; i < z.size(); ++i) h(i, i) = 2.0 * sgn(static_cast<int>(i));
            return h;
        });
}

DefiningFunction halfspace_domain(const Eigen::VectorXd& normal, double offset, int n, int m) {
    if (normal.size() != static_cast<Eigen::Index>(n) * m) {
        throw DimensionMismatch("halfspace normal has wrong ambient dimension");
    }
    if (normal.norm() == 0.0) throw ConfigError("halfspace normal must be nonzero");
    int dim = n * m;
    return DefiningFunction(
        n, m, "halfspace",
        [normal, offset](const Eigen::VectorXd& z) { return normal.dot(z) - offset; },
        [normal](const Eigen::VectorXd&) { return normal; },
        [dim](const Eigen::VectorXd&) { return Eigen::MatrixXd(Eigen::MatrixXd::Zero(dim, dim)); });
}

DefiningFunction polynomial_domain(const std::vector<Monomial>& monomials, int n, int m) {
    if (n < 1 || m < 1) throw DimensionMismatch("polynomial needs positive slot count and algebra dimension");
    // Merge repeated factors of one coordinate so exponent-shift derivatives
    // see each coordinate once per monomial.
    std::vector<Monomial> merged;
    merged.reserve(monomials.size());
    for (const auto& mono : monomials) {
        if (!std::isfinite(mono.coefficient)) throw MalformedMonomials("monomial coefficient is not finite");
        Monomial clean;
        clean.coefficient = mono.coefficient;
        for (const auto& factor : mono.factors) {
            if (factor.slot < 0 || factor.slot >= n) throw MalformedMonomials("monomial slot out of range");
            if (factor.component < 0 || factor.component >= m) throw MalformedMonomials("monomial component out of range");
            if (factor.power < 0) throw MalformedMonomials("monomial power must be nonnegative");
            if (factor.power == 0) continue;
            bool found = false;
            for (auto& existing : clean.factors) {
                if (existing.slot == factor.slot && existing.component == factor.component) {
                    existing.power += factor.power;
                    found = true;
                    break;
                }
            }
            if (!found) clean.factors.push_back(factor);
        }
        merged.push_back(std::move(clean));
    }

    auto coord = [m](const MonomialFactor& factor) { return factor.slot * m + factor.component; };

    auto eval = [merged, coord](const Eigen::VectorXd& z) {
        double acc = 0.0;
        for (const auto& mono : merged) {
            double term = mono.coefficient;
            for (const auto& factor : mono.factors) term *= ipow(z(coord(factor)), factor.power);
            acc += term;
        }
        return acc;
    };
    auto grad = [merged, coord](const Eigen::VectorXd& z) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(z.size());
        for (const auto& mono : merged) {
            for (std::size_t a = 0; a < mono.factors.size(); ++a) {
                const auto& fa = mono.factors[a];
                double term = mono.coefficient * fa.power * ipow(z(coord(fa)), fa.power - 1);
                for (std::size_t b = 0; b < mono.factors.size(); ++b) {
                    if (b == a) continue;
                    const auto& fb = mono.factors[b];
                    term *= ipow(z(coord(fb)), fb.power);
                }
                g(coord(fa)) += term;
            }
        }
        return g;
    };
    auto hess = [merged, coord](const Eigen::VectorXd& z) {
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(z.size(), z.size());
        for (const auto& mono : merged) {
            for (std::size_t a = 0; a < mono.factors.size(); ++a) {
                const auto& fa = mono.factors[a];
                if (fa.power >= 2) {
                    double term = mono.coefficient * fa.power * (fa.power - 1) * ipow(z(coord(fa)), fa.power - 2);
                    for (std::size_t b = 0; b < mono.factors.size(); ++b) {
                        if (b == a) continue;
                        const auto& fb = mono.factors[b];
                        term *= ipow(z(coord(fb)), fb.power);
                    }
                    h(coord(fa), coord(fa)) += term;
                }
                for (std::size_t b = a + 1; b < mono.factors.size(); ++b) {
                    const auto& fb = mono.factors[b];
                    double term = mono.coefficient * fa.power * fb.power * ipow(z(coord(fa)), fa.power - 1) *
                                  ipow(z(coord(fb)), fb.power - 1);
                    for (std::size_t c = 0; c < mono.factors.size(); ++c) {
                        if (c == a || c == b) continue;
                        const auto& fc = mono.factors[c];
                        term *= ipow(z(coord(fc)), fc.power);
                    }
                    h(coord(fa), coord(fb)) += term;
                    h(coord(fb), coord(fa)) += term;
                }
            }
        }
        return h;
    };
    return DefiningFunction(n, m, "polynomial", eval, grad, hess);
}

}  // namespace alinconv
