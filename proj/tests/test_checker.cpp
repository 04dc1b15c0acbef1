#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "alinconv/checker.hpp"
#include "alinconv/rng.hpp"
#include "support/complex_reference.hpp"
#include "support/test_inputs.hpp"

using namespace alinconv;
using testsupport::validated;

namespace {

Eigen::VectorXd pole4() {
    Eigen::VectorXd w(4);
    w << 1.0, 0.0, 0.0, 0.0;
    return w;
}

}  // namespace

TEST_SUITE("checker") {

TEST_CASE("restricted hessian of the unit sphere") {
    Algebra alg = validated("complex");
    DefiningFunction ball = ball_domain(2, 2, 1.0);
    TangentFrame frame = tangent_frame(alg, ball, pole4());
    Eigen::MatrixXd r = restricted_hessian(ball, frame);
    REQUIRE(r.rows() == 2);
    CHECK((r - 2.0 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("sphere points are strictly positive with eigenvalue two") {
    Algebra alg = validated("complex");
    GammaFrame frame = default_gamma(2);
    DefiningFunction ball = ball_domain(2, 2, 1.0);
    PointClassification c = classify_point(alg, frame, ball, pole4());
    CHECK(c.kind == PointKind::StrictlyPositive);
    REQUIRE(c.min_eigenvalue.has_value());
    CHECK(*c.min_eigenvalue == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(c.kernel_dim == 2);
    CHECK_FALSE(c.witness.has_value());
    CHECK(c.cross_check_error <= 1e-8 * (1.0 + ball.hessian(pole4()).norm()));
    CHECK(c.anchor == pole4());
}

TEST_CASE("signed quadric points carry a negative direction") {
    Algebra alg = validated("complex");
    GammaFrame frame = default_gamma(2);
    DefiningFunction q = signed_quadric_domain({1, -1}, 2, 1.0);
    PointClassification c = classify_point(alg, frame, q, pole4());
    CHECK(c.kind == PointKind::NegativeDirection);
    REQUIRE(c.min_eigenvalue.has_value());
    CHECK(*c.min_eigenvalue == doctest::Approx(-2.0).epsilon(1e-9));
    REQUIRE(c.witness.has_value());
    CHECK(c.witness->norm() == doctest::Approx(1.0).epsilon(1e-12));
    // The witness lies in the second coordinate plane and is sign-pinned.
    CHECK(c.witness->head(2).cwiseAbs().maxCoeff() < 1e-9);
    double leading = 0.0;
    for (Eigen::Index i = 0; i < c.witness->size(); ++i) {
        if (std::abs((*c.witness)(i)) > 1e-12) {
            leading = (*c.witness)(i);
            break;
        }
    }
    CHECK(leading > 0.0);
    // Quadratic decrease along the witness: rho(w + t s) = -t^2.
    double t = 0.1;
    CHECK(q.value(pole4() + t * *c.witness) == doctest::Approx(-t * t).epsilon(1e-9));
}

TEST_CASE("one-slot domains have a vacuous tangent kernel") {
    Algebra alg = validated("complex");
    GammaFrame frame = default_gamma(2);
    DefiningFunction ball = ball_domain(1, 2, 1.0);
    Eigen::VectorXd w(2);
    w << 1.0, 0.0;
    PointClassification c = classify_point(alg, frame, ball, w);
    CHECK(c.kind == PointKind::VacuousTangent);
    CHECK(c.kernel_dim == 0);
    CHECK_FALSE(c.min_eigenvalue.has_value());
    CHECK_FALSE(c.witness.has_value());
    CHECK(c.cross_check_error == 0.0);
}

TEST_CASE("tolerance overrides move the branch cut") {
    Algebra alg = validated("complex");
    GammaFrame frame = default_gamma(2);
    DefiningFunction ball = ball_domain(2, 2, 1.0);
    PointClassification wide = classify_point(alg, frame, ball, pole4(), 10.0);
    CHECK(wide.kind == PointKind::Degenerate);
    CHECK(wide.tol == 10.0);
    PointClassification below = classify_point(alg, frame, ball, pole4(), -10.0);
    CHECK(below.kind == PointKind::StrictlyPositive);
    DefiningFunction q = signed_quadric_domain({1, -1}, 2, 1.0);
    PointClassification forced = classify_point(alg, frame, q, pole4(), -10.0);
    CHECK(forced.kind == PointKind::StrictlyPositive);
}

TEST_CASE("classification is invariant under the gamma frame") {
    Rng rng(83);
    DefiningFunction q = signed_quadric_domain({1, -1, 1}, 2, 1.0);
    Algebra alg = validated("complex");
    auto pts = sample_boundary(q, 6, 3);
    for (const auto& bp : pts) {
        PointClassification base = classify_point(alg, hadamard_gamma(1), q, bp.w);
        for (int which = 1; which < 3; ++which) {
            GammaFrame frame = testsupport::frame_by_index(rng, 2, which);
            PointClassification other = classify_point(alg, frame, q, bp.w);
            CHECK(other.kind == base.kind);
            if (base.min_eigenvalue && other.min_eigenvalue) {
                CHECK(*other.min_eigenvalue == doctest::Approx(*base.min_eigenvalue).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("eigenvalues are invariant under scaling the defining function") {
    // rho and 3 rho cut out the same domain; the restricted spectrum scales.
    Algebra alg = validated("complex");
    GammaFrame frame = default_gamma(2);
    DefiningFunction ball = ball_domain(2, 2, 1.0);
    DefiningFunction scaled(2, 2, "scaled-ball",
                            [](const Eigen::VectorXd& z) { return 3.0 * (z.squaredNorm() - 1.0); });
    PointClassification a = classify_point(alg, frame, ball, pole4());
    PointClassification b = classify_point(alg, frame, scaled, pole4());
    CHECK(a.kind == b.kind);
    REQUIRE(b.min_eigenvalue.has_value());
    CHECK(*b.min_eigenvalue == doctest::Approx(3.0 * *a.min_eigenvalue).epsilon(1e-6));
}

TEST_CASE("analytic and finite difference paths agree") {
    Algebra alg = validated("complex");
    GammaFrame frame = default_gamma(2);
    DefiningFunction q = signed_quadric_domain({1, -1}, 2, 1.0);
    DefiningFunction fd(2, 2, "fd-quadric", [](const Eigen::VectorXd& z) {
        return z.head(2).squaredNorm() - z.tail(2).squaredNorm() - 1.0;
    });
    auto pts = sample_boundary(q, 8, 11);
    for (const auto& bp : pts) {
        PointClassification a = classify_point(alg, frame, q, bp.w);
        PointClassification b = classify_point(alg, frame, fd, bp.w);
        CHECK(a.kind == b.kind);
        CHECK(std::abs(*a.min_eigenvalue - *b.min_eigenvalue) <= 1e-5);
    }
}

TEST_CASE("convexity of the sampled boundary implies nonnegative spectra") {
    // Soundness on a convex domain: no sampled point may report a negative
    // direction.
    Algebra alg = validated("bicomplex");
    GammaFrame frame = default_gamma(4);
    DefiningFunction ball = ball_domain(2, 4, 1.5);
    ConvexityReport report = check_domain(alg, frame, ball, {16, 7, {}, -2.0, 2.0});
    CHECK(report.verdict == Verdict::SufficientConditionHolds);
    for (const auto& rec : report.records) {
        REQUIRE(rec.classification.has_value());
        CHECK(rec.classification->kind == PointKind::StrictlyPositive);
        CHECK(*rec.classification->min_eigenvalue > 0.0);
    }
}

TEST_CASE("checker verdicts cover the three outcomes") {
    Algebra alg = validated("complex");
    GammaFrame frame = default_gamma(2);

    DefiningFunction ball = ball_domain(2, 2, 1.0);
    ConvexityReport good = check_domain(alg, frame, ball, {8, 1, {}, -2.0, 2.0});
    CHECK(good.verdict == Verdict::SufficientConditionHolds);
    CHECK(good.seed == 1);
    CHECK(good.sample_only);
    CHECK(good.records.size() == 8);

    DefiningFunction q = signed_quadric_domain({1, -1}, 2, 1.0);
    ConvexityReport bad = check_domain(alg, frame, q, {8, 1, {}, -2.0, 2.0});
    CHECK(bad.verdict == Verdict::NecessaryConditionViolated);

    Eigen::VectorXd normal(4);
    normal << 1.0, 0.0, 0.0, 0.0;
    DefiningFunction half = halfspace_domain(normal, 1.0, 2, 2);
    ConvexityReport flat = check_domain(alg, frame, half, {8, 1, {}, -2.0, 2.0});
    CHECK(flat.verdict == Verdict::Inconclusive);
    for (const auto& rec : flat.records) {
        CHECK(rec.classification->kind == PointKind::Degenerate);
    }
}

TEST_CASE("vacuous kernels alone still certify the sufficient condition") {
    Algebra alg = validated("complex");
    GammaFrame frame = default_gamma(2);
    DefiningFunction ball = ball_domain(1, 2, 1.0);
    ConvexityReport report = check_domain(alg, frame, ball, {8, 1, {}, -2.0, 2.0});
    CHECK(report.verdict == Verdict::SufficientConditionHolds);
    for (const auto& rec : report.records) {
        CHECK(rec.classification->kind == PointKind::VacuousTangent);
    }
}

TEST_CASE("per-point failures are recorded without aborting the run") {
    // The value is finite within the finite-difference gradient reach of the
    // boundary plane x = 1 but turns NaN at the wider hessian steps, so every
    // classification fails while the boundary still samples cleanly.
    Algebra alg = validated("complex");
    GammaFrame frame = default_gamma(2);
    DefiningFunction masked(2, 2, "masked-halfspace", [](const Eigen::VectorXd& z) {
        return (z(0) - 1.0) + 0.0 * std::sqrt(1.0002 - z(0));
    });
    ConvexityReport report = check_domain(alg, frame, masked, {4, 1, {}, -2.0, 2.0});
    REQUIRE(report.records.size() == 4);
    CHECK(report.verdict == Verdict::Inconclusive);
    for (const auto& rec : report.records) {
        CHECK_FALSE(rec.classification.has_value());
        CHECK(rec.error.rfind("NonFiniteValue", 0) == 0);
    }
}

TEST_CASE("reference evaluator agrees on complex domains") {
    Rng rng(57);
    Algebra alg = validated("complex");
    GammaFrame frame = hadamard_gamma(1);
    DefiningFunction ball = ball_domain(2, 2, 1.0);
    DefiningFunction q = signed_quadric_domain({1, -1}, 2, 1.0);
    for (const DefiningFunction* dom : {&ball, &q}) {
        auto pts = sample_boundary(*dom, 10, 29);
        for (const auto& bp : pts) {
            PointClassification c = classify_point(alg, frame, *dom, bp.w);
            testsupport::ComplexTangentForm ref = testsupport::complex_tangent_min_form(*dom, bp.w);
            REQUIRE(ref.min_form.has_value());
            REQUIRE(c.min_eigenvalue.has_value());
            CHECK(std::abs(*ref.min_form - *c.min_eigenvalue) <= 1e-9 * (1.0 + std::abs(*ref.min_form)));
        }
    }
}

}  // TEST_SUITE
