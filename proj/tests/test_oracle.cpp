#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "alinconv/oracle.hpp"
#include "alinconv/rng.hpp"
#include "support/test_inputs.hpp"

using namespace alinconv;
using testsupport::validated;

namespace {

Eigen::VectorXd pole4() {
    Eigen::VectorXd w(4);
    w << 1.0, 0.0, 0.0, 0.0;
    return w;
}

// rho = x of slot 0 plus the cube of x of slot 1; at the origin the tangent
// kernel is the whole second slot and rho restricted to it is exactly t^3.
DefiningFunction cubic_domain() {
    std::vector<Monomial> monomials = {
        {{{0, 0, 1}}, 1.0},
        {{{1, 0, 3}}, 1.0},
    };
    return polynomial_domain(monomials, 2, 2);
}

PointClassification synthetic_classification(PointKind kind, const Eigen::VectorXd& anchor) {
    PointClassification c;
    c.kind = kind;
    c.anchor = anchor;
    c.algebra_form_value = Element::Zero(2);
    if (kind != PointKind::VacuousTangent) c.min_eigenvalue = kind == PointKind::NegativeDirection ? -1.0 : 1.0;
    return c;
}

ProbeResult synthetic_probe(ProbeOutcome outcome, const Eigen::VectorXd& anchor, bool smallest_hit) {
    ProbeResult p;
    p.outcome = outcome;
    p.anchor = anchor;
    p.radii = {0.3, 0.1};
    p.samples_per_radius = 4;
    p.records.push_back(RadiusRecord{0.3, outcome == ProbeOutcome::InteriorWitness, Eigen::VectorXd(), -0.01});
    p.records.push_back(RadiusRecord{0.1, smallest_hit, Eigen::VectorXd(), smallest_hit ? -0.001 : 0.0});
    if (outcome == ProbeOutcome::InteriorWitness) p.witness = anchor;
    return p;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("tangent probe of the sphere never enters the ball") {
    Algebra alg = validated("complex");
    DefiningFunction ball = ball_domain(2, 2, 1.0);
    TangentFrame frame = tangent_frame(alg, ball, pole4());
    OracleConfig config;
    config.radii = {0.3, 0.1, 0.03};
    config.seed = 5;
    ProbeResult probe = geometric_probe(ball, frame, config);
    CHECK(probe.outcome == ProbeOutcome::NoIntersection);
    CHECK_FALSE(probe.witness.has_value());
    CHECK_FALSE(probe.vacuous);
    REQUIRE(probe.records.size() == 3);
    for (const auto& rec : probe.records) CHECK_FALSE(rec.interior_found);
    CHECK(probe.radii == config.radii);
    CHECK(probe.samples_per_radius == 16);
}

TEST_CASE("witness direction pierces the signed quadric at every radius") {
    Algebra alg = validated("complex");
    DefiningFunction q = signed_quadric_domain({1, -1}, 2, 1.0);
    TangentFrame frame = tangent_frame(alg, q, pole4());
    Eigen::VectorXd s(4);
    s << 0.0, 0.0, 1.0, 0.0;
    OracleConfig config;
    ProbeResult probe = geometric_probe(q, frame, config, s);
    CHECK(probe.outcome == ProbeOutcome::InteriorWitness);
    REQUIRE(probe.witness.has_value());
    REQUIRE(probe.records.size() == 4);
    for (const auto& rec : probe.records) {
        CHECK(rec.interior_found);
        // rho(w + r s) = -r^2 along the supplied direction, found first.
        CHECK(rec.rho_value == doctest::Approx(-rec.radius * rec.radius).epsilon(1e-9));
        CHECK((rec.witness - (pole4() + rec.radius * s)).cwiseAbs().maxCoeff() < 1e-12);
    }
    // The overall witness comes from the first scheduled radius.
    CHECK((*probe.witness - (pole4() + 0.3 * s)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(q.value(*probe.witness) < 0.0);
    // The witness displacement stays in the tangent kernel.
    Eigen::VectorXd displacement = *probe.witness - frame.anchor;
    CHECK((frame.constraint * displacement).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("direction batches are drawn up front from a fixed stream") {
    Algebra alg = validated("complex");
    DefiningFunction q = signed_quadric_domain({1, -1}, 2, 1.0);
    TangentFrame frame = tangent_frame(alg, q, pole4());
    OracleConfig config;
    config.radii = {0.3, 0.1};
    config.samples_per_radius = 16;
    config.seed = 9;
    ProbeResult probe = geometric_probe(q, frame, config);

    // Replay the stream: every radius consumes its full batch even though the
    // first direction already hits the interior.
    Rng rng(9);
    REQUIRE(probe.records.size() == 2);
    for (const auto& rec : probe.records) {
        Eigen::VectorXd first;
        for (int i = 0; i < config.samples_per_radius; ++i) {
            Eigen::VectorXd coeffs(frame.kernel_dim);
            for (int qi = 0; qi < frame.kernel_dim; ++qi) coeffs(qi) = rng.normal();
            if (i == 0) first = frame.kernel_basis * (coeffs / coeffs.norm());
        }
        REQUIRE(rec.interior_found);
        CHECK((rec.witness - (frame.anchor + rec.radius * first)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("probe is deterministic under a fixed seed") {
    Algebra alg = validated("complex");
    DefiningFunction q = signed_quadric_domain({1, -1, 1}, 2, 1.0);
    auto pts = sample_boundary(q, 3, 17);
    OracleConfig config;
    config.seed = 21;
    for (const auto& bp : pts) {
        TangentFrame frame = tangent_frame(alg, q, bp.w);
        ProbeResult a = geometric_probe(q, frame, config);
        ProbeResult b = geometric_probe(q, frame, config);
        CHECK(a.outcome == b.outcome);
        REQUIRE(a.records.size() == b.records.size());
        for (std::size_t i = 0; i < a.records.size(); ++i) {
            CHECK(a.records[i].interior_found == b.records[i].interior_found);
            if (a.records[i].interior_found) {
                CHECK((a.records[i].witness - b.records[i].witness).cwiseAbs().maxCoeff() == 0.0);
                CHECK(a.records[i].rho_value == b.records[i].rho_value);
            }
        }
    }
}

TEST_CASE("vacuous kernel probes are flagged") {
    Algebra alg = validated("complex");
    DefiningFunction ball = ball_domain(1, 2, 1.0);
    Eigen::VectorXd w(2);
    w << 1.0, 0.0;
    TangentFrame frame = tangent_frame(alg, ball, w);
    REQUIRE(frame.kernel_dim == 0);
    ProbeResult probe = geometric_probe(ball, frame, OracleConfig{});
    CHECK(probe.vacuous);
    CHECK(probe.outcome == ProbeOutcome::NoIntersection);
    CHECK(probe.records.size() == 4);
    for (const auto& rec : probe.records) CHECK_FALSE(rec.interior_found);
}

TEST_CASE("tangency of a halfspace does not count as intersection") {
    Algebra alg = validated("complex");
    Eigen::VectorXd normal(4);
    normal << 1.0, 0.0, 0.0, 0.0;
    DefiningFunction half = halfspace_domain(normal, 1.0, 2, 2);
    TangentFrame frame = tangent_frame(alg, half, pole4());
    ProbeResult probe = geometric_probe(half, frame, OracleConfig{});
    CHECK(probe.outcome == ProbeOutcome::NoIntersection);
}

TEST_CASE("probe configuration is validated") {
    Algebra alg = validated("complex");
    DefiningFunction ball = ball_domain(2, 2, 1.0);
    TangentFrame frame = tangent_frame(alg, ball, pole4());
    OracleConfig empty;
    empty.radii = {};
    CHECK_THROWS_AS(geometric_probe(ball, frame, empty), ConfigError);
    OracleConfig negative;
    negative.radii = {0.1, -0.2};
    CHECK_THROWS_AS(geometric_probe(ball, frame, negative), ConfigError);
    OracleConfig zero_samples;
    zero_samples.samples_per_radius = 0;
    CHECK_THROWS_AS(geometric_probe(ball, frame, zero_samples), ConfigError);
    Eigen::VectorXd wrong(3);
    wrong.setZero();
    CHECK_THROWS_AS(geometric_probe(ball, frame, OracleConfig{}, wrong), DimensionMismatch);
}

TEST_CASE("taylor residual vanishes for quadratics and tracks the cubic term") {
    DefiningFunction q = signed_quadric_domain({1, -1}, 2, 1.0);
    Eigen::VectorXd s(4);
    s << 0.0, 0.0, 1.0, 0.0;
    auto zero = taylor_residual(q, pole4(), s, {0.0, 0.3, 0.1, 0.01});
    for (double r : zero) CHECK(std::abs(r) < 1e-12);

    DefiningFunction cubic = cubic_domain();
    Eigen::VectorXd w0 = Eigen::VectorXd::Zero(4);
    auto res = taylor_residual(cubic, w0, s, {0.2, 0.05});
    CHECK(res[0] == doctest::Approx(0.008).epsilon(1e-12));
    CHECK(res[1] == doctest::Approx(0.000125).epsilon(1e-12));
    CHECK(taylor_decay_ok({0.2, 0.05}, res, cubic.scale_at(w0)));
}

TEST_CASE("taylor decay check rejects slowly decaying residuals") {
    CHECK_FALSE(taylor_decay_ok({0.1, 0.05}, {0.01, 0.01}, 1.0));
    CHECK(taylor_decay_ok({0.1}, {0.5}, 1.0));
    CHECK(taylor_decay_ok({0.2, 0.1, 0.05}, {0.0, 0.0, 0.0}, 1.0));
    CHECK_THROWS_AS(taylor_decay_ok({0.1, 0.2}, {0.0}, 1.0), DimensionMismatch);
    CHECK_THROWS_AS(taylor_decay_ok({0.1, 0.0}, {0.0, 0.0}, 1.0), ConfigError);
}

TEST_CASE("third derivative bound floors at one and sees cubic growth") {
    DefiningFunction ball = ball_domain(2, 2, 1.0);
    Eigen::VectorXd s(4);
    s << 0.0, 0.0, 1.0, 0.0;
    CHECK(third_derivative_bound(ball, pole4(), s) == 1.0);

    DefiningFunction cubic = cubic_domain();
    CHECK(third_derivative_bound(cubic, Eigen::VectorXd::Zero(4), s) == doctest::Approx(6.0).epsilon(1e-6));
}

TEST_CASE("sufficiency radius from the eigenvalue bound probes clean") {
    Algebra alg = validated("complex");
    GammaFrame gframe = default_gamma(2);
    DefiningFunction ball = ball_domain(2, 2, 1.0);
    auto pts = sample_boundary(ball, 6, 31);
    for (const auto& bp : pts) {
        PointClassification c = classify_point(alg, gframe, ball, bp.w);
        REQUIRE(c.kind == PointKind::StrictlyPositive);
        TangentFrame frame = tangent_frame(alg, ball, bp.w);
        Eigen::VectorXd any_dir = frame.kernel_basis.col(0);
        double l3 = third_derivative_bound(ball, bp.w, any_dir);
        double radius = *c.min_eigenvalue / (8.0 * l3);
        OracleConfig config;
        config.radii = {radius};
        config.seed = 3;
        ProbeResult probe = geometric_probe(ball, frame, config);
        CHECK(probe.outcome == ProbeOutcome::NoIntersection);
    }
}

TEST_CASE("necessity radius along the witness finds the interior") {
    Algebra alg = validated("complex");
    GammaFrame gframe = default_gamma(2);
    DefiningFunction q = signed_quadric_domain({1, -1}, 2, 1.0);
    auto pts = sample_boundary(q, 6, 37);
    for (const auto& bp : pts) {
        PointClassification c = classify_point(alg, gframe, q, bp.w);
        REQUIRE(c.kind == PointKind::NegativeDirection);
        REQUIRE(c.witness.has_value());
        TangentFrame frame = tangent_frame(alg, q, bp.w);
        double l3 = third_derivative_bound(q, bp.w, *c.witness);
        double radius = std::min(0.1, -*c.min_eigenvalue / (8.0 * l3));
        OracleConfig config;
        config.radii = {radius};
        config.seed = 3;
        ProbeResult probe = geometric_probe(q, frame, config, c.witness);
        CHECK(probe.outcome == ProbeOutcome::InteriorWitness);
    }
}

TEST_CASE("cross validation covers every branch") {
    Eigen::VectorXd anchor = pole4();

    CHECK(cross_validate(synthetic_classification(PointKind::StrictlyPositive, anchor),
                         synthetic_probe(ProbeOutcome::NoIntersection, anchor, false)) == Agreement::Agree);
    // Strictly positive consults only the smallest radius record.
    CHECK(cross_validate(synthetic_classification(PointKind::StrictlyPositive, anchor),
                         synthetic_probe(ProbeOutcome::InteriorWitness, anchor, false)) == Agreement::Agree);
    CHECK(cross_validate(synthetic_classification(PointKind::StrictlyPositive, anchor),
                         synthetic_probe(ProbeOutcome::InteriorWitness, anchor, true)) == Agreement::Disagree);
    CHECK(cross_validate(synthetic_classification(PointKind::NegativeDirection, anchor),
                         synthetic_probe(ProbeOutcome::InteriorWitness, anchor, true)) == Agreement::Agree);
    CHECK(cross_validate(synthetic_classification(PointKind::NegativeDirection, anchor),
                         synthetic_probe(ProbeOutcome::NoIntersection, anchor, false)) == Agreement::Disagree);
    CHECK(cross_validate(synthetic_classification(PointKind::Degenerate, anchor),
                         synthetic_probe(ProbeOutcome::NoIntersection, anchor, false)) == Agreement::Indeterminate);
    CHECK(cross_validate(synthetic_classification(PointKind::VacuousTangent, anchor),
                         synthetic_probe(ProbeOutcome::NoIntersection, anchor, false)) == Agreement::Indeterminate);

    Eigen::VectorXd moved = anchor;
    moved(0) += 1e-6;
    CHECK_THROWS_AS(cross_validate(synthetic_classification(PointKind::StrictlyPositive, anchor),
                                   synthetic_probe(ProbeOutcome::NoIntersection, moved, false)),
                    MismatchedAnchor);
}

TEST_CASE("oracle run agrees on the model domains") {
    Algebra alg = validated("complex");
    GammaFrame gframe = default_gamma(2);
    CheckerConfig checker;
    checker.samples = 8;
    checker.seed = 1;
    OracleConfig oracle;
    oracle.seed = 2;

    DefiningFunction ball = ball_domain(2, 2, 1.0);
    OracleReport good = run_oracle(alg, gframe, ball, checker, oracle);
    CHECK(good.verdict == Verdict::SufficientConditionHolds);
    CHECK_FALSE(good.any_disagree);
    CHECK(good.checker_seed == 1);
    REQUIRE(good.records.size() == 8);
    for (const auto& rec : good.records) {
        REQUIRE(rec.agreement.has_value());
        CHECK(*rec.agreement == Agreement::Agree);
    }

    DefiningFunction q = signed_quadric_domain({1, -1}, 2, 1.0);
    OracleReport bad = run_oracle(alg, gframe, q, checker, oracle);
    CHECK(bad.verdict == Verdict::NecessaryConditionViolated);
    CHECK_FALSE(bad.any_disagree);
    for (const auto& rec : bad.records) {
        CHECK(*rec.agreement == Agreement::Agree);
        CHECK(rec.classification->kind == PointKind::NegativeDirection);
    }
}

TEST_CASE("forcing the classifier positive makes the probe disagree") {
    // With the branch tolerance below every eigenvalue the classifier calls
    // the concave quadric strictly positive; the geometric probe still finds
    // interior points and flags the mismatch.
    Algebra alg = validated("complex");
    GammaFrame gframe = default_gamma(2);
    CheckerConfig checker;
    checker.samples = 8;
    checker.seed = 1;
    checker.tol = -10.0;
    DefiningFunction q = signed_quadric_domain({1, -1}, 2, 1.0);
    OracleReport report = run_oracle(alg, gframe, q, checker, OracleConfig{});
    CHECK(report.verdict == Verdict::SufficientConditionHolds);
    CHECK(report.any_disagree);
}

}  // TEST_SUITE
