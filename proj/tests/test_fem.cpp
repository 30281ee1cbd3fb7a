#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "helmrec/cases.hpp"
#include "helmrec/experiments.hpp"
#include "helmrec/fem.hpp"
#include "helmrec/rng.hpp"

using namespace helmrec;

namespace {

// single unit right triangle (0,0),(1,0),(0,1); hypotenuse + legs boundary
Mesh one_triangle_mesh() {
    Mesh mesh;
    mesh.nodes = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    mesh.triangles = {{0, 1, 2}};
    mesh.boundary_edges = {{0, 1, Tag::GammaC}, {1, 2, Tag::GammaC}, {2, 0, Tag::GammaI}};
    mesh.h = std::sqrt(2.0);
    return mesh;
}

BoundaryField random_field(const BoundarySegment& seg, Rng& rng) {
    BoundaryField f;
    f.tag = seg.tag;
    for (int k = 0; k < seg.size(); ++k) f.values.push_back(rng.uniform(-2.0, 2.0));
    return f;
}

}  // namespace

TEST_CASE("local stiffness matrix of the unit right triangle") {
    const Mesh mesh = one_triangle_mesh();
    const FactorizedOperator op(mesh, 0.0, Tag::GammaI);
    const Eigen::MatrixXd k = Eigen::MatrixXd(op.full_matrix());
    // analytic integration of the constant P1 gradients: 1/2 * [[2,-1,-1],[-1,1,0],[-1,0,1]]
    CHECK(k(0, 0) == doctest::Approx(1.0));
    CHECK(k(0, 1) == doctest::Approx(-0.5));
    CHECK(k(0, 2) == doctest::Approx(-0.5));
    CHECK(k(1, 1) == doctest::Approx(0.5));
    CHECK(k(1, 2) == doctest::Approx(0.0));
    CHECK(k(2, 2) == doctest::Approx(0.5));
}

TEST_CASE("local mass matrix of the unit right triangle") {
    const Mesh mesh = one_triangle_mesh();
    const FactorizedOperator op0(mesh, 0.0, Tag::GammaI);
    const FactorizedOperator op1(mesh, 1.0, Tag::GammaI);
    const Eigen::MatrixXd m =
        Eigen::MatrixXd(op1.full_matrix()) - Eigen::MatrixXd(op0.full_matrix());
    const double area = 0.5;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(m(i, j) == doctest::Approx(area / 12.0 * (i == j ? 2.0 : 1.0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("assembled matrix is exactly symmetric") {
    const Mesh mesh = build_unit_square_mesh(8);
    const FactorizedOperator op(mesh, 5.0, Tag::GammaI);
    const Eigen::MatrixXd a = Eigen::MatrixXd(op.full_matrix());
    CHECK((a - a.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("positive pivots for mu > 0, factorization succeeds for both cases") {
    const Mesh square = build_unit_square_mesh(16);
    CHECK(FactorizedOperator(square, 5.0, Tag::GammaI).all_pivots_positive());
    CHECK(FactorizedOperator(square, 5.0, Tag::GammaC).all_pivots_positive());

    const Mesh disc = build_unit_disc_mesh(32);
    CHECK_NOTHROW(FactorizedOperator(disc, -2.0, Tag::GammaI));
    CHECK_NOTHROW(FactorizedOperator(disc, -2.0, Tag::GammaC));
}

TEST_CASE("mu at a mixed-problem eigenvalue is rejected") {
    // compute the smallest generalized eigenvalue of (K, M) on the free
    // nodes of the coarsest square, then hit it exactly
    const Mesh mesh = build_unit_square_mesh(2);
    const FactorizedOperator op0(mesh, 0.0, Tag::GammaI);
    const FactorizedOperator op1(mesh, 1.0, Tag::GammaI);
    const Eigen::MatrixXd a0 = Eigen::MatrixXd(op0.full_matrix());
    const Eigen::MatrixXd a1 = Eigen::MatrixXd(op1.full_matrix());
    std::vector<int> free_nodes;
    for (int i = 0; i < mesh.num_nodes(); ++i) {
        if (mesh.nodes[i].x > 1e-12) free_nodes.push_back(i);
    }
    const int nf = static_cast<int>(free_nodes.size());
    Eigen::MatrixXd kff(nf, nf), mff(nf, nf);
    for (int r = 0; r < nf; ++r) {
        for (int c = 0; c < nf; ++c) {
            kff(r, c) = a0(free_nodes[r], free_nodes[c]);
            mff(r, c) = a1(free_nodes[r], free_nodes[c]) - kff(r, c);
        }
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> geig(kff, mff);
    const double lambda1 = geig.eigenvalues().minCoeff();
    CHECK_THROWS_AS(FactorizedOperator(mesh, -lambda1, Tag::GammaI), EigenvalueProximityError);
}

TEST_CASE("solve: all-zero boundary data gives the zero solution") {
    const Mesh mesh = build_unit_square_mesh(8);
    const FactorizedOperator op(mesh, 5.0, Tag::GammaI);
    BoundaryField d{Tag::GammaI, std::vector<double>(op.dirichlet_segment().size(), 0.0)};
    BoundaryField g{Tag::GammaC, std::vector<double>(op.neumann_segment().size(), 0.0)};
    const FemSolution sol = op.solve(d, g);
    CHECK(sol.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("solve: Dirichlet values are reproduced bit-exactly") {
    const Mesh mesh = build_unit_square_mesh(8);
    const FactorizedOperator op(mesh, 5.0, Tag::GammaI);
    Rng rng(7);
    const BoundaryField d = random_field(op.dirichlet_segment(), rng);
    const BoundaryField g = random_field(op.neumann_segment(), rng);
    const FemSolution sol = op.solve(d, g);
    const BoundarySegment& seg = op.dirichlet_segment();
    for (int k = 0; k < seg.size(); ++k) {
        CHECK(sol.values[seg.node_ids[k]] == d.values[k]);
    }
}

TEST_CASE("solve: tag mismatch is rejected") {
    const Mesh mesh = build_unit_square_mesh(4);
    const FactorizedOperator op(mesh, 5.0, Tag::GammaI);
    BoundaryField d{Tag::GammaC, std::vector<double>(op.neumann_segment().size(), 0.0)};
    BoundaryField g{Tag::GammaI, std::vector<double>(op.dirichlet_segment().size(), 0.0)};
    CHECK_THROWS_AS(op.solve(d, g), std::invalid_argument);
}

TEST_CASE("solve is linear in the boundary data") {
    const Mesh mesh = build_unit_square_mesh(8);
    const FactorizedOperator op(mesh, 5.0, Tag::GammaI);
    Rng rng(11);
    const BoundaryField d1 = random_field(op.dirichlet_segment(), rng);
    const BoundaryField d2 = random_field(op.dirichlet_segment(), rng);
    const BoundaryField g1 = random_field(op.neumann_segment(), rng);
    const BoundaryField g2 = random_field(op.neumann_segment(), rng);
    const double a = 0.3, b = -1.7;

    BoundaryField d{Tag::GammaI, {}}, g{Tag::GammaC, {}};
    for (int k = 0; k < d1.size(); ++k) d.values.push_back(a * d1.values[k] + b * d2.values[k]);
    for (int k = 0; k < g1.size(); ++k) g.values.push_back(a * g1.values[k] + b * g2.values[k]);

    const Eigen::VectorXd combined = op.solve(d, g).values;
    const Eigen::VectorXd split = a * op.solve(d1, g1).values + b * op.solve(d2, g2).values;
    const double scale = combined.cwiseAbs().maxCoeff();
    CHECK((combined - split).cwiseAbs().maxCoeff() <= 1e-12 * scale);
}

TEST_CASE("manufactured-solution convergence is second order") {
    const auto square = fem_convergence_study(CaseName::Square, {8, 16, 32});
    for (std::size_t i = 1; i < square.size(); ++i) {
        CHECK(square[i].ratio >= 3.2);
        CHECK(square[i].ratio <= 4.8);
    }
    const auto disc = fem_convergence_study(CaseName::Disc, {16, 32, 64});
    for (std::size_t i = 1; i < disc.size(); ++i) {
        CHECK(disc[i].ratio >= 3.2);
        CHECK(disc[i].ratio <= 4.8);
    }
}

TEST_CASE("trace of the full-data solve hits the exact solution on GammaC") {
    const BenchmarkCase bc = make_case(CaseName::Square);
    const Mesh mesh = build_unit_square_mesh(32);
    const FactorizedOperator op(mesh, bc.mu, Tag::GammaI);
    const CaseData data = synthesize_data(bc, mesh);
    const FemSolution sol = op.solve(data.target.phi_d, data.cauchy.g);

    // imposed segment comes back exactly
    const BoundaryField on_gi = trace(sol, op.segment(Tag::GammaI));
    for (int k = 0; k < on_gi.size(); ++k) CHECK(on_gi.values[k] == data.target.phi_d.values[k]);

    const BoundarySegment& gc = op.segment(Tag::GammaC);
    const BoundaryField tr = trace(sol, gc);
    bool found = false;
    for (int k = 0; k < gc.size(); ++k) {
        const Point2& p = mesh.nodes[gc.node_ids[k]];
        if (std::abs(p.x - 1.0) < 1e-12 && std::abs(p.y) < 1e-12) {
            found = true;
            CHECK(tr.values[k] == doctest::Approx(std::exp(2.0)).epsilon(1e-2));
        }
    }
    CHECK(found);
}

TEST_CASE("trace of the zero solution is zero") {
    const Mesh mesh = build_unit_square_mesh(4);
    const FactorizedOperator op(mesh, 5.0, Tag::GammaI);
    FemSolution zero;
    zero.values = Eigen::VectorXd::Zero(mesh.num_nodes());
    zero.neumann_load = Eigen::VectorXd::Zero(mesh.num_nodes());
    const BoundaryField tr = trace(zero, op.segment(Tag::GammaC));
    for (double v : tr.values) CHECK(v == 0.0);
}

TEST_CASE("flux recovery on the Neumann segment reproduces the imposed data") {
    const BenchmarkCase bc = make_case(CaseName::Square);
    const Mesh mesh = build_unit_square_mesh(32);
    const FactorizedOperator op(mesh, bc.mu, Tag::GammaI);
    const CaseData data = synthesize_data(bc, mesh);
    const FemSolution sol = op.solve(data.target.phi_d, data.cauchy.g);
    const BoundarySegment& gc = op.segment(Tag::GammaC);
    const BoundaryField flux = recover_flux(op, sol, gc);
    // the exact normal derivative on y=0 is e^{2x}; stay away from the
    // corners where the analytic normal jumps
    for (int k = 0; k < gc.size(); ++k) {
        const Point2& p = mesh.nodes[gc.node_ids[k]];
        if (std::abs(p.y) < 1e-12 && p.x > 0.1 && p.x < 0.9) {
            CHECK(flux.values[k] == doctest::Approx(std::exp(2.0 * p.x)).epsilon(5e-2));
        }
    }
}

TEST_CASE("flux recovery on the Dirichlet segment converges under refinement") {
    // measured ratios: square 2.9-3.1, disc 3.8-5.2 per halving
    for (CaseName name : {CaseName::Square, CaseName::Disc}) {
        const BenchmarkCase bc = make_case(name);
        std::vector<double> errors;
        for (int n : name == CaseName::Square ? std::vector<int>{16, 32, 64}
                                              : std::vector<int>{32, 64, 128}) {
            const Mesh mesh = build_case_mesh(bc, n);
            const FactorizedOperator op(mesh, bc.mu, Tag::GammaI);
            const CaseData data = synthesize_data(bc, mesh);
            const FemSolution sol = op.solve(data.target.phi_d, data.cauchy.g);
            const BoundarySegment& gi = op.segment(Tag::GammaI);
            BoundaryField diff = recover_flux(op, sol, gi);
            for (int k = 0; k < gi.size(); ++k) diff.values[k] -= data.target.phi_n.values[k];
            errors.push_back(boundary_l2_norm(diff, gi) /
                             boundary_l2_norm(data.target.phi_n, gi));
        }
        CHECK(errors[0] < 0.05);
        for (std::size_t i = 1; i < errors.size(); ++i) {
            const double ratio = errors[i - 1] / errors[i];
            CHECK(ratio >= 1.5);
            CHECK(ratio <= 6.0);
        }
    }
}

TEST_CASE("constant solution with mu = 0 has zero flux") {
    const Mesh mesh = build_unit_square_mesh(8);
    const FactorizedOperator op(mesh, 0.0, Tag::GammaI);
    BoundaryField d{Tag::GammaI, std::vector<double>(op.dirichlet_segment().size(), 1.0)};
    BoundaryField g{Tag::GammaC, std::vector<double>(op.neumann_segment().size(), 0.0)};
    const FemSolution sol = op.solve(d, g);
    const BoundaryField flux = recover_flux(op, sol, op.segment(Tag::GammaI));
    for (double v : flux.values) CHECK(std::abs(v) <= 1e-10);
}

TEST_CASE("boundary norms") {
    const Mesh mesh = build_unit_square_mesh(64);
    const BoundarySegment gi = boundary_segment(mesh, Tag::GammaI);

    const BoundaryField ones = make_field(mesh, gi, [](double, double) { return 1.0; });
    CHECK(boundary_l2_norm(ones, gi) == doctest::Approx(1.0).epsilon(1e-12));

    // unit slope in arclength
    BoundaryField ramp{Tag::GammaI, {}};
    for (int k = 0; k < gi.size(); ++k) ramp.values.push_back(gi.s[k]);
    CHECK(boundary_h1_seminorm(ramp, gi) == doctest::Approx(1.0).epsilon(1e-12));

    const BoundaryField decay = make_field(mesh, gi, [](double, double y) { return std::exp(-y); });
    const double exact = std::sqrt((1.0 - std::exp(-2.0)) / 2.0);
    CHECK(std::abs(boundary_l2_norm(decay, gi) - exact) <= 1e-4);
}
