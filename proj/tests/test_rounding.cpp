#include "speclust/rounding.hpp"

#include "speclust/dataset.hpp"
#include "speclust/metrics.hpp"
#include "support/helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace speclust;
using namespace speclust::testing;

namespace {

bool trace_non_increasing(const std::vector<double>& trace, double tol = 1e-10) {
    for (std::size_t i = 1; i < trace.size(); ++i)
        if (trace[i] > trace[i - 1] + tol) return false;
    return true;
}

Embedding random_embedding(RngStream& rng, int n, int c, bool identity_weights) {
    const WeightVector pi =
        identity_weights ? WeightVector::identity(n) : random_weights(rng, n);
    const Matrix u = random_orthonormal(rng, n, c - 1);
    return {pi.pi.cwiseSqrt().cwiseInverse().asDiagonal() * u, pi.pi};
}

}  // namespace

TEST_CASE("g_matrix layout") {
    const Matrix g = g_matrix(3);
    Matrix expected(3, 2);
    expected << 2.0 / 3, -1.0 / 3, -1.0 / 3, 2.0 / 3, -1.0 / 3, -1.0 / 3;
    CHECK((g - expected).cwiseAbs().maxCoeff() <= 1e-14);
    // Columns sum to zero for any c.
    for (int c = 2; c < 7; ++c)
        CHECK(g_matrix(c).colwise().sum().cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("procrustes_align returns the polar factor") {
    RngStream rng(201);
    const int n = 12, c = 3;
    const Matrix u = random_orthonormal(rng, n, c - 1);
    const Partition p = random_partition(rng, n, c);
    const Matrix q = procrustes_align(u, p);
    CHECK((q.transpose() * q - Matrix::Identity(c - 1, c - 1)).cwiseAbs().maxCoeff() <= 1e-10);

    // The rotation maximizes the alignment trace over orthogonal matrices.
    const Matrix a = u.transpose() * p.indicator() * g_matrix(c);
    const double best = (q.transpose() * a).trace();
    for (int trial = 0; trial < 100; ++trial) {
        const Matrix qr = random_orthogonal(rng, c - 1);
        CHECK(best >= (qr.transpose() * a).trace() - 1e-9);
    }
}

TEST_CASE("procrustes_align of an orthogonal target is the target") {
    // With U = E G column-orthonormalized so that U'EG is symmetric PSD, the
    // polar factor of an already-orthogonal matrix is itself.
    RngStream rng(203);
    const Matrix m = random_orthogonal(rng, 3);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix polar = svd.matrixU() * svd.matrixV().transpose();
    CHECK((polar - m).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("procrustes_align rejects a one-class partition") {
    RngStream rng(205);
    const Matrix u = random_orthonormal(rng, 6, 2);
    const Partition p({0, 0, 0, 0, 0, 0}, 3);
    CHECK_THROWS_WITH_AS(procrustes_align(u, p), doctest::Contains("degenerate"),
                         std::invalid_argument);
}

TEST_CASE("assign_by_margin thresholds at zero") {
    Matrix y(2, 2);
    y << 0.9, -0.1, -0.2, -0.5;
    const Partition p = assign_by_margin(y);
    CHECK(p.num_classes == 3);
    CHECK(p.labels[0] == 0);  // positive max at index 0
    CHECK(p.labels[1] == 2);  // all negative -> last class
}

TEST_CASE("margin assignment recovers any embedded partition") {
    RngStream rng(207);
    for (int trial = 0; trial < 20; ++trial) {
        const int c = 2 + rng.uniform_int(4);
        const int per_class = 1 + rng.uniform_int(6);
        const int n = c * per_class;
        std::vector<int> labels;
        for (int j = 0; j < c; ++j) labels.insert(labels.end(), per_class, j);
        const Partition p(labels, c);
        const WeightVector pi = WeightVector::identity(n);
        const Embedding emb = embed_partition(p, build_psi(p.class_weights(pi.pi)), pi);
        CHECK(assign_by_margin(emb.y).labels == p.labels);
    }
}

TEST_CASE("initialization strategies") {
    RngStream rng(211);
    const AffinityGraph g = component_graph({4, 3, 5});
    const RelaxationResult res = solve_relaxation(laplacian(g), WeightVector::identity(12), 3);

    SUBCASE("identity is deterministic") {
        RngStream r1(1), r2(1);
        const Partition a = initialize_partition(res.embedding.y, 3, InitStrategy::Identity, r1);
        const Partition b = initialize_partition(res.embedding.y, 3, InitStrategy::Identity, r2);
        CHECK(a.labels == b.labels);
    }

    SUBCASE("orthogonal seeds one class per component") {
        const Partition p = initialize_partition(res.embedding.y, 3, InitStrategy::Orthogonal, rng);
        CHECK(rand_index(p, component_partition({4, 3, 5})) == doctest::Approx(1.0));
    }

    SUBCASE("random is reproducible and has no empty class") {
        RngStream r1(9), r2(9);
        const Partition a = initialize_partition(res.embedding.y, 3, InitStrategy::Random, r1);
        const Partition b = initialize_partition(res.embedding.y, 3, InitStrategy::Random, r2);
        CHECK(a.labels == b.labels);
        CHECK_FALSE(a.has_empty_class());
    }
}

TEST_CASE("all three rounders recover the components of a disconnected graph") {
    const std::vector<int> blocks{4, 5, 3};
    const AffinityGraph g = component_graph(blocks);
    const Partition truth = component_partition(blocks);
    const WeightVector pi{g.degrees};
    const LaplacianOperator lop = laplacian(g);
    const RelaxationResult res = solve_relaxation(lop, pi, 3);
    const Matrix z = yu_shi_embedding(lop, pi, 3);

    for (auto strategy : {InitStrategy::Orthogonal, InitStrategy::Identity, InitStrategy::Random}) {
        RngStream rng(303);
        const RoundingResult a = procrustean_rounding(res.embedding, 3, strategy, 100, rng);
        CHECK(rand_index(a.partition, truth) == doctest::Approx(1.0));
        const RoundingResult b = weighted_kmeans_rounding(res.embedding, 3, strategy, 100, rng);
        CHECK(rand_index(b.partition, truth) == doctest::Approx(1.0));
        const RoundingResult c = yu_shi_rounding(z, strategy, 100, rng);
        CHECK(rand_index(c.partition, truth) == doctest::Approx(1.0));
    }
}

TEST_CASE("rounders separate planted Gaussian blobs under every criterion") {
    RngStream rng(307);
    const auto [x, truth] = blob_data(rng, 30, 0.05);
    const Matrix z = standardize(x);
    const AffinityGraph g = build_affinity(z, 1.0, true);
    const WeightVector ncut_pi{g.degrees};
    const RelaxationResult res = solve_relaxation(laplacian(g), ncut_pi, 3);

    RngStream rounding_rng(1);
    const RoundingResult a =
        procrustean_rounding(res.embedding, 3, InitStrategy::Orthogonal, 100, rounding_rng);
    CHECK(rand_index(a.partition, truth) == doctest::Approx(1.0));
    const RoundingResult b =
        weighted_kmeans_rounding(res.embedding, 3, InitStrategy::Random, 100, rounding_rng);
    CHECK(rand_index(b.partition, truth) == doctest::Approx(1.0));
}

TEST_CASE("procrustean trace is non-increasing and the rotation stays orthogonal") {
    RngStream rng(311);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 12 + rng.uniform_int(24);
        const int c = 2 + rng.uniform_int(3);
        const Embedding emb = random_embedding(rng, n, c, trial % 2 == 0);
        const RoundingResult res =
            procrustean_rounding(emb, c, InitStrategy::Random, 100, rng);
        CHECK(trace_non_increasing(res.objective_trace));
        CHECK(res.iterations <= 100);
        CHECK((res.rotation.transpose() * res.rotation - Matrix::Identity(c - 1, c - 1))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-10);
    }
}

TEST_CASE("weighted k-means trace is non-increasing") {
    RngStream rng(313);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 12 + rng.uniform_int(24);
        const int c = 2 + rng.uniform_int(3);
        const Embedding emb = random_embedding(rng, n, c, trial % 2 == 0);
        const RoundingResult res =
            weighted_kmeans_rounding(emb, c, InitStrategy::Random, 100, rng);
        CHECK(trace_non_increasing(res.objective_trace));
        CHECK(res.iterations <= 100);
    }
}

TEST_CASE("k-means centers are the weighted class means at convergence") {
    RngStream rng(317);
    const Embedding emb = random_embedding(rng, 24, 3, false);
    const RoundingResult res = weighted_kmeans_rounding(emb, 3, InitStrategy::Random, 100, rng);
    REQUIRE(res.iterations < 100);  // converged: final centers match the final partition
    const Vector eta = res.partition.class_weights(emb.pi);
    for (int j = 0; j < 3; ++j) {
        Vector mean = Vector::Zero(2);
        for (int i = 0; i < 24; ++i)
            if (res.partition.labels[i] == j) mean += emb.pi(i) * emb.y.row(i).transpose();
        mean /= eta(j);
        CHECK((res.centers.row(j).transpose() - mean).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("unweighted k-means is the identity-weight special case") {
    // With Pi = I the recorded distortion is the classic k-means objective;
    // verify the fixed point: every point is nearest its own class center.
    RngStream rng(331);
    const Embedding emb = random_embedding(rng, 30, 3, true);
    const RoundingResult res = weighted_kmeans_rounding(emb, 3, InitStrategy::Random, 100, rng);
    REQUIRE(res.iterations < 100);
    for (int i = 0; i < 30; ++i) {
        const double own = (emb.y.row(i) - res.centers.row(res.partition.labels[i])).squaredNorm();
        for (int j = 0; j < 3; ++j)
            CHECK(own <= (emb.y.row(i) - res.centers.row(j)).squaredNorm() + 1e-12);
    }
}

TEST_CASE("procrustean rounding is rotation-equivariant on planted structure") {
    RngStream rng(337);
    for (int trial = 0; trial < 50; ++trial) {
        const int c = 2 + rng.uniform_int(3);
        const int per_class = 6;
        const int n = c * per_class;
        std::vector<int> labels;
        for (int j = 0; j < c; ++j) labels.insert(labels.end(), per_class, j);
        const Partition truth(labels, c);
        const WeightVector pi = WeightVector::identity(n);
        Embedding emb = embed_partition(truth, build_psi(truth.class_weights(pi.pi)), pi);
        // Small perturbation keeps the planted structure dominant.
        emb.y += 0.01 * random_matrix(rng, n, c - 1);

        RngStream r1(42), r2(42);
        const RoundingResult base =
            procrustean_rounding(emb, c, InitStrategy::Orthogonal, 100, r1);
        Embedding rotated{emb.y * random_orthogonal(rng, c - 1), emb.pi};
        const RoundingResult turned =
            procrustean_rounding(rotated, c, InitStrategy::Orthogonal, 100, r2);
        CHECK(rand_index(base.partition, turned.partition) == doctest::Approx(1.0));
    }
}

TEST_CASE("yu-shi rounding normalizes rows and rotates orthogonally") {
    RngStream rng(347);
    const AffinityGraph g = random_connected_graph(rng, 14);
    const WeightVector pi{g.degrees};
    const Matrix z = yu_shi_embedding(laplacian(g), pi, 3);
    const RoundingResult res = yu_shi_rounding(z, InitStrategy::Identity, 100, rng);
    CHECK((res.rotation.transpose() * res.rotation - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <=
          1e-10);
    CHECK(trace_non_increasing(res.objective_trace));
    CHECK_FALSE(res.partition.has_empty_class());
}

TEST_CASE("yu-shi pins zero-norm rows to the last class") {
    RngStream rng(349);
    Matrix z = random_matrix(rng, 8, 3);
    z.row(5).setZero();
    const RoundingResult res = yu_shi_rounding(z, InitStrategy::Identity, 100, rng);
    CHECK(res.partition.labels[5] == 2);
}

TEST_CASE("surrogate loss values") {
    Vector zero = Vector::Zero(3);  // c = 4
    for (int j = 0; j < 4; ++j) CHECK(surrogate_loss(zero, j) == doctest::Approx(3.0));

    Vector y1(1);
    y1 << 1.0;  // c = 2
    CHECK(surrogate_loss(y1, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(surrogate_loss(y1, 1) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
}

TEST_CASE("surrogate loss upper-bounds the zero-one loss") {
    RngStream rng(353);
    for (int trial = 0; trial < 1000; ++trial) {
        const int c = 2 + rng.uniform_int(4);
        Vector y(c - 1);
        for (int j = 0; j < c - 1; ++j) y(j) = 2.0 * rng.normal();
        // Extended argmax, class c-1 carries value 0.
        int argmax = c - 1;
        double best = 0.0;
        for (int j = 0; j < c - 1; ++j)
            if (y(j) > best) {
                best = y(j);
                argmax = j;
            }
        for (int j = 0; j < c; ++j)
            if (j != argmax) CHECK(surrogate_loss(y, j) >= 1.0 - 1e-12);
    }
}

TEST_CASE("empirical risk of the zero embedding is c - 1") {
    const Matrix y = Matrix::Zero(6, 2);
    const Partition labels({0, 1, 2, 0, 1, 2}, 3);
    CHECK(empirical_risk(y, labels) == doctest::Approx(2.0));
}

TEST_CASE("margin labels give lower risk than random relabelings on separable data") {
    RngStream rng(359);
    const int c = 3, per_class = 8, n = c * per_class;
    std::vector<int> lab;
    for (int j = 0; j < c; ++j) lab.insert(lab.end(), per_class, j);
    const Partition truth(lab, c);
    const WeightVector pi = WeightVector::identity(n);
    // Scale up so the margins are decisive.
    Matrix y = 10.0 * embed_partition(truth, build_psi(truth.class_weights(pi.pi)), pi).y;
    const Partition margin = assign_by_margin(y);
    const double base = empirical_risk(y, margin);
    for (int trial = 0; trial < 20; ++trial) {
        const Partition shuffled = random_partition(rng, n, c);
        CHECK(base < empirical_risk(y, shuffled));
    }
}

TEST_CASE("procrustes rotation is competitive in empirical risk (reported)") {
    RngStream rng(367);
    const int n = 30, c = 3;
    const Partition truth = random_partition(rng, n, c);
    const Matrix u = random_orthonormal(rng, n, c - 1);
    const Matrix q = procrustes_align(u, truth);
    const double aligned = empirical_risk(u * q, truth);
    int better = 0;
    for (int trial = 0; trial < 50; ++trial)
        if (empirical_risk(u * random_orthogonal(rng, c - 1), truth) < aligned) ++better;
    // The alignment optimizes only the first-order term of the risk, so this
    // is informational rather than a hard guarantee.
    MESSAGE("random rotations beating the Procrustes rotation: ", better, "/50");
}

TEST_CASE("fisher-consistent margins") {
    SUBCASE("uniform probabilities give zero margins") {
        const Vector y = fisher_consistent_margins(Vector::Constant(4, 0.25));
        CHECK(y.cwiseAbs().maxCoeff() <= 1e-14);
    }
    SUBCASE("binary closed form") {
        Vector p(2);
        p << 0.8, 0.2;
        const Vector y = fisher_consistent_margins(p);
        CHECK(y(0) == doctest::Approx(0.5 * std::log(4.0)).epsilon(1e-12));
    }
    SUBCASE("margin argmax matches the probability argmax") {
        RngStream rng(373);
        for (int trial = 0; trial < 100; ++trial) {
            const int c = 2 + rng.uniform_int(4);
            Vector p(c);
            for (int j = 0; j < c; ++j) p(j) = 0.05 + rng.uniform();
            p /= p.sum();
            Eigen::Index pmax = 0;
            p.maxCoeff(&pmax);
            const Partition assigned = assign_by_margin(fisher_consistent_margins(p).transpose());
            CHECK(assigned.labels[0] == static_cast<int>(pmax));
        }
    }
    SUBCASE("rejects invalid probabilities") {
        Vector p(2);
        p << 1.0, 0.0;
        CHECK_THROWS_AS(fisher_consistent_margins(p), std::invalid_argument);
        p << 0.5, 0.25;
        CHECK_THROWS_AS(fisher_consistent_margins(p), std::invalid_argument);
    }
}
