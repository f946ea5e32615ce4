#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "clusterspt/engine.hpp"
#include "clusterspt/errors.hpp"
#include "clusterspt/model.hpp"
#include "dense_oracle.hpp"

using namespace clusterspt;

namespace {

StateVector random_state(int length, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(Eigen::Index{1} << length);
    for (auto& a : v) a = Complex(g(rng), g(rng));
    return StateVector(length, v.normalized());
}

OperatorSum model_h(const LatticeSpec& lat, double lambda) {
    return cluster_hamiltonian(lat) + ising_perturbation(lat, lambda);
}

}  // namespace

TEST(Engine, ApplyMatchesKroneckerOracle) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 100; ++trial) {
        const int L = 1 + static_cast<int>(rng() % 6);
        OperatorSum a(L);
        for (int k = 0; k < 4; ++k) a.add_term(oracle::random_pauli(L, rng), Complex(g(rng), g(rng)));
        const StateVector psi = random_state(L, rng);
        const Eigen::VectorXcd expected = oracle::sum_matrix(a) * psi.amplitudes();
        EXPECT_LE((apply(a, psi).amplitudes() - expected).norm(), 1e-12);
        EXPECT_LE(oracle::max_abs(dense_matrix(a) - oracle::sum_matrix(a)), 1e-12);
    }
}

TEST(Engine, ApplyOnLargeStateUsesThreadsConsistently) {
    // 2^16 amplitudes crosses the parallel threshold; compare with a term-by-term sum.
    std::mt19937_64 rng(2);
    const LatticeSpec lat(16, Boundary::periodic);
    const OperatorSum h = model_h(lat, 0.3);
    const StateVector psi = random_state(16, rng);
    Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(psi.amplitudes().size());
    for (const auto& [p, c] : h.expanded()) sum += c * apply(OperatorSum(p), psi).amplitudes();
    EXPECT_LE((apply(h, psi).amplitudes() - sum).norm(), 1e-10);
}

TEST(Engine, BasisOrderingPutsSiteOneFirst) {
    // |100> is an eigenstate of Z_1 with eigenvalue -1.
    const StateVector psi = StateVector::basis_state(3, 0b100);
    EXPECT_NEAR(expectation(psi, OperatorSum(PauliString::parse("ZII"))).real(), -1.0, 1e-15);
    EXPECT_NEAR(expectation(psi, OperatorSum(PauliString::parse("IIZ"))).real(), 1.0, 1e-15);
}

TEST(Engine, Caps) {
    const OperatorSum big = cluster_hamiltonian(LatticeSpec(30, Boundary::open));
    EXPECT_THROW(eig_low(big, 1, SolverMethod::iterative), ResourceError);
    EXPECT_THROW(eig_low(cluster_hamiltonian(LatticeSpec(13, Boundary::open)), 1, SolverMethod::dense), ResourceError);
    EXPECT_THROW(dense_matrix(cluster_hamiltonian(LatticeSpec(13, Boundary::open))), ResourceError);
    EXPECT_THROW(build_cluster_state(LatticeSpec(30, Boundary::open), 0, 0), ResourceError);
}

TEST(Engine, RejectsNonHermitianAndBadSectors) {
    const OperatorSum a(PauliString::parse("+i XI"));
    EXPECT_THROW(eig_low(a, 1, SolverMethod::dense), DomainError);
    const LatticeSpec lat(6, Boundary::open);
    EXPECT_THROW(eig_low(cluster_hamiltonian(lat), 1, SolverMethod::dense,
                         {}, Sector{PauliString::parse("XIIIII"), 1}),
                 DomainError);
    EXPECT_THROW(eig_low(cluster_hamiltonian(lat), 0, SolverMethod::dense), DomainError);
}

TEST(Engine, OpenClusterSpectrum) {
    for (int L : {4, 6, 7}) {
        const auto spec = eig_low(cluster_hamiltonian(LatticeSpec(L, Boundary::open)), 6, SolverMethod::dense);
        EXPECT_NEAR(spec.ground_energy(), -(L - 2), 1e-10);
        EXPECT_EQ(spec.ground_degeneracy, 4);
        EXPECT_NEAR(spec.gap, 2.0, 1e-10);
        for (double r : spec.residuals) EXPECT_LE(r, 1e-9 * spec.norm_bound);
    }
}

TEST(Engine, UnresolvedGapIsNaN) {
    const auto spec = eig_low(cluster_hamiltonian(LatticeSpec(6, Boundary::open)), 3, SolverMethod::dense);
    EXPECT_EQ(spec.ground_degeneracy, 3);
    EXPECT_FALSE(spec.gap_resolved());
}

TEST(Engine, DenseAndIterativeAgree) {
    const LatticeSpec lat(10, Boundary::open);
    const OperatorSum h = model_h(lat, 0.5);
    const auto dense = eig_low(h, 6, SolverMethod::dense);
    const auto iter = eig_low(h, 6, SolverMethod::iterative);
    ASSERT_EQ(dense.eigenvalues.size(), iter.eigenvalues.size());
    for (std::size_t i = 0; i < dense.eigenvalues.size(); ++i) {
        EXPECT_NEAR(dense.eigenvalues[i], iter.eigenvalues[i], 1e-8) << i;
    }
    // Each returned vector is an eigenvector: zero energy variance.
    for (const auto& spec : {dense, iter}) {
        for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
            const StateVector& v = spec.eigenvectors[i];
            const StateVector hv = apply(h, v);
            const double mean = v.inner(hv).real();
            const double var = hv.inner(hv).real() - mean * mean;
            EXPECT_NEAR(mean, spec.eigenvalues[i], 1e-9);
            EXPECT_LE(std::abs(var), 1e-9);
        }
    }
}

TEST(Engine, IterativeResolvesDegenerateGroundSpace) {
    const LatticeSpec lat(9, Boundary::open);
    const auto spec = eig_low(cluster_hamiltonian(lat), 5, SolverMethod::iterative);
    EXPECT_EQ(spec.ground_degeneracy, 4);
    EXPECT_NEAR(spec.gap, 2.0, 1e-9);
    const auto basis = spec.ground_basis();
    for (std::size_t a = 0; a < basis.size(); ++a) {
        for (std::size_t b = 0; b < basis.size(); ++b) {
            EXPECT_NEAR(std::abs(basis[a].inner(basis[b])), a == b ? 1.0 : 0.0, 1e-10);
        }
    }
}

TEST(Engine, SectorsSplitTheSpectrum) {
    const LatticeSpec lat(8, Boundary::periodic);
    const OperatorSum h = model_h(lat, 0.9);
    const PauliString parity = parity_and_timereversal(lat).first;
    const auto full = eig_low(h, 8, SolverMethod::dense);
    for (SolverMethod m : {SolverMethod::dense, SolverMethod::iterative}) {
        const auto even = eig_low(h, 4, m, {}, Sector{parity, 1});
        const auto odd = eig_low(h, 4, m, {}, Sector{parity, -1});
        std::vector<double> merged = even.eigenvalues;
        merged.insert(merged.end(), odd.eigenvalues.begin(), odd.eigenvalues.end());
        std::sort(merged.begin(), merged.end());
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(merged[i], full.eigenvalues[i], 1e-9);
        for (const auto& v : even.eigenvectors) {
            EXPECT_NEAR(expectation(v, OperatorSum(parity)).real(), 1.0, 1e-9);
        }
        for (const auto& v : odd.eigenvectors) {
            EXPECT_NEAR(expectation(v, OperatorSum(parity)).real(), -1.0, 1e-9);
        }
    }
}

TEST(Engine, DiagonalSectorAndComplexHamiltonian) {
    // Complex Hermitian H with the diagonal symmetry Z_3.
    OperatorSum h(3);
    h.add_term(PauliString::parse("XYI"), 0.7);
    h.add_term(PauliString::parse("YXI"), -0.7);
    h.add_term(PauliString::parse("ZZI"), 1.0);
    h.add_term(PauliString::parse("IIZ"), 0.4);
    ASSERT_TRUE(h.is_hermitian());
    const auto m = oracle::sum_matrix(h);
    Eigen::SelfAdjointEigenSolver<oracle::Matrix> es(m);
    for (SolverMethod method : {SolverMethod::dense, SolverMethod::iterative}) {
        const auto spec = eig_low(h, 8, method);
        for (int i = 0; i < 8; ++i) EXPECT_NEAR(spec.eigenvalues[i], es.eigenvalues()[i], 1e-10);
        const auto sec = eig_low(h, 4, method, {}, Sector{PauliString::parse("IIZ"), -1});
        for (const auto& v : sec.eigenvectors) {
            EXPECT_NEAR(expectation(v, OperatorSum(PauliString::parse("IIZ"))).real(), -1.0, 1e-10);
        }
    }
}

TEST(Engine, ClusterStatesSpanTheGroundSpace) {
    const LatticeSpec lat(7, Boundary::open);
    std::vector<StateVector> states;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) states.push_back(build_cluster_state(lat, k, l));
    }
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            EXPECT_NEAR(std::abs(states[a].inner(states[b])), a == b ? 1.0 : 0.0, 1e-12);
        }
    }
    const auto spec = eig_low(cluster_hamiltonian(lat), 6, SolverMethod::dense);
    for (const auto& psi : states) {
        double weight = 0.0;
        for (const auto& g : spec.ground_basis()) weight += std::norm(g.inner(psi));
        EXPECT_NEAR(weight, 1.0, 1e-10);
    }
    EXPECT_THROW(build_cluster_state(LatticeSpec(6, Boundary::periodic), 1, 0), DomainError);
    EXPECT_THROW(build_cluster_state(lat, 2, 0), DomainError);
}

TEST(Engine, GroundProjectorOfEdgeOperators) {
    const LatticeSpec lat(6, Boundary::open);
    const auto spec = eig_low(cluster_hamiltonian(lat), 6, SolverMethod::dense);
    const auto z1 = ground_projector(spec, OperatorSum(PauliString::single(6, 1, 'Z')));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(z1);
    EXPECT_NEAR(es.eigenvalues()[0], -1.0, 1e-9);
    EXPECT_NEAR(es.eigenvalues()[3], 1.0, 1e-9);
    const auto x3 = ground_projector(spec, OperatorSum(PauliString::single(6, 3, 'X')));
    EXPECT_LE(x3.cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Engine, ColumnsFormat) {
    std::ostringstream out;
    write_columns(out, StateVector::basis_state(2, 1));
    EXPECT_EQ(out.str().substr(0, 2), "0 ");
    std::size_t lines = 0;
    for (char c : out.str()) lines += c == '\n';
    EXPECT_EQ(lines, 4u);
}

TEST(Engine, SeedDeterminism) {
    const LatticeSpec lat(10, Boundary::periodic);
    const OperatorSum h = model_h(lat, 1.1);
    const auto a = eig_low(h, 3, SolverMethod::iterative);
    const auto b = eig_low(h, 3, SolverMethod::iterative);
    EXPECT_EQ(a.eigenvalues, b.eigenvalues);
}
