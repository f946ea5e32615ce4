#include "clusterspt/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "clusterspt/clifford.hpp"
#include "clusterspt/errors.hpp"

namespace clusterspt {

namespace {

constexpr double kZeroTol = 1e-10;
constexpr double kScalarTol = 1e-9;
constexpr char kLetters[3] = {'X', 'Y', 'Z'};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

bool anticommute_sum(const OperatorSum& a, const OperatorSum& b) { return anticommutator(a, b).is_zero(); }

bool commute_sum(const OperatorSum& a, const OperatorSum& b) { return commutator(a, b).is_zero(); }

// A registry entry that is a single unit-modulus Pauli term, as a phased PauliString.
PauliString registry_string(const ModelSpec& model, const std::string& name) {
    const auto it = model.registry.find(name);
    if (it == model.registry.end()) {
        throw DomainError("model " + model.lattice.describe() + " has no operator " + name);
    }
    const auto& terms = it->second.terms();
    if (terms.size() != 1) throw DomainError(name + " is not a single Pauli string");
    const auto& [key, c] = *terms.begin();
    if (std::abs(std::abs(c) - 1.0) > 1e-12) throw DomainError(name + " does not have a unit coefficient");
    // c multiplies the bare product X^x Z^z; i^e X^x Z^z needs c = i^e.
    const int e = static_cast<int>(std::lround(std::arg(c) / (M_PI / 2.0)));
    return PauliString(model.lattice.length, static_cast<std::uint8_t>(((e % 4) + 4) % 4), key.first,
                       key.second);
}

std::vector<PauliString> bulk_singles(const LatticeSpec& lattice) {
    std::vector<PauliString> out;
    for (int j = 2; j <= lattice.length - 1; ++j) {
        for (char c : kLetters) out.push_back(PauliString::single(lattice.length, j, c));
    }
    return out;
}

// sigma_1^a, sigma_L^a and sigma_1^a sigma_L^a.
std::vector<PauliString> edge_conditions(const LatticeSpec& lattice) {
    const int L = lattice.length;
    std::vector<PauliString> out;
    for (char c : kLetters) {
        out.push_back(PauliString::single(L, 1, c));
        out.push_back(PauliString::single(L, L, c));
        out.push_back(multiply(PauliString::single(L, 1, c), PauliString::single(L, L, c)));
    }
    return out;
}

SplitKind classify(const Eigen::MatrixXcd& m, std::vector<double>& eigenvalues) {
    eigenvalues.clear();
    if (m.size() == 0 || m.cwiseAbs().maxCoeff() <= kZeroTol) return SplitKind::zero;
    const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) eigenvalues.push_back(es.eigenvalues()(k));
    const Complex mean = m.trace() / static_cast<double>(m.rows());
    const Eigen::MatrixXcd rest = m - mean * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    return rest.cwiseAbs().maxCoeff() <= kScalarTol ? SplitKind::scalar : SplitKind::splits;
}

}  // namespace

bool StabilizerReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

StabilizerReport verify_stabilizer_algebra(const LatticeSpec& lattice, const EngineOptions& options,
                                           int numeric_max_sites) {
    StabilizerReport report{lattice, 0, {}};
    const auto sites = stabilizer_sites(lattice);
    std::vector<std::string> failing;
    for (std::size_t a = 0; a < sites.size(); ++a) {
        for (std::size_t b = a + 1; b < sites.size(); ++b) {
            ++report.pairs_checked;
            if (!commutes(stabilizer(sites[a], lattice), stabilizer(sites[b], lattice))) {
                failing.push_back("S_" + std::to_string(sites[a]) + ",S_" + std::to_string(sites[b]));
            }
        }
    }
    std::string detail = std::to_string(report.pairs_checked) + " pairs";
    for (const auto& f : failing) detail += "; anticommuting " + f;
    report.checks.push_back({"stabilizers_commute", failing.empty(), detail});

    if (lattice.length > numeric_max_sites) return report;

    const int edge_states = lattice.is_open() ? 2 : 1;
    for (int k = 0; k < edge_states; ++k) {
        for (int l = 0; l < edge_states; ++l) {
            const StateVector psi = build_cluster_state(lattice, k, l, options);
            double worst = 0.0;
            for (int i : sites) {
                const StateVector s_psi = apply(OperatorSum(stabilizer(i, lattice)), psi, options);
                worst = std::max(worst, (s_psi.amplitudes() - psi.amplitudes()).norm());
            }
            const std::string name = "cluster_state_k" + std::to_string(k) + "_l" + std::to_string(l);
            report.checks.push_back({name, worst <= kZeroTol, "max ||S_i psi - psi|| = " + fmt(worst)});
        }
    }

    const OperatorSum hc = cluster_hamiltonian(lattice);
    const SolverMethod method =
        lattice.length <= options.dense_max_sites ? SolverMethod::dense : SolverMethod::iterative;
    const SpectrumResult spec = eig_low(hc, 6, method, options);
    const double expected_e0 = -static_cast<double>(sites.size());
    const int expected_deg = lattice.is_open() ? 4 : 1;
    const bool energy_ok = std::abs(spec.ground_energy() - expected_e0) <= 1e-9 * std::max(1.0, spec.norm_bound);
    report.checks.push_back({"ground_energy", energy_ok,
                             "E0 = " + fmt(spec.ground_energy()) + ", expected " + fmt(expected_e0)});
    report.checks.push_back({"ground_degeneracy", spec.ground_degeneracy == expected_deg && spec.gap_resolved(),
                             "degeneracy " + std::to_string(spec.ground_degeneracy) + ", expected " +
                                 std::to_string(expected_deg)});
    report.checks.push_back({"spectral_gap", spec.gap_resolved() && std::abs(spec.gap - 2.0) <= 1e-9,
                             "gap " + fmt(spec.gap) + ", expected 2"});
    return report;
}

std::string_view to_string(SplitKind k) {
    switch (k) {
        case SplitKind::zero: return "zero";
        case SplitKind::scalar: return "scalar";
        case SplitKind::splits: return "splits";
        case SplitKind::skipped: return "skipped";
    }
    return "skipped";
}

bool AlgebraVerdict::passed() const {
    for (int s = 0; s < 2; ++s) {
        if (!squares_to_identity[s] || !commutes_with_h[s] || !pair_anticommutes[s]) return false;
    }
    return t1_t2_commute && cross_pairs_commute;
}

std::vector<ProbeVerdict> default_probes(const LatticeSpec& lattice) {
    const int L = lattice.length;
    std::vector<ProbeVerdict> out;
    for (int j = 1; j <= L; ++j) {
        const bool edge = j == 1 || j == L;
        for (char c : kLetters) {
            const PauliString p = PauliString::single(L, j, c);
            out.push_back(ProbeVerdict{compact_name(p), edge ? "edge" : "bulk", p, false, false, false, SplitKind::skipped, {}});
        }
    }
    if (lattice.is_open()) {
        const int ends[4] = {1, 2, L - 1, L};
        for (int a = 0; a < 4; ++a) {
            for (int b = a + 1; b < 4; ++b) {
                if (ends[a] == ends[b]) continue;
                for (char ca : kLetters) {
                    for (char cb : kLetters) {
                        const PauliString p =
                            multiply(PauliString::single(L, ends[a], ca), PauliString::single(L, ends[b], cb));
                        out.push_back(ProbeVerdict{compact_name(p), "edge_pair", p, false, false, false, SplitKind::skipped, {}});
                    }
                }
            }
        }
        for (const auto& p : forbidden_set(lattice)) out.push_back(ProbeVerdict{compact_name(p), "sigma", p, false, false, false, SplitKind::skipped, {}});
    }
    return out;
}

ProtectionReport certify_protection(const ModelSpec& model, const ProtectionOptions& options) {
    const LatticeSpec& lattice = model.lattice;
    if (!lattice.is_open()) throw DomainError("symmetry protection needs an open chain, got " + lattice.describe());
    const std::string suffix = options.local_only ? "loc" : "";

    ProtectionReport report{lattice.describe() + " lambda=" + fmt(model.lambda), lattice, "", {}, {}, {}, false,
                            false, false, 0, false, {}};
    report.symmetry = options.local_only ? "local" : "global";

    PauliString a[2];
    PauliString b[2];
    OperatorSum t[2];
    for (int s = 0; s < 2; ++s) {
        const std::string idx = std::to_string(s + 1);
        a[s] = registry_string(model, "A" + idx + suffix);
        b[s] = registry_string(model, "B" + idx + suffix);
        t[s] = SymmetryPair{a[s], b[s]}.normalized();
    }

    const OperatorSum& h = model.hamiltonian;
    const OperatorSum one = OperatorSum::identity(lattice.length);
    AlgebraVerdict& alg = report.algebra;
    for (int s = 0; s < 2; ++s) {
        alg.squares_to_identity[s] = (t[s] * t[s] - one).is_zero();
        alg.commutes_with_h[s] = commute_sum(h, t[s]);
        alg.pair_anticommutes[s] = anticommute_sum(OperatorSum(a[s]), OperatorSum(b[s]));
    }
    alg.t1_t2_commute = commute_sum(t[0], t[1]);
    alg.cross_pairs_commute = commutes(a[0], a[1]) && commutes(a[0], b[1]) && commutes(b[0], a[1]) &&
                              commutes(b[0], b[1]);

    auto fails_with = [&](const PauliString& p, int s) { return !commute_sum(t[s], OperatorSum(p)); };

    // Bulk and forbidden-set verdicts always cover the full sets.
    report.bulk_protected_by[0] = report.bulk_protected_by[1] = true;
    report.bulk_protected_jointly = true;
    for (const auto& p : bulk_singles(lattice)) {
        const bool f1 = fails_with(p, 0);
        const bool f2 = fails_with(p, 1);
        report.bulk_protected_by[0] = report.bulk_protected_by[0] && f1;
        report.bulk_protected_by[1] = report.bulk_protected_by[1] && f2;
        if (!f1 && !f2) {
            report.bulk_protected_jointly = false;
            report.failures.push_back("bulk probe " + compact_name(p) + " commutes with both generators");
        }
    }
    report.sigma_excluded = true;
    for (const auto& p : forbidden_set(lattice)) {
        if (!fails_with(p, 0) && !fails_with(p, 1)) {
            report.sigma_excluded = false;
            report.failures.push_back("forbidden-set element " + compact_name(p) + " commutes with both generators");
        }
    }
    bool edge_protected = true;
    for (const auto& p : edge_conditions(lattice)) {
        if (!fails_with(p, 0) && !fails_with(p, 1)) {
            edge_protected = false;
            report.failures.push_back("edge probe " + compact_name(p) + " commutes with both generators");
        }
    }

    for (int s = 0; s < 2; ++s) {
        const std::string idx = std::to_string(s + 1);
        if (!alg.squares_to_identity[s]) report.failures.push_back("T" + idx + suffix + " does not square to 1");
        if (!alg.commutes_with_h[s]) report.failures.push_back("T" + idx + suffix + " does not commute with H");
        if (!alg.pair_anticommutes[s]) {
            report.failures.push_back("A" + idx + suffix + " and B" + idx + suffix + " do not anticommute");
        }
    }
    if (!alg.t1_t2_commute) report.failures.push_back("T1" + suffix + " and T2" + suffix + " do not commute");
    if (!alg.cross_pairs_commute) report.failures.push_back("cross pairs of the two generators do not commute");

    if (options.probes.empty()) {
        report.probes = default_probes(lattice);
    } else {
        for (const auto& p : options.probes) {
            if (p.length() != lattice.length) {
                throw DimensionError("probe " + p.to_string() + " does not match L=" + std::to_string(lattice.length));
            }
            report.probes.push_back(ProbeVerdict{compact_name(p), "custom", p, false, false, false, SplitKind::skipped, {}});
        }
    }
    if (options.sample_bulk) {
        std::vector<ProbeVerdict> bulk;
        std::vector<ProbeVerdict> rest;
        for (auto& v : report.probes) (v.family == "bulk" ? bulk : rest).push_back(std::move(v));
        if (bulk.size() > *options.sample_bulk) {
            std::mt19937_64 rng(options.seed);
            std::shuffle(bulk.begin(), bulk.end(), rng);
            bulk.resize(*options.sample_bulk);
            std::sort(bulk.begin(), bulk.end(), [&](const ProbeVerdict& x, const ProbeVerdict& y) {
                const auto sx = weight_support(x.probe).front();
                const auto sy = weight_support(y.probe).front();
                return sx != sy ? sx < sy : x.name < y.name;
            });
        }
        report.probes = std::move(bulk);
        report.probes.insert(report.probes.end(), rest.begin(), rest.end());
    }

    for (auto& v : report.probes) {
        const OperatorSum p(v.probe);
        v.commutes_with_h = commute_sum(h, p);
        v.commutes_with_t1 = commute_sum(t[0], p);
        v.commutes_with_t2 = commute_sum(t[1], p);
    }

    if (lattice.length <= options.numeric_max_sites) {
        report.numeric_checked = true;
        SpectrumResult spec;
        for (int count = 8;; count *= 2) {
            spec = eig_low(h, count, options.method, options.engine);
            if (spec.gap_resolved() || count >= 64) break;
        }
        report.ground_degeneracy = spec.ground_degeneracy;
        for (auto& v : report.probes) {
            v.first_order = classify(ground_projector(spec, OperatorSum(v.probe), options.engine), v.split_eigenvalues);
            if (v.symmetric() && v.first_order == SplitKind::splits) {
                report.failures.push_back("symmetric probe " + v.name + " splits the ground space");
            }
        }
    }

    bool symmetric_ok = std::none_of(report.probes.begin(), report.probes.end(), [](const ProbeVerdict& v) {
        return v.symmetric() && v.first_order == SplitKind::splits;
    });
    const bool coverage = options.local_only ? edge_protected : report.bulk_protected_jointly;
    report.protected_ = alg.passed() && report.sigma_excluded && coverage && symmetric_ok;
    return report;
}

PauliString string_order_operator(int length, int a, int b) {
    check_length(length);
    if (a < 2 || b > length - 1 || a > b || (b - a) % 2 != 0) {
        throw DomainError("string order needs 2 <= a <= b <= L-1 with b - a even; got a=" + std::to_string(a) +
                          ", b=" + std::to_string(b) + ", L=" + std::to_string(length));
    }
    std::string letters(static_cast<std::size_t>(length), 'I');
    letters[a - 2] = 'Z';
    letters[b] = 'Z';
    for (int j = a; j <= b; j += 2) letters[j - 1] = 'X';
    return PauliString::from_letters(letters);
}

PauliString longest_string_order_operator(int length) {
    const int b = (length - 1 - 2) % 2 == 0 ? length - 1 : length - 2;
    return string_order_operator(length, 2, b);
}

double string_order(const StateVector& psi, int a, int b, const EngineOptions& options) {
    return expectation(psi, OperatorSum(string_order_operator(psi.length(), a, b)), options).real();
}

std::vector<double> lambda_grid(double start, double stop, double step) {
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
        throw DomainError("lambda grid bounds must be finite");
    }
    if (start == stop) return {start};
    if (step <= 0.0 || stop < start) {
        throw DomainError("lambda grid needs start <= stop and step > 0; got " + fmt(start) + ":" + fmt(stop) + ":" +
                          fmt(step));
    }
    const double span = (stop - start) / step;
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9));
    if (n > 100000) throw ResourceError("lambda grid has more than 100000 points");
    std::vector<double> grid;
    for (std::size_t i = 0; i <= n; ++i) grid.push_back(start + static_cast<double>(i) * step);
    if (stop - grid.back() > 1e-9 * std::max(1.0, std::abs(stop))) grid.push_back(stop);
    else grid.back() = std::min(grid.back(), stop);
    return grid;
}

namespace {

ScanPoint scan_point(const LatticeSpec& lattice, double lambda, const PauliString& probe, const ScanOptions& options) {
    const OperatorSum h = cluster_hamiltonian(lattice) + ising_perturbation(lattice, lambda);
    const PauliString parity = parity_and_timereversal(lattice).first;
    const OperatorSum parity_op(parity);

    ScanPoint pt;
    pt.lambda = lambda;
    pt.parity_commutes = commute_sum(h, parity_op);
    pt.time_reversal_invariant = h.has_real_matrix();

    SpectrumResult even = eig_low(h, 2, options.method, options.engine, Sector{parity, 1});
    SpectrumResult odd = eig_low(h, 2, options.method, options.engine, Sector{parity, -1});
    const bool even_lower = even.eigenvalues.front() <= odd.eigenvalues.front();
    const SpectrumResult& low = even_lower ? even : odd;
    const SpectrumResult& high = even_lower ? odd : even;

    pt.ground_parity = even_lower ? 1 : -1;
    pt.ground_energy = low.eigenvalues.front();
    // Round-off can push a quasi-degenerate gap slightly negative.
    pt.sector_gap = std::max(0.0, low.eigenvalues[1] - low.eigenvalues[0]);
    pt.parity_gap = std::max(0.0, high.eigenvalues.front() - pt.ground_energy);

    std::vector<double> all = even.eigenvalues;
    all.insert(all.end(), odd.eigenvalues.begin(), odd.eigenvalues.end());
    std::sort(all.begin(), all.end());
    const double tol = options.engine.degeneracy_rtol * std::max(1.0, std::abs(all.front()));
    pt.gap = std::numeric_limits<double>::quiet_NaN();
    for (double e : all) {
        if (e - all.front() > tol) {
            pt.gap = e - all.front();
            break;
        }
    }

    const StateVector& psi = low.eigenvectors.front();
    pt.parity_expectation = expectation(psi, parity_op, options.engine).real();
    pt.string_order = expectation(psi, OperatorSum(probe), options.engine).real();
    const int bonds = lattice.is_open() ? lattice.length - 1 : lattice.length;
    OperatorSum yy(lattice.length);
    for (int i = 1; i <= bonds; ++i) {
        yy.add_term(multiply(PauliString::single(lattice.length, i, 'Y'),
                             PauliString::single(lattice.length, lattice.wrap(i + 1), 'Y')),
                    1.0 / bonds);
    }
    pt.yy_correlator = expectation(psi, yy, options.engine).real();
    return pt;
}

}  // namespace

ScanResult phase_scan(const LatticeSpec& lattice, const std::vector<double>& grid, const ScanOptions& options) {
    if (grid.empty()) throw DomainError("lambda grid is empty");
    if (!std::is_sorted(grid.begin(), grid.end())) throw DomainError("lambda grid must be ascending");
    const PauliString probe = options.string_probe ? *options.string_probe : longest_string_order_operator(lattice.length);
    if (probe.length() != lattice.length) throw DimensionError("string probe length does not match the lattice");

    ScanResult result{lattice, options.method, compact_name(probe), {}, {}, {}};
    result.points.resize(grid.size());
    std::vector<std::exception_ptr> errors(grid.size());

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(grid.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            try {
                result.points[i] = scan_point(lattice, grid[i], probe, options);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!errors[i]) continue;
        try {
            std::rethrow_exception(errors[i]);
        } catch (const NumericalError& e) {
            throw NumericalError(std::string(e.what()) + " (lambda=" + fmt(grid[i]) + ")", e.residuals());
        }
    }

    const auto& pts = result.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        const std::string at = "lambda=" + fmt(p.lambda);
        if (i > 0 && p.ground_parity != pts[i - 1].ground_parity) result.sector_changes.push_back(i);
        for (double v : {p.ground_energy, p.sector_gap, p.parity_gap, p.parity_expectation, p.string_order,
                         p.yy_correlator}) {
            if (!std::isfinite(v)) {
                result.anomalies.push_back(at + ": non-finite observable");
                break;
            }
        }
        if (!p.parity_commutes) result.anomalies.push_back(at + ": parity does not commute with H");
        if (!p.time_reversal_invariant) result.anomalies.push_back(at + ": H is not time-reversal invariant");
        if (i > 0) {
            const auto& q = pts[i - 1];
            const double scale = options.jump_threshold * std::max(1.0, std::abs(p.lambda - q.lambda) * lattice.length);
            if (std::abs(p.ground_energy - q.ground_energy) > scale) {
                result.anomalies.push_back(at + ": ground energy jumps by " + fmt(p.ground_energy - q.ground_energy));
            }
        }
    }
    return result;
}

TransitionEstimate transition_estimate(std::span<const double> lambdas, std::span<const double> gaps) {
    if (lambdas.size() != gaps.size()) throw DimensionError("lambda and gap series differ in length");
    if (lambdas.size() < 5) throw DomainError("transition estimate needs at least 5 points");
    std::size_t best = lambdas.size();
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (!std::isfinite(gaps[i])) continue;
        if (best == lambdas.size() || gaps[i] < gaps[best]) best = i;
    }
    if (best == lambdas.size()) throw DomainError("no finite gap values");

    TransitionEstimate est;
    est.index = best;
    est.lambda_star = lambdas[best];
    est.gap_at_minimum = gaps[best];
    if (best == 0 || best + 1 == lambdas.size() || !std::isfinite(gaps[best - 1]) || !std::isfinite(gaps[best + 1])) {
        est.boundary = best == 0 || best + 1 == lambdas.size();
        return est;
    }
    const double x0 = lambdas[best - 1], x1 = lambdas[best], x2 = lambdas[best + 1];
    const double y0 = gaps[best - 1], y1 = gaps[best], y2 = gaps[best + 1];
    const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
    const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    if (den == 0.0) return est;
    const double x = x1 - 0.5 * num / den;
    // Lagrange form of the same parabola.
    const double l0 = (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2));
    const double l1 = (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2));
    const double l2 = (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
    est.lambda_star = x;
    est.gap_at_minimum = y0 * l0 + y1 * l1 + y2 * l2;
    return est;
}

TransitionEstimate transition_estimate(const ScanResult& scan) {
    std::vector<double> lambdas;
    std::vector<double> gaps;
    for (const auto& p : scan.points) {
        lambdas.push_back(p.lambda);
        gaps.push_back(p.sector_gap);
    }
    return transition_estimate(lambdas, gaps);
}

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::vector<Finding> cross_check_literal(const LatticeSpec& lattice) {
    std::vector<Finding> out;
    if (!lattice.admits_global_symmetry()) return out;
    const OperatorSum hc = cluster_hamiltonian(lattice);
    for (int s = 1; s <= 2; ++s) {
        const SymmetryPair canon = global_pair(s, lattice, Construction::tau_canonical);
        const SymmetryPair lit = global_pair(s, lattice, Construction::sigma_literal);
        const std::pair<const char*, std::pair<const PauliString*, const PauliString*>> items[2] = {
            {"A", {&canon.a, &lit.a}}, {"B", {&canon.b, &lit.b}}};
        for (const auto& [label, pair] : items) {
            const PauliString& c = *pair.first;
            const PauliString& p = *pair.second;
            const std::string name = std::string("literal_") + label + std::to_string(s);
            std::string detail;
            if (c.x_mask() == p.x_mask() && c.z_mask() == p.z_mask()) {
                detail = c.unsigned_form() == c ? "matches the canonical string" : "matches the canonical string up to sign";
                detail += " (" + c.to_string() + ")";
            } else {
                detail = "differs from the canonical " + c.letters() + " at site";
                for (int j = 1; j <= lattice.length; ++j) {
                    if (c.letter(j) != p.letter(j)) detail += " " + std::to_string(j);
                }
                std::string broken;
                for (int i : stabilizer_sites(lattice)) {
                    if (!commutes(p, stabilizer(i, lattice))) broken += " S_" + std::to_string(i);
                }
                if (!broken.empty()) detail += "; anticommutes with" + broken;
            }
            out.push_back({name, detail});
        }
    }
    return out;
}

VerifyReport run_verification(const LatticeSpec& lattice, const VerifyOptions& options) {
    if (options.require_global && !lattice.admits_global_symmetry()) {
        throw DomainError("global symmetry needs an open chain with L = 3 (mod 6), L >= 9; got " + lattice.describe());
    }
    if (options.tamper) {
        const std::string& t = *options.tamper;
        if (t != "A1" && t != "B1" && t != "A2" && t != "B2") {
            throw DomainError("tamper target must be A1, B1, A2 or B2, got " + t);
        }
        if (!lattice.admits_global_symmetry()) {
            throw DomainError("tampering needs a lattice that admits the global symmetry, got " + lattice.describe());
        }
    }

    VerifyReport report{lattice, {}, {}};
    auto add = [&](std::string name, bool ok, std::string detail) {
        report.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    const StabilizerReport stab = verify_stabilizer_algebra(lattice, options.engine, options.numeric_max_sites);
    for (const auto& c : stab.checks) add(c.name, c.passed, c.detail);

    const OperatorSum hc = cluster_hamiltonian(lattice);
    OperatorSum tau_field(lattice.length);
    const int first = lattice.is_open() ? 2 : 1;
    const int last = lattice.is_open() ? lattice.length - 1 : lattice.length;
    for (int i = first; i <= last; ++i) tau_field.add_term(PauliString::single(lattice.length, i, 'X'), -1.0);
    const OperatorSum hc_tau = conjugate_ucp(hc, lattice);
    add("ucp_maps_cluster_to_field", hc_tau.distance(tau_field) <= kCoefficientCutoff,
        "U_cp H_C U_cp = " + hc_tau.to_string());

    const OperatorSum h_half = hc + ising_perturbation(lattice, 0.5);
    add("ucp_involution", conjugate_ucp(conjugate_ucp(h_half, lattice), lattice).distance(h_half) <= kCoefficientCutoff,
        "U_cp twice on H(0.5) is the identity map");

    const auto [parity, edge_string] = parity_and_timereversal(lattice);
    add("parity_commutes", commute_sum(h_half, OperatorSum(parity)), "prod sigma^x vs H_C + H_I(0.5)");
    add("time_reversal", h_half.has_real_matrix(), "H_C + H_I(0.5) has a real matrix");

    if (lattice.is_open()) {
        add("edge_string_commutes", commute_sum(hc, OperatorSum(edge_string)), edge_string.to_string() + " vs H_C");
        const auto gens = edge_generators(lattice);
        const int L = lattice.length;
        const PauliString expect[4] = {PauliString::single(L, 1, 'Z'), PauliString::single(L, L, 'Z'),
                                       PauliString::single(L, 1, 'X'), PauliString::single(L, L, 'X')};
        bool ok = true;
        std::string detail;
        for (std::size_t k = 0; k < 4; ++k) {
            const PauliString img = conjugate_ucp(gens[k], lattice);
            ok = ok && img == expect[k];
            detail += (k ? ", " : "") + compact_name(gens[k]) + " -> " + compact_name(img);
        }
        add("edge_generators_map", ok, detail);

        bool all_commute = true;
        for (const auto& g : gens) all_commute = all_commute && commute_sum(hc, OperatorSum(g));
        add("edge_generators_commute_with_h", all_commute, "each G_k commutes with H_C");
    }

    ModelSpec model = build_model(lattice, 0.0);
    if (options.tamper) {
        const std::string& t = *options.tamper;
        const int s = t[1] - '0';
        const SymmetryPair lit = global_pair(s, lattice, Construction::sigma_literal);
        const PauliString& replacement = t[0] == 'A' ? lit.a : lit.b;
        model.registry[t] = OperatorSum(replacement);
        const PauliString other = registry_string(model, std::string(t[0] == 'A' ? "B" : "A") + t[1]);
        model.registry["T" + t.substr(1)] = SymmetryPair{replacement, other}.normalized();
    }

    auto add_protection = [&](const ProtectionReport& rep, const std::string& tag) {
        const auto& a = rep.algebra;
        for (int s = 0; s < 2; ++s) {
            const std::string idx = std::to_string(s + 1);
            add(tag + "_T" + idx + "_squares_to_identity", a.squares_to_identity[s], "");
            add(tag + "_T" + idx + "_commutes_with_h", a.commutes_with_h[s], "");
            add(tag + "_A" + idx + "_B" + idx + "_anticommute", a.pair_anticommutes[s], "");
        }
        add(tag + "_T1_T2_commute", a.t1_t2_commute, "");
        add(tag + "_cross_pairs_commute", a.cross_pairs_commute, "");
        add(tag + "_forbidden_set_excluded", rep.sigma_excluded, "");
        if (tag == "global") add("global_bulk_protected", rep.bulk_protected_jointly, "");
    };

    if (lattice.is_open() && lattice.length >= 4) {
        ProtectionOptions popts;
        popts.local_only = true;
        popts.numeric_max_sites = 0;
        popts.engine = options.engine;
        add_protection(certify_protection(model, popts), "local");
    }
    if (lattice.admits_global_symmetry()) {
        ProtectionOptions popts;
        popts.numeric_max_sites = 0;
        popts.engine = options.engine;
        const ProtectionReport rep = certify_protection(model, popts);
        add_protection(rep, "global");
        report.findings.push_back({"bulk_protection_per_generator",
                                   std::string("T1 alone: ") + (rep.bulk_protected_by[0] ? "yes" : "no") +
                                       ", T2 alone: " + (rep.bulk_protected_by[1] ? "yes" : "no")});
        for (auto& f : cross_check_literal(lattice)) report.findings.push_back(std::move(f));
    }

    const PauliString zparity = zstring_parity_pair(lattice).first;
    int anti = 0;
    for (int i : stabilizer_sites(lattice)) anti += commutes(zparity, stabilizer(i, lattice)) ? 0 : 1;
    report.findings.push_back({"zstring_parity", "prod sigma^z anticommutes with " + std::to_string(anti) + " of " +
                                                     std::to_string(stabilizer_sites(lattice).size()) +
                                                     " stabilizers"});
    return report;
}

}  // namespace clusterspt
