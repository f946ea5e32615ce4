#include "clusterspt/engine.hpp"

#include <lapacke.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <thread>

#include "clusterspt/errors.hpp"

namespace clusterspt {

namespace {

// One Pauli term in basis-index bit order: |b> -> coef * (-1)^{|sign & b|} |b ^ flip>.
struct CompiledTerm {
    std::uint64_t flip;
    std::uint64_t sign;
    Complex coef;
};

std::uint64_t to_basis_bits(std::uint64_t site_mask, int length) {
    std::uint64_t out = 0;
    for (int j = 1; j <= length; ++j) {
        if ((site_mask >> (j - 1)) & 1u) out |= std::uint64_t{1} << (length - j);
    }
    return out;
}

std::vector<CompiledTerm> compile(const OperatorSum& a) {
    std::vector<CompiledTerm> out;
    out.reserve(a.size());
    for (const auto& [key, c] : a.terms()) {
        out.push_back({to_basis_bits(key.first, a.length()), to_basis_bits(key.second, a.length()), c});
    }
    return out;
}

double parity_sign(std::uint64_t bits) { return (std::popcount(bits) & 1) ? -1.0 : 1.0; }

template <class F>
void parallel_for(std::size_t n, F&& body) {
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers == 1 || n < (std::size_t{1} << 15)) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

void check_cap(int length, int cap, const char* what) {
    if (length > cap) {
        throw ResourceError(std::string(what) + ": L=" + std::to_string(length) + " exceeds the configured cap " +
                            std::to_string(cap));
    }
}

// Gather form: out[b] = sum_t coef_t * sign_t(b ^ flip_t) * in[b ^ flip_t].
void apply_compiled(const std::vector<CompiledTerm>& terms, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    const std::size_t dim = static_cast<std::size_t>(in.size());
    out.setZero(in.size());
    parallel_for(dim, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t b = lo; b < hi; ++b) {
            Complex acc{};
            for (const auto& t : terms) {
                const std::uint64_t src = b ^ t.flip;
                acc += t.coef * parity_sign(t.sign & src) * in[static_cast<Eigen::Index>(src)];
            }
            out[static_cast<Eigen::Index>(b)] = acc;
        }
    });
}

// Orthonormal basis of a symmetry sector, as pairs (rep, rep ^ flip) with
// e_r = (|r> + s w(r) |r ^ flip>) / sqrt(2), or single basis states for diagonal symmetries.
class SectorBasis {
public:
    SectorBasis(int length, const std::optional<Sector>& sector) : dim_full_(std::size_t{1} << length) {
        index_of_.assign(dim_full_, -1);
        if (!sector) {
            for (std::size_t b = 0; b < dim_full_; ++b) add_single(b);
            return;
        }
        const auto term = compile(OperatorSum(sector->symmetry)).front();
        const double s = sector->eigenvalue;
        flip_ = term.flip;
        for (std::size_t b = 0; b < dim_full_; ++b) {
            const Complex w = term.coef * parity_sign(term.sign & b);
            if (flip_ == 0) {
                if (std::abs(w - s) < 1e-12) add_single(b);
            } else if (b < (b ^ flip_)) {
                const auto r = static_cast<std::int64_t>(reps_.size());
                reps_.push_back(b);
                index_of_[b] = r;
                index_of_[b ^ flip_] = r;
                amp_rep_.push_back(kInvSqrt2);
                amp_partner_.push_back(s * w * kInvSqrt2);
            }
        }
    }

    std::size_t dimension() const { return reps_.size(); }

    bool is_real() const {
        return std::all_of(amp_partner_.begin(), amp_partner_.end(), [](Complex c) { return c.imag() == 0.0; });
    }

    // Nonzero components (basis index, amplitude) of e_r.
    template <class F>
    void for_each_component(std::size_t r, F&& f) const {
        f(reps_[r], amp_rep_[r]);
        if (flip_ != 0) f(reps_[r] ^ flip_, amp_partner_[r]);
    }

    // <b|e_q> for the q containing b, or (-1, 0) when b lies outside the sector.
    std::pair<std::int64_t, Complex> locate(std::uint64_t b) const {
        const std::int64_t q = index_of_[b];
        if (q < 0) return {-1, {}};
        return {q, reps_[q] == b ? amp_rep_[q] : amp_partner_[q]};
    }

    Eigen::VectorXcd lift(const Eigen::VectorXcd& y) const {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim_full_));
        for (std::size_t r = 0; r < reps_.size(); ++r) {
            for_each_component(r, [&](std::uint64_t b, Complex a) { v[static_cast<Eigen::Index>(b)] += a * y[r]; });
        }
        return v;
    }

private:
    static constexpr double kInvSqrt2 = 0.70710678118654752440;

    void add_single(std::size_t b) {
        index_of_[b] = static_cast<std::int64_t>(reps_.size());
        reps_.push_back(b);
        amp_rep_.push_back(1.0);
    }

    std::size_t dim_full_;
    std::uint64_t flip_ = 0;
    std::vector<std::uint64_t> reps_;
    std::vector<std::int64_t> index_of_;
    std::vector<Complex> amp_rep_;
    std::vector<Complex> amp_partner_;
};

struct RawPairs {
    std::vector<double> values;
    std::vector<Eigen::VectorXcd> vectors;
};

RawPairs dense_lowest(const OperatorSum& h, int count, const std::optional<Sector>& sector) {
    const SectorBasis basis(h.length(), sector);
    const auto terms = compile(h);
    const auto n = static_cast<lapack_int>(basis.dimension());
    count = std::min<int>(count, static_cast<int>(n));
    RawPairs out;
    if (n == 0 || count <= 0) return out;

    const bool real = h.has_real_matrix(0.0) && basis.is_real();
    Eigen::MatrixXcd mc;
    Eigen::MatrixXd mr;
    if (real) {
        mr.setZero(n, n);
    } else {
        mc.setZero(n, n);
    }
    for (lapack_int r = 0; r < n; ++r) {
        basis.for_each_component(static_cast<std::size_t>(r), [&](std::uint64_t src, Complex a) {
            for (const auto& t : terms) {
                const std::uint64_t dst = src ^ t.flip;
                const auto [q, amp] = basis.locate(dst);
                if (q < 0) continue;
                const Complex v = std::conj(amp) * a * t.coef * parity_sign(t.sign & src);
                if (real) {
                    mr(q, r) += v.real();
                } else {
                    mc(q, r) += v;
                }
            }
        });
    }

    lapack_int found = 0;
    std::vector<double> w(static_cast<std::size_t>(n));
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
    Eigen::MatrixXcd z;
    int info = 0;
    if (real) {
        Eigen::MatrixXd zr(n, count);
        info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, mr.data(), n, 0.0, 0.0, 1, count, 0.0, &found,
                              w.data(), zr.data(), n, support.data());
        z = zr.cast<Complex>();
    } else {
        z.resize(n, count);
        info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, reinterpret_cast<lapack_complex_double*>(mc.data()), n, 0.0, 0.0, 1, count, 0.0, &found,
                              w.data(), reinterpret_cast<lapack_complex_double*>(z.data()), n, support.data());
    }
    if (info != 0) throw NumericalError("LAPACK eigensolver failed with info " + std::to_string(info), {});
    for (lapack_int k = 0; k < found; ++k) {
        out.values.push_back(w[static_cast<std::size_t>(k)]);
        out.vectors.push_back(basis.lift(z.col(k)));
    }
    return out;
}

class Lanczos {
public:
    Lanczos(const OperatorSum& h, const std::optional<Sector>& sector, const EngineOptions& options)
        : terms_(compile(h)),
          dim_(Eigen::Index{1} << h.length()),
          norm_(std::max(h.norm_bound(), 1e-300)),
          options_(options),
          real_(h.has_real_matrix(0.0)) {
        if (sector) {
            projector_ = compile(OperatorSum(sector->symmetry));
            sector_sign_ = sector->eigenvalue;
            real_ = real_ && std::abs(projector_.front().coef.imag()) == 0.0;
        }
    }

    RawPairs lowest(int count) {
        RawPairs out;
        std::vector<Eigen::VectorXcd> locked;
        std::mt19937_64 rng(options_.seed);
        std::normal_distribution<double> normal;
        for (int k = 0; k < count; ++k) {
            Eigen::VectorXcd v(dim_);
            for (Eigen::Index b = 0; b < dim_; ++b) {
                v[b] = real_ ? Complex{normal(rng), 0.0} : Complex{normal(rng), normal(rng)};
            }
            project(v);
            orthogonalize(v, locked);
            orthogonalize(v, locked);
            if (v.norm() < 1e-8) break;  // sector exhausted
            v.normalize();
            auto pair = converge(std::move(v), locked);
            locked.push_back(std::move(pair));
        }
        rayleigh_ritz(locked, out);
        return out;
    }

private:
    void apply_h(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const { apply_compiled(terms_, in, out); }

    void project(Eigen::VectorXcd& v) const {
        if (projector_.empty()) return;
        Eigen::VectorXcd pv;
        apply_compiled(projector_, v, pv);
        v = 0.5 * (v + sector_sign_ * pv);
    }

    static void orthogonalize(Eigen::VectorXcd& v, const std::vector<Eigen::VectorXcd>& against) {
        for (const auto& u : against) v -= u * u.dot(v);
    }

    Eigen::VectorXcd converge(Eigen::VectorXcd start, const std::vector<Eigen::VectorXcd>& locked) const {
        const int max_m = std::max(2, options_.krylov_dim);
        std::vector<double> last_residuals;
        for (int restart = 0; restart <= options_.max_restarts; ++restart) {
            std::vector<Eigen::VectorXcd> q{std::move(start)};
            std::vector<double> alpha, beta;
            Eigen::VectorXcd w;
            Eigen::VectorXd ritz_vec;
            bool converged = false;
            for (int m = 0; m < max_m; ++m) {
                apply_h(q.back(), w);
                project(w);
                alpha.push_back(q.back().dot(w).real());
                for (int pass = 0; pass < 2; ++pass) {
                    orthogonalize(w, locked);
                    orthogonalize(w, q);
                }
                const double b = w.norm();
                const auto steps = static_cast<Eigen::Index>(alpha.size());
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
                Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), steps);
                Eigen::VectorXd sub = steps > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), steps - 1))
                                                : Eigen::VectorXd();
                tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
                ritz_vec = tri.eigenvectors().col(0);
                const double estimate = b * std::abs(ritz_vec[steps - 1]);
                last_residuals = {estimate};
                if (estimate <= options_.lanczos_rtol * norm_ || b <= 1e-14 * norm_) {
                    converged = true;
                    break;
                }
                if (m + 1 < max_m) {
                    beta.push_back(b);
                    q.push_back(w / b);
                }
            }
            Eigen::VectorXcd y = Eigen::VectorXcd::Zero(dim_);
            for (Eigen::Index i = 0; i < ritz_vec.size(); ++i) y += ritz_vec[i] * q[static_cast<std::size_t>(i)];
            orthogonalize(y, locked);
            y.normalize();
            if (converged) return y;
            start = std::move(y);
        }
        throw NumericalError("Lanczos did not converge within " + std::to_string(options_.max_restarts) + " restarts",
                             last_residuals);
    }

    void rayleigh_ritz(const std::vector<Eigen::VectorXcd>& vs, RawPairs& out) const {
        const auto k = static_cast<Eigen::Index>(vs.size());
        if (k == 0) return;
        std::vector<Eigen::VectorXcd> hv(vs.size());
        for (std::size_t i = 0; i < vs.size(); ++i) apply_h(vs[i], hv[i]);
        Eigen::MatrixXcd g(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) g(i, j) = vs[i].dot(hv[j]);
        }
        g = 0.5 * (g + g.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
        for (Eigen::Index c = 0; c < k; ++c) {
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim_);
            for (Eigen::Index i = 0; i < k; ++i) v += es.eigenvectors()(i, c) * vs[static_cast<std::size_t>(i)];
            out.values.push_back(es.eigenvalues()[c]);
            out.vectors.push_back(v.normalized());
        }
    }

    std::vector<CompiledTerm> terms_;
    std::vector<CompiledTerm> projector_;
    double sector_sign_ = 1.0;
    Eigen::Index dim_;
    double norm_;
    EngineOptions options_;
    bool real_;
};

// Fixes the global phase so the largest-magnitude amplitude is real and positive.
Eigen::VectorXcd fix_phase(Eigen::VectorXcd v) {
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (std::abs(v[arg]) > 0) v *= std::conj(v[arg]) / std::abs(v[arg]);
    return v;
}

}  // namespace

StateVector::StateVector(int length, Eigen::VectorXcd amplitudes) : length_(length), amplitudes_(std::move(amplitudes)) {
    check_length(length);
    if (length >= 63 || amplitudes_.size() != (Eigen::Index{1} << length)) {
        throw DimensionError("state on " + std::to_string(length) + " sites needs 2^L amplitudes");
    }
}

StateVector StateVector::basis_state(int length, std::uint64_t index) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << length);
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(length, std::move(v));
}

StateVector StateVector::plus_state(int length) {
    const Eigen::Index dim = Eigen::Index{1} << length;
    return StateVector(length, Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
}

StateVector StateVector::normalized() const { return StateVector(length_, amplitudes_.normalized()); }

Complex StateVector::inner(const StateVector& other) const {
    if (other.length_ != length_) throw DimensionError("inner product of states with different lengths");
    return amplitudes_.dot(other.amplitudes_);
}

std::string_view to_string(SolverMethod m) { return m == SolverMethod::dense ? "dense" : "iterative"; }

SolverMethod parse_method(std::string_view text) {
    if (text == "dense") return SolverMethod::dense;
    if (text == "iterative") return SolverMethod::iterative;
    throw ParseError("method must be 'dense' or 'iterative', got '" + std::string(text) + "'");
}

bool SpectrumResult::gap_resolved() const { return !std::isnan(gap); }

std::vector<StateVector> SpectrumResult::ground_basis() const {
    return {eigenvectors.begin(), eigenvectors.begin() + ground_degeneracy};
}

StateVector apply(const OperatorSum& a, const StateVector& psi, const EngineOptions& options) {
    if (a.length() != psi.length()) {
        throw DimensionError("apply: operator on " + std::to_string(a.length()) + " sites, state on " +
                             std::to_string(psi.length()));
    }
    check_cap(a.length(), options.max_sites, "apply");
    Eigen::VectorXcd out;
    apply_compiled(compile(a), psi.amplitudes(), out);
    return StateVector(psi.length(), std::move(out));
}

Complex expectation(const StateVector& psi, const OperatorSum& a, const EngineOptions& options) {
    return psi.inner(apply(a, psi, options));
}

StateVector build_cluster_state(const LatticeSpec& lattice, int k, int l, const EngineOptions& options) {
    const int L = lattice.length;
    check_cap(L, options.max_sites, "cluster state");
    if ((k != 0 && k != 1) || (l != 0 && l != 1)) throw DomainError("edge exponents k, l must be 0 or 1");
    if (lattice.is_periodic() && (k != 0 || l != 0)) {
        throw DomainError("periodic cluster state only exists for k = l = 0");
    }
    const Eigen::Index dim = Eigen::Index{1} << L;
    // Site j sits at basis bit L - j.
    auto bit = [L](std::uint64_t b, int site) { return (b >> (L - site)) & 1u; };
    Eigen::VectorXcd v(dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        const auto b = static_cast<std::uint64_t>(idx);
        int sign = 0;
        for (int i = 1; i < L; ++i) sign += static_cast<int>(bit(b, i) & bit(b, i + 1));
        if (lattice.is_periodic()) sign += static_cast<int>(bit(b, L) & bit(b, 1));
        if (k == 1) sign += static_cast<int>(bit(b, 1));
        if (l == 1) sign += static_cast<int>(bit(b, L));
        v[idx] = (sign & 1) ? -1.0 : 1.0;
    }
    return StateVector(L, v.normalized());
}

Eigen::MatrixXcd dense_matrix(const OperatorSum& a, const EngineOptions& options) {
    check_cap(a.length(), options.dense_max_sites, "dense matrix");
    const Eigen::Index dim = Eigen::Index{1} << a.length();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : compile(a)) {
        for (Eigen::Index col = 0; col < dim; ++col) {
            const auto b = static_cast<std::uint64_t>(col);
            m(static_cast<Eigen::Index>(b ^ t.flip), col) += t.coef * parity_sign(t.sign & b);
        }
    }
    return m;
}

SpectrumResult eig_low(const OperatorSum& h, int count, SolverMethod method, const EngineOptions& options,
                       const std::optional<Sector>& sector) {
    if (count < 1) throw DomainError("eig_low needs count >= 1");
    if (!h.is_hermitian()) throw DomainError("eig_low: operator is not Hermitian");
    check_cap(h.length(), options.max_sites, "eig_low");
    if (method == SolverMethod::dense) check_cap(h.length(), options.dense_max_sites, "dense eig_low");
    if (sector) {
        if (sector->symmetry.length() != h.length()) throw DimensionError("sector symmetry length mismatch");
        if (!sector->symmetry.is_hermitian()) throw DomainError("sector symmetry must be Hermitian");
        if (sector->eigenvalue != 1 && sector->eigenvalue != -1) throw DomainError("sector eigenvalue must be +1 or -1");
        if (!commutator(OperatorSum(sector->symmetry), h).is_zero()) {
            throw DomainError("sector symmetry " + sector->symmetry.to_string() + " does not commute with H");
        }
    }

    RawPairs raw = method == SolverMethod::dense ? dense_lowest(h, count, sector)
                                                 : Lanczos(h, sector, options).lowest(count);

    SpectrumResult out;
    out.length = h.length();
    out.method = method;
    out.norm_bound = h.norm_bound();
    out.eigenvalues = raw.values;
    const auto terms = compile(h);
    for (std::size_t i = 0; i < raw.vectors.size(); ++i) {
        Eigen::VectorXcd hv;
        apply_compiled(terms, raw.vectors[i], hv);
        out.residuals.push_back((hv - raw.values[i] * raw.vectors[i]).norm());
        out.eigenvectors.emplace_back(h.length(), fix_phase(raw.vectors[i]));
    }
    if (out.eigenvalues.empty()) throw DomainError("eig_low: empty sector");
    const double limit = options.residual_rtol * std::max(out.norm_bound, 1.0);
    if (*std::max_element(out.residuals.begin(), out.residuals.end()) > limit) {
        throw NumericalError("eigenpair residual exceeds " + std::to_string(limit), out.residuals);
    }

    const double e0 = out.eigenvalues.front();
    const double tol = options.degeneracy_rtol * std::max(1.0, std::abs(e0));
    const auto above = std::find_if(out.eigenvalues.begin(), out.eigenvalues.end(),
                                    [&](double e) { return e - e0 > tol; });
    out.ground_degeneracy = static_cast<int>(above - out.eigenvalues.begin());
    out.gap = above == out.eigenvalues.end() ? std::numeric_limits<double>::quiet_NaN() : *above - e0;
    return out;
}

Eigen::MatrixXcd ground_projector(const SpectrumResult& spectrum, const OperatorSum& o, const EngineOptions& options) {
    const auto basis = spectrum.ground_basis();
    const auto d = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd m(d, d);
    std::vector<StateVector> applied;
    applied.reserve(basis.size());
    for (const auto& v : basis) applied.push_back(apply(o, v, options));
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) m(a, b) = basis[a].inner(applied[b]);
    }
    return m;
}

void write_columns(std::ostream& out, const StateVector& psi) {
    const auto& amp = psi.amplitudes();
    for (Eigen::Index i = 0; i < amp.size(); ++i) {
        out << i << ' ' << amp[i].real() << ' ' << amp[i].imag() << '\n';
    }
}

void write_columns(std::ostream& out, const SpectrumResult& spectrum) {
    for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) out << i << ' ' << spectrum.eigenvalues[i] << " 0\n";
}

}  // namespace clusterspt
