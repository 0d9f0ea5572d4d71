#include "slick/qubo_annealer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "slick/parallel.hpp"
#include "slick/rng.hpp"

namespace slick {

void BinaryEncoding::validate() const {
    if (bits_per_alpha < 1) throw std::invalid_argument("bits_per_alpha must be >= 1");
    if (base < 2) throw std::invalid_argument("base must be >= 2");
    if (penalty < 0.0) throw std::invalid_argument("penalty must be >= 0");
}

void AnnealConfig::validate() const {
    if (num_reads < 1) throw std::invalid_argument("num_reads must be >= 1");
    if (top_samples < 1 || top_samples > num_reads)
        throw std::invalid_argument("require 1 <= top_samples <= num_reads");
    if (sweeps_per_read < 1) throw std::invalid_argument("sweeps_per_read must be >= 1");
    if (!(beta_min < beta_max)) throw std::invalid_argument("require beta_min < beta_max");
    if (beta_min <= 0.0) throw std::invalid_argument("beta_min must be > 0");
}

void QuboProblem::add(int i, int j, double value) {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n_vars) throw std::invalid_argument("qubo coefficient out of range");
    coefficients[{i, j}] += value;
}

double QuboProblem::coefficient(int i, int j) const {
    if (i > j) std::swap(i, j);
    const auto it = coefficients.find({i, j});
    return it == coefficients.end() ? 0.0 : it->second;
}

QuboProblem build_qubo(const std::vector<LabeledSample>& samples, const KernelSpec& kernel,
                       const BinaryEncoding& enc) {
    enc.validate();
    if (samples.empty()) throw std::invalid_argument("build_qubo: empty sample set");
    bool has_pos = false, has_neg = false;
    for (const auto& s : samples) (s.y > 0 ? has_pos : has_neg) = true;
    // single-sample instances are a well-defined calibration case; anything
    // larger needs both classes
    if (samples.size() >= 2 && (!has_pos || !has_neg))
        throw std::invalid_argument("build_qubo: both classes must be present");

    const int n = static_cast<int>(samples.size());
    const int K = enc.bits_per_alpha;

    std::vector<double> powers(K);
    double p = 1.0;
    for (int k = 0; k < K; ++k, p *= enc.base) powers[k] = p;

    QuboProblem q;
    q.n_vars = K * n;

    // E(a) = 1/2 sum_{n,m} alpha_n alpha_m y_n y_m (K_nm + 2 xi) - sum_n alpha_n
    // expanded over alpha_n = sum_k B^k a_{Kn+k}.
    for (int a = 0; a < n; ++a) {
        for (int m = a; m < n; ++m) {
            const double coupling =
                samples[a].y * samples[m].y *
                (kernel_eval(kernel, samples[a].x, samples[m].x) + 2.0 * enc.penalty);
            for (int k = 0; k < K; ++k) {
                for (int l = 0; l < K; ++l) {
                    const int i = K * a + k;
                    const int j = K * m + l;
                    if (i == j) {
                        // a^2 = a on binaries; fold in the linear -alpha term
                        q.add(i, i, 0.5 * powers[k] * powers[l] * coupling - powers[k]);
                    } else if (a == m) {
                        if (i < j) q.add(i, j, powers[k] * powers[l] * coupling);
                        // i > j pairs are covered by the symmetric (k,l) swap
                    } else {
                        q.add(i, j, powers[k] * powers[l] * coupling);
                    }
                }
            }
        }
    }
    return q;
}

double qubo_energy(const QuboProblem& q, const std::vector<std::uint8_t>& bits) {
    if (static_cast<int>(bits.size()) != q.n_vars)
        throw std::invalid_argument("qubo_energy: bit vector length mismatch");
    double e = 0.0;
    for (const auto& [key, coeff] : q.coefficients) {
        if (bits[key.first] && bits[key.second]) e += coeff;
    }
    return e;
}

namespace {

// Dense symmetric view used by the solvers: diag[i] plus sym[i][j] with
// off-diagonal couplings mirrored.
struct DenseQubo {
    int n;
    std::vector<double> diag;
    std::vector<double> sym;  // n*n, zero diagonal

    explicit DenseQubo(const QuboProblem& q)
        : n(q.n_vars), diag(q.n_vars, 0.0),
          sym(static_cast<std::size_t>(q.n_vars) * q.n_vars, 0.0) {
        for (const auto& [key, coeff] : q.coefficients) {
            const auto [i, j] = key;
            if (i == j) {
                diag[i] += coeff;
            } else {
                sym[static_cast<std::size_t>(i) * n + j] += coeff;
                sym[static_cast<std::size_t>(j) * n + i] += coeff;
            }
        }
    }

    // Energy change of flipping bit i.
    double flip_delta(const std::vector<std::uint8_t>& bits,
                      const std::vector<double>& field, int i) const {
        const double h = diag[i] + field[i];
        return bits[i] ? -h : h;
    }
};

}  // namespace

AnnealSample brute_force_solve(const QuboProblem& q) {
    if (q.n_vars < 1 || q.n_vars > 24)
        throw std::invalid_argument("brute_force_solve: need 1 <= n_vars <= 24");
    const DenseQubo d(q);
    const int n = q.n_vars;

    std::vector<std::uint8_t> bits(n, 0), best_bits(n, 0);
    std::vector<double> partial(n + 1, 0.0);  // energy of the prefix decided so far
    double best = 0.0;
    bool first = true;

    // Depth-first enumeration in lexicographic order (bit 0 most
    // significant, branch 0 before 1); the first strict minimum seen is the
    // lexicographically smallest tie.
    int depth = 0;
    std::vector<std::int8_t> branch(n, -1);  // -1 not tried, then 0, then 1
    while (depth >= 0) {
        if (depth == n) {
            const double e = partial[n];
            if (first || e < best) {
                best = e;
                best_bits = bits;
                first = false;
            }
            --depth;
            continue;
        }
        if (branch[depth] == -1) {
            branch[depth] = 0;
            bits[depth] = 0;
            partial[depth + 1] = partial[depth];
            ++depth;
        } else if (branch[depth] == 0) {
            branch[depth] = 1;
            bits[depth] = 1;
            double add = d.diag[depth];
            for (int i = 0; i < depth; ++i)
                if (bits[i]) add += d.sym[static_cast<std::size_t>(i) * n + depth];
            partial[depth + 1] = partial[depth] + add;
            ++depth;
        } else {
            branch[depth] = -1;
            --depth;
        }
    }

    AnnealSample out;
    out.bits = best_bits;
    out.energy = qubo_energy(q, best_bits);  // exact re-evaluation
    return out;
}

std::vector<AnnealSample> simulated_annealing_sample(const QuboProblem& q,
                                                     const AnnealConfig& cfg) {
    cfg.validate();
    if (q.n_vars < 1) throw std::invalid_argument("annealing: empty problem");
    const DenseQubo d(q);
    const int n = q.n_vars;

    // Geometric beta ladder, one rung per sweep.
    std::vector<double> betas(cfg.sweeps_per_read);
    if (cfg.sweeps_per_read == 1) {
        betas[0] = cfg.beta_max;
    } else {
        const double ratio = std::pow(cfg.beta_max / cfg.beta_min,
                                      1.0 / (cfg.sweeps_per_read - 1));
        double b = cfg.beta_min;
        for (int s = 0; s < cfg.sweeps_per_read; ++s, b *= ratio) betas[s] = b;
    }

    std::vector<AnnealSample> reads(cfg.num_reads);
    parallel_for(static_cast<std::size_t>(cfg.num_reads), [&](std::size_t r0, std::size_t r1) {
        std::vector<std::uint8_t> bits(n), best_bits(n);
        std::vector<double> field(n);
        for (std::size_t read = r0; read < r1; ++read) {
            Rng rng(derive_seed(cfg.seed, read));

            for (int i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>(rng.uniform_below(2));
            // local field: sum of couplings to set neighbors
            for (int i = 0; i < n; ++i) {
                double f = 0.0;
                const double* row = &d.sym[static_cast<std::size_t>(i) * n];
                for (int j = 0; j < n; ++j)
                    if (bits[j]) f += row[j];
                field[i] = f;
            }
            double energy = 0.0;
            for (int i = 0; i < n; ++i)
                if (bits[i]) {
                    energy += d.diag[i];
                    const double* row = &d.sym[static_cast<std::size_t>(i) * n];
                    for (int j = i + 1; j < n; ++j)
                        if (bits[j]) energy += row[j];
                }

            best_bits = bits;
            double best_energy = energy;

            for (int sweep = 0; sweep < cfg.sweeps_per_read; ++sweep) {
                const double beta = betas[sweep];
                for (int i = 0; i < n; ++i) {
                    const double delta = d.flip_delta(bits, field, i);
                    bool accept = delta <= 0.0;
                    if (!accept) accept = rng.uniform() < std::exp(-beta * delta);
                    if (!accept) continue;
                    const double sign = bits[i] ? -1.0 : 1.0;
                    bits[i] ^= 1;
                    energy += delta;
                    const double* row = &d.sym[static_cast<std::size_t>(i) * n];
                    for (int j = 0; j < n; ++j) field[j] += sign * row[j];
                    if (energy < best_energy) {
                        best_energy = energy;
                        best_bits = bits;
                    }
                }
            }
            reads[read].bits = best_bits;
            reads[read].energy = qubo_energy(q, best_bits);  // consistent with the oracle
        }
    });

    std::stable_sort(reads.begin(), reads.end(),
                     [](const AnnealSample& a, const AnnealSample& b) {
                         return a.energy < b.energy;
                     });
    return reads;
}

WeakLearner decode_sample(const std::vector<std::uint8_t>& bits,
                          const std::vector<LabeledSample>& samples, const BinaryEncoding& enc,
                          const KernelSpec& kernel) {
    const int K = enc.bits_per_alpha;
    if (bits.size() != samples.size() * static_cast<std::size_t>(K))
        throw std::invalid_argument("decode_sample: bit vector length mismatch");

    WeakLearner l;
    l.kernel = kernel;
    l.alphas.resize(samples.size());
    for (std::size_t a = 0; a < samples.size(); ++a) {
        double alpha = 0.0, p = 1.0;
        for (int k = 0; k < K; ++k, p *= enc.base) alpha += p * bits[K * a + k];
        l.alphas[a] = alpha;
    }
    l.support_x.reserve(samples.size());
    l.support_y.reserve(samples.size());
    for (const auto& s : samples) {
        l.support_x.push_back(s.x);
        l.support_y.push_back(s.y);
    }
    l.bias = bias_from_alphas(samples, l.alphas, kernel, enc.alpha_max());
    return l;
}

WeakLearner train_weak_learner_annealed(const std::vector<LabeledSample>& samples,
                                        const KernelSpec& kernel, const BinaryEncoding& enc,
                                        const AnnealConfig& cfg) {
    const QuboProblem q = build_qubo(samples, kernel, enc);
    const auto reads = simulated_annealing_sample(q, cfg);
    const int kept = std::min<int>(cfg.top_samples, static_cast<int>(reads.size()));

    WeakLearner l;
    l.kernel = kernel;
    l.alphas.assign(samples.size(), 0.0);
    for (int r = 0; r < kept; ++r) {
        const WeakLearner decoded = decode_sample(reads[r].bits, samples, enc, kernel);
        for (std::size_t i = 0; i < l.alphas.size(); ++i) l.alphas[i] += decoded.alphas[i];
    }
    for (auto& a : l.alphas) a /= kept;

    l.support_x.reserve(samples.size());
    l.support_y.reserve(samples.size());
    for (const auto& s : samples) {
        l.support_x.push_back(s.x);
        l.support_y.push_back(s.y);
    }
    l.bias = bias_from_alphas(samples, l.alphas, kernel, enc.alpha_max());
    return l;
}

std::string qubo_to_text(const QuboProblem& q) {
    std::ostringstream out;
    out.precision(17);
    out << "n_vars " << q.n_vars << '\n';
    for (const auto& [key, coeff] : q.coefficients)
        out << key.first << ' ' << key.second << ' ' << coeff << '\n';
    return out.str();
}

QuboProblem qubo_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    QuboProblem q;
    if (!(in >> tag >> q.n_vars) || tag != "n_vars")
        throw std::invalid_argument("qubo text: expected 'n_vars <n>' header");
    int i, j;
    double c;
    while (in >> i >> j >> c) q.add(i, j, c);
    return q;
}

}  // namespace slick
