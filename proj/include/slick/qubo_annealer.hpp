#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "slick/svm_core.hpp"
#include "slick/types.hpp"

namespace slick {

// Positional binary discretization of the SVM coefficients:
// alpha_n = sum_k B^k a_{K n + k}.
struct BinaryEncoding {
    int bits_per_alpha = 2;  // K
    int base = 2;            // B
    double penalty = 1.0;    // xi, weight of the squared equality constraint

    double alpha_max() const {
        double m = 0.0, p = 1.0;
        for (int k = 0; k < bits_per_alpha; ++k, p *= base) m += p;
        return m;
    }
    void validate() const;
};

// Upper-triangular coefficient map over binary variables.
struct QuboProblem {
    int n_vars = 0;
    std::map<std::pair<int, int>, double> coefficients;  // key (i, j), i <= j

    void add(int i, int j, double value);
    double coefficient(int i, int j) const;
};

struct AnnealConfig {
    int num_reads = 1000;
    int top_samples = 20;
    int sweeps_per_read = 1000;
    double beta_min = 0.1;  // geometric schedule beta_min -> beta_max
    double beta_max = 10.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct AnnealSample {
    std::vector<std::uint8_t> bits;
    double energy = 0.0;
};

// Encodes one weak SVM's training objective
//   E(a) = 1/2 sum_{n,m} alpha_n alpha_m y_n y_m (K(x_n,x_m) + 2 xi) - sum_n alpha_n
// over the binary positional encoding. Features must be scaled.
QuboProblem build_qubo(const std::vector<LabeledSample>& samples, const KernelSpec& kernel,
                       const BinaryEncoding& enc);

double qubo_energy(const QuboProblem& q, const std::vector<std::uint8_t>& bits);

// Exhaustive minimum; n_vars <= 24. Ties break to the lexicographically
// smallest bitstring. Test oracle for the annealer.
AnnealSample brute_force_solve(const QuboProblem& q);

// num_reads independent single-spin-flip Metropolis runs over a geometric
// beta schedule; each read reports the lowest-energy state it visited.
// Result sorted ascending by energy; deterministic given cfg.seed.
std::vector<AnnealSample> simulated_annealing_sample(const QuboProblem& q,
                                                     const AnnealConfig& cfg);

// alpha_n from the positional encoding, bias via bias_from_alphas; the
// support set keeps all samples.
WeakLearner decode_sample(const std::vector<std::uint8_t>& bits,
                          const std::vector<LabeledSample>& samples,
                          const BinaryEncoding& enc, const KernelSpec& kernel);

// build -> sample -> retain the top_samples lowest-energy reads -> decode
// each -> average the alpha vectors -> recompute the bias.
WeakLearner train_weak_learner_annealed(const std::vector<LabeledSample>& samples,
                                        const KernelSpec& kernel, const BinaryEncoding& enc,
                                        const AnnealConfig& cfg);

// Sparse text interchange: "n_vars" header line then "i j coeff" lines.
std::string qubo_to_text(const QuboProblem& q);
QuboProblem qubo_from_text(const std::string& text);

}  // namespace slick
