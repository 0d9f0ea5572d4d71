#pragma once

#include <cstdint>
#include <vector>

#include "slick/types.hpp"

namespace slick {

// Kernel family of a trained learner. `precomputed` is a training-time
// device (SMO over a ready Gram matrix) and never appears in saved models;
// gate-backend learners record `gate` so inference replays the quantum
// kernel against their support vectors.
enum class KernelKind { rbf, gate, precomputed };

struct KernelSpec {
    KernelKind kind = KernelKind::rbf;
    double rbf_gamma = 1.0;
    // scaled feature in [0,1] -> rotation angle; only read for gate kernels
    double angle_scale = 3.14159265358979323846;
};

struct WeakLearner {
    std::vector<Features> support_x;
    std::vector<int> support_y;   // +1 oil / -1 water
    std::vector<double> alphas;   // >= 0, <= box bound
    double bias = 0.0;
    KernelSpec kernel;
};

struct SvmTrainConfig {
    // Default box bound matches the QUBO encoding's alpha_max for
    // K=2 bits, base 2 (1 + 2 = 3), so classical and annealed learners
    // search the same coefficient box.
    double box_C = 3.0;
    double smo_tol = 1e-3;
    int smo_max_passes = 50;
};

struct SmoResult {
    WeakLearner learner;
    bool converged = true;
    int sweeps = 0;
};

double rbf_kernel(const Features& x1, const Features& x2, double gamma);

// Kernel dispatch used everywhere a learner evaluates a point.
// `precomputed` cannot be evaluated pointwise and throws.
double kernel_eval(const KernelSpec& spec, const Features& x1, const Features& x2);

std::vector<std::vector<double>> gram_matrix(const std::vector<Features>& xs,
                                             const KernelSpec& spec);

// f(x) = sum_n alpha_n y_n K(x_n, x) + b. Empty support set -> bias alone.
double decision_function(const WeakLearner& learner, const Features& x);

// Tie rule shared by every backend: f = 0 maps to water (-1).
inline int predict_label(double decision) { return decision > 0.0 ? +1 : -1; }

// b = mean over margin samples (0 < alpha < C) of y_n - sum_m alpha_m y_m K(x_m, x_n);
// falls back to all alpha > 0, then to 0. Optional Gram matrix avoids
// re-evaluating kernels the caller already has.
double bias_from_alphas(const std::vector<LabeledSample>& samples,
                        const std::vector<double>& alphas, const KernelSpec& spec,
                        double box_C,
                        const std::vector<std::vector<double>>* gram = nullptr);

// Soft-margin dual solver (sequential minimal optimization, random
// second-index choice). Pass a Gram matrix for precomputed kernels; when
// absent it is built from `spec`. Deterministic given `seed`.
SmoResult smo_train(const std::vector<LabeledSample>& samples, const KernelSpec& spec,
                    const SvmTrainConfig& cfg, std::uint64_t seed = 0,
                    const std::vector<std::vector<double>>* gram = nullptr);

}  // namespace slick
