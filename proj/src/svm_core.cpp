#include "slick/svm_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slick/rng.hpp"

namespace slick {

double rbf_kernel(const Features& x1, const Features& x2, double gamma) {
    if (x1.size() != x2.size())
        throw std::invalid_argument("rbf_kernel: dimension mismatch");
    double d2 = 0.0;
    for (std::size_t i = 0; i < x1.size(); ++i) {
        const double d = x1[i] - x2[i];
        d2 += d * d;
    }
    return std::exp(-gamma * d2);
}

namespace {

// Overlap of two product-RY encodings; shared with gate_kernel.cpp through
// kernel_eval so learners loaded from disk evaluate identically.
double gate_closed_form(const Features& x1, const Features& x2, double angle_scale) {
    if (x1.size() != x2.size())
        throw std::invalid_argument("gate kernel: dimension mismatch");
    double prod = 1.0;
    for (std::size_t i = 0; i < x1.size(); ++i) {
        const double c = std::cos(0.5 * angle_scale * (x1[i] - x2[i]));
        prod *= c * c;
    }
    return prod;
}

}  // namespace

double kernel_eval(const KernelSpec& spec, const Features& x1, const Features& x2) {
    switch (spec.kind) {
        case KernelKind::rbf:
            return rbf_kernel(x1, x2, spec.rbf_gamma);
        case KernelKind::gate:
            return gate_closed_form(x1, x2, spec.angle_scale);
        case KernelKind::precomputed:
            throw std::logic_error("precomputed kernel cannot evaluate new points");
    }
    throw std::logic_error("unknown kernel kind");
}

std::vector<std::vector<double>> gram_matrix(const std::vector<Features>& xs,
                                             const KernelSpec& spec) {
    if (xs.empty()) throw std::invalid_argument("gram_matrix: empty sample list");
    const std::size_t n = xs.size();
    std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = kernel_eval(spec, xs[i], xs[j]);
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    return g;
}

double decision_function(const WeakLearner& learner, const Features& x) {
    double f = learner.bias;
    for (std::size_t n = 0; n < learner.alphas.size(); ++n) {
        if (learner.alphas[n] == 0.0) continue;
        f += learner.alphas[n] * learner.support_y[n] *
             kernel_eval(learner.kernel, learner.support_x[n], x);
    }
    return f;
}

double bias_from_alphas(const std::vector<LabeledSample>& samples,
                        const std::vector<double>& alphas, const KernelSpec& spec,
                        double box_C, const std::vector<std::vector<double>>* gram) {
    if (samples.size() != alphas.size())
        throw std::invalid_argument("bias_from_alphas: size mismatch");
    const std::size_t n = samples.size();

    auto kij = [&](std::size_t i, std::size_t j) {
        return gram ? (*gram)[i][j] : kernel_eval(spec, samples[i].x, samples[j].x);
    };
    auto f_wo_bias = [&](std::size_t i) {
        double f = 0.0;
        for (std::size_t m = 0; m < n; ++m)
            if (alphas[m] != 0.0) f += alphas[m] * samples[m].y * kij(m, i);
        return f;
    };

    // margin-band tolerance keeps floating-point dust at the box edges out
    const double eps = 1e-8;
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (alphas[i] > eps && alphas[i] < box_C - eps) {
            sum += samples[i].y - f_wo_bias(i);
            ++count;
        }
    }
    if (count == 0) {
        for (std::size_t i = 0; i < n; ++i) {
            if (alphas[i] > eps) {
                sum += samples[i].y - f_wo_bias(i);
                ++count;
            }
        }
    }
    return count == 0 ? 0.0 : sum / count;
}

SmoResult smo_train(const std::vector<LabeledSample>& samples, const KernelSpec& spec,
                    const SvmTrainConfig& cfg, std::uint64_t seed,
                    const std::vector<std::vector<double>>* gram) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("smo_train: need at least 2 samples");
    bool has_pos = false, has_neg = false;
    for (const auto& s : samples) {
        if (s.y > 0) has_pos = true;
        else has_neg = true;
    }
    if (!has_pos || !has_neg)
        throw std::invalid_argument("smo_train: both classes must be present");
    if (spec.kind == KernelKind::precomputed && gram == nullptr)
        throw std::invalid_argument("smo_train: precomputed kernel requires a Gram matrix");

    std::vector<std::vector<double>> local_gram;
    if (gram == nullptr) {
        std::vector<Features> xs;
        xs.reserve(n);
        for (const auto& s : samples) xs.push_back(s.x);
        local_gram = gram_matrix(xs, spec);
        gram = &local_gram;
    }
    const auto& K = *gram;

    const double C = cfg.box_C;
    std::vector<double> alpha(n, 0.0);
    double b = 0.0;
    Rng rng(seed);

    auto f_at = [&](std::size_t i) {
        double f = b;
        for (std::size_t m = 0; m < n; ++m)
            if (alpha[m] != 0.0) f += alpha[m] * samples[m].y * K[m][i];
        return f;
    };

    bool converged = false;
    int sweep = 0;
    for (; sweep < cfg.smo_max_passes; ++sweep) {
        int num_changed = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double yi = samples[i].y;
            const double Ei = f_at(i) - yi;
            const bool violates = (yi * Ei < -cfg.smo_tol && alpha[i] < C) ||
                                  (yi * Ei > cfg.smo_tol && alpha[i] > 0.0);
            if (!violates) continue;

            std::size_t j = static_cast<std::size_t>(rng.uniform_below(n - 1));
            if (j >= i) ++j;
            const double yj = samples[j].y;
            const double Ej = f_at(j) - yj;

            const double ai_old = alpha[i];
            const double aj_old = alpha[j];
            double L, H;
            if (yi != yj) {
                L = std::max(0.0, aj_old - ai_old);
                H = std::min(C, C + aj_old - ai_old);
            } else {
                L = std::max(0.0, ai_old + aj_old - C);
                H = std::min(C, ai_old + aj_old);
            }
            if (L >= H) continue;

            const double eta = 2.0 * K[i][j] - K[i][i] - K[j][j];
            double aj;
            if (eta < 0.0) {
                aj = std::clamp(aj_old - yj * (Ei - Ej) / eta, L, H);
            } else {
                // flat/degenerate direction (e.g. duplicated points): the
                // dual is linear along the pair, so test the endpoints
                const double s = yi * yj;
                const double f1 = yi * (Ei + b) - ai_old * K[i][i] - s * aj_old * K[i][j];
                const double f2 = yj * (Ej + b) - s * ai_old * K[i][j] - aj_old * K[j][j];
                const double L1 = ai_old + s * (aj_old - L);
                const double H1 = ai_old + s * (aj_old - H);
                const double psi_l = L1 * f1 + L * f2 + 0.5 * L1 * L1 * K[i][i] +
                                     0.5 * L * L * K[j][j] + s * L * L1 * K[i][j];
                const double psi_h = H1 * f1 + H * f2 + 0.5 * H1 * H1 * K[i][i] +
                                     0.5 * H * H * K[j][j] + s * H * H1 * K[i][j];
                if (psi_l < psi_h - 1e-12) aj = L;
                else if (psi_h < psi_l - 1e-12) aj = H;
                else continue;
            }
            if (std::abs(aj - aj_old) < 1e-7) continue;

            const double ai = ai_old + yi * yj * (aj_old - aj);
            alpha[i] = std::clamp(ai, 0.0, C);
            alpha[j] = aj;

            const double b1 = b - Ei - yi * (alpha[i] - ai_old) * K[i][i] -
                              yj * (aj - aj_old) * K[i][j];
            const double b2 = b - Ej - yi * (alpha[i] - ai_old) * K[i][j] -
                              yj * (aj - aj_old) * K[j][j];
            if (alpha[i] > 0.0 && alpha[i] < C) b = b1;
            else if (aj > 0.0 && aj < C) b = b2;
            else b = 0.5 * (b1 + b2);

            ++num_changed;
        }
        if (num_changed == 0) {
            converged = true;
            break;
        }
    }

    SmoResult result;
    result.converged = converged;
    result.sweeps = sweep;
    result.learner.kernel = spec;
    result.learner.alphas = std::move(alpha);
    result.learner.support_x.reserve(n);
    result.learner.support_y.reserve(n);
    for (const auto& s : samples) {
        result.learner.support_x.push_back(s.x);
        result.learner.support_y.push_back(s.y);
    }
    result.learner.bias = bias_from_alphas(samples, result.learner.alphas, spec, C, &K);
    return result;
}

}  // namespace slick
