#include "slick/gate_kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace slick {

StateVector zero_state() {
    StateVector s{};
    s[0] = {1.0, 0.0};
    return s;
}

void apply_ry(StateVector& state, int qubit_index, double theta) {
    if (qubit_index < 0 || qubit_index >= kNumQubits)
        throw std::invalid_argument("apply_ry: qubit index out of range");
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const int stride = 1 << qubit_index;
    for (int base = 0; base < kStateDim; base += 2 * stride) {
        for (int low = 0; low < stride; ++low) {
            const int i0 = base + low;
            const int i1 = i0 + stride;
            const std::complex<double> a0 = state[i0];
            const std::complex<double> a1 = state[i1];
            state[i0] = c * a0 - s * a1;
            state[i1] = s * a0 + c * a1;
        }
    }
}

double state_norm(const StateVector& state) {
    double n = 0.0;
    for (const auto& a : state) n += std::norm(a);
    return std::sqrt(n);
}

namespace {

void check_scaled(const Features& x) {
    if (x.size() != kNumQubits)
        throw std::invalid_argument("gate kernel: feature dimension must be 5");
    for (double v : x)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("gate kernel: features must be scaled to [0,1]");
}

}  // namespace

double kernel_value(const Features& x1, const Features& x2, const GateKernelSpec& spec) {
    check_scaled(x1);
    check_scaled(x2);
    // No entangling gates, so the all-zeros probability factorizes exactly.
    double prod = 1.0;
    for (int i = 0; i < kNumQubits; ++i) {
        const double c = std::cos(0.5 * spec.angle_scale * (x1[i] - x2[i]));
        prod *= c * c;
    }
    return prod;
}

double kernel_value_statevector(const Features& x1, const Features& x2,
                                const GateKernelSpec& spec) {
    check_scaled(x1);
    check_scaled(x2);
    StateVector state = zero_state();
    for (int i = 0; i < kNumQubits; ++i) apply_ry(state, i, spec.angle_scale * x1[i]);
    for (int i = 0; i < kNumQubits; ++i) apply_ry(state, i, -spec.angle_scale * x2[i]);
    return std::norm(state[0]);
}

std::vector<std::vector<double>> quantum_gram_matrix(const std::vector<Features>& xs,
                                                     const GateKernelSpec& spec) {
    if (xs.empty()) throw std::invalid_argument("quantum_gram_matrix: empty sample list");
    const std::size_t n = xs.size();
    std::vector<std::vector<double>> g(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = kernel_value(xs[i], xs[j], spec);
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    return g;
}

WeakLearner train_gate_svm(const std::vector<LabeledSample>& samples,
                           const GateKernelSpec& spec, const SvmTrainConfig& cfg,
                           std::uint64_t seed) {
    std::vector<Features> xs;
    xs.reserve(samples.size());
    for (const auto& s : samples) xs.push_back(s.x);
    const auto gram = quantum_gram_matrix(xs, spec);

    KernelSpec pre;
    pre.kind = KernelKind::precomputed;
    SmoResult res = smo_train(samples, pre, cfg, seed, &gram);

    // inference replays the quantum kernel against the support vectors
    res.learner.kernel = spec.as_kernel_spec();
    return res.learner;
}

}  // namespace slick
