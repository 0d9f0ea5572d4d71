#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "slick/svm_core.hpp"
#include "slick/types.hpp"

namespace slick {

inline constexpr int kNumQubits = 5;
inline constexpr int kStateDim = 1 << kNumQubits;

// 5-qubit statevector; qubit i addresses bit i of the basis index.
using StateVector = std::array<std::complex<double>, kStateDim>;

struct GateKernelSpec {
    // scaled feature f in [0,1] -> rotation angle theta = angle_scale * f
    double angle_scale = 3.14159265358979323846;

    KernelSpec as_kernel_spec() const {
        KernelSpec spec;
        spec.kind = KernelKind::gate;
        spec.angle_scale = angle_scale;
        return spec;
    }
};

StateVector zero_state();

// Single-qubit R_Y(theta) = [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]].
void apply_ry(StateVector& state, int qubit_index, double theta);

double state_norm(const StateVector& state);

// Overlap kernel: encode x1 with +theta rotations, x2 with -theta
// rotations, return the all-zeros measurement probability. Production path
// is the exact closed form (the circuit has no entangling gates); the
// statevector route below is the cross-check oracle.
double kernel_value(const Features& x1, const Features& x2, const GateKernelSpec& spec);
double kernel_value_statevector(const Features& x1, const Features& x2,
                                const GateKernelSpec& spec);

// Symmetric, unit-diagonal Gram matrix of pairwise kernel values.
std::vector<std::vector<double>> quantum_gram_matrix(const std::vector<Features>& xs,
                                                     const GateKernelSpec& spec);

// SMO over the precomputed quantum Gram; the returned learner carries the
// gate kernel spec so inference evaluates kernel_value against its
// support vectors.
WeakLearner train_gate_svm(const std::vector<LabeledSample>& samples,
                           const GateKernelSpec& spec, const SvmTrainConfig& cfg,
                           std::uint64_t seed = 0);

}  // namespace slick
