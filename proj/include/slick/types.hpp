#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace slick {

// Feature vectors are dimension-generic in the SVM machinery; the
// production pipeline always emits the five SAR features (see features.hpp).
using Features = std::vector<double>;

constexpr int kFeatureDim = 5;

struct PixelOrigin {
    std::string scene_id;
    int row = 0;
    int col = 0;
};

// One training pixel: features, oil(+1)/water(-1) label, provenance.
struct LabeledSample {
    Features x;
    int y = 0;
    PixelOrigin origin;
};

enum class Backend { classical, annealed, gate_kernel };
enum class Aggregation { mean_decision, majority_vote };

std::string to_string(Backend b);
Backend backend_from_string(const std::string& s);
std::string to_string(Aggregation a);
Aggregation aggregation_from_string(const std::string& s);

struct EnsembleConfig {
    int n_learners = 500;
    int subset_size = 40;
    Backend backend = Backend::classical;
    Aggregation aggregation = Aggregation::mean_decision;
    std::uint64_t seed = 0;

    void validate() const {
        if (n_learners < 1) throw std::invalid_argument("n_learners must be >= 1");
        if (subset_size < 2) throw std::invalid_argument("subset_size must be >= 2");
    }
};

}  // namespace slick
