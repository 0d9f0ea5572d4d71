#include "slick/types.hpp"

namespace slick {

std::string to_string(Backend b) {
    switch (b) {
        case Backend::classical: return "classical";
        case Backend::annealed: return "annealed";
        case Backend::gate_kernel: return "gate_kernel";
    }
    throw std::logic_error("unknown backend");
}

Backend backend_from_string(const std::string& s) {
    if (s == "classical") return Backend::classical;
    if (s == "annealed") return Backend::annealed;
    if (s == "gate_kernel") return Backend::gate_kernel;
    throw std::invalid_argument("unknown backend '" + s +
                                "' (expected classical|annealed|gate_kernel)");
}

std::string to_string(Aggregation a) {
    return a == Aggregation::mean_decision ? "mean_decision" : "majority_vote";
}

Aggregation aggregation_from_string(const std::string& s) {
    if (s == "mean_decision") return Aggregation::mean_decision;
    if (s == "majority_vote") return Aggregation::majority_vote;
    throw std::invalid_argument("unknown aggregation '" + s +
                                "' (expected mean_decision|majority_vote)");
}

}  // namespace slick
