#pragma once

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "slick/raster.hpp"
#include "slick/rng.hpp"
#include "slick/types.hpp"

namespace slick::test {

inline Image random_unit_image(int h, int w, std::uint64_t seed) {
    Rng rng(seed);
    Image img(h, w);
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = rng.uniform();
    return img;
}

inline Features random_unit_features(Rng& rng, int dim = kFeatureDim) {
    Features f(dim);
    for (auto& v : f) v = rng.uniform();
    return f;
}

// Two Gaussian blobs, labels +1/-1, clipped into [0,1]^dim so scaled-feature
// preconditions hold.
inline std::vector<LabeledSample> gaussian_blobs(int n_per_class, std::uint64_t seed,
                                                 int dim = kFeatureDim,
                                                 double separation = 0.5) {
    Rng rng(seed);
    std::vector<LabeledSample> out;
    for (int cls = 0; cls < 2; ++cls) {
        const double center = cls == 0 ? 0.5 - separation / 2 : 0.5 + separation / 2;
        for (int i = 0; i < n_per_class; ++i) {
            LabeledSample s;
            s.y = cls == 0 ? -1 : +1;
            s.x.resize(dim);
            for (int k = 0; k < dim; ++k)
                s.x[k] = std::clamp(center + 0.08 * rng.normal(), 0.0, 1.0);
            s.origin = {"blob", cls, i};
            out.push_back(std::move(s));
        }
    }
    return out;
}

inline double training_accuracy(const std::vector<LabeledSample>& samples,
                                const std::function<double(const Features&)>& decision) {
    int correct = 0;
    for (const auto& s : samples) {
        const int pred = decision(s.x) > 0.0 ? +1 : -1;
        if (pred == s.y) ++correct;
    }
    return static_cast<double>(correct) / samples.size();
}

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("slickqsvm_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string str(const std::string& name = "") const {
        return name.empty() ? path_.string() : (path_ / name).string();
    }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace slick::test
