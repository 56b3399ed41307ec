#ifndef DEMIS_GMM_HPP
#define DEMIS_GMM_HPP

#include <cstdint>
#include <vector>

#include "demis/frame.hpp"
#include "demis/roi.hpp"

namespace demis {

struct GmmParams {
    int components = 3;                 // K
    double learning_rate = 0.02;        // alpha, weight and parameter update rate
    double background_threshold = 0.8;  // T, cumulative weight covered by background
    double match_sigma = 2.5;           // match if |g - mean| <= match_sigma * sigma
    double variance_floor = 4.0;
    double initial_variance = 36.0;     // variance of fresh components
    double replacement_weight = 0.05;   // weight of a component replacing the weakest
};

// Per-pixel mixture-of-Gaussians background model over gray levels.
//
// Each step: components are ranked by weight/sigma; the components whose
// cumulative weight first reaches the background threshold form the
// background set. A pixel is foreground when its gray value matches none of
// those. The first matching component (in rank order) is updated toward the
// observation; if nothing matches, the lowest-weight component is replaced.
// Weights stay normalized and variances never drop below the floor.
class GmmModel {
public:
    GmmModel(std::uint32_t width, std::uint32_t height, GmmParams params = {});

    // Updates the model with one frame and returns the foreground mask.
    // Sequential across frames; throws on dimension mismatch.
    RoiMask step(const Frame& frame);

    std::uint32_t width() const { return width_; }
    std::uint32_t height() const { return height_; }
    const GmmParams& params() const { return params_; }
    std::uint64_t frames_seen() const { return frames_seen_; }

    struct Component {
        double mean = 0.0;
        double variance = 0.0;
        double weight = 0.0;
    };

    // Components of one pixel, in storage order (not rank order).
    std::vector<Component> components(std::uint32_t x, std::uint32_t y) const;

private:
    std::uint32_t width_;
    std::uint32_t height_;
    GmmParams params_;
    std::uint64_t frames_seen_ = 0;
    std::vector<double> mean_;      // pixel-major, K per pixel
    std::vector<double> variance_;
    std::vector<double> weight_;
};

}  // namespace demis

#endif
