#include "demis/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "demis/errors.hpp"
#include "demis/metrics.hpp"

namespace demis {

namespace {
constexpr const char* kModule = "roi_segment";
}

GmmModel::GmmModel(std::uint32_t width, std::uint32_t height, GmmParams params)
    : width_(width), height_(height), params_(params) {
    if (width < 1 || height < 1) throw InputError(kModule, "model dimensions must be >= 1");
    if (params_.components < 1) throw InputError(kModule, "need at least one component");
    if (params_.learning_rate <= 0.0 || params_.learning_rate >= 1.0)
        throw InputError(kModule, "learning rate must be in (0,1)");
    if (params_.background_threshold <= 0.0 || params_.background_threshold >= 1.0)
        throw InputError(kModule, "background threshold must be in (0,1)");
    if (params_.variance_floor <= 0.0) throw InputError(kModule, "variance floor must be > 0");
    const std::size_t n = std::size_t(width) * height * std::size_t(params_.components);
    mean_.assign(n, 0.0);
    variance_.assign(n, params_.initial_variance);
    weight_.assign(n, 0.0);  // zero weight marks an unused component
}

RoiMask GmmModel::step(const Frame& frame) {
    frame.validate();
    if (frame.width != width_ || frame.height != height_)
        throw InputError(kModule, "frame does not match model dimensions");

    const GrayFrame gray = to_gray(frame);
    const int k = params_.components;
    const double alpha = params_.learning_rate;
    RoiMask mask(width_, height_);

    std::vector<int> order(static_cast<std::size_t>(k));
    for (std::size_t px = 0; px < gray.values.size(); ++px) {
        const double g = gray.values[px];
        double* mean = mean_.data() + px * std::size_t(k);
        double* var = variance_.data() + px * std::size_t(k);
        double* wgt = weight_.data() + px * std::size_t(k);

        if (wgt[0] == 0.0) {
            // Fresh pixel: claim the first component and call it background.
            mean[0] = g;
            var[0] = params_.initial_variance;
            wgt[0] = 1.0;
            continue;
        }

        // Rank by weight/sigma, strongest evidence first.
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double fa = wgt[a] <= 0.0 ? -1.0 : wgt[a] / std::sqrt(var[a]);
            const double fb = wgt[b] <= 0.0 ? -1.0 : wgt[b] / std::sqrt(var[b]);
            return fa > fb;
        });

        // Background set: ranked components up to cumulative weight T.
        int background_count = 0;
        double cum = 0.0;
        for (int r = 0; r < k; ++r) {
            cum += wgt[order[std::size_t(r)]];
            ++background_count;
            if (cum >= params_.background_threshold) break;
        }

        int matched_rank = -1;
        for (int r = 0; r < k; ++r) {
            const int c = order[std::size_t(r)];
            if (wgt[c] <= 0.0) continue;
            if (std::abs(g - mean[c]) <= params_.match_sigma * std::sqrt(var[c])) {
                matched_rank = r;
                break;
            }
        }

        const bool foreground = matched_rank < 0 || matched_rank >= background_count;
        mask.bits[px] = foreground ? 1 : 0;

        if (matched_rank >= 0) {
            const int m = order[std::size_t(matched_rank)];
            for (int c = 0; c < k; ++c)
                wgt[c] = (1.0 - alpha) * wgt[c] + (c == m ? alpha : 0.0);
            const double delta = g - mean[m];
            mean[m] += alpha * delta;
            var[m] = (1.0 - alpha) * var[m] + alpha * delta * delta;
        } else {
            // Replace the weakest component with the new observation.
            int weakest = 0;
            for (int c = 1; c < k; ++c)
                if (wgt[c] < wgt[weakest]) weakest = c;
            mean[weakest] = g;
            var[weakest] = params_.initial_variance;
            wgt[weakest] = params_.replacement_weight;
        }

        double total = 0.0;
        for (int c = 0; c < k; ++c) total += wgt[c];
        for (int c = 0; c < k; ++c) {
            wgt[c] /= total;
            if (var[c] < params_.variance_floor) var[c] = params_.variance_floor;
        }
    }
    ++frames_seen_;
    return mask;
}

std::vector<GmmModel::Component> GmmModel::components(std::uint32_t x, std::uint32_t y) const {
    if (x >= width_ || y >= height_) throw InputError(kModule, "pixel out of range");
    const std::size_t base = (std::size_t(y) * width_ + x) * std::size_t(params_.components);
    std::vector<Component> out(static_cast<std::size_t>(params_.components));
    for (int c = 0; c < params_.components; ++c)
        out[std::size_t(c)] = {mean_[base + std::size_t(c)], variance_[base + std::size_t(c)],
                               weight_[base + std::size_t(c)]};
    return out;
}

}  // namespace demis
