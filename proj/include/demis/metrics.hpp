#ifndef DEMIS_METRICS_HPP
#define DEMIS_METRICS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "demis/frame.hpp"
#include "demis/roi.hpp"

namespace demis {

struct GrayFrame {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<std::uint8_t> values;  // one 8-bit gray level per pixel

    std::size_t pixel_count() const { return std::size_t(width) * height; }
};

// BT.601 luma: round(0.299 r + 0.587 g + 0.114 b), clamped to [0,255].
// The single grayscale definition shared by metrics and segmentation.
GrayFrame to_gray(const Frame& frame);
std::uint8_t gray_of(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// Shannon entropy in bits over the 256 gray-level bins. Empty frames are an
// error; constant frames give 0, an exactly uniform histogram gives 8.
double entropy(const GrayFrame& g);

enum class Channel { kRed, kGreen, kBlue, kGray };

std::string to_string(Channel c);

struct Histogram {
    Channel channel = Channel::kGray;
    std::array<std::uint64_t, 256> bins{};

    std::uint64_t total() const;
};

Histogram histogram(const Frame& frame, Channel channel);

// Mean squared error over gray levels, population 1/n convention.
double mse(const GrayFrame& a, const GrayFrame& b);

struct SsimParams {
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 255.0;

    double c1() const { return (k1 * dynamic_range) * (k1 * dynamic_range); }
    double c2() const { return (k2 * dynamic_range) * (k2 * dynamic_range); }
};

// Global single-window SSIM with population moments:
//   (2 mx my + c1)(2 cov + c2) / ((mx^2 + my^2 + c1)(vx + vy + c2))
// Needs at least 2 pixels.
double ssim(const GrayFrame& a, const GrayFrame& b, const SsimParams& params = {});

struct MetricRow {
    std::uint32_t frame = 0;
    double entropy_orig = 0.0;
    double entropy_att = 0.0;
    double mse = 0.0;
    double ssim = 0.0;
};

struct MetricReport {
    std::vector<MetricRow> rows;

    double mean_entropy_orig() const;
    double mean_entropy_att() const;
    double mean_mse() const;
    double mean_ssim() const;
};

// One row per selected frame index, comparing original vs attacked frames.
MetricReport report(const FrameSequence& original, const FrameSequence& attacked,
                    const std::vector<std::uint32_t>& frames);

// Diagnostic variant restricted to mask-selected pixels. Each selected frame
// needs a mask with at least 2 foreground pixels.
MetricReport report_masked(const FrameSequence& original, const FrameSequence& attacked,
                           const std::vector<RoiMask>& masks,
                           const std::vector<std::uint32_t>& frames);

// CSV with header frame,entropy_orig,entropy_att,mse,ssim and a trailing
// mean row; values are fixed 4-decimal.
std::string to_csv(const MetricReport& report);

std::string histogram_csv(const std::vector<Histogram>& histograms);

// Minimal standalone SVG bar chart for one channel histogram.
std::string histogram_svg(const Histogram& h, const std::string& title);

}  // namespace demis

#endif
