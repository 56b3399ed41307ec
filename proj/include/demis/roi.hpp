#ifndef DEMIS_ROI_HPP
#define DEMIS_ROI_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "demis/frame.hpp"

namespace demis {

// Per-frame binary foreground mask, one bit per pixel, row-major.
struct RoiMask {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<std::uint8_t> bits;  // 0 or 1 per pixel

    RoiMask() = default;
    RoiMask(std::uint32_t w, std::uint32_t h) : width(w), height(h), bits(std::size_t(w) * h, 0) {}

    std::size_t popcount() const;
    bool get(std::uint32_t x, std::uint32_t y) const { return bits[std::size_t(y) * width + x] != 0; }
    void set(std::uint32_t x, std::uint32_t y, bool v) {
        bits[std::size_t(y) * width + x] = v ? 1 : 0;
    }

    void validate() const;

    bool operator==(const RoiMask&) const = default;
};

// Foreground pixel bytes: (r,g,b) of mask-selected pixels in row-major order.
struct FgPayload {
    std::vector<std::uint8_t> bytes;
};

struct MergeFlags {
    bool deficit = false;  // payload shorter than 3*popcount(mask)
    bool surplus = false;  // payload longer; extra bytes ignored
};

// Pulls masked pixels into a payload and zeroes them in the returned
// background frame.
std::pair<FgPayload, Frame> split_frame(const Frame& frame, const RoiMask& mask);

// Inverse of split_frame, tolerant of wrong-length payloads: missing bytes
// render as 0 with the deficit flag, extra bytes are dropped with the surplus
// flag. Attacked streams must stay renderable, so length anomalies are never
// fatal here.
std::pair<Frame, MergeFlags> merge_frame(std::span<const std::uint8_t> payload,
                                         const RoiMask& mask, const Frame& bg);

// Frame-differencing segmenter for moving cameras: threshold on
// |gray(curr) - gray(prev)|, then binary dilation and erosion with a square
// element of the given radius. A deliberately simple stand-in for a real
// motion-flow method.
RoiMask motion_diff_step(const Frame& prev, const Frame& curr, double threshold,
                         int morph_radius);

// Mask file format shared with the encrypted containers:
//   u32 width | u32 height | u32 run lengths alternating, first run counts 0s.
// Little-endian throughout.
std::vector<std::uint8_t> mask_to_rle(const RoiMask& mask);
RoiMask mask_from_rle(std::span<const std::uint8_t> data);

}  // namespace demis

#endif
