#include "demis/roi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "demis/errors.hpp"
#include "demis/metrics.hpp"

namespace demis {

namespace {

constexpr const char* kModule = "roi_segment";

void require_match(const Frame& frame, const RoiMask& mask) {
    if (frame.width != mask.width || frame.height != mask.height)
        throw InputError(kModule, "mask/frame dimension mismatch");
}

void push_le32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
}

std::uint32_t read_le32(std::span<const std::uint8_t> data, std::size_t off) {
    return static_cast<std::uint32_t>(data[off]) | (static_cast<std::uint32_t>(data[off + 1]) << 8) |
           (static_cast<std::uint32_t>(data[off + 2]) << 16) |
           (static_cast<std::uint32_t>(data[off + 3]) << 24);
}

// Chebyshev-ball dilation (max filter) or erosion (min filter).
std::vector<std::uint8_t> morph(const std::vector<std::uint8_t>& bits, std::uint32_t w,
                                std::uint32_t h, int radius, bool dilate) {
    std::vector<std::uint8_t> out(bits.size());
    for (std::uint32_t y = 0; y < h; ++y) {
        for (std::uint32_t x = 0; x < w; ++x) {
            std::uint8_t v = dilate ? 0 : 1;
            for (int dy = -radius; dy <= radius && v == (dilate ? 0 : 1); ++dy) {
                const long yy = long(y) + dy;
                if (yy < 0 || yy >= long(h)) {
                    if (!dilate) v = 0;  // outside counts as background
                    continue;
                }
                for (int dx = -radius; dx <= radius; ++dx) {
                    const long xx = long(x) + dx;
                    if (xx < 0 || xx >= long(w)) {
                        if (!dilate) { v = 0; break; }
                        continue;
                    }
                    const std::uint8_t b = bits[std::size_t(yy) * w + std::size_t(xx)];
                    if (dilate && b) { v = 1; break; }
                    if (!dilate && !b) { v = 0; break; }
                }
            }
            out[std::size_t(y) * w + x] = v;
        }
    }
    return out;
}

}  // namespace

std::size_t RoiMask::popcount() const {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

void RoiMask::validate() const {
    if (bits.size() != std::size_t(width) * height)
        throw InputError(kModule, "mask bit count does not match width*height");
    for (std::uint8_t b : bits)
        if (b > 1) throw InputError(kModule, "mask bits must be 0 or 1");
}

std::pair<FgPayload, Frame> split_frame(const Frame& frame, const RoiMask& mask) {
    frame.validate();
    mask.validate();
    require_match(frame, mask);

    FgPayload payload;
    payload.bytes.reserve(mask.popcount() * 3);
    Frame bg = frame;
    for (std::size_t i = 0; i < mask.bits.size(); ++i) {
        if (!mask.bits[i]) continue;
        const std::size_t p = i * 3;
        payload.bytes.push_back(bg.pixels[p]);
        payload.bytes.push_back(bg.pixels[p + 1]);
        payload.bytes.push_back(bg.pixels[p + 2]);
        bg.pixels[p] = bg.pixels[p + 1] = bg.pixels[p + 2] = 0;
    }
    return {std::move(payload), std::move(bg)};
}

std::pair<Frame, MergeFlags> merge_frame(std::span<const std::uint8_t> payload,
                                         const RoiMask& mask, const Frame& bg) {
    bg.validate();
    mask.validate();
    require_match(bg, mask);

    const std::size_t expected = mask.popcount() * 3;
    MergeFlags flags;
    flags.deficit = payload.size() < expected;
    flags.surplus = payload.size() > expected;

    Frame out = bg;
    std::size_t src = 0;
    for (std::size_t i = 0; i < mask.bits.size(); ++i) {
        if (!mask.bits[i]) continue;
        for (int c = 0; c < 3; ++c) {
            out.pixels[i * 3 + std::size_t(c)] = src < payload.size() ? payload[src] : 0;
            ++src;
        }
    }
    return {std::move(out), flags};
}

RoiMask motion_diff_step(const Frame& prev, const Frame& curr, double threshold,
                         int morph_radius) {
    prev.validate();
    curr.validate();
    if (prev.width != curr.width || prev.height != curr.height)
        throw InputError(kModule, "frame dimension mismatch");
    if (morph_radius < 0) throw InputError(kModule, "morph radius must be >= 0");

    const GrayFrame gp = to_gray(prev);
    const GrayFrame gc = to_gray(curr);
    RoiMask mask(curr.width, curr.height);
    for (std::size_t i = 0; i < mask.bits.size(); ++i) {
        const double delta = std::abs(double(gc.values[i]) - double(gp.values[i]));
        mask.bits[i] = delta > threshold ? 1 : 0;
    }
    if (morph_radius > 0) {
        mask.bits = morph(mask.bits, mask.width, mask.height, morph_radius, /*dilate=*/true);
        mask.bits = morph(mask.bits, mask.width, mask.height, morph_radius, /*dilate=*/false);
    }
    return mask;
}

std::vector<std::uint8_t> mask_to_rle(const RoiMask& mask) {
    mask.validate();
    std::vector<std::uint8_t> out;
    push_le32(out, mask.width);
    push_le32(out, mask.height);

    std::uint8_t run_value = 0;  // runs alternate starting with zeros
    std::size_t i = 0;
    while (i < mask.bits.size()) {
        std::uint32_t run = 0;
        while (i < mask.bits.size() && mask.bits[i] == run_value) {
            ++run;
            ++i;
        }
        push_le32(out, run);
        run_value ^= 1;
    }
    if (mask.bits.empty()) push_le32(out, 0);
    return out;
}

RoiMask mask_from_rle(std::span<const std::uint8_t> data) {
    if (data.size() < 8 || data.size() % 4 != 0)
        throw InputError(kModule, "corrupt RLE mask: bad length");
    const std::uint32_t w = read_le32(data, 0);
    const std::uint32_t h = read_le32(data, 4);
    if (std::uint64_t(w) * h > (1ULL << 31))
        throw InputError(kModule, "corrupt RLE mask: implausible dimensions");
    RoiMask mask(w, h);
    const std::size_t total = mask.bits.size();

    std::size_t i = 0;
    std::uint8_t run_value = 0;
    for (std::size_t off = 8; off < data.size(); off += 4) {
        const std::uint32_t run = read_le32(data, off);
        if (i + run > total) throw InputError(kModule, "corrupt RLE mask: runs exceed pixel count");
        std::fill_n(mask.bits.begin() + static_cast<std::ptrdiff_t>(i), run, run_value);
        i += run;
        run_value ^= 1;
    }
    if (i != total) throw InputError(kModule, "corrupt RLE mask: runs cover too few pixels");
    return mask;
}

}  // namespace demis
