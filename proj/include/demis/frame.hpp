#ifndef DEMIS_FRAME_HPP
#define DEMIS_FRAME_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace demis {

enum class BackgroundKind { kStatic, kDynamic };

std::string to_string(BackgroundKind kind);
BackgroundKind background_kind_from_string(const std::string& s);

// A decoded RGB frame: 8-bit triples, row-major.
struct Frame {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<std::uint8_t> pixels;  // width*height*3 bytes, r,g,b order

    Frame() = default;
    Frame(std::uint32_t w, std::uint32_t h) : width(w), height(h), pixels(std::size_t(w) * h * 3, 0) {}

    std::size_t pixel_count() const { return std::size_t(width) * height; }

    std::uint8_t* at(std::uint32_t x, std::uint32_t y) {
        return pixels.data() + (std::size_t(y) * width + x) * 3;
    }
    const std::uint8_t* at(std::uint32_t x, std::uint32_t y) const {
        return pixels.data() + (std::size_t(y) * width + x) * 3;
    }

    // Throws InputError unless width,height >= 1 and the buffer length matches.
    void validate() const;

    bool operator==(const Frame&) const = default;
};

struct FrameSequence {
    std::vector<Frame> frames;
    std::uint32_t fps = 1;
    std::string name;
    BackgroundKind background = BackgroundKind::kStatic;

    std::uint32_t width() const { return frames.empty() ? 0 : frames.front().width; }
    std::uint32_t height() const { return frames.empty() ? 0 : frames.front().height; }

    // Frame count >= 1, fps >= 1, uniform resolution.
    void validate() const;
};

struct ManifestEntry {
    std::string name;
    BackgroundKind background = BackgroundKind::kStatic;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t fps = 0;
    std::uint32_t frame_count = 0;
    std::filesystem::path path;  // resolved against the manifest directory
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;
};

}  // namespace demis

#endif
