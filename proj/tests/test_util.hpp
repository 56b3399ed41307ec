#ifndef DEMIS_TESTS_TEST_UTIL_HPP
#define DEMIS_TESTS_TEST_UTIL_HPP

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "demis/frame.hpp"
#include "demis/prng.hpp"
#include "demis/roi.hpp"

namespace demis::test {

// Scratch directory removed on scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("demis_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::vector<std::uint8_t> hex_bytes(const std::string& hex) {
    std::vector<std::uint8_t> out;
    auto nibble = [](char c) {
        return c <= '9' ? c - '0' : (c | 0x20) - 'a' + 10;
    };
    for (std::size_t i = 0; i + 1 < hex.size(); i += 2)
        out.push_back(static_cast<std::uint8_t>((nibble(hex[i]) << 4) | nibble(hex[i + 1])));
    return out;
}

inline Frame random_frame(SplitMix64& rng, std::uint32_t w, std::uint32_t h) {
    Frame f(w, h);
    for (auto& b : f.pixels) b = rng.next_byte();
    return f;
}

inline RoiMask random_mask(SplitMix64& rng, std::uint32_t w, std::uint32_t h) {
    RoiMask m(w, h);
    for (auto& b : m.bits) b = rng.next_below(2) ? 1 : 0;
    return m;
}

inline FrameSequence random_sequence(SplitMix64& rng, std::uint32_t w, std::uint32_t h,
                                     std::size_t frames) {
    FrameSequence seq;
    seq.name = "random";
    seq.fps = 10;
    for (std::size_t i = 0; i < frames; ++i) seq.frames.push_back(random_frame(rng, w, h));
    return seq;
}

}  // namespace demis::test

#endif
