#include "demis/chacha20.hpp"

#include <bit>
#include <cstring>

#include "demis/errors.hpp"

namespace demis::chacha {

namespace {

constexpr std::array<std::uint32_t, 4> kConstants = {
    0x61707865, 0x3320646e, 0x79622d32, 0x6b206574};  // "expand 32-byte k"

std::uint32_t load_le32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void store_le32(std::uint8_t* p, std::uint32_t v) {
    p[0] = static_cast<std::uint8_t>(v);
    p[1] = static_cast<std::uint8_t>(v >> 8);
    p[2] = static_cast<std::uint8_t>(v >> 16);
    p[3] = static_cast<std::uint8_t>(v >> 24);
}

void quarter_round_raw(State& s, int a, int b, int c, int d) {
    s[a] += s[b]; s[d] ^= s[a]; s[d] = std::rotl(s[d], 16);
    s[c] += s[d]; s[b] ^= s[c]; s[b] = std::rotl(s[b], 12);
    s[a] += s[b]; s[d] ^= s[a]; s[d] = std::rotl(s[d], 8);
    s[c] += s[d]; s[b] ^= s[c]; s[b] = std::rotl(s[b], 7);
}

}  // namespace

State init_state(const Key& key, std::uint32_t counter, const Nonce& nonce) {
    State s{};
    for (int i = 0; i < 4; ++i) s[i] = kConstants[i];
    for (int i = 0; i < 8; ++i) s[4 + i] = load_le32(key.data() + 4 * i);
    s[12] = counter;
    for (int i = 0; i < 3; ++i) s[13 + i] = load_le32(nonce.data() + 4 * i);
    return s;
}

void quarter_round(State& state, int a, int b, int c, int d) {
    const int idx[4] = {a, b, c, d};
    for (int i = 0; i < 4; ++i) {
        if (idx[i] < 0 || idx[i] > 15)
            throw InputError("chacha_cipher", "quarter round index out of range");
        for (int j = 0; j < i; ++j)
            if (idx[i] == idx[j])
                throw InputError("chacha_cipher", "quarter round indices must be distinct");
    }
    quarter_round_raw(state, a, b, c, d);
}

std::array<std::uint8_t, 64> block(const Key& key, std::uint32_t counter, const Nonce& nonce) {
    const State initial = init_state(key, counter, nonce);
    State s = initial;
    // 10 column rounds interleaved with 10 diagonal rounds, 20 in total.
    for (int i = 0; i < 10; ++i) {
        quarter_round_raw(s, 0, 4, 8, 12);
        quarter_round_raw(s, 1, 5, 9, 13);
        quarter_round_raw(s, 2, 6, 10, 14);
        quarter_round_raw(s, 3, 7, 11, 15);
        quarter_round_raw(s, 0, 5, 10, 15);
        quarter_round_raw(s, 1, 6, 11, 12);
        quarter_round_raw(s, 2, 7, 8, 13);
        quarter_round_raw(s, 3, 4, 9, 14);
    }
    std::array<std::uint8_t, 64> out;
    for (int i = 0; i < 16; ++i) store_le32(out.data() + 4 * i, s[i] + initial[i]);
    return out;
}

std::vector<std::uint8_t> xor_stream(const Key& key, const Nonce& nonce,
                                     std::uint32_t initial_counter,
                                     std::span<const std::uint8_t> data) {
    const std::uint64_t blocks_needed = (data.size() + 63) / 64;
    const std::uint64_t counters_left = (1ULL << 32) - initial_counter;
    if (blocks_needed > counters_left)
        throw InputError("chacha_cipher", "stream too long for 32-bit block counter");

    std::vector<std::uint8_t> out(data.size());
    std::size_t off = 0;
    std::uint32_t counter = initial_counter;
    while (off < data.size()) {
        const auto ks = block(key, counter++, nonce);
        const std::size_t n = std::min<std::size_t>(64, data.size() - off);
        for (std::size_t i = 0; i < n; ++i) out[off + i] = data[off + i] ^ ks[i];
        off += n;
    }
    return out;
}

}  // namespace demis::chacha
