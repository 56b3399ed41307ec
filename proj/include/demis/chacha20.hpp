#ifndef DEMIS_CHACHA20_HPP
#define DEMIS_CHACHA20_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace demis::chacha {

// ChaCha20 in the IETF layout: 256-bit key, 96-bit nonce, 32-bit block
// counter, 20 rounds. Implemented from scratch; validated against the
// published IETF test vectors in the test suite.

using Key = std::array<std::uint8_t, 32>;
using Nonce = std::array<std::uint8_t, 12>;

// 16 words: 4 constants, 8 key words, 1 counter, 3 nonce words.
using State = std::array<std::uint32_t, 16>;

State init_state(const Key& key, std::uint32_t counter, const Nonce& nonce);

// Add-xor-rotate quarter round on state words a,b,c,d.
// Throws InputError if an index is out of [0,15] or indices repeat.
void quarter_round(State& state, int a, int b, int c, int d);

// One 64-byte keystream block: initial state plus the 20-round permutation,
// summed word-wise and serialized little-endian.
std::array<std::uint8_t, 64> block(const Key& key, std::uint32_t counter, const Nonce& nonce);

// XOR `data` with the keystream starting at `initial_counter`. Encryption and
// decryption are the same operation. Throws InputError if the stream would
// exhaust the 32-bit counter space.
std::vector<std::uint8_t> xor_stream(const Key& key, const Nonce& nonce,
                                     std::uint32_t initial_counter,
                                     std::span<const std::uint8_t> data);

}  // namespace demis::chacha

#endif
