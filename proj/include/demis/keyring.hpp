#ifndef DEMIS_KEYRING_HPP
#define DEMIS_KEYRING_HPP

#include <cstdint>
#include <filesystem>
#include <optional>

#include "demis/chacha20.hpp"

namespace demis {

enum class StreamKind : std::uint8_t { kForeground = 0, kBackground = 1 };

// Distinct keys for the foreground and background streams. Keys live in a
// separate key file, never inside containers: the containers are what an
// attacker gets to see.
struct KeyRing {
    chacha::Key fg_key{};
    chacha::Key bg_key{};
    std::uint64_t created = 0;  // unix seconds; 0 in seeded (test) mode
};

// Unseeded: keys from the OS entropy pool. Seeded: deterministic expansion of
// the seed (test fixtures only). fg_key != bg_key always holds.
KeyRing generate_keys(std::optional<std::uint64_t> seed = std::nullopt);

// Key file: two lines, `fg=<64 hex>` and `bg=<64 hex>`.
KeyRing load_key_file(const std::filesystem::path& file);
void save_key_file(const KeyRing& keys, const std::filesystem::path& file);

// Deterministic per-frame nonce: 4-byte stream tag ("FG00"/"BG00") followed by
// the frame index as 8 bytes little-endian. Guarantees (key, nonce) pairs are
// never reused across a container pair built from one KeyRing.
chacha::Nonce frame_nonce(StreamKind stream, std::uint64_t frame_index);

}  // namespace demis

#endif
