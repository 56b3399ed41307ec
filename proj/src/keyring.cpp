#include "demis/keyring.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "demis/errors.hpp"
#include "demis/prng.hpp"

namespace demis {

namespace {

constexpr const char* kModule = "selective_crypto";

void fill_os_entropy(std::uint8_t* out, std::size_t n) {
    std::FILE* f = std::fopen("/dev/urandom", "rb");
    if (!f) throw InputError(kModule, "entropy source unavailable");
    const std::size_t got = std::fread(out, 1, n, f);
    std::fclose(f);
    if (got != n) throw InputError(kModule, "entropy source unavailable");
}

std::string hex_of(const chacha::Key& key) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(64);
    for (std::uint8_t b : key) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xF]);
    }
    return s;
}

chacha::Key key_from_hex(const std::string& hex) {
    if (hex.size() != 64) throw InputError(kModule, "key must be 64 hex digits");
    chacha::Key key{};
    for (std::size_t i = 0; i < 32; ++i) {
        auto nibble = [&](char c) -> int {
            if (c >= '0' && c <= '9') return c - '0';
            if (c >= 'a' && c <= 'f') return c - 'a' + 10;
            if (c >= 'A' && c <= 'F') return c - 'A' + 10;
            throw InputError(kModule, "bad hex digit in key file");
        };
        key[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
    }
    return key;
}

}  // namespace

KeyRing generate_keys(std::optional<std::uint64_t> seed) {
    KeyRing keys;
    if (seed) {
        SplitMix64 rng(*seed);
        for (auto& b : keys.fg_key) b = rng.next_byte();
        for (auto& b : keys.bg_key) b = rng.next_byte();
        keys.created = 0;
    } else {
        fill_os_entropy(keys.fg_key.data(), keys.fg_key.size());
        fill_os_entropy(keys.bg_key.data(), keys.bg_key.size());
        keys.created = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count());
    }
    if (keys.fg_key == keys.bg_key)
        throw InternalError(kModule, "fg and bg keys collided");
    return keys;
}

KeyRing load_key_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw InputError(kModule, "cannot open key file " + file.string());
    KeyRing keys;
    bool have_fg = false, have_bg = false;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("fg=", 0) == 0) {
            keys.fg_key = key_from_hex(line.substr(3));
            have_fg = true;
        } else if (line.rfind("bg=", 0) == 0) {
            keys.bg_key = key_from_hex(line.substr(3));
            have_bg = true;
        } else {
            throw InputError(kModule, "unrecognized key file line: " + line);
        }
    }
    if (!have_fg || !have_bg)
        throw InputError(kModule, "key file must define both fg= and bg= keys");
    if (keys.fg_key == keys.bg_key)
        throw InputError(kModule, "fg and bg keys must differ");
    return keys;
}

void save_key_file(const KeyRing& keys, const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::trunc);
    if (!out) throw InputError(kModule, "cannot write key file " + file.string());
    out << "fg=" << hex_of(keys.fg_key) << "\nbg=" << hex_of(keys.bg_key) << "\n";
}

chacha::Nonce frame_nonce(StreamKind stream, std::uint64_t frame_index) {
    chacha::Nonce nonce{};
    const char* tag = stream == StreamKind::kForeground ? "FG00" : "BG00";
    std::memcpy(nonce.data(), tag, 4);
    for (int i = 0; i < 8; ++i)
        nonce[std::size_t(4 + i)] = static_cast<std::uint8_t>(frame_index >> (8 * i));
    return nonce;
}

}  // namespace demis
