#include "demis/attacks.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "demis/errors.hpp"
#include "demis/metrics.hpp"
#include "demis/prng.hpp"

namespace demis {

namespace {

constexpr const char* kModule = "attack_sim";

std::vector<std::uint8_t> map_bytes(std::span<const std::uint8_t> ct,
                                    std::uint8_t lo, std::uint8_t hi, int delta) {
    std::vector<std::uint8_t> out(ct.begin(), ct.end());
    for (std::uint8_t& b : out)
        if (b >= lo && b <= hi) b = static_cast<std::uint8_t>(int(b) + delta);
    return out;
}

std::uint64_t parse_u64(std::string_view s, const char* what) {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw InputError(kModule, std::string("bad ") + what + " value '" + std::string(s) + "'");
    return v;
}

std::vector<std::uint8_t> parse_hex_bytes(std::string_view s) {
    if (s.size() % 2 != 0) throw InputError(kModule, "hex byte string needs an even digit count");
    std::vector<std::uint8_t> out;
    out.reserve(s.size() / 2);
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw InputError(kModule, "bad hex digit in extension");
    };
    for (std::size_t i = 0; i < s.size(); i += 2)
        out.push_back(static_cast<std::uint8_t>((nibble(s[i]) << 4) | nibble(s[i + 1])));
    return out;
}

}  // namespace

std::string to_string(AttackKind kind) {
    switch (kind) {
        case AttackKind::kInverse: return "inverse";
        case AttackKind::kLowercase: return "lowercase";
        case AttackKind::kUppercase: return "uppercase";
        case AttackKind::kRandomInsert: return "random_insert";
        case AttackKind::kMalleability: return "malleability";
    }
    return "?";
}

AttackKind attack_kind_from_string(const std::string& s) {
    if (s == "inverse") return AttackKind::kInverse;
    if (s == "lowercase") return AttackKind::kLowercase;
    if (s == "uppercase") return AttackKind::kUppercase;
    if (s == "random_insert" || s == "random") return AttackKind::kRandomInsert;
    if (s == "malleability") return AttackKind::kMalleability;
    throw InputError(kModule, "unknown attack kind '" + s + "'");
}

std::vector<std::uint8_t> inverse_attack(std::span<const std::uint8_t> ct) {
    std::vector<std::uint8_t> out(ct.begin(), ct.end());
    for (std::uint8_t& b : out)
        if (b == 0x30) b = 0x31;
    return out;
}

std::vector<std::uint8_t> lowercase_attack(std::span<const std::uint8_t> ct) {
    return map_bytes(ct, 0x41, 0x5A, +0x20);
}

std::vector<std::uint8_t> uppercase_attack(std::span<const std::uint8_t> ct) {
    return map_bytes(ct, 0x61, 0x7A, -0x20);
}

std::vector<std::uint8_t> random_insert_attack(std::span<const std::uint8_t> ct,
                                               std::uint32_t count, std::uint64_t seed) {
    if (count < 1) throw InputError(kModule, "insertion count must be >= 1");
    if (std::uint64_t(count) > ct.size() + 1)
        throw InputError(kModule, "insertion count exceeds available positions");

    SplitMix64 rng(seed);
    std::set<std::uint64_t> positions;
    while (positions.size() < count) positions.insert(rng.next_below(ct.size() + 1));
    std::vector<std::uint8_t> values;
    values.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) values.push_back(rng.next_byte());

    std::vector<std::uint8_t> out;
    out.reserve(ct.size() + count);
    std::size_t vi = 0;
    auto pos = positions.begin();
    for (std::size_t i = 0; i <= ct.size(); ++i) {
        if (pos != positions.end() && *pos == i) {
            out.push_back(values[vi++]);
            ++pos;
        }
        if (i < ct.size()) out.push_back(ct[i]);
    }
    return out;
}

std::vector<std::uint8_t> malleability_attack(std::span<const std::uint8_t> ct,
                                              std::span<const std::uint8_t> extension,
                                              std::size_t offset) {
    if (extension.empty()) throw InputError(kModule, "malleability extension must be nonempty");
    if (offset > ct.size()) throw InputError(kModule, "malleability offset out of range");
    std::vector<std::uint8_t> out;
    out.reserve(ct.size() + extension.size());
    out.insert(out.end(), ct.begin(), ct.begin() + static_cast<std::ptrdiff_t>(offset));
    out.insert(out.end(), extension.begin(), extension.end());
    out.insert(out.end(), ct.begin() + static_cast<std::ptrdiff_t>(offset), ct.end());
    return out;
}

AttackSpec AttackSpec::parse(std::string_view text) {
    AttackSpec spec;
    const auto at = text.find('@');
    if (at == std::string_view::npos)
        throw InputError(kModule, "attack spec needs '@frames' (e.g. inverse@all)");
    std::string_view head = text.substr(0, at);
    std::string_view frames = text.substr(at + 1);

    std::string_view params;
    const auto colon = head.find(':');
    if (colon != std::string_view::npos) {
        params = head.substr(colon + 1);
        head = head.substr(0, colon);
    }
    spec.kind = attack_kind_from_string(std::string(head));

    while (!params.empty()) {
        const auto comma = params.find(',');
        std::string_view kv = params.substr(0, comma);
        params = comma == std::string_view::npos ? std::string_view() : params.substr(comma + 1);
        const auto eq = kv.find('=');
        if (eq == std::string_view::npos)
            throw InputError(kModule, "attack param must be key=value: '" + std::string(kv) + "'");
        const std::string_view key = kv.substr(0, eq);
        const std::string_view value = kv.substr(eq + 1);
        if (key == "count")
            spec.insert_count = static_cast<std::uint32_t>(parse_u64(value, "count"));
        else if (key == "seed")
            spec.rng_seed = parse_u64(value, "seed");
        else if (key == "ext")
            spec.extension = parse_hex_bytes(value);
        else if (key == "offset")
            spec.offset = static_cast<std::size_t>(parse_u64(value, "offset"));
        else
            throw InputError(kModule, "unknown attack param '" + std::string(key) + "'");
    }

    if (frames == "all") {
        spec.frames = std::nullopt;
    } else {
        std::vector<std::uint32_t> idx;
        while (!frames.empty()) {
            const auto comma = frames.find(',');
            const std::string_view tok = frames.substr(0, comma);
            frames = comma == std::string_view::npos ? std::string_view() : frames.substr(comma + 1);
            idx.push_back(static_cast<std::uint32_t>(parse_u64(tok, "frame index")));
        }
        if (idx.empty()) throw InputError(kModule, "empty frame selection in attack spec");
        spec.frames = std::move(idx);
    }
    spec.validate();
    return spec;
}

void AttackSpec::validate() const {
    if (kind == AttackKind::kRandomInsert && insert_count < 1)
        throw InputError(kModule, "random_insert count must be >= 1");
    if (kind == AttackKind::kMalleability && extension.empty())
        throw InputError(kModule, "malleability attack needs a nonempty ext= parameter");
}

EncryptedContainer apply_attack(const EncryptedContainer& container, const AttackSpec& spec) {
    spec.validate();
    if (container.header.stream != StreamKind::kForeground)
        throw InputError(kModule, "attacks target the FG container");

    std::set<std::uint32_t> targets;
    if (spec.frames) {
        for (std::uint32_t f : *spec.frames) {
            if (f >= container.header.frame_count)
                throw InputError(kModule, "attack targets missing frame " + std::to_string(f));
            targets.insert(f);
        }
    }

    EncryptedContainer out = container;
    for (FgRecord& rec : out.fg_records) {
        if (spec.frames && !targets.count(rec.frame_index)) continue;
        switch (spec.kind) {
            case AttackKind::kInverse:
                rec.ciphertext = inverse_attack(rec.ciphertext);
                break;
            case AttackKind::kLowercase:
                rec.ciphertext = lowercase_attack(rec.ciphertext);
                break;
            case AttackKind::kUppercase:
                rec.ciphertext = uppercase_attack(rec.ciphertext);
                break;
            case AttackKind::kRandomInsert:
                // Per-frame seed offset keeps positions independent across frames.
                rec.ciphertext =
                    random_insert_attack(rec.ciphertext, spec.insert_count,
                                         spec.rng_seed + rec.frame_index);
                break;
            case AttackKind::kMalleability:
                rec.ciphertext = malleability_attack(rec.ciphertext, spec.extension, spec.offset);
                break;
        }
    }
    return out;
}

AttackOutcome classify_outcome(const Frame& original, const Frame& attacked_decrypted,
                               double ssim_threshold) {
    if (original.width != attacked_decrypted.width || original.height != attacked_decrypted.height)
        throw InputError(kModule, "dimension mismatch between original and attacked frames");

    const GrayFrame go = to_gray(original);
    const GrayFrame ga = to_gray(attacked_decrypted);

    AttackOutcome outcome;
    outcome.delta.mse = mse(go, ga);
    outcome.delta.ssim = ssim(go, ga);
    outcome.delta.entropy_delta = entropy(ga) - entropy(go);
    outcome.detectable = outcome.delta.ssim < ssim_threshold;
    outcome.successful = !outcome.detectable;
    return outcome;
}

std::size_t count_altered_bytes(std::span<const std::uint8_t> before,
                                std::span<const std::uint8_t> after) {
    const std::size_t n = std::min(before.size(), after.size());
    std::size_t altered = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (before[i] != after[i]) ++altered;
    return altered;
}

}  // namespace demis
