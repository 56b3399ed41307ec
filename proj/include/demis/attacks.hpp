#ifndef DEMIS_ATTACKS_HPP
#define DEMIS_ATTACKS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "demis/container.hpp"
#include "demis/frame.hpp"

namespace demis {

// The five ciphertext attacks, applied to raw FG ciphertext byte streams.
// The character-class attacks read bytes as ASCII codes: '0' is 0x30,
// uppercase letters are [0x41,0x5A], lowercase are [0x61,0x7A].
enum class AttackKind { kInverse, kLowercase, kUppercase, kRandomInsert, kMalleability };

std::string to_string(AttackKind kind);
AttackKind attack_kind_from_string(const std::string& s);

// '0' bytes (0x30) become '1' (0x31). A no-op on streams without 0x30, which
// is why this attack often leaves no measurable damage.
std::vector<std::uint8_t> inverse_attack(std::span<const std::uint8_t> ct);

// A-Z -> a-z (byte + 0x20).
std::vector<std::uint8_t> lowercase_attack(std::span<const std::uint8_t> ct);

// a-z -> A-Z (byte - 0x20).
std::vector<std::uint8_t> uppercase_attack(std::span<const std::uint8_t> ct);

// Inserts `count` random bytes at distinct random positions. Draws come from
// SplitMix64(seed): first the positions (next() % (len+1), redrawn until
// distinct), then the values (low byte of next()); positions apply in
// ascending order paired with values in draw order.
std::vector<std::uint8_t> random_insert_attack(std::span<const std::uint8_t> ct,
                                               std::uint32_t count, std::uint64_t seed);

// Splices `extension` into the stream at `offset`. Offset 0 prepends, which
// misaligns every later byte against the keystream; offset == length appends.
std::vector<std::uint8_t> malleability_attack(std::span<const std::uint8_t> ct,
                                              std::span<const std::uint8_t> extension,
                                              std::size_t offset);

// One attack directive: `kind[:param=value,...]@frames` where frames is
// `all` or a comma-separated index list. Params: count/seed (random_insert),
// ext (hex bytes) and offset (malleability).
struct AttackSpec {
    AttackKind kind = AttackKind::kInverse;
    std::uint32_t insert_count = 8;
    std::uint64_t rng_seed = 0;
    std::vector<std::uint8_t> extension;
    std::size_t offset = 0;
    std::optional<std::vector<std::uint32_t>> frames;  // nullopt = all frames

    static AttackSpec parse(std::string_view text);

    void validate() const;
};

// Applies the attack to the targeted FG records, updating ciphertext lengths.
// Masks and untargeted records are untouched.
EncryptedContainer apply_attack(const EncryptedContainer& container, const AttackSpec& spec);

struct MetricsDelta {
    double mse = 0.0;
    double ssim = 0.0;
    double entropy_delta = 0.0;  // entropy(attacked) - entropy(original)
};

struct AttackOutcome {
    AttackKind kind = AttackKind::kInverse;
    std::size_t bytes_altered = 0;
    std::size_t bytes_inserted = 0;
    bool detectable = false;
    bool successful = false;  // always the negation of detectable
    MetricsDelta delta;
};

// An attack counts as detectable when SSIM(original, attacked) drops below
// the threshold; an undetectable attack is the successful one.
AttackOutcome classify_outcome(const Frame& original, const Frame& attacked_decrypted,
                               double ssim_threshold = 0.9);

// Counts byte positions where the two streams differ (up to the shorter one).
std::size_t count_altered_bytes(std::span<const std::uint8_t> before,
                                std::span<const std::uint8_t> after);

}  // namespace demis

#endif
