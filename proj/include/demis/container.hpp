#ifndef DEMIS_CONTAINER_HPP
#define DEMIS_CONTAINER_HPP

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "demis/frame.hpp"
#include "demis/keyring.hpp"
#include "demis/roi.hpp"

namespace demis {

// On-disk container layout, all integers little-endian:
//   header: magic "DEMISEVC" (8) | version u16 | width u32 | height u32 |
//           fps u8 | frame_count u32 | stream_kind u8
//   FG record: frame_index u32 | mask_rle_len u32 | mask RLE | ct_len u32 | ct
//   BG record: frame_index u32 | encrypted u8 | data_len u32 | data
// The FG and BG streams are written to separate files on purpose; decryption
// requires both.

inline constexpr char kContainerMagic[8] = {'D', 'E', 'M', 'I', 'S', 'E', 'V', 'C'};
inline constexpr std::uint16_t kContainerVersion = 1;

struct ContainerHeader {
    std::uint16_t version = kContainerVersion;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint8_t fps = 1;
    std::uint32_t frame_count = 0;
    StreamKind stream = StreamKind::kForeground;
};

struct FgRecord {
    std::uint32_t frame_index = 0;
    RoiMask mask;
    std::vector<std::uint8_t> ciphertext;
};

struct BgRecord {
    std::uint32_t frame_index = 0;
    bool encrypted = false;
    std::vector<std::uint8_t> data;  // raw or encrypted RGB bytes
};

struct EncryptedContainer {
    ContainerHeader header;
    std::vector<FgRecord> fg_records;  // used when header.stream == kForeground
    std::vector<BgRecord> bg_records;  // used when header.stream == kBackground

    void validate() const;
};

std::vector<std::uint8_t> encode_container(const EncryptedContainer& container);
EncryptedContainer decode_container(std::span<const std::uint8_t> bytes);
void write_container(const EncryptedContainer& container, const std::filesystem::path& file);
EncryptedContainer read_container(const std::filesystem::path& file);

// Splits every frame with its mask, encrypts the FG payloads (and optionally
// the BG frames), and returns the FG and BG containers. Counter starts at 1
// for every per-frame stream.
std::pair<EncryptedContainer, EncryptedContainer> encrypt_sequence(
    const FrameSequence& seq, const std::vector<RoiMask>& masks, const KeyRing& keys,
    bool encrypt_bg);

struct DecryptResult {
    FrameSequence sequence;
    std::vector<MergeFlags> flags;  // per-frame deficit/surplus from reassembly

    bool any_deficit() const;
    bool any_surplus() const;
};

// Reassembles frames from a FG/BG container pair. Payload length anomalies
// (attacked streams) surface through the flags and never abort decryption.
DecryptResult decrypt_containers(const EncryptedContainer& fg, const EncryptedContainer& bg,
                                 const KeyRing& keys);

}  // namespace demis

#endif
