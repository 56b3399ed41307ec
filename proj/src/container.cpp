#include "demis/container.hpp"

#include <cstring>
#include <fstream>

#include "demis/errors.hpp"

namespace demis {

namespace {

constexpr const char* kModule = "selective_crypto";

class Writer {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u16(std::uint16_t v) {
        buf_.push_back(static_cast<std::uint8_t>(v));
        buf_.push_back(static_cast<std::uint8_t>(v >> 8));
    }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void bytes(std::span<const std::uint8_t> data) { buf_.insert(buf_.end(), data.begin(), data.end()); }

    std::vector<std::uint8_t> take() { return std::move(buf_); }

private:
    std::vector<std::uint8_t> buf_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint8_t u8() { return take(1)[0]; }
    std::uint16_t u16() {
        const auto b = take(2);
        return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    }
    std::uint32_t u32() {
        const auto b = take(4);
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    }
    std::span<const std::uint8_t> take(std::size_t n) {
        if (off_ + n > data_.size()) throw InputError(kModule, "truncated container");
        auto s = data_.subspan(off_, n);
        off_ += n;
        return s;
    }
    bool done() const { return off_ == data_.size(); }

private:
    std::span<const std::uint8_t> data_;
    std::size_t off_ = 0;
};

}  // namespace

void EncryptedContainer::validate() const {
    const bool fg = header.stream == StreamKind::kForeground;
    const std::size_t records = fg ? fg_records.size() : bg_records.size();
    if (records != header.frame_count)
        throw InputError(kModule, "frame_count does not match record count");
    if (fg && !bg_records.empty())
        throw InputError(kModule, "FG container holds BG records");
    if (!fg && !fg_records.empty())
        throw InputError(kModule, "BG container holds FG records");
}

std::vector<std::uint8_t> encode_container(const EncryptedContainer& container) {
    container.validate();
    Writer w;
    w.bytes(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(kContainerMagic), sizeof kContainerMagic));
    w.u16(container.header.version);
    w.u32(container.header.width);
    w.u32(container.header.height);
    w.u8(container.header.fps);
    w.u32(container.header.frame_count);
    w.u8(static_cast<std::uint8_t>(container.header.stream));

    if (container.header.stream == StreamKind::kForeground) {
        for (const FgRecord& rec : container.fg_records) {
            const auto rle = mask_to_rle(rec.mask);
            w.u32(rec.frame_index);
            w.u32(static_cast<std::uint32_t>(rle.size()));
            w.bytes(rle);
            w.u32(static_cast<std::uint32_t>(rec.ciphertext.size()));
            w.bytes(rec.ciphertext);
        }
    } else {
        for (const BgRecord& rec : container.bg_records) {
            w.u32(rec.frame_index);
            w.u8(rec.encrypted ? 1 : 0);
            w.u32(static_cast<std::uint32_t>(rec.data.size()));
            w.bytes(rec.data);
        }
    }
    return w.take();
}

EncryptedContainer decode_container(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    const auto magic = r.take(8);
    if (std::memcmp(magic.data(), kContainerMagic, 8) != 0)
        throw InputError(kModule, "bad container magic");

    EncryptedContainer c;
    c.header.version = r.u16();
    if (c.header.version != kContainerVersion)
        throw InputError(kModule, "unsupported container version");
    c.header.width = r.u32();
    c.header.height = r.u32();
    c.header.fps = r.u8();
    c.header.frame_count = r.u32();
    const std::uint8_t kind = r.u8();
    if (kind > 1) throw InputError(kModule, "bad stream kind");
    c.header.stream = static_cast<StreamKind>(kind);

    for (std::uint32_t i = 0; i < c.header.frame_count; ++i) {
        if (c.header.stream == StreamKind::kForeground) {
            FgRecord rec;
            rec.frame_index = r.u32();
            const std::uint32_t rle_len = r.u32();
            rec.mask = mask_from_rle(r.take(rle_len));
            const std::uint32_t ct_len = r.u32();
            const auto ct = r.take(ct_len);
            rec.ciphertext.assign(ct.begin(), ct.end());
            c.fg_records.push_back(std::move(rec));
        } else {
            BgRecord rec;
            rec.frame_index = r.u32();
            rec.encrypted = r.u8() != 0;
            const std::uint32_t len = r.u32();
            const auto data = r.take(len);
            rec.data.assign(data.begin(), data.end());
            c.bg_records.push_back(std::move(rec));
        }
    }
    if (!r.done()) throw InputError(kModule, "trailing bytes after last record");
    return c;
}

void write_container(const EncryptedContainer& container, const std::filesystem::path& file) {
    const auto bytes = encode_container(container);
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError(kModule, "cannot write " + file.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw InputError(kModule, "I/O failure writing " + file.string());
}

EncryptedContainer read_container(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw InputError(kModule, "cannot open " + file.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return decode_container(bytes);
}

std::pair<EncryptedContainer, EncryptedContainer> encrypt_sequence(
    const FrameSequence& seq, const std::vector<RoiMask>& masks, const KeyRing& keys,
    bool encrypt_bg) {
    seq.validate();
    if (masks.size() != seq.frames.size())
        throw InputError(kModule, "mask count does not match frame count");
    if (seq.fps > 255) throw InputError(kModule, "container fps is limited to 255");

    ContainerHeader header;
    header.width = seq.width();
    header.height = seq.height();
    header.fps = static_cast<std::uint8_t>(seq.fps);
    header.frame_count = static_cast<std::uint32_t>(seq.frames.size());

    EncryptedContainer fg;
    fg.header = header;
    fg.header.stream = StreamKind::kForeground;
    EncryptedContainer bg;
    bg.header = header;
    bg.header.stream = StreamKind::kBackground;

    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        if (masks[i].width != header.width || masks[i].height != header.height)
            throw InputError(kModule, "mask dimension mismatch at frame " + std::to_string(i));
        auto [payload, bg_frame] = split_frame(seq.frames[i], masks[i]);

        FgRecord frec;
        frec.frame_index = static_cast<std::uint32_t>(i);
        frec.mask = masks[i];
        frec.ciphertext =
            chacha::xor_stream(keys.fg_key, frame_nonce(StreamKind::kForeground, i), 1, payload.bytes);
        fg.fg_records.push_back(std::move(frec));

        BgRecord brec;
        brec.frame_index = static_cast<std::uint32_t>(i);
        brec.encrypted = encrypt_bg;
        brec.data = encrypt_bg
                        ? chacha::xor_stream(keys.bg_key, frame_nonce(StreamKind::kBackground, i), 1,
                                             bg_frame.pixels)
                        : std::move(bg_frame.pixels);
        bg.bg_records.push_back(std::move(brec));
    }
    return {std::move(fg), std::move(bg)};
}

bool DecryptResult::any_deficit() const {
    for (const MergeFlags& f : flags)
        if (f.deficit) return true;
    return false;
}

bool DecryptResult::any_surplus() const {
    for (const MergeFlags& f : flags)
        if (f.surplus) return true;
    return false;
}

DecryptResult decrypt_containers(const EncryptedContainer& fg, const EncryptedContainer& bg,
                                 const KeyRing& keys) {
    fg.validate();
    bg.validate();
    if (fg.header.stream != StreamKind::kForeground || bg.header.stream != StreamKind::kBackground)
        throw InputError(kModule, "containers passed in the wrong order");
    if (fg.header.width != bg.header.width || fg.header.height != bg.header.height ||
        fg.header.frame_count != bg.header.frame_count || fg.header.fps != bg.header.fps)
        throw InputError(kModule, "FG/BG container headers disagree");

    DecryptResult result;
    result.sequence.fps = fg.header.fps;
    result.sequence.name = "decrypted";

    const std::size_t frame_bytes = std::size_t(fg.header.width) * fg.header.height * 3;
    for (std::uint32_t i = 0; i < fg.header.frame_count; ++i) {
        const FgRecord& frec = fg.fg_records[i];
        const BgRecord& brec = bg.bg_records[i];
        if (frec.frame_index != i || brec.frame_index != i)
            throw InputError(kModule, "record order does not match frame indices");
        if (frec.mask.width != fg.header.width || frec.mask.height != fg.header.height)
            throw InputError(kModule, "mask dimension mismatch at frame " + std::to_string(i));

        std::vector<std::uint8_t> bg_pixels =
            brec.encrypted
                ? chacha::xor_stream(keys.bg_key, frame_nonce(StreamKind::kBackground, i), 1, brec.data)
                : brec.data;
        if (bg_pixels.size() != frame_bytes)
            throw InputError(kModule, "BG record length mismatch at frame " + std::to_string(i));
        Frame bg_frame(fg.header.width, fg.header.height);
        bg_frame.pixels = std::move(bg_pixels);

        const std::vector<std::uint8_t> payload = chacha::xor_stream(
            keys.fg_key, frame_nonce(StreamKind::kForeground, i), 1, frec.ciphertext);
        auto [frame, flags] = merge_frame(payload, frec.mask, bg_frame);
        result.sequence.frames.push_back(std::move(frame));
        result.flags.push_back(flags);
    }
    result.sequence.validate();
    return result;
}

}  // namespace demis
