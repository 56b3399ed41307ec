#include "demis/frame_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "demis/errors.hpp"

namespace fs = std::filesystem;

namespace demis {

namespace {

constexpr const char* kModule = "frame_store";

[[noreturn]] void fail(const std::string& msg) { throw InputError(kModule, msg); }

const std::regex kFrameFileRe(R"(^frame_(\d+)\.(ppm|png)$)");

// ---- PPM (binary P6, maxval 255) ----

// Skips whitespace and '#' comments between header tokens.
std::string next_ppm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
        } else if (!std::isspace(c)) {
            tok.push_back(static_cast<char>(c));
            while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#')
                tok.push_back(static_cast<char>(in.get()));
            return tok;
        }
    }
    return tok;
}

Frame read_ppm(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) fail("cannot open " + file.string());

    if (next_ppm_token(in) != "P6") fail("not a binary PPM (P6): " + file.string());
    const std::string ws = next_ppm_token(in);
    const std::string hs = next_ppm_token(in);
    const std::string ms = next_ppm_token(in);
    unsigned long w = 0, h = 0, maxval = 0;
    try {
        w = std::stoul(ws);
        h = std::stoul(hs);
        maxval = std::stoul(ms);
    } catch (const std::exception&) {
        fail("malformed PPM header in " + file.string());
    }
    if (maxval != 255) fail("unsupported PPM maxval " + ms + " in " + file.string());
    if (w == 0 || h == 0) fail("degenerate PPM dimensions in " + file.string());
    // Exactly one whitespace byte separates the maxval from the raster.
    const int sep = in.get();
    if (sep == EOF || !std::isspace(sep)) fail("malformed PPM header in " + file.string());
    Frame frame(static_cast<std::uint32_t>(w), static_cast<std::uint32_t>(h));
    in.read(reinterpret_cast<char*>(frame.pixels.data()),
            static_cast<std::streamsize>(frame.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(frame.pixels.size()))
        fail("truncated PPM raster in " + file.string());
    return frame;
}

void write_ppm(const Frame& frame, const fs::path& file) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) fail("cannot write " + file.string());
    out << "P6\n" << frame.width << " " << frame.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.pixels.data()),
              static_cast<std::streamsize>(frame.pixels.size()));
    if (!out) fail("I/O failure writing " + file.string());
}

// ---- PNG (libpng, 8-bit RGB) ----

Frame read_png(const fs::path& file) {
    std::FILE* fp = std::fopen(file.string().c_str(), "rb");
    if (!fp) fail("cannot open " + file.string());

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        fail("libpng init failed for " + file.string());
    }
    Frame frame;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        fail("undecodable PNG: " + file.string());
    }
    png_init_io(png, fp);
    png_read_info(png, info);

    // Normalize everything to 8-bit RGB.
    png_set_expand(png);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_gray_to_rgb(png);
    png_read_update_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    if (w == 0 || h == 0 || png_get_channels(png, info) != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        fail("unsupported PNG layout in " + file.string());
    }
    frame = Frame(w, h);
    std::vector<png_bytep> rows(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = frame.pixels.data() + std::size_t(y) * w * 3;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    return frame;
}

void write_png(const Frame& frame, const fs::path& file) {
    std::FILE* fp = std::fopen(file.string().c_str(), "wb");
    if (!fp) fail("cannot write " + file.string());

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        fail("libpng init failed for " + file.string());
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        fail("I/O failure writing " + file.string());
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, frame.width, frame.height, 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_const_bytep> rows(frame.height);
    for (png_uint_32 y = 0; y < frame.height; ++y)
        rows[y] = frame.pixels.data() + std::size_t(y) * frame.width * 3;
    png_write_image(png, const_cast<png_bytepp>(rows.data()));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

std::string frame_file_name(std::size_t index, ImageFormat fmt) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "frame_%06zu.%s", index, extension_of(fmt).c_str());
    return buf;
}

}  // namespace

void Frame::validate() const {
    if (width < 1 || height < 1) throw InputError(kModule, "frame dimensions must be >= 1");
    if (pixels.size() != pixel_count() * 3)
        throw InputError(kModule, "pixel buffer length does not match width*height*3");
}

void FrameSequence::validate() const {
    if (frames.empty()) throw InputError(kModule, "sequence has zero frames");
    if (fps < 1) throw InputError(kModule, "fps must be positive");
    for (const Frame& f : frames) {
        f.validate();
        if (f.width != frames.front().width || f.height != frames.front().height)
            throw InputError(kModule, "mixed resolutions in sequence '" + name + "'");
    }
}

std::string to_string(BackgroundKind kind) {
    return kind == BackgroundKind::kStatic ? "static" : "dynamic";
}

BackgroundKind background_kind_from_string(const std::string& s) {
    if (s == "static") return BackgroundKind::kStatic;
    if (s == "dynamic") return BackgroundKind::kDynamic;
    fail("unknown background kind '" + s + "'");
}

std::string extension_of(ImageFormat fmt) { return fmt == ImageFormat::kPpm ? "ppm" : "png"; }

ImageFormat image_format_from_string(const std::string& s) {
    if (s == "ppm") return ImageFormat::kPpm;
    if (s == "png") return ImageFormat::kPng;
    fail("unknown image format '" + s + "' (expected ppm or png)");
}

Frame read_image(const fs::path& file, ImageFormat fmt) {
    return fmt == ImageFormat::kPpm ? read_ppm(file) : read_png(file);
}

void write_image(const Frame& frame, const fs::path& file, ImageFormat fmt) {
    frame.validate();
    if (fmt == ImageFormat::kPpm)
        write_ppm(frame, file);
    else
        write_png(frame, file);
}

FrameSequence load_sequence(const fs::path& dir, ImageFormat fmt) {
    if (!fs::exists(dir)) fail("missing path " + dir.string());
    if (!fs::is_directory(dir)) fail(dir.string() + " is not a directory");

    // Index -> filename; the map gives deterministic order regardless of how
    // the directory iterates.
    std::map<unsigned long, fs::path> indexed;
    const std::string want_ext = extension_of(fmt);
    for (const auto& ent : fs::directory_iterator(dir)) {
        std::smatch m;
        const std::string name = ent.path().filename().string();
        if (!std::regex_match(name, m, kFrameFileRe)) continue;
        if (m[2].str() != want_ext) continue;
        const unsigned long index = std::stoul(m[1].str());
        if (!indexed.emplace(index, ent.path()).second)
            fail("duplicate frame index in " + name);
    }
    if (indexed.empty()) fail("zero frames in " + dir.string());

    FrameSequence seq;
    seq.name = dir.filename().string();
    for (const auto& [index, file] : indexed) {
        Frame f = read_image(file, fmt);
        if (!seq.frames.empty() &&
            (f.width != seq.frames.front().width || f.height != seq.frames.front().height))
            fail("mixed resolutions: " + file.filename().string());
        seq.frames.push_back(std::move(f));
    }
    seq.validate();
    return seq;
}

FrameSequence load_sequence(const ManifestEntry& entry, ImageFormat fmt) {
    FrameSequence seq = load_sequence(entry.path, fmt);
    seq.name = entry.name;
    seq.fps = entry.fps;
    seq.background = entry.background;
    if (seq.frames.size() != entry.frame_count)
        fail("manifest entry '" + entry.name + "' declares " + std::to_string(entry.frame_count) +
             " frames but " + std::to_string(seq.frames.size()) + " were loaded");
    if (seq.width() != entry.width || seq.height() != entry.height)
        fail("manifest entry '" + entry.name + "' resolution mismatch");
    return seq;
}

void write_sequence(const FrameSequence& seq, const fs::path& dir, ImageFormat fmt) {
    seq.validate();
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail("cannot create " + dir.string() + ": " + ec.message());
    for (std::size_t i = 0; i < seq.frames.size(); ++i)
        write_image(seq.frames[i], dir / frame_file_name(i, fmt), fmt);
}

std::optional<ImageFormat> detect_sequence_format(const fs::path& dir) {
    if (!fs::is_directory(dir)) return std::nullopt;
    for (const auto& ent : fs::directory_iterator(dir)) {
        std::smatch m;
        const std::string name = ent.path().filename().string();
        if (std::regex_match(name, m, kFrameFileRe))
            return m[2].str() == "ppm" ? ImageFormat::kPpm : ImageFormat::kPng;
    }
    return std::nullopt;
}

std::size_t count_frame_files(const fs::path& dir) {
    if (!fs::is_directory(dir)) return 0;
    std::size_t n = 0;
    for (const auto& ent : fs::directory_iterator(dir)) {
        const std::string name = ent.path().filename().string();
        if (std::regex_match(name, kFrameFileRe)) ++n;
    }
    return n;
}

DatasetManifest load_manifest(const fs::path& file) {
    std::ifstream in(file);
    if (!in) fail("cannot open manifest " + file.string());
    const fs::path base = file.has_parent_path() ? file.parent_path() : fs::path(".");

    DatasetManifest manifest;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);

        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 7)
            fail("manifest line " + std::to_string(lineno) + ": expected 7 comma-separated fields");

        ManifestEntry entry;
        entry.name = fields[0];
        entry.background = background_kind_from_string(fields[1]);
        try {
            entry.width = static_cast<std::uint32_t>(std::stoul(fields[2]));
            entry.height = static_cast<std::uint32_t>(std::stoul(fields[3]));
            entry.fps = static_cast<std::uint32_t>(std::stoul(fields[4]));
            entry.frame_count = static_cast<std::uint32_t>(std::stoul(fields[5]));
        } catch (const std::exception&) {
            fail("manifest line " + std::to_string(lineno) + ": bad numeric field");
        }
        entry.path = fs::path(fields[6]).is_absolute() ? fs::path(fields[6]) : base / fields[6];

        for (const ManifestEntry& prev : manifest.entries)
            if (prev.name == entry.name) fail("duplicate manifest name '" + entry.name + "'");
        if (!fs::exists(entry.path))
            fail("manifest entry '" + entry.name + "': path " + entry.path.string() + " not found");
        const std::size_t actual = count_frame_files(entry.path);
        if (actual != entry.frame_count)
            fail("manifest entry '" + entry.name + "': declares " +
                 std::to_string(entry.frame_count) + " frames, directory has " +
                 std::to_string(actual));
        manifest.entries.push_back(std::move(entry));
    }
    return manifest;
}

void write_manifest(const DatasetManifest& manifest, const fs::path& file) {
    std::ofstream out(file, std::ios::trunc);
    if (!out) fail("cannot write manifest " + file.string());
    out << "# name,background,width,height,fps,frame_count,path\n";
    for (const ManifestEntry& e : manifest.entries)
        out << e.name << ',' << to_string(e.background) << ',' << e.width << ',' << e.height << ','
            << e.fps << ',' << e.frame_count << ',' << e.path.string() << '\n';
}

}  // namespace demis
