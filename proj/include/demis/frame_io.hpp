#ifndef DEMIS_FRAME_IO_HPP
#define DEMIS_FRAME_IO_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "demis/frame.hpp"

namespace demis {

enum class ImageFormat { kPpm, kPng };

std::string extension_of(ImageFormat fmt);
ImageFormat image_format_from_string(const std::string& s);

// Single-image codecs. PPM is binary P6 with maxval 255; PNG is 8-bit RGB.
Frame read_image(const std::filesystem::path& file, ImageFormat fmt);
void write_image(const Frame& frame, const std::filesystem::path& file, ImageFormat fmt);

// Sequences are directories of frames named frame_<zero-padded-index>.<ext>,
// index starting at 0. Frame order always derives from the parsed index, never
// from directory listing order.
FrameSequence load_sequence(const std::filesystem::path& dir, ImageFormat fmt);
FrameSequence load_sequence(const ManifestEntry& entry, ImageFormat fmt);
void write_sequence(const FrameSequence& seq, const std::filesystem::path& dir, ImageFormat fmt);

// Peeks at the directory to decide between PPM and PNG frames.
std::optional<ImageFormat> detect_sequence_format(const std::filesystem::path& dir);

// Text manifest, one record per line:
//   name,background,width,height,fps,frame_count,path
// '#' starts a comment. Paths resolve relative to the manifest's directory.
// Each entry's path must exist and contain exactly frame_count frame files.
DatasetManifest load_manifest(const std::filesystem::path& file);
void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& file);

// Number of frame_*.{ppm,png} files in a directory.
std::size_t count_frame_files(const std::filesystem::path& dir);

}  // namespace demis

#endif
