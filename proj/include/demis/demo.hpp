#ifndef DEMIS_DEMO_HPP
#define DEMIS_DEMO_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "demis/attacks.hpp"
#include "demis/frame.hpp"
#include "demis/metrics.hpp"

namespace demis {

// Synthetic surveillance scene: a background of dark per-pixel sensor noise
// and a bright noise-textured object that enters after a warmup period and
// slides across the frame. Deterministic for a given seed and kind.
FrameSequence make_demo_sequence(BackgroundKind kind, std::uint64_t seed);

// Frame indices the demo selects for metrics (object fully inside, model warm).
std::vector<std::uint32_t> demo_metric_frames();

struct DemoSequenceResult {
    std::string name;
    BackgroundKind background = BackgroundKind::kStatic;
    double mean_entropy_original = 0.0;
    std::map<AttackKind, MetricReport> attack_reports;
};

struct DemoResult {
    std::uint64_t seed = 0;
    std::vector<DemoSequenceResult> sequences;
};

// Runs the whole pipeline on one static and one dynamic synthetic sequence:
// segmentation, selective encryption, all five attacks, decryption, metric
// tables, histograms with SVG charts, and the threat report. Every output
// lands under `out_dir`; identical seeds produce byte-identical trees.
DemoResult run_demo(const std::filesystem::path& out_dir, std::uint64_t seed);

}  // namespace demis

#endif
