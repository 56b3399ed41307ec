#include "demis/demo.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "demis/adt.hpp"
#include "demis/container.hpp"
#include "demis/errors.hpp"
#include "demis/fixtures.hpp"
#include "demis/frame_io.hpp"
#include "demis/gmm.hpp"
#include "demis/prng.hpp"
#include "demis/report.hpp"
#include "demis/roi.hpp"

namespace fs = std::filesystem;

namespace demis {

namespace {

constexpr std::uint32_t kSize = 128;
constexpr std::uint32_t kObject = 80;
constexpr std::uint32_t kWarmupFrames = 12;
constexpr std::uint32_t kTotalFrames = 33;

const AttackKind kAllAttacks[] = {AttackKind::kInverse, AttackKind::kLowercase,
                                  AttackKind::kUppercase, AttackKind::kRandomInsert,
                                  AttackKind::kMalleability};

const char* attack_column(AttackKind kind) {
    switch (kind) {
        case AttackKind::kInverse: return "Inverse attack";
        case AttackKind::kLowercase: return "Lowercase attack";
        case AttackKind::kUppercase: return "Uppercase attack";
        case AttackKind::kRandomInsert: return "Random attack";
        case AttackKind::kMalleability: return "Malleability attack";
    }
    return "?";
}

void object_position(BackgroundKind kind, std::uint32_t frame, std::uint32_t& ox,
                     std::uint32_t& oy) {
    const std::uint32_t t = frame - kWarmupFrames;
    ox = 8 + 2 * t;
    oy = kind == BackgroundKind::kStatic ? 24 : 8 + t;
}

void write_text(const fs::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::trunc);
    if (!out) throw InputError("cli", "cannot write " + file.string());
    out << text;
}

}  // namespace

FrameSequence make_demo_sequence(BackgroundKind kind, std::uint64_t seed) {
    // Separate deterministic streams for background, texture and nothing else.
    SplitMix64 bg_rng(seed * 2654435761ULL + (kind == BackgroundKind::kStatic ? 1 : 2));

    // Dark background noise, equal channels, one value per pixel.
    std::vector<std::uint8_t> bg_values(std::size_t(kSize) * kSize);
    for (auto& v : bg_values) v = static_cast<std::uint8_t>(bg_rng.next_below(128));

    // Bright rigid object texture.
    std::vector<std::uint8_t> texture(std::size_t(kObject) * kObject);
    for (auto& v : texture) v = static_cast<std::uint8_t>(128 + bg_rng.next_below(128));

    FrameSequence seq;
    seq.name = kind == BackgroundKind::kStatic ? "synthetic_static" : "synthetic_dynamic";
    seq.fps = 10;
    seq.background = kind;

    for (std::uint32_t t = 0; t < kTotalFrames; ++t) {
        Frame frame(kSize, kSize);
        for (std::uint32_t y = 0; y < kSize; ++y)
            for (std::uint32_t x = 0; x < kSize; ++x) {
                const std::uint8_t v = bg_values[std::size_t(y) * kSize + x];
                std::uint8_t* px = frame.at(x, y);
                px[0] = px[1] = px[2] = v;
            }
        if (t >= kWarmupFrames) {
            std::uint32_t ox, oy;
            object_position(kind, t, ox, oy);
            for (std::uint32_t y = 0; y < kObject; ++y)
                for (std::uint32_t x = 0; x < kObject; ++x) {
                    const std::uint8_t v = texture[std::size_t(y) * kObject + x];
                    std::uint8_t* px = frame.at(ox + x, oy + y);
                    px[0] = px[1] = px[2] = v;
                }
        }
        seq.frames.push_back(std::move(frame));
    }
    return seq;
}

std::vector<std::uint32_t> demo_metric_frames() { return {16, 20, 24, 28, 32}; }

DemoResult run_demo(const fs::path& out_dir, std::uint64_t seed) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw InputError("cli", "cannot create " + out_dir.string());

    const std::vector<std::uint32_t> metric_frames = demo_metric_frames();
    const KeyRing keys = generate_keys(seed);
    save_key_file(keys, out_dir / "keys.txt");

    // Deterministic malleability extension bytes.
    SplitMix64 ext_rng(seed ^ 0x6d616c6cULL);
    std::vector<std::uint8_t> extension(8);
    for (auto& b : extension) b = ext_rng.next_byte();
    std::string ext_hex;
    for (std::uint8_t b : extension) {
        static const char* digits = "0123456789abcdef";
        ext_hex.push_back(digits[b >> 4]);
        ext_hex.push_back(digits[b & 0xF]);
    }

    DemoResult result;
    result.seed = seed;

    DatasetManifest manifest;
    std::vector<AttackTable> tables(3);
    tables[0].title = "Entropy";
    tables[0].columns = {"Original"};
    tables[1].title = "Mean squared error";
    tables[2].title = "SSIM";
    for (AttackKind kind : kAllAttacks) {
        tables[0].columns.push_back(attack_column(kind));
        tables[1].columns.push_back(attack_column(kind));
        tables[2].columns.push_back(attack_column(kind));
    }

    std::ostringstream entropy_csv, mse_csv, ssim_csv;
    entropy_csv << "# seed=" << seed << "\nfile,background,frame,original";
    mse_csv << "# seed=" << seed << "\nfile,background,frame";
    ssim_csv << "# seed=" << seed << "\nfile,background,frame";
    for (AttackKind kind : kAllAttacks) {
        entropy_csv << ',' << to_string(kind);
        mse_csv << ',' << to_string(kind);
        ssim_csv << ',' << to_string(kind);
    }
    entropy_csv << '\n';
    mse_csv << '\n';
    ssim_csv << '\n';

    for (const BackgroundKind kind : {BackgroundKind::kStatic, BackgroundKind::kDynamic}) {
        const FrameSequence seq = make_demo_sequence(kind, seed);
        const fs::path seq_dir = out_dir / seq.name;
        fs::create_directories(seq_dir);
        write_sequence(seq, seq_dir / "original", ImageFormat::kPpm);

        ManifestEntry entry;
        entry.name = seq.name;
        entry.background = kind;
        entry.width = seq.width();
        entry.height = seq.height();
        entry.fps = seq.fps;
        entry.frame_count = static_cast<std::uint32_t>(seq.frames.size());
        entry.path = seq.name + "/original";
        manifest.entries.push_back(entry);

        // Segment: mixture model for the static camera, frame differencing for
        // the dynamic one.
        std::vector<RoiMask> masks;
        if (kind == BackgroundKind::kStatic) {
            GmmParams params;
            params.learning_rate = 0.005;
            GmmModel model(seq.width(), seq.height(), params);
            for (const Frame& f : seq.frames) masks.push_back(model.step(f));
        } else {
            for (std::size_t i = 0; i < seq.frames.size(); ++i) {
                const Frame& prev = seq.frames[i == 0 ? 0 : i - 1];
                masks.push_back(motion_diff_step(prev, seq.frames[i], 16.0, 1));
            }
        }
        fs::create_directories(seq_dir / "masks");
        for (std::size_t i = 0; i < masks.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "frame_%06zu.mask", i);
            const auto rle = mask_to_rle(masks[i]);
            std::ofstream out(seq_dir / "masks" / name, std::ios::binary | std::ios::trunc);
            out.write(reinterpret_cast<const char*>(rle.data()),
                      static_cast<std::streamsize>(rle.size()));
        }

        auto [fg, bg] = encrypt_sequence(seq, masks, keys, /*encrypt_bg=*/false);
        write_container(fg, seq_dir / "fg.evc");
        write_container(bg, seq_dir / "bg.evc");

        const DecryptResult clean = decrypt_containers(fg, bg, keys);
        write_sequence(clean.sequence, seq_dir / "decrypted", ImageFormat::kPpm);

        DemoSequenceResult seq_result;
        seq_result.name = seq.name;
        seq_result.background = kind;

        // Original-frame entropy for the selected frames.
        std::vector<double> orig_entropy;
        for (std::uint32_t f : metric_frames) orig_entropy.push_back(entropy(to_gray(seq.frames[f])));
        double orig_mean = 0;
        for (double e : orig_entropy) orig_mean += e;
        orig_mean /= static_cast<double>(orig_entropy.size());
        seq_result.mean_entropy_original = orig_mean;

        // Histograms of the middle metric frame, original first.
        const std::uint32_t hist_frame = metric_frames[metric_frames.size() / 2];
        const fs::path hist_dir = seq_dir / "histograms";
        fs::create_directories(hist_dir);
        auto emit_histograms = [&](const Frame& frame, const std::string& tag) {
            std::vector<Histogram> hists;
            for (Channel ch : {Channel::kRed, Channel::kGreen, Channel::kBlue})
                hists.push_back(histogram(frame, ch));
            write_text(hist_dir / (tag + ".csv"), histogram_csv(hists));
            for (const Histogram& h : hists)
                write_text(hist_dir / (tag + "_" + to_string(h.channel) + ".svg"),
                           histogram_svg(h, seq.name + " " + tag));
        };
        emit_histograms(seq.frames[hist_frame], "original");

        // Attack the frames that carry foreground payload; warmup frames have
        // empty masks and nothing to inject into.
        std::vector<std::uint32_t> attack_frames;
        for (std::uint32_t f = kWarmupFrames; f < kTotalFrames; ++f) attack_frames.push_back(f);

        std::map<AttackKind, MetricReport> reports;
        for (AttackKind attack : kAllAttacks) {
            AttackSpec spec;
            spec.kind = attack;
            spec.rng_seed = seed;
            spec.frames = attack_frames;
            if (attack == AttackKind::kMalleability) {
                spec.extension = extension;
                spec.offset = 0;
            }
            const EncryptedContainer attacked = apply_attack(fg, spec);
            write_container(attacked, seq_dir / ("fg_" + to_string(attack) + ".evc"));

            const DecryptResult dec = decrypt_containers(attacked, bg, keys);
            write_sequence(dec.sequence, seq_dir / ("decrypted_" + to_string(attack)),
                           ImageFormat::kPpm);
            emit_histograms(dec.sequence.frames[hist_frame], to_string(attack));

            MetricReport rep = report(seq, dec.sequence, metric_frames);
            write_text(seq_dir / ("metrics_" + to_string(attack) + ".csv"),
                       "# seed=" + std::to_string(seed) + "\n" + to_csv(rep));
            reports.emplace(attack, std::move(rep));
        }

        // Tables shaped like the per-video attack summaries: one row per
        // selected frame plus a mean row.
        for (std::size_t fi = 0; fi <= metric_frames.size(); ++fi) {
            const bool mean_row = fi == metric_frames.size();
            const std::string frame_label =
                mean_row ? "mean" : std::to_string(metric_frames[fi]);
            const std::string label = seq.name + " frame " + frame_label;

            AttackTable::Row erow{label, {}};
            AttackTable::Row mrow{label, {}};
            AttackTable::Row srow{label, {}};
            erow.values.push_back(mean_row ? orig_mean : orig_entropy[fi]);
            entropy_csv << seq.name << ',' << to_string(kind) << ',' << frame_label << ','
                        << (mean_row ? orig_mean : orig_entropy[fi]);
            mse_csv << seq.name << ',' << to_string(kind) << ',' << frame_label;
            ssim_csv << seq.name << ',' << to_string(kind) << ',' << frame_label;
            for (AttackKind attack : kAllAttacks) {
                const MetricReport& rep = reports.at(attack);
                const double e = mean_row ? rep.mean_entropy_att() : rep.rows[fi].entropy_att;
                const double m = mean_row ? rep.mean_mse() : rep.rows[fi].mse;
                const double s = mean_row ? rep.mean_ssim() : rep.rows[fi].ssim;
                erow.values.push_back(e);
                mrow.values.push_back(m);
                srow.values.push_back(s);
                entropy_csv << ',' << e;
                mse_csv << ',' << m;
                ssim_csv << ',' << s;
            }
            entropy_csv << '\n';
            mse_csv << '\n';
            ssim_csv << '\n';
            tables[0].rows.push_back(std::move(erow));
            tables[1].rows.push_back(std::move(mrow));
            tables[2].rows.push_back(std::move(srow));
        }

        seq_result.attack_reports = std::move(reports);
        result.sequences.push_back(std::move(seq_result));
    }

    write_manifest(manifest, out_dir / "manifest.txt");
    write_text(out_dir / "entropy.csv", entropy_csv.str());
    write_text(out_dir / "mse.csv", mse_csv.str());
    write_text(out_dir / "ssim.csv", ssim_csv.str());

    // Threat-model artifacts from the bundled fixtures.
    ReportInputs inputs;
    inputs.seed = seed;
    inputs.catalog = parse_catalog(fixtures::kCatalog);

    {
        const fs::path risk_file = out_dir / "risk.txt";
        write_text(risk_file, fixtures::kRisk);
        inputs.risk = load_risk_placements(risk_file, inputs.catalog);
    }

    std::istringstream cvss_in(fixtures::kCvss);
    std::string line;
    while (std::getline(cvss_in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto bar = line.find('|');
        if (bar == std::string::npos) continue;
        inputs.cvss.push_back(
            CvssAssessment{line.substr(0, bar), CvssVector::parse(line.substr(bar + 1))});
    }

    const AdtNode tree = parse_adt(fixtures::kAdt);
    auto scenario = [&](const std::string& name, std::set<std::string> sat,
                        std::set<std::string> def) {
        AdtScenario s{name, sat, def, adt_evaluate(tree, sat, def)};
        inputs.adt_scenarios.push_back(std::move(s));
    };
    scenario("replay attack, no defenses", {"replay_attack"}, {});
    scenario("replay attack vs FG/BG separation", {"replay_attack"}, {"fg_bg_separation"});
    scenario("network attack vs hardened backup", {"network_attack"},
             {"nist_devices", "secure_backup"});
    scenario("network attack + ransomware vs hardened backup", {"network_attack", "ransomware"},
             {"nist_devices", "secure_backup"});

    inputs.metric_tables = tables;
    write_report(inputs, out_dir);
    return result;
}

}  // namespace demis
