// Command-line front end for the selective-encryption toolkit: segmentation,
// encryption, ciphertext attacks, decryption, damage metrics and the threat
// model, wired together as subcommands.
//
// Exit codes: 0 success, 2 usage, 3 input error, 4 internal invariant violation.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "demis/adt.hpp"
#include "demis/attacks.hpp"
#include "demis/container.hpp"
#include "demis/cvss.hpp"
#include "demis/demo.hpp"
#include "demis/errors.hpp"
#include "demis/fixtures.hpp"
#include "demis/frame_io.hpp"
#include "demis/gmm.hpp"
#include "demis/keyring.hpp"
#include "demis/metrics.hpp"
#include "demis/report.hpp"
#include "demis/roi.hpp"

namespace fs = std::filesystem;
using namespace demis;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::uint32_t> parse_frame_selection(const std::string& text, std::size_t count) {
    std::vector<std::uint32_t> out;
    if (text == "all") {
        for (std::size_t i = 0; i < count; ++i) out.push_back(static_cast<std::uint32_t>(i));
        return out;
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw UsageError("empty token in --frames");
        const auto dash = tok.find('-');
        try {
            if (dash == std::string::npos) {
                out.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
            } else {
                const auto lo = std::stoul(tok.substr(0, dash));
                const auto hi = std::stoul(tok.substr(dash + 1));
                if (hi < lo) throw UsageError("descending range in --frames: " + tok);
                for (auto i = lo; i <= hi; ++i) out.push_back(static_cast<std::uint32_t>(i));
            }
        } catch (const std::invalid_argument&) {
            throw UsageError("bad frame index '" + tok + "'");
        } catch (const std::out_of_range&) {
            throw UsageError("frame index out of range '" + tok + "'");
        }
    }
    if (out.empty()) throw UsageError("--frames selected nothing");
    return out;
}

std::set<std::string> parse_id_list(const std::string& text) {
    std::set<std::string> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.insert(tok);
    }
    return out;
}

ImageFormat pick_format(const std::string& flag, const fs::path& dir) {
    if (flag == "auto") {
        const auto detected = detect_sequence_format(dir);
        if (!detected) throw InputError("cli", "cannot detect frame format in " + dir.string());
        return *detected;
    }
    return image_format_from_string(flag);
}

std::vector<RoiMask> load_masks_dir(const fs::path& dir, std::size_t expected) {
    std::vector<RoiMask> masks;
    for (std::size_t i = 0; i < expected; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%06zu.mask", i);
        const fs::path file = dir / name;
        std::ifstream in(file, std::ios::binary);
        if (!in) throw InputError("cli", "missing mask file " + file.string());
        std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
        masks.push_back(mask_from_rle(bytes));
    }
    return masks;
}

void write_file(const fs::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::trunc);
    if (!out) throw InputError("cli", "cannot write " + file.string());
    out << text;
}

std::vector<CvssAssessment> load_cvss_lines(std::istream& in) {
    std::vector<CvssAssessment> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto bar = line.find('|');
        if (bar == std::string::npos)
            throw InputError("threat_model", "cvss line must be threat|vector: " + line);
        out.push_back(CvssAssessment{line.substr(0, bar), CvssVector::parse(line.substr(bar + 1))});
    }
    return out;
}

// Reads one of the demo summary CSVs back into a report table.
AttackTable table_from_csv(const fs::path& file, const std::string& title) {
    std::ifstream in(file);
    if (!in) throw InputError("cli", "cannot open metrics CSV " + file.string());
    AttackTable table;
    table.title = title;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (fields.size() < 4) throw InputError("cli", "metrics CSV row too short in " + file.string());
        if (!have_header) {
            table.columns.assign(fields.begin() + 3, fields.end());
            have_header = true;
            continue;
        }
        AttackTable::Row row;
        row.label = fields[0] + " frame " + fields[2];
        for (std::size_t i = 3; i < fields.size(); ++i) row.values.push_back(std::stod(fields[i]));
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw InputError("cli", "metrics CSV has no header: " + file.string());
    return table;
}

void add_standard_scenarios(const AdtNode& tree, ReportInputs& inputs) {
    auto scenario = [&](const std::string& name, std::set<std::string> sat,
                        std::set<std::string> def) {
        inputs.adt_scenarios.push_back(AdtScenario{name, sat, def, adt_evaluate(tree, sat, def)});
    };
    scenario("replay attack, no defenses", {"replay_attack"}, {});
    scenario("replay attack vs FG/BG separation", {"replay_attack"}, {"fg_bg_separation"});
    scenario("network attack vs hardened backup", {"network_attack"},
             {"nist_devices", "secure_backup"});
    scenario("network attack + ransomware vs hardened backup", {"network_attack", "ransomware"},
             {"nist_devices", "secure_backup"});
}

int run(int argc, char** argv) {
    CLI::App app{"Selective video encryption, ciphertext attack simulation and threat modeling"};
    app.require_subcommand(1);
    app.set_config("--config");

    // --- segment ---
    auto* segment = app.add_subcommand("segment", "Compute per-frame foreground masks");
    std::string seg_input, seg_out, seg_format = "auto", seg_background = "static",
                seg_method = "auto";
    GmmParams gmm_params;
    double diff_threshold = 16.0;
    int morph_radius = 1;
    segment->add_option("--input", seg_input, "Frame directory")->required();
    segment->add_option("--out", seg_out, "Output directory for .mask files")->required();
    segment->add_option("--format", seg_format, "ppm, png or auto");
    segment->add_option("--background", seg_background, "static or dynamic");
    segment->add_option("--method", seg_method, "gmm, motiondiff or auto (from background kind)");
    segment->add_option("--gmm-components", gmm_params.components);
    segment->add_option("--gmm-alpha", gmm_params.learning_rate);
    segment->add_option("--gmm-threshold", gmm_params.background_threshold);
    segment->add_option("--gmm-match-sigma", gmm_params.match_sigma);
    segment->add_option("--gmm-variance-floor", gmm_params.variance_floor);
    segment->add_option("--gmm-initial-variance", gmm_params.initial_variance);
    segment->add_option("--diff-threshold", diff_threshold, "Gray delta for motiondiff");
    segment->add_option("--morph-radius", morph_radius, "Dilation+erosion radius for motiondiff");

    // --- encrypt ---
    auto* encrypt = app.add_subcommand("encrypt", "Selectively encrypt a sequence");
    std::string enc_input, enc_masks, enc_out, enc_key, enc_format = "auto";
    std::optional<std::uint64_t> enc_seed;
    bool encrypt_bg = false;
    std::uint32_t enc_fps = 0;
    encrypt->add_option("--input", enc_input, "Frame directory")->required();
    encrypt->add_option("--masks", enc_masks, "Mask directory from `segment`")->required();
    encrypt->add_option("--out", enc_out, "Output directory (fg.evc, bg.evc)")->required();
    encrypt->add_option("--format", enc_format, "ppm, png or auto");
    encrypt->add_option("--key", enc_key, "Existing key file");
    encrypt->add_option("--seed", enc_seed, "Deterministic key generation seed");
    encrypt->add_flag("--encrypt-bg", encrypt_bg, "Encrypt the background stream too");
    encrypt->add_option("--fps", enc_fps, "Frames per second stored in the containers");

    // --- attack ---
    auto* attack = app.add_subcommand("attack", "Apply ciphertext attacks to a FG container");
    std::string att_container, att_out, att_spec, att_spec_file;
    std::optional<std::uint64_t> att_seed;
    attack->add_option("--container", att_container, "FG container file")->required();
    attack->add_option("--attack", att_spec,
                       "Attack spec: kind[:param=value,...]@frames (frames: all or i,j,k)");
    attack->add_option("--spec-file", att_spec_file,
                       "File with one attack spec per line, applied in order");
    attack->add_option("--out", att_out, "Attacked container file")->required();
    attack->add_option("--seed", att_seed, "Seed for random_insert when the spec has none");

    // --- decrypt ---
    auto* decrypt = app.add_subcommand("decrypt", "Reassemble frames from a container pair");
    std::string dec_fg, dec_bg, dec_key, dec_out, dec_format = "ppm";
    decrypt->add_option("--fg", dec_fg, "FG container")->required();
    decrypt->add_option("--bg", dec_bg, "BG container")->required();
    decrypt->add_option("--key", dec_key, "Key file")->required();
    decrypt->add_option("--out", dec_out, "Output frame directory")->required();
    decrypt->add_option("--format", dec_format, "ppm or png");

    // --- analyze ---
    auto* analyze = app.add_subcommand("analyze", "Entropy/MSE/SSIM between two sequences");
    std::string an_original, an_attacked, an_out, an_frames = "all", an_format = "auto",
                an_histograms, an_masks;
    bool an_svg = false, an_fg_only = false;
    double an_tau = 0.9;
    analyze->add_option("--original", an_original, "Original frame directory")->required();
    analyze->add_option("--attacked", an_attacked, "Attacked/decrypted frame directory")->required();
    analyze->add_option("--out", an_out, "Metrics CSV path")->required();
    analyze->add_option("--frames", an_frames, "all, or indices/ranges like 3,5,10-12");
    analyze->add_option("--format", an_format, "ppm, png or auto");
    analyze->add_option("--histograms", an_histograms, "Directory for RGB histogram CSVs");
    analyze->add_flag("--svg", an_svg, "Also emit SVG histogram charts");
    analyze->add_option("--tau", an_tau, "SSIM detectability threshold");
    analyze->add_option("--masks", an_masks, "Mask directory (required with --fg-only)");
    analyze->add_flag("--fg-only", an_fg_only, "Restrict metrics to the masked foreground");

    // --- adt ---
    auto* adt = app.add_subcommand("adt", "Evaluate an attack-defense tree");
    std::string adt_tree, adt_satisfied, adt_defenses;
    bool adt_enum = false;
    adt->add_option("--tree", adt_tree, "Tree file (default: bundled tree)");
    adt->add_option("--satisfied", adt_satisfied, "Comma-separated attack leaf ids");
    adt->add_option("--defenses", adt_defenses, "Comma-separated defense leaf ids");
    adt->add_flag("--enumerate", adt_enum, "List minimal successful attack sets");

    // --- cvss ---
    auto* cvss = app.add_subcommand("cvss", "CVSS v3.1 base score for a vector string");
    std::string cvss_vector;
    cvss->add_option("vector", cvss_vector, "e.g. AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H")->required();

    // --- report ---
    auto* report_cmd = app.add_subcommand("report", "Render the threat-model report");
    std::string rep_catalog, rep_risk, rep_cvss, rep_adt, rep_out;
    std::vector<std::string> rep_tables;
    std::optional<std::uint64_t> rep_seed;
    report_cmd->add_option("--out", rep_out, "Output directory")->required();
    report_cmd->add_option("--catalog", rep_catalog, "Catalog file (default: bundled)");
    report_cmd->add_option("--risk", rep_risk, "Risk placements file (default: bundled)");
    report_cmd->add_option("--cvss", rep_cvss, "CVSS assignments file (default: bundled)");
    report_cmd->add_option("--adt", rep_adt, "Tree file for the standard scenarios");
    report_cmd->add_option("--metrics", rep_tables,
                           "Summary CSV(s) from `demo` (entropy.csv, mse.csv, ssim.csv)");
    report_cmd->add_option("--seed", rep_seed, "Seed recorded in the report");

    // --- demo ---
    auto* demo = app.add_subcommand("demo", "End-to-end pipeline on bundled synthetic scenes");
    std::string demo_out;
    std::uint64_t demo_seed = 0;
    demo->add_option("--out", demo_out, "Output directory")->required();
    demo->add_option("--seed", demo_seed, "Deterministic run seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: cli: " << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return 2;
    }

    try {
        if (segment->parsed()) {
            const ImageFormat fmt = pick_format(seg_format, seg_input);
            const FrameSequence seq = load_sequence(seg_input, fmt);
            std::string method = seg_method;
            if (method == "auto")
                method = background_kind_from_string(seg_background) == BackgroundKind::kStatic
                             ? "gmm"
                             : "motiondiff";

            std::vector<RoiMask> masks;
            if (method == "gmm") {
                GmmModel model(seq.width(), seq.height(), gmm_params);
                for (const Frame& f : seq.frames) masks.push_back(model.step(f));
            } else if (method == "motiondiff") {
                for (std::size_t i = 0; i < seq.frames.size(); ++i)
                    masks.push_back(motion_diff_step(seq.frames[i == 0 ? 0 : i - 1], seq.frames[i],
                                                     diff_threshold, morph_radius));
            } else {
                throw UsageError("unknown --method '" + method + "'");
            }

            fs::create_directories(seg_out);
            for (std::size_t i = 0; i < masks.size(); ++i) {
                char name[32];
                std::snprintf(name, sizeof name, "frame_%06zu.mask", i);
                const auto rle = mask_to_rle(masks[i]);
                std::ofstream out(fs::path(seg_out) / name, std::ios::binary | std::ios::trunc);
                if (!out) throw InputError("cli", "cannot write mask " + std::string(name));
                out.write(reinterpret_cast<const char*>(rle.data()),
                          static_cast<std::streamsize>(rle.size()));
            }
            std::cout << "masks=" << masks.size() << " method=" << method << "\n";
            return 0;
        }

        if (encrypt->parsed()) {
            const ImageFormat fmt = pick_format(enc_format, enc_input);
            FrameSequence seq = load_sequence(enc_input, fmt);
            if (enc_fps > 0) seq.fps = enc_fps;
            const std::vector<RoiMask> masks = load_masks_dir(enc_masks, seq.frames.size());

            fs::create_directories(enc_out);
            KeyRing keys;
            if (!enc_key.empty() && enc_seed)
                throw UsageError("--key and --seed are mutually exclusive");
            if (!enc_key.empty()) {
                keys = load_key_file(enc_key);
            } else {
                keys = generate_keys(enc_seed);
                save_key_file(keys, fs::path(enc_out) / "keys.txt");
            }
            auto [fg, bg] = encrypt_sequence(seq, masks, keys, encrypt_bg);
            write_container(fg, fs::path(enc_out) / "fg.evc");
            write_container(bg, fs::path(enc_out) / "bg.evc");
            std::cout << "frames=" << seq.frames.size() << " encrypt_bg=" << (encrypt_bg ? 1 : 0)
                      << (enc_seed ? " seed=" + std::to_string(*enc_seed) : "") << "\n";
            return 0;
        }

        if (attack->parsed()) {
            std::vector<std::string> spec_lines;
            if (!att_spec.empty()) spec_lines.push_back(att_spec);
            if (!att_spec_file.empty()) {
                std::ifstream in(att_spec_file);
                if (!in) throw InputError("cli", "cannot open spec file " + att_spec_file);
                std::string line;
                while (std::getline(in, line)) {
                    const auto hash = line.find('#');
                    if (hash != std::string::npos) line.erase(hash);
                    while (!line.empty() && (line.back() == ' ' || line.back() == '\r'))
                        line.pop_back();
                    if (!line.empty()) spec_lines.push_back(line);
                }
            }
            if (spec_lines.empty()) throw UsageError("need --attack or a nonempty --spec-file");

            std::vector<AttackSpec> specs;
            for (const std::string& text : spec_lines) {
                AttackSpec spec;
                try {
                    spec = AttackSpec::parse(text);
                } catch (const InputError& e) {
                    throw UsageError(std::string(e.what()) +
                                     "\nusage: --attack kind[:param=value,...]@frames with kind in "
                                     "{inverse, lowercase, uppercase, random_insert, malleability}");
                }
                if (spec.kind == AttackKind::kRandomInsert &&
                    text.find("seed=") == std::string::npos) {
                    if (att_seed)
                        spec.rng_seed = *att_seed;
                    else
                        spec.rng_seed = generate_keys(std::nullopt).fg_key[0];  // entropy fallback
                }
                specs.push_back(std::move(spec));
            }

            EncryptedContainer container = read_container(att_container);
            for (const AttackSpec& spec : specs) {
                container = apply_attack(container, spec);
                std::cout << "attack=" << to_string(spec.kind) << " seed=" << spec.rng_seed
                          << "\n";
            }
            write_container(container, att_out);
            return 0;
        }

        if (decrypt->parsed()) {
            const EncryptedContainer fg = read_container(dec_fg);
            const EncryptedContainer bg = read_container(dec_bg);
            const KeyRing keys = load_key_file(dec_key);
            const DecryptResult result = decrypt_containers(fg, bg, keys);
            write_sequence(result.sequence, dec_out, image_format_from_string(dec_format));
            for (std::size_t i = 0; i < result.flags.size(); ++i) {
                if (result.flags[i].deficit)
                    std::cerr << "warning: frame " << i
                              << ": payload deficit, missing pixels zeroed\n";
                if (result.flags[i].surplus)
                    std::cerr << "warning: frame " << i << ": payload surplus, extra bytes ignored\n";
            }
            std::cout << "frames=" << result.sequence.frames.size()
                      << " deficit=" << (result.any_deficit() ? 1 : 0)
                      << " surplus=" << (result.any_surplus() ? 1 : 0) << "\n";
            return 0;
        }

        if (analyze->parsed()) {
            const FrameSequence original =
                load_sequence(an_original, pick_format(an_format, an_original));
            const FrameSequence attacked =
                load_sequence(an_attacked, pick_format(an_format, an_attacked));
            const auto frames = parse_frame_selection(an_frames, original.frames.size());
            MetricReport rep;
            if (an_fg_only) {
                if (an_masks.empty()) throw UsageError("--fg-only needs --masks");
                const auto masks = load_masks_dir(an_masks, original.frames.size());
                rep = report_masked(original, attacked, masks, frames);
            } else {
                rep = report(original, attacked, frames);
            }
            write_file(an_out, to_csv(rep));

            if (!an_histograms.empty()) {
                fs::create_directories(an_histograms);
                const std::uint32_t f = frames.front();
                const std::pair<const char*, const FrameSequence*> variants[] = {
                    {"original", &original}, {"attacked", &attacked}};
                for (const auto& [tag, seq] : variants) {
                    std::vector<Histogram> hists;
                    for (Channel ch : {Channel::kRed, Channel::kGreen, Channel::kBlue})
                        hists.push_back(histogram(seq->frames[f], ch));
                    write_file(fs::path(an_histograms) / (std::string(tag) + ".csv"),
                               histogram_csv(hists));
                    if (an_svg)
                        for (const Histogram& h : hists)
                            write_file(fs::path(an_histograms) /
                                           (std::string(tag) + "_" + to_string(h.channel) + ".svg"),
                                       histogram_svg(h, tag));
                }
            }
            for (const MetricRow& row : rep.rows)
                std::cout << "frame=" << row.frame << " ssim=" << row.ssim
                          << " detectable=" << (row.ssim < an_tau ? 1 : 0) << "\n";
            return 0;
        }

        if (adt->parsed()) {
            const AdtNode tree = adt_tree.empty() ? parse_adt(fixtures::kAdt) : load_adt(adt_tree);
            const auto satisfied = parse_id_list(adt_satisfied);
            const auto defenses = parse_id_list(adt_defenses);
            const bool compromised = adt_evaluate(tree, satisfied, defenses);
            std::cout << "root_compromised=" << (compromised ? "true" : "false") << "\n";
            if (adt_enum) {
                for (const auto& s : adt_enumerate(tree, defenses)) {
                    std::cout << "minimal=";
                    bool first = true;
                    for (const std::string& id : s) {
                        if (!first) std::cout << ',';
                        std::cout << id;
                        first = false;
                    }
                    std::cout << "\n";
                }
            }
            return 0;
        }

        if (cvss->parsed()) {
            const double score = cvss_base_score(CvssVector::parse(cvss_vector));
            char buf[8];
            std::snprintf(buf, sizeof buf, "%.1f", score);
            std::cout << buf << "\n";
            return 0;
        }

        if (report_cmd->parsed()) {
            fs::create_directories(rep_out);
            ReportInputs inputs;
            inputs.seed = rep_seed;
            inputs.catalog =
                rep_catalog.empty() ? parse_catalog(fixtures::kCatalog) : load_catalog(rep_catalog);
            if (rep_risk.empty()) {
                const fs::path tmp = fs::path(rep_out) / ".risk.tmp";
                write_file(tmp, fixtures::kRisk);
                inputs.risk = load_risk_placements(tmp, inputs.catalog);
                fs::remove(tmp);
            } else {
                inputs.risk = load_risk_placements(rep_risk, inputs.catalog);
            }
            if (rep_cvss.empty()) {
                std::istringstream in(fixtures::kCvss);
                inputs.cvss = load_cvss_lines(in);
            } else {
                std::ifstream in(rep_cvss);
                if (!in) throw InputError("cli", "cannot open " + rep_cvss);
                inputs.cvss = load_cvss_lines(in);
            }
            const AdtNode tree = rep_adt.empty() ? parse_adt(fixtures::kAdt) : load_adt(rep_adt);
            add_standard_scenarios(tree, inputs);
            for (const std::string& table_file : rep_tables)
                inputs.metric_tables.push_back(
                    table_from_csv(table_file, fs::path(table_file).stem().string()));
            write_report(inputs, rep_out);
            std::cout << "report=" << (fs::path(rep_out) / "report.md").string() << "\n";
            return 0;
        }

        if (demo->parsed()) {
            const DemoResult result = run_demo(demo_out, demo_seed);
            for (const DemoSequenceResult& s : result.sequences) {
                std::cout << s.name << " entropy_original=" << s.mean_entropy_original;
                for (const auto& [kind, rep] : s.attack_reports)
                    std::cout << " " << to_string(kind) << "=" << rep.mean_entropy_att();
                std::cout << "\n";
            }
            std::cout << "seed=" << result.seed << " out=" << demo_out << "\n";
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: cli: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.module() << ": " << e.what() << "\n";
        return 3;
    } catch (const InternalError& e) {
        std::cerr << "error: " << e.module() << ": invariant violated: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
