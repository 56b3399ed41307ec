#include "demis/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "demis/errors.hpp"

namespace demis {

namespace {

constexpr const char* kModule = "visual_metrics";

void require_same_shape(const GrayFrame& a, const GrayFrame& b) {
    if (a.width != b.width || a.height != b.height)
        throw InputError(kModule, "dimension mismatch between frames");
}

std::string fixed4(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    os << v;
    return os.str();
}

}  // namespace

std::uint8_t gray_of(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    const long rounded = std::lround(y);
    return static_cast<std::uint8_t>(std::clamp(rounded, 0L, 255L));
}

GrayFrame to_gray(const Frame& frame) {
    frame.validate();
    GrayFrame g{frame.width, frame.height, {}};
    g.values.resize(frame.pixel_count());
    const std::uint8_t* p = frame.pixels.data();
    for (std::size_t i = 0; i < g.values.size(); ++i, p += 3) g.values[i] = gray_of(p[0], p[1], p[2]);
    return g;
}

double entropy(const GrayFrame& g) {
    if (g.values.empty()) throw InputError(kModule, "entropy of an empty frame");
    std::array<std::uint64_t, 256> counts{};
    for (std::uint8_t v : g.values) ++counts[v];
    const double total = static_cast<double>(g.values.size());
    double h = 0.0;
    for (std::uint64_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / total;
        h -= p * std::log2(p);
    }
    return h;
}

std::string to_string(Channel c) {
    switch (c) {
        case Channel::kRed: return "r";
        case Channel::kGreen: return "g";
        case Channel::kBlue: return "b";
        case Channel::kGray: return "gray";
    }
    return "?";
}

std::uint64_t Histogram::total() const {
    return std::accumulate(bins.begin(), bins.end(), std::uint64_t{0});
}

Histogram histogram(const Frame& frame, Channel channel) {
    frame.validate();
    Histogram h;
    h.channel = channel;
    if (channel == Channel::kGray) {
        for (std::uint8_t v : to_gray(frame).values) ++h.bins[v];
        return h;
    }
    const int offset = channel == Channel::kRed ? 0 : channel == Channel::kGreen ? 1 : 2;
    for (std::size_t i = 0; i < frame.pixel_count(); ++i) ++h.bins[frame.pixels[i * 3 + offset]];
    return h;
}

double mse(const GrayFrame& a, const GrayFrame& b) {
    require_same_shape(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = static_cast<double>(a.values[i]) - static_cast<double>(b.values[i]);
        sum += d * d;
    }
    return sum / static_cast<double>(a.values.size());
}

double ssim(const GrayFrame& a, const GrayFrame& b, const SsimParams& params) {
    require_same_shape(a, b);
    const std::size_t n = a.values.size();
    if (n < 2) throw InputError(kModule, "ssim needs at least 2 pixels");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += a.values[i];
        my += b.values[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double vx = 0.0, vy = 0.0, cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = a.values[i] - mx;
        const double dy = b.values[i] - my;
        vx += dx * dx;
        vy += dy * dy;
        cov += dx * dy;
    }
    vx /= static_cast<double>(n);
    vy /= static_cast<double>(n);
    cov /= static_cast<double>(n);

    const double c1 = params.c1();
    const double c2 = params.c2();
    return ((2.0 * mx * my + c1) * (2.0 * cov + c2)) /
           ((mx * mx + my * my + c1) * (vx + vy + c2));
}

double MetricReport::mean_entropy_orig() const {
    double s = 0;
    for (const auto& r : rows) s += r.entropy_orig;
    return rows.empty() ? 0.0 : s / static_cast<double>(rows.size());
}

double MetricReport::mean_entropy_att() const {
    double s = 0;
    for (const auto& r : rows) s += r.entropy_att;
    return rows.empty() ? 0.0 : s / static_cast<double>(rows.size());
}

double MetricReport::mean_mse() const {
    double s = 0;
    for (const auto& r : rows) s += r.mse;
    return rows.empty() ? 0.0 : s / static_cast<double>(rows.size());
}

double MetricReport::mean_ssim() const {
    double s = 0;
    for (const auto& r : rows) s += r.ssim;
    return rows.empty() ? 0.0 : s / static_cast<double>(rows.size());
}

MetricReport report(const FrameSequence& original, const FrameSequence& attacked,
                    const std::vector<std::uint32_t>& frames) {
    original.validate();
    attacked.validate();
    if (original.width() != attacked.width() || original.height() != attacked.height())
        throw InputError(kModule, "dimension mismatch between sequences");

    MetricReport rep;
    for (std::uint32_t idx : frames) {
        if (idx >= original.frames.size() || idx >= attacked.frames.size())
            throw InputError(kModule, "frame selection out of range: " + std::to_string(idx));
        const GrayFrame go = to_gray(original.frames[idx]);
        const GrayFrame ga = to_gray(attacked.frames[idx]);
        MetricRow row;
        row.frame = idx;
        row.entropy_orig = entropy(go);
        row.entropy_att = entropy(ga);
        row.mse = mse(go, ga);
        row.ssim = ssim(go, ga);
        rep.rows.push_back(row);
    }
    return rep;
}

MetricReport report_masked(const FrameSequence& original, const FrameSequence& attacked,
                           const std::vector<RoiMask>& masks,
                           const std::vector<std::uint32_t>& frames) {
    original.validate();
    attacked.validate();
    if (original.width() != attacked.width() || original.height() != attacked.height())
        throw InputError(kModule, "dimension mismatch between sequences");
    if (masks.size() != original.frames.size())
        throw InputError(kModule, "mask count does not match frame count");

    auto masked_gray = [](const Frame& frame, const RoiMask& mask) {
        const GrayFrame full = to_gray(frame);
        GrayFrame out;
        out.height = 1;
        for (std::size_t i = 0; i < mask.bits.size(); ++i)
            if (mask.bits[i]) out.values.push_back(full.values[i]);
        out.width = static_cast<std::uint32_t>(out.values.size());
        return out;
    };

    MetricReport rep;
    for (std::uint32_t idx : frames) {
        if (idx >= original.frames.size() || idx >= attacked.frames.size())
            throw InputError(kModule, "frame selection out of range: " + std::to_string(idx));
        const RoiMask& mask = masks[idx];
        if (mask.width != original.width() || mask.height != original.height())
            throw InputError(kModule, "mask dimension mismatch at frame " + std::to_string(idx));
        if (mask.popcount() < 2)
            throw InputError(kModule,
                             "mask at frame " + std::to_string(idx) + " selects fewer than 2 pixels");
        const GrayFrame go = masked_gray(original.frames[idx], mask);
        const GrayFrame ga = masked_gray(attacked.frames[idx], mask);
        MetricRow row;
        row.frame = idx;
        row.entropy_orig = entropy(go);
        row.entropy_att = entropy(ga);
        row.mse = mse(go, ga);
        row.ssim = ssim(go, ga);
        rep.rows.push_back(row);
    }
    return rep;
}

std::string to_csv(const MetricReport& report) {
    std::ostringstream os;
    os << "frame,entropy_orig,entropy_att,mse,ssim\n";
    for (const MetricRow& r : report.rows)
        os << r.frame << ',' << fixed4(r.entropy_orig) << ',' << fixed4(r.entropy_att) << ','
           << fixed4(r.mse) << ',' << fixed4(r.ssim) << '\n';
    os << "mean," << fixed4(report.mean_entropy_orig()) << ',' << fixed4(report.mean_entropy_att())
       << ',' << fixed4(report.mean_mse()) << ',' << fixed4(report.mean_ssim()) << '\n';
    return os.str();
}

std::string histogram_csv(const std::vector<Histogram>& histograms) {
    std::ostringstream os;
    os << "value";
    for (const Histogram& h : histograms) os << ',' << to_string(h.channel);
    os << '\n';
    for (int v = 0; v < 256; ++v) {
        os << v;
        for (const Histogram& h : histograms) os << ',' << h.bins[std::size_t(v)];
        os << '\n';
    }
    return os.str();
}

std::string histogram_svg(const Histogram& h, const std::string& title) {
    constexpr int kBarW = 3, kChartH = 220, kMarginX = 10, kMarginTop = 28, kMarginBottom = 12;
    const std::uint64_t peak = *std::max_element(h.bins.begin(), h.bins.end());
    const int width = 256 * kBarW + 2 * kMarginX;
    const int height = kChartH + kMarginTop + kMarginBottom;

    const char* fill = h.channel == Channel::kRed     ? "#c0392b"
                       : h.channel == Channel::kGreen ? "#27ae60"
                       : h.channel == Channel::kBlue  ? "#2980b9"
                                                      : "#555555";
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\">\n";
    os << "<text x=\"" << kMarginX << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">"
       << title << " (" << to_string(h.channel) << ", peak " << peak << ")</text>\n";
    for (int v = 0; v < 256; ++v) {
        const std::uint64_t c = h.bins[std::size_t(v)];
        if (c == 0) continue;
        const int bar = peak == 0 ? 0 : static_cast<int>((c * kChartH) / peak);
        os << "<rect x=\"" << kMarginX + v * kBarW << "\" y=\"" << kMarginTop + kChartH - bar
           << "\" width=\"" << kBarW << "\" height=\"" << bar << "\" fill=\"" << fill << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace demis
