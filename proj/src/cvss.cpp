#include "demis/cvss.hpp"

#include <cmath>
#include <vector>

#include "demis/errors.hpp"

namespace demis {

namespace {

constexpr const char* kModule = "threat_model";

// Metric weights from the v3.1 specification.
double weight_av(CvssVector::Av v) {
    switch (v) {
        case CvssVector::Av::kNetwork: return 0.85;
        case CvssVector::Av::kAdjacent: return 0.62;
        case CvssVector::Av::kLocal: return 0.55;
        case CvssVector::Av::kPhysical: return 0.2;
    }
    return 0;
}

double weight_ac(CvssVector::Ac v) { return v == CvssVector::Ac::kLow ? 0.77 : 0.44; }

double weight_pr(CvssVector::Pr v, CvssVector::Scope scope) {
    const bool changed = scope == CvssVector::Scope::kChanged;
    switch (v) {
        case CvssVector::Pr::kNone: return 0.85;
        case CvssVector::Pr::kLow: return changed ? 0.68 : 0.62;
        case CvssVector::Pr::kHigh: return changed ? 0.5 : 0.27;
    }
    return 0;
}

double weight_ui(CvssVector::Ui v) { return v == CvssVector::Ui::kNone ? 0.85 : 0.62; }

double weight_cia(CvssVector::Cia v) {
    switch (v) {
        case CvssVector::Cia::kNone: return 0.0;
        case CvssVector::Cia::kLow: return 0.22;
        case CvssVector::Cia::kHigh: return 0.56;
    }
    return 0;
}

// Smallest one-decimal value >= x, computed the way the v3.1 spec prescribes
// to dodge floating-point drift.
double round_up_one_decimal(double x) {
    const long long scaled = std::llround(x * 100000.0);
    if (scaled % 10000 == 0) return static_cast<double>(scaled) / 100000.0;
    return (std::floor(static_cast<double>(scaled) / 10000.0) + 1.0) / 10.0;
}

[[noreturn]] void bad_vector(const std::string& detail) {
    throw InputError(kModule, "bad CVSS vector: " + detail);
}

}  // namespace

CvssVector CvssVector::parse(std::string_view text) {
    // Accept an optional CVSS:3.x prefix.
    if (text.rfind("CVSS:3", 0) == 0) {
        const auto slash = text.find('/');
        if (slash == std::string_view::npos) bad_vector("nothing after version prefix");
        text = text.substr(slash + 1);
    }

    CvssVector v;
    bool seen[8] = {};
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto slash = text.find('/', start);
        const std::string_view part =
            text.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start);
        start = slash == std::string_view::npos ? text.size() + 1 : slash + 1;
        if (part.empty()) continue;

        const auto colon = part.find(':');
        if (colon == std::string_view::npos) bad_vector("metric without ':' in " + std::string(part));
        const std::string key(part.substr(0, colon));
        const std::string val(part.substr(colon + 1));
        auto set = [&](int idx) {
            if (seen[idx]) bad_vector("duplicate metric " + key);
            seen[idx] = true;
        };

        if (key == "AV") {
            set(0);
            if (val == "N") v.av = Av::kNetwork;
            else if (val == "A") v.av = Av::kAdjacent;
            else if (val == "L") v.av = Av::kLocal;
            else if (val == "P") v.av = Av::kPhysical;
            else bad_vector("AV:" + val);
        } else if (key == "AC") {
            set(1);
            if (val == "L") v.ac = Ac::kLow;
            else if (val == "H") v.ac = Ac::kHigh;
            else bad_vector("AC:" + val);
        } else if (key == "PR") {
            set(2);
            if (val == "N") v.pr = Pr::kNone;
            else if (val == "L") v.pr = Pr::kLow;
            else if (val == "H") v.pr = Pr::kHigh;
            else bad_vector("PR:" + val);
        } else if (key == "UI") {
            set(3);
            if (val == "N") v.ui = Ui::kNone;
            else if (val == "R") v.ui = Ui::kRequired;
            else bad_vector("UI:" + val);
        } else if (key == "S") {
            set(4);
            if (val == "U") v.scope = Scope::kUnchanged;
            else if (val == "C") v.scope = Scope::kChanged;
            else bad_vector("S:" + val);
        } else if (key == "C" || key == "I" || key == "A") {
            const int idx = key == "C" ? 5 : key == "I" ? 6 : 7;
            set(idx);
            Cia cia;
            if (val == "N") cia = Cia::kNone;
            else if (val == "L") cia = Cia::kLow;
            else if (val == "H") cia = Cia::kHigh;
            else bad_vector(key + ":" + val);
            (idx == 5 ? v.c : idx == 6 ? v.i : v.a) = cia;
        } else {
            bad_vector("unknown metric " + key);
        }
    }
    for (int i = 0; i < 8; ++i)
        if (!seen[i]) bad_vector("all eight base metrics must be assigned");
    return v;
}

std::string CvssVector::to_string() const {
    auto av_s = [&] {
        switch (av) {
            case Av::kNetwork: return "N";
            case Av::kAdjacent: return "A";
            case Av::kLocal: return "L";
            case Av::kPhysical: return "P";
        }
        return "?";
    };
    auto cia_s = [](Cia x) { return x == Cia::kNone ? "N" : x == Cia::kLow ? "L" : "H"; };
    std::string s;
    s += "AV:";
    s += av_s();
    s += "/AC:";
    s += ac == Ac::kLow ? "L" : "H";
    s += "/PR:";
    s += pr == Pr::kNone ? "N" : pr == Pr::kLow ? "L" : "H";
    s += "/UI:";
    s += ui == Ui::kNone ? "N" : "R";
    s += "/S:";
    s += scope == Scope::kUnchanged ? "U" : "C";
    s += "/C:";
    s += cia_s(c);
    s += "/I:";
    s += cia_s(i);
    s += "/A:";
    s += cia_s(a);
    return s;
}

double cvss_base_score(const CvssVector& v) {
    const double iss =
        1.0 - (1.0 - weight_cia(v.c)) * (1.0 - weight_cia(v.i)) * (1.0 - weight_cia(v.a));
    const bool changed = v.scope == CvssVector::Scope::kChanged;
    const double impact = changed
                              ? 7.52 * (iss - 0.029) - 3.25 * std::pow(iss - 0.02, 15.0)
                              : 6.42 * iss;
    const double exploitability =
        8.22 * weight_av(v.av) * weight_ac(v.ac) * weight_pr(v.pr, v.scope) * weight_ui(v.ui);

    if (impact <= 0.0) return 0.0;
    const double raw = changed ? 1.08 * (impact + exploitability) : impact + exploitability;
    return round_up_one_decimal(std::min(raw, 10.0));
}

std::string cvss_severity(double score) {
    if (score <= 0.0) return "None";
    if (score < 4.0) return "Low";
    if (score < 7.0) return "Medium";
    if (score < 9.0) return "High";
    return "Critical";
}

}  // namespace demis
