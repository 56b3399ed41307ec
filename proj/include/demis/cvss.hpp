#ifndef DEMIS_CVSS_HPP
#define DEMIS_CVSS_HPP

#include <string>
#include <string_view>

namespace demis {

// CVSS v3.1 base metrics. Parsed from the standard vector string form,
// e.g. "AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H".
struct CvssVector {
    enum class Av { kNetwork, kAdjacent, kLocal, kPhysical };
    enum class Ac { kLow, kHigh };
    enum class Pr { kNone, kLow, kHigh };
    enum class Ui { kNone, kRequired };
    enum class Scope { kUnchanged, kChanged };
    enum class Cia { kNone, kLow, kHigh };

    Av av = Av::kNetwork;
    Ac ac = Ac::kLow;
    Pr pr = Pr::kNone;
    Ui ui = Ui::kNone;
    Scope scope = Scope::kUnchanged;
    Cia c = Cia::kNone;
    Cia i = Cia::kNone;
    Cia a = Cia::kNone;

    static CvssVector parse(std::string_view text);
    std::string to_string() const;
};

// v3.1 base equation: exploitability and impact sub-scores, scope handling,
// and the one-decimal round-up. Returns a value in [0.0, 10.0].
double cvss_base_score(const CvssVector& v);

// Qualitative severity rating for a base score (None/Low/Medium/High/Critical).
std::string cvss_severity(double score);

}  // namespace demis

#endif
