#ifndef DEMIS_THREAT_HPP
#define DEMIS_THREAT_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace demis {

// The five threats against encrypted video, in catalog order. Their initials
// spell the DEMIS acronym, which the loader enforces.
struct ThreatEntry {
    std::string name;
    std::vector<std::string> attack_vectors;
    std::vector<std::string> vulnerabilities;
    std::vector<std::string> mitigations;
};

using ThreatCatalog = std::vector<ThreatEntry>;

// Catalog file: line-oriented nested key/value text.
//   threat: <Name>
//     vector: <text>
//     vulnerability: <text>
//     mitigation: <text>
// Two-space indentation attaches a line to the current threat; '#' comments
// and blank lines are ignored.
ThreatCatalog load_catalog(const std::filesystem::path& file);
ThreatCatalog parse_catalog(const std::string& text);

const ThreatEntry& find_threat(const ThreatCatalog& catalog, const std::string& name);

// Risk matrix bands: likelihood 0-33 / 34-66 / 67-100 percent.
enum class LikelihoodBand { kLow, kMid, kHigh };
enum class Impact { kLow, kMedium, kHigh };

std::string to_string(LikelihoodBand band);
std::string to_string(Impact impact);
Impact impact_from_string(const std::string& s);

LikelihoodBand likelihood_band(int percent);

struct RiskCell {
    LikelihoodBand band = LikelihoodBand::kLow;
    Impact impact = Impact::kLow;
    std::vector<std::string> vectors;
};

// Validates that `vector` belongs to `threat`, then bins the likelihood.
RiskCell place_risk(const ThreatEntry& threat, const std::string& vector, int likelihood_pct,
                    Impact impact);

// A full 3x3 matrix for one threat, for rendering.
struct RiskMatrix {
    std::string threat;
    std::array<std::array<std::vector<std::string>, 3>, 3> cells;  // [band][impact]

    void place(const ThreatEntry& entry, const std::string& vector, int likelihood_pct,
               Impact impact);
};

// Risk placements file: lines of `threat|vector|likelihood_pct|impact`.
std::vector<RiskMatrix> load_risk_placements(const std::filesystem::path& file,
                                             const ThreatCatalog& catalog);

}  // namespace demis

#endif
