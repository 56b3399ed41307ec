#include "demis/threat.hpp"

#include <fstream>
#include <sstream>

#include "demis/errors.hpp"

namespace demis {

namespace {

constexpr const char* kModule = "threat_model";

const char* kExpectedNames[5] = {"DefectsOnNetwork", "ExposureOfInformation", "ModificationOfBytes",
                                 "InjectionOfBytes", "SpoofingOfVideoContent"};

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

ThreatCatalog parse_catalog(const std::string& text) {
    ThreatCatalog catalog;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const bool indented = raw.rfind("  ", 0) == 0;
        const std::string line = strip(raw);
        if (line.empty()) continue;

        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw InputError(kModule, "catalog line " + std::to_string(lineno) + ": expected key: value");
        const std::string key = strip(line.substr(0, colon));
        const std::string value = strip(line.substr(colon + 1));
        if (value.empty())
            throw InputError(kModule, "catalog line " + std::to_string(lineno) + ": empty value");

        if (key == "threat") {
            if (indented)
                throw InputError(kModule, "catalog line " + std::to_string(lineno) +
                                              ": threat must start a top-level block");
            catalog.push_back(ThreatEntry{value, {}, {}, {}});
            continue;
        }
        if (!indented || catalog.empty())
            throw InputError(kModule,
                             "catalog line " + std::to_string(lineno) + ": '" + key +
                                 "' must be indented under a threat");
        if (key == "vector")
            catalog.back().attack_vectors.push_back(value);
        else if (key == "vulnerability")
            catalog.back().vulnerabilities.push_back(value);
        else if (key == "mitigation")
            catalog.back().mitigations.push_back(value);
        else
            throw InputError(kModule,
                             "catalog line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }

    if (catalog.size() != 5)
        throw InputError(kModule, "catalog must define exactly 5 threats, found " +
                                      std::to_string(catalog.size()));
    for (std::size_t i = 0; i < 5; ++i)
        if (catalog[i].name != kExpectedNames[i])
            throw InputError(kModule, "catalog threat " + std::to_string(i + 1) + " must be '" +
                                          kExpectedNames[i] + "', found '" + catalog[i].name + "'");
    for (const ThreatEntry& t : catalog)
        if (t.attack_vectors.empty() || t.vulnerabilities.empty() || t.mitigations.empty())
            throw InputError(kModule, "threat '" + t.name +
                                          "' needs at least one vector, vulnerability and mitigation");
    return catalog;
}

ThreatCatalog load_catalog(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw InputError(kModule, "cannot open catalog " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_catalog(ss.str());
}

const ThreatEntry& find_threat(const ThreatCatalog& catalog, const std::string& name) {
    for (const ThreatEntry& t : catalog)
        if (t.name == name) return t;
    throw InputError(kModule, "unknown threat '" + name + "'");
}

std::string to_string(LikelihoodBand band) {
    switch (band) {
        case LikelihoodBand::kLow: return "0-33%";
        case LikelihoodBand::kMid: return "34-66%";
        case LikelihoodBand::kHigh: return "67-100%";
    }
    return "?";
}

std::string to_string(Impact impact) {
    switch (impact) {
        case Impact::kLow: return "low";
        case Impact::kMedium: return "medium";
        case Impact::kHigh: return "high";
    }
    return "?";
}

Impact impact_from_string(const std::string& s) {
    if (s == "low") return Impact::kLow;
    if (s == "medium") return Impact::kMedium;
    if (s == "high") return Impact::kHigh;
    throw InputError(kModule, "unknown impact '" + s + "'");
}

LikelihoodBand likelihood_band(int percent) {
    if (percent < 0 || percent > 100)
        throw InputError(kModule, "likelihood percent out of [0,100]");
    if (percent <= 33) return LikelihoodBand::kLow;
    if (percent <= 66) return LikelihoodBand::kMid;
    return LikelihoodBand::kHigh;
}

RiskCell place_risk(const ThreatEntry& threat, const std::string& vector, int likelihood_pct,
                    Impact impact) {
    bool known = false;
    for (const std::string& v : threat.attack_vectors)
        if (v == vector) known = true;
    if (!known)
        throw InputError(kModule,
                         "vector '" + vector + "' does not belong to threat '" + threat.name + "'");
    RiskCell cell;
    cell.band = likelihood_band(likelihood_pct);
    cell.impact = impact;
    cell.vectors.push_back(vector);
    return cell;
}

void RiskMatrix::place(const ThreatEntry& entry, const std::string& vector, int likelihood_pct,
                       Impact impact) {
    // One cell per vector within a threat: reject duplicates.
    for (const auto& row : cells)
        for (const auto& cell : row)
            for (const std::string& v : cell)
                if (v == vector)
                    throw InputError(kModule, "vector '" + vector + "' placed twice for threat '" +
                                                  entry.name + "'");
    const RiskCell cell = place_risk(entry, vector, likelihood_pct, impact);
    cells[static_cast<std::size_t>(cell.band)][static_cast<std::size_t>(cell.impact)].push_back(
        vector);
}

std::vector<RiskMatrix> load_risk_placements(const std::filesystem::path& file,
                                             const ThreatCatalog& catalog) {
    std::ifstream in(file);
    if (!in) throw InputError(kModule, "cannot open risk file " + file.string());

    std::vector<RiskMatrix> matrices;
    for (const ThreatEntry& t : catalog) matrices.push_back(RiskMatrix{t.name, {}});

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = strip(line);
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, '|')) fields.push_back(strip(field));
        if (fields.size() != 4)
            throw InputError(kModule, "risk line " + std::to_string(lineno) +
                                          ": expected threat|vector|likelihood|impact");
        const ThreatEntry& threat = find_threat(catalog, fields[0]);
        int pct = 0;
        try {
            pct = std::stoi(fields[2]);
        } catch (const std::exception&) {
            throw InputError(kModule, "risk line " + std::to_string(lineno) + ": bad likelihood");
        }
        for (RiskMatrix& m : matrices)
            if (m.threat == threat.name) m.place(threat, fields[1], pct, impact_from_string(fields[3]));
    }
    return matrices;
}

}  // namespace demis
