#include "demis/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "demis/errors.hpp"

namespace demis {

namespace {

constexpr const char* kModule = "threat_model";

std::string fixed(double v, int places) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(places);
    os << v;
    return os.str();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

const char* kBandLabels[3] = {"0 - 33%", "34 - 66%", "67 - 100%"};
const char* kImpactLabels[3] = {"Low", "Medium", "High"};

}  // namespace

std::string render_markdown(const ReportInputs& inputs) {
    std::ostringstream md;
    md << "# Threat report: selectively encrypted video\n\n";
    if (inputs.seed) md << "Seed: " << *inputs.seed << "\n\n";

    md << "## Threat catalog\n\n";
    if (inputs.catalog.empty()) {
        md << "*not evaluated*\n\n";
    } else {
        for (const ThreatEntry& t : inputs.catalog) {
            md << "### " << t.name << "\n\n";
            md << "- Attack vectors: " << join(t.attack_vectors, "; ") << "\n";
            md << "- Vulnerabilities: " << join(t.vulnerabilities, "; ") << "\n";
            md << "- Mitigations: " << join(t.mitigations, "; ") << "\n\n";
        }
    }

    md << "## Risk assessment matrix\n\n";
    if (inputs.risk.empty()) {
        md << "*not evaluated*\n\n";
    } else {
        for (const RiskMatrix& m : inputs.risk) {
            md << "### " << m.threat << "\n\n";
            md << "| Likelihood \\ Impact | Low | Medium | High |\n";
            md << "|---|---|---|---|\n";
            // High likelihood row first, matching the usual matrix layout.
            for (int band = 2; band >= 0; --band) {
                md << "| " << kBandLabels[band] << " |";
                for (int impact = 0; impact < 3; ++impact) {
                    const auto& cell = m.cells[std::size_t(band)][std::size_t(impact)];
                    md << ' ' << (cell.empty() ? "-" : join(cell, ", ")) << " |";
                }
                md << '\n';
            }
            md << '\n';
        }
    }

    md << "## CVSS base scores\n\n";
    if (inputs.cvss.empty()) {
        md << "*not evaluated*\n\n";
    } else {
        md << "| Threat | Vector | Base score | Severity |\n|---|---|---|---|\n";
        for (const CvssAssessment& a : inputs.cvss) {
            const double score = cvss_base_score(a.vector);
            md << "| " << a.threat << " | `" << a.vector.to_string() << "` | " << fixed(score, 1)
               << " | " << cvss_severity(score) << " |\n";
        }
        md << '\n';
    }

    md << "## Attack-defense tree evaluation\n\n";
    if (inputs.adt_scenarios.empty()) {
        md << "*not evaluated*\n\n";
    } else {
        md << "| Scenario | Satisfied attacks | Active defenses | Root compromised |\n"
           << "|---|---|---|---|\n";
        for (const AdtScenario& s : inputs.adt_scenarios) {
            std::vector<std::string> sat(s.satisfied.begin(), s.satisfied.end());
            std::vector<std::string> def(s.active_defenses.begin(), s.active_defenses.end());
            md << "| " << s.name << " | " << (sat.empty() ? "-" : join(sat, ", ")) << " | "
               << (def.empty() ? "-" : join(def, ", ")) << " | "
               << (s.root_compromised ? "yes" : "no") << " |\n";
        }
        md << '\n';
    }

    md << "## Attack damage metrics\n\n";
    if (inputs.metric_tables.empty()) {
        md << "*not evaluated*\n";
    } else {
        for (const AttackTable& table : inputs.metric_tables) {
            md << "### " << table.title << "\n\n";
            md << "| Sequence |";
            for (const std::string& c : table.columns) md << ' ' << c << " |";
            md << "\n|---|";
            for (std::size_t i = 0; i < table.columns.size(); ++i) md << "---|";
            md << '\n';
            for (const auto& row : table.rows) {
                md << "| " << row.label << " |";
                for (double v : row.values) md << ' ' << fixed(v, 4) << " |";
                md << '\n';
            }
            md << '\n';
        }
    }
    return md.str();
}

std::string render_json(const ReportInputs& inputs) {
    nlohmann::ordered_json j;
    j["report"] = "threat-model";
    if (inputs.seed)
        j["seed"] = *inputs.seed;
    else
        j["seed"] = nullptr;

    j["catalog"] = nlohmann::ordered_json::array();
    for (const ThreatEntry& t : inputs.catalog)
        j["catalog"].push_back({{"name", t.name},
                                {"attack_vectors", t.attack_vectors},
                                {"vulnerabilities", t.vulnerabilities},
                                {"mitigations", t.mitigations}});

    j["risk"] = nlohmann::ordered_json::array();
    for (const RiskMatrix& m : inputs.risk) {
        nlohmann::ordered_json jm;
        jm["threat"] = m.threat;
        jm["cells"] = nlohmann::ordered_json::array();
        for (int band = 0; band < 3; ++band)
            for (int impact = 0; impact < 3; ++impact) {
                const auto& cell = m.cells[std::size_t(band)][std::size_t(impact)];
                if (cell.empty()) continue;
                jm["cells"].push_back({{"likelihood", kBandLabels[band]},
                                       {"impact", kImpactLabels[impact]},
                                       {"vectors", cell}});
            }
        j["risk"].push_back(jm);
    }

    j["cvss"] = nlohmann::ordered_json::array();
    for (const CvssAssessment& a : inputs.cvss) {
        const double score = cvss_base_score(a.vector);
        j["cvss"].push_back({{"threat", a.threat},
                             {"vector", a.vector.to_string()},
                             {"base_score", score},
                             {"severity", cvss_severity(score)}});
    }

    j["adt_scenarios"] = nlohmann::ordered_json::array();
    for (const AdtScenario& s : inputs.adt_scenarios)
        j["adt_scenarios"].push_back({{"name", s.name},
                                      {"satisfied", s.satisfied},
                                      {"active_defenses", s.active_defenses},
                                      {"root_compromised", s.root_compromised}});

    j["metric_tables"] = nlohmann::ordered_json::array();
    for (const AttackTable& t : inputs.metric_tables) {
        nlohmann::ordered_json jt;
        jt["title"] = t.title;
        jt["columns"] = t.columns;
        jt["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) jt["rows"].push_back({{"label", row.label}, {"values", row.values}});
        j["metric_tables"].push_back(jt);
    }
    return j.dump(2) + "\n";
}

void write_report(const ReportInputs& inputs, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw InputError(kModule, "cannot create " + dir.string());
    {
        std::ofstream md(dir / "report.md", std::ios::trunc);
        if (!md) throw InputError(kModule, "cannot write report.md");
        md << render_markdown(inputs);
    }
    {
        std::ofstream js(dir / "report.json", std::ios::trunc);
        if (!js) throw InputError(kModule, "cannot write report.json");
        js << render_json(inputs);
    }
}

}  // namespace demis
