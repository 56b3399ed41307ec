#ifndef DEMIS_REPORT_HPP
#define DEMIS_REPORT_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "demis/adt.hpp"
#include "demis/cvss.hpp"
#include "demis/metrics.hpp"
#include "demis/threat.hpp"

namespace demis {

struct CvssAssessment {
    std::string threat;
    CvssVector vector;
};

struct AdtScenario {
    std::string name;
    std::set<std::string> satisfied;
    std::set<std::string> active_defenses;
    bool root_compromised = false;
};

struct AttackTable {
    std::string title;                       // e.g. "Entropy"
    std::vector<std::string> columns;        // attack names
    struct Row {
        std::string label;                   // sequence / frame description
        std::vector<double> values;
    };
    std::vector<Row> rows;
};

// Everything the threat report can carry. Optional sections render as
// "not evaluated" when absent.
struct ReportInputs {
    ThreatCatalog catalog;
    std::vector<RiskMatrix> risk;
    std::vector<CvssAssessment> cvss;
    std::vector<AdtScenario> adt_scenarios;
    std::vector<AttackTable> metric_tables;
    std::optional<std::uint64_t> seed;
};

// Deterministic: identical inputs produce byte-identical output.
std::string render_markdown(const ReportInputs& inputs);
std::string render_json(const ReportInputs& inputs);

// Writes report.md and report.json into `dir`.
void write_report(const ReportInputs& inputs, const std::filesystem::path& dir);

}  // namespace demis

#endif
