#ifndef DEMIS_FIXTURES_HPP
#define DEMIS_FIXTURES_HPP

namespace demis::fixtures {

// Built-in copies of the bundled data files (data/*.txt). The files are the
// user-facing, editable versions; these strings keep the demo and the CLI
// defaults self-contained. A unit test pins file and string to each other.

extern const char* const kCatalog;       // data/demis_catalog.txt
extern const char* const kAdt;           // data/fig2_adt.txt
extern const char* const kRisk;          // data/demis_risk.txt
extern const char* const kCvss;          // data/demis_cvss.txt

}  // namespace demis::fixtures

#endif
