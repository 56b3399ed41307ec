#ifndef DEMIS_ADT_HPP
#define DEMIS_ADT_HPP

#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace demis {

// Attack-defense trees. Attack nodes refine into attack children; a node may
// carry attached countermeasures of the opposite kind. A countermeasure that
// itself evaluates true defeats its parent, unless one of the
// countermeasure's own attack children succeeds and nullifies it first.

enum class AdtKind { kAttack, kDefense };
enum class Refinement { kDisjunctive, kConjunctive };

struct AdtNode {
    std::string id;
    std::string label;
    AdtKind kind = AdtKind::kAttack;
    Refinement refinement = Refinement::kDisjunctive;
    std::vector<AdtNode> children;         // same kind as this node
    std::vector<AdtNode> countermeasures;  // opposite kind

    bool is_leaf() const { return children.empty(); }
};

// Tree file: indentation-structured text, two spaces per level.
//   attack <id> [or|and] "label"
//     counter defense <id> [or|and] "label"
//       defense <id> "label"
// `counter` lines attach to the parent as countermeasures and must flip kind;
// plain lines are refinement children and must keep it. Node ids are unique.
AdtNode parse_adt(const std::string& text);
AdtNode load_adt(const std::filesystem::path& file);

std::vector<std::string> attack_leaf_ids(const AdtNode& root);
std::vector<std::string> defense_leaf_ids(const AdtNode& root);

// Recursive valuation. `satisfied` holds attack leaf ids that fire;
// `active_defenses` holds defense leaf ids that are deployed. Both sets may
// only reference leaf ids of the right kind.
bool adt_evaluate(const AdtNode& root, const std::set<std::string>& satisfied,
                  const std::set<std::string>& active_defenses);

// Exhaustively evaluates every subset of attack leaves (cap: 20 leaves) under
// fixed defenses and returns the minimal satisfying sets. Brute-force oracle
// for adt_evaluate.
std::vector<std::set<std::string>> adt_enumerate(const AdtNode& root,
                                                 const std::set<std::string>& active_defenses = {});

}  // namespace demis

#endif
