#include "demis/adt.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "demis/errors.hpp"

namespace demis {

namespace {

constexpr const char* kModule = "threat_model";
constexpr std::size_t kEnumerationCap = 20;

struct ParsedLine {
    int depth = 0;
    bool counter = false;
    AdtKind kind = AdtKind::kAttack;
    Refinement refinement = Refinement::kDisjunctive;
    std::string id;
    std::string label;
};

ParsedLine parse_line(const std::string& raw, std::size_t lineno) {
    auto fail = [&](const std::string& msg) -> ParsedLine {
        throw InputError(kModule, "adt line " + std::to_string(lineno) + ": " + msg);
    };

    std::size_t indent = 0;
    while (indent < raw.size() && raw[indent] == ' ') ++indent;
    if (indent % 2 != 0) return fail("indentation must be a multiple of two spaces");

    ParsedLine out;
    out.depth = static_cast<int>(indent / 2);

    std::istringstream in(raw.substr(indent));
    std::string tok;
    if (!(in >> tok)) return fail("empty node line");
    if (tok == "counter") {
        out.counter = true;
        if (!(in >> tok)) return fail("counter line needs a node kind");
    }
    if (tok == "attack")
        out.kind = AdtKind::kAttack;
    else if (tok == "defense")
        out.kind = AdtKind::kDefense;
    else
        return fail("expected 'attack' or 'defense', got '" + tok + "'");

    if (!(in >> out.id)) return fail("node needs an id");

    std::string rest;
    std::getline(in, rest);
    std::size_t p = rest.find_first_not_of(" \t");
    if (p != std::string::npos) {
        rest = rest.substr(p);
        if (rest.rfind("and", 0) == 0 && (rest.size() == 3 || rest[3] == ' ')) {
            out.refinement = Refinement::kConjunctive;
            rest = rest.size() == 3 ? "" : rest.substr(4);
        } else if (rest.rfind("or", 0) == 0 && (rest.size() == 2 || rest[2] == ' ')) {
            out.refinement = Refinement::kDisjunctive;
            rest = rest.size() == 2 ? "" : rest.substr(3);
        }
        p = rest.find_first_not_of(" \t");
        if (p != std::string::npos) {
            rest = rest.substr(p);
            if (rest.size() < 2 || rest.front() != '"' || rest.back() != '"')
                return fail("label must be double-quoted");
            out.label = rest.substr(1, rest.size() - 2);
        }
    }
    if (out.label.empty()) out.label = out.id;
    return out;
}

void collect_leaves(const AdtNode& node, AdtKind kind, std::vector<std::string>& out) {
    if (node.kind == kind && node.is_leaf()) out.push_back(node.id);
    for (const AdtNode& c : node.children) collect_leaves(c, kind, out);
    for (const AdtNode& c : node.countermeasures) collect_leaves(c, kind, out);
}

void check_unique_ids(const AdtNode& node, std::set<std::string>& seen) {
    if (!seen.insert(node.id).second)
        throw InputError(kModule, "duplicate node id '" + node.id + "' makes the tree cyclic");
    for (const AdtNode& c : node.children) check_unique_ids(c, seen);
    for (const AdtNode& c : node.countermeasures) check_unique_ids(c, seen);
}

bool evaluate_node(const AdtNode& node, const std::set<std::string>& satisfied,
                   const std::set<std::string>& active_defenses) {
    bool value;
    if (node.is_leaf()) {
        value = node.kind == AdtKind::kAttack ? satisfied.count(node.id) > 0
                                              : active_defenses.count(node.id) > 0;
    } else if (node.refinement == Refinement::kConjunctive) {
        value = true;
        for (const AdtNode& c : node.children)
            value = value && evaluate_node(c, satisfied, active_defenses);
    } else {
        value = false;
        for (const AdtNode& c : node.children)
            value = value || evaluate_node(c, satisfied, active_defenses);
    }
    // Any countermeasure that holds defeats this node.
    for (const AdtNode& counter : node.countermeasures)
        if (evaluate_node(counter, satisfied, active_defenses)) value = false;
    return value;
}

}  // namespace

AdtNode parse_adt(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;

    std::vector<AdtNode*> stack;  // stack[d] = last node at depth d
    AdtNode root;
    bool have_root = false;

    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
        while (!raw.empty() && (raw.back() == '\r' || raw.back() == '\t' || raw.back() == ' '))
            raw.pop_back();

        const ParsedLine line = parse_line(raw, lineno);
        AdtNode node;
        node.id = line.id;
        node.label = line.label;
        node.kind = line.kind;
        node.refinement = line.refinement;

        if (line.depth == 0) {
            if (have_root) throw InputError(kModule, "adt file has more than one root");
            if (line.counter) throw InputError(kModule, "root cannot be a countermeasure");
            if (line.kind != AdtKind::kAttack)
                throw InputError(kModule, "root node must be an attack");
            root = std::move(node);
            have_root = true;
            stack.assign(1, &root);
            continue;
        }
        if (!have_root || line.depth > static_cast<int>(stack.size()))
            throw InputError(kModule, "adt line " + std::to_string(lineno) + ": bad indentation");

        stack.resize(static_cast<std::size_t>(line.depth));
        AdtNode* parent = stack.back();
        if (line.counter) {
            if (line.kind == parent->kind)
                throw InputError(kModule, "adt line " + std::to_string(lineno) +
                                              ": countermeasure must flip node kind");
            parent->countermeasures.push_back(std::move(node));
            stack.push_back(&parent->countermeasures.back());
        } else {
            if (line.kind != parent->kind)
                throw InputError(kModule, "adt line " + std::to_string(lineno) +
                                              ": refinement child must keep the parent kind");
            parent->children.push_back(std::move(node));
            stack.push_back(&parent->children.back());
        }
    }
    if (!have_root) throw InputError(kModule, "adt file has no root node");

    std::set<std::string> seen;
    check_unique_ids(root, seen);
    return root;
}

AdtNode load_adt(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw InputError(kModule, "cannot open adt file " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_adt(ss.str());
}

std::vector<std::string> attack_leaf_ids(const AdtNode& root) {
    std::vector<std::string> out;
    collect_leaves(root, AdtKind::kAttack, out);
    return out;
}

std::vector<std::string> defense_leaf_ids(const AdtNode& root) {
    std::vector<std::string> out;
    collect_leaves(root, AdtKind::kDefense, out);
    return out;
}

bool adt_evaluate(const AdtNode& root, const std::set<std::string>& satisfied,
                  const std::set<std::string>& active_defenses) {
    const auto attacks = attack_leaf_ids(root);
    const auto defenses = defense_leaf_ids(root);
    for (const std::string& id : satisfied)
        if (std::find(attacks.begin(), attacks.end(), id) == attacks.end())
            throw InputError(kModule, "unknown attack leaf id '" + id + "'");
    for (const std::string& id : active_defenses)
        if (std::find(defenses.begin(), defenses.end(), id) == defenses.end())
            throw InputError(kModule, "unknown defense leaf id '" + id + "'");
    return evaluate_node(root, satisfied, active_defenses);
}

std::vector<std::set<std::string>> adt_enumerate(const AdtNode& root,
                                                 const std::set<std::string>& active_defenses) {
    const std::vector<std::string> leaves = attack_leaf_ids(root);
    if (leaves.size() > kEnumerationCap)
        throw InputError(kModule, "enumeration capped at " + std::to_string(kEnumerationCap) +
                                      " attack leaves");

    std::vector<std::set<std::string>> satisfying;
    const std::size_t limit = std::size_t{1} << leaves.size();
    for (std::size_t bits = 0; bits < limit; ++bits) {
        std::set<std::string> subset;
        for (std::size_t i = 0; i < leaves.size(); ++i)
            if (bits & (std::size_t{1} << i)) subset.insert(leaves[i]);
        if (adt_evaluate(root, subset, active_defenses)) satisfying.push_back(std::move(subset));
    }

    std::vector<std::set<std::string>> minimal;
    for (const auto& s : satisfying) {
        bool is_minimal = true;
        for (const auto& t : satisfying) {
            if (&t == &s || t.size() >= s.size()) continue;
            if (std::includes(s.begin(), s.end(), t.begin(), t.end())) {
                is_minimal = false;
                break;
            }
        }
        if (is_minimal) minimal.push_back(s);
    }
    return minimal;
}

}  // namespace demis
