// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#include "gasloop/frontend/ast.hpp"

#include <algorithm>
#include <stdexcept>

namespace gasloop::ast {

bool is_node(const Json& j) {
    return j.is_object() && j.contains("nodeType");
}

int64_t id_of(const Json& node) {
    return node.is_object() ? node.value("id", int64_t{-1}) : -1;
}

int64_t ref_decl(const Json& node) {
    if (!node.is_object()) return -1;
    const auto it = node.find("referencedDeclaration");
    if (it == node.end() || !it->is_number()) return -1;
    return it->get<int64_t>();
}

SourceSpan span_of(const Json& node) {
    if (node.is_object() && node.contains("src"))
        if (auto s = frontend::parse_src(node["src"].get<std::string>())) return *s;
    return {};
}

std::string node_type(const Json& node) {
    return node.is_object() ? node.value("nodeType", "") : "";
}

void walk(const Json& root, const std::function<bool(const Json&)>& visit) {
    if (is_node(root) && !visit(root)) return;
    if (root.is_object()) {
        for (const auto& [key, value] : root.items()) {
            (void)key;
            if (value.is_object() || value.is_array()) walk(value, visit);
        }
    } else if (root.is_array()) {
        for (const auto& value : root) walk(value, visit);
    }
}

std::vector<const Json*> collect(const Json& root,
                                 const std::function<bool(const Json&)>& predicate) {
    std::vector<const Json*> out;
    walk(root, [&](const Json& node) {
        if (predicate(node)) out.push_back(&node);
        return true;
    });
    std::sort(out.begin(), out.end(), [](const Json* a, const Json* b) {
        const auto sa = span_of(*a), sb = span_of(*b);
        if (sa.byte_offset != sb.byte_offset) return sa.byte_offset < sb.byte_offset;
        return id_of(*a) < id_of(*b);
    });
    return out;
}

std::vector<const Json*> by_node_type(const Json& root, const std::string& type) {
    return collect(root, [&](const Json& n) { return node_type(n) == type; });
}

std::vector<const Json*> contract_definitions(const Json& source_unit) {
    std::vector<const Json*> out;
    if (source_unit.is_object() && source_unit.contains("nodes"))
        for (const auto& n : source_unit["nodes"])
            if (node_type(n) == "ContractDefinition") out.push_back(&n);
    return out;
}

std::vector<const Json*> state_variables(const Json& contract) {
    std::vector<const Json*> out;
    if (contract.is_object() && contract.contains("nodes"))
        for (const auto& n : contract["nodes"])
            if (node_type(n) == "VariableDeclaration" && n.value("stateVariable", false))
                out.push_back(&n);
    return out;
}

std::vector<const Json*> functions(const Json& contract) {
    std::vector<const Json*> out;
    if (contract.is_object() && contract.contains("nodes"))
        for (const auto& n : contract["nodes"])
            if (node_type(n) == "FunctionDefinition") out.push_back(&n);
    return out;
}

bool is_constructor(const Json& fn) {
    return fn.value("kind", "") == "constructor";
}

std::string visibility(const Json& node) {
    return node.value("visibility", "");
}

std::string mutability(const Json& var) {
    return var.value("mutability", "mutable");
}

std::vector<const Json*> loops(const Json& node) {
    return collect(node, [](const Json& n) {
        const auto t = node_type(n);
        return t == "ForStatement" || t == "WhileStatement" || t == "DoWhileStatement";
    });
}

std::vector<const Json*> parameters(const Json& fn) {
    std::vector<const Json*> out;
    if (fn.contains("parameters") && fn["parameters"].contains("parameters"))
        for (const auto& p : fn["parameters"]["parameters"]) out.push_back(&p);
    return out;
}

int64_t lvalue_base_declaration(const Json& expr) {
    const Json* e = &expr;
    while (true) {
        const auto t = node_type(*e);
        if (t == "Identifier") return ref_decl(*e);
        if (t == "IndexAccess" && e->contains("baseExpression")) {
            e = &(*e)["baseExpression"];
            continue;
        }
        if (t == "MemberAccess" && e->contains("expression")) {
            e = &(*e)["expression"];
            continue;
        }
        return -1;
    }
}

namespace {

// Invoke fn(base_decl_id, lhs_expr) for every write in the subtree.
void for_each_write(const Json& subtree,
                    const std::function<void(int64_t, const Json&)>& fn) {
    walk(subtree, [&](const Json& n) {
        const auto t = node_type(n);
        if (t == "Assignment" && n.contains("leftHandSide")) {
            const Json& lhs = n["leftHandSide"];
            if (node_type(lhs) == "TupleExpression" && lhs.contains("components")) {
                for (const auto& c : lhs["components"])
                    if (c.is_object()) fn(lvalue_base_declaration(c), c);
            } else {
                fn(lvalue_base_declaration(lhs), lhs);
            }
        } else if (t == "UnaryOperation") {
            const auto op = n.value("operator", "");
            if ((op == "++" || op == "--" || op == "delete") && n.contains("subExpression"))
                fn(lvalue_base_declaration(n["subExpression"]), n["subExpression"]);
        }
        return true;
    });
}

// Identifier nodes in write position (the base identifier of each LHS).
std::set<const Json*> write_position_identifiers(const Json& subtree) {
    std::set<const Json*> out;
    for_each_write(subtree, [&](int64_t, const Json& lhs) {
        const Json* e = &lhs;
        while (true) {
            const auto t = node_type(*e);
            if (t == "Identifier") {
                out.insert(e);
                return;
            }
            if (t == "IndexAccess" && e->contains("baseExpression")) {
                // Index writes do not count the base as written-through for
                // read analysis: reading a mapping slot key still reads it.
                return;
            }
            if (t == "MemberAccess" && e->contains("expression")) {
                e = &(*e)["expression"];
                continue;
            }
            return;
        }
    });
    return out;
}

}  // namespace

std::set<int64_t> written_declarations(const Json& subtree) {
    std::set<int64_t> out;
    for_each_write(subtree, [&](int64_t decl, const Json&) {
        if (decl >= 0) out.insert(decl);
    });
    return out;
}

std::vector<const Json*> writes_to(const Json& subtree, int64_t decl_id) {
    std::vector<const Json*> out;
    walk(subtree, [&](const Json& n) {
        const auto t = node_type(n);
        if (t == "Assignment" && n.contains("leftHandSide")) {
            const Json& lhs = n["leftHandSide"];
            if (node_type(lhs) == "TupleExpression" && lhs.contains("components")) {
                for (const auto& c : lhs["components"])
                    if (c.is_object() && lvalue_base_declaration(c) == decl_id) {
                        out.push_back(&n);
                        break;
                    }
            } else if (lvalue_base_declaration(lhs) == decl_id) {
                out.push_back(&n);
            }
        } else if (t == "UnaryOperation") {
            const auto op = n.value("operator", "");
            if ((op == "++" || op == "--" || op == "delete") && n.contains("subExpression") &&
                lvalue_base_declaration(n["subExpression"]) == decl_id)
                out.push_back(&n);
        }
        return true;
    });
    return out;
}

std::vector<const Json*> reads_of(const Json& subtree, int64_t decl_id) {
    const auto writes = write_position_identifiers(subtree);
    return collect(subtree, [&](const Json& n) {
        return node_type(n) == "Identifier" && ref_decl(n) == decl_id && !writes.contains(&n);
    });
}

std::vector<const Json*> query_ast(const CompilationResult& result, Selector selector) {
    if (!result.ok) throw std::invalid_argument("query_ast requires a successful compilation");
    switch (selector) {
        case Selector::StateVariables:
            return collect(result.ast, [](const Json& n) {
                return node_type(n) == "VariableDeclaration" && n.value("stateVariable", false);
            });
        case Selector::Functions:
            return by_node_type(result.ast, "FunctionDefinition");
        case Selector::Loops:
            return loops(result.ast);
        case Selector::ParameterLists:
            return by_node_type(result.ast, "ParameterList");
        case Selector::AssignmentTargets: {
            std::set<const Json*> seen;
            std::vector<const Json*> raw;
            for_each_write(result.ast, [&](int64_t, const Json& lhs) {
                if (seen.insert(&lhs).second) raw.push_back(&lhs);
            });
            std::sort(raw.begin(), raw.end(), [](const Json* a, const Json* b) {
                const auto sa = span_of(*a), sb = span_of(*b);
                if (sa.byte_offset != sb.byte_offset) return sa.byte_offset < sb.byte_offset;
                return id_of(*a) < id_of(*b);
            });
            return raw;
        }
    }
    return {};
}

Selector selector_from_name(const std::string& name) {
    if (name == "state-variables") return Selector::StateVariables;
    if (name == "functions") return Selector::Functions;
    if (name == "loops") return Selector::Loops;
    if (name == "parameter-lists") return Selector::ParameterLists;
    if (name == "assignment-targets") return Selector::AssignmentTargets;
    throw std::invalid_argument("unknown selector: " + name);
}

std::vector<const Json*> functions_writing(const CompilationResult& result,
                                           const std::string& state_var_name) {
    std::vector<const Json*> out;
    for (const auto* contract : contract_definitions(result.ast)) {
        int64_t target = -1;
        for (const auto* v : state_variables(*contract))
            if (v->value("name", "") == state_var_name) target = id_of(*v);
        if (target < 0) continue;
        for (const auto* fn : functions(*contract))
            if (!writes_to(*fn, target).empty()) out.push_back(fn);
    }
    return out;
}

}  // namespace gasloop::ast
