// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "gasloop/frontend/compiler.hpp"

namespace gasloop::ast {

using Json = nlohmann::json;
using frontend::CompilationResult;
using frontend::SourceSpan;

bool is_node(const Json& j);
int64_t id_of(const Json& node);              // -1 when absent
int64_t ref_decl(const Json& node);           // referencedDeclaration or -1
SourceSpan span_of(const Json& node);         // zero span when absent
std::string node_type(const Json& node);

/// Preorder walk over every AST node in the subtree. The visitor returns
/// false to skip a node's children.
void walk(const Json& root, const std::function<bool(const Json&)>& visit);

/// All nodes matching the predicate, sorted by (source offset, id).
std::vector<const Json*> collect(const Json& root,
                                 const std::function<bool(const Json&)>& predicate);
std::vector<const Json*> by_node_type(const Json& root, const std::string& type);

// --- Solidity-shaped helpers ---

std::vector<const Json*> contract_definitions(const Json& source_unit);
std::vector<const Json*> state_variables(const Json& contract);
std::vector<const Json*> functions(const Json& contract);  // all FunctionDefinition kinds
bool is_constructor(const Json& fn);
std::string visibility(const Json& node);       // functions & variables
std::string mutability(const Json& var);        // "mutable" | "immutable" | "constant"
std::vector<const Json*> loops(const Json& node);
std::vector<const Json*> parameters(const Json& fn);

/// Declaration ids written by assignments / ++ / -- / delete in the subtree,
/// resolved to the base identifier of the left-hand side.
std::set<int64_t> written_declarations(const Json& subtree);
/// Writes targeting one declaration (the assignment/unary nodes themselves).
std::vector<const Json*> writes_to(const Json& subtree, int64_t decl_id);
/// Identifier reads of a declaration (excluding write positions).
std::vector<const Json*> reads_of(const Json& subtree, int64_t decl_id);
/// Base identifier declaration of an assignable expression (peels index,
/// member access, tuples); -1 when it is not a simple base.
int64_t lvalue_base_declaration(const Json& expr);

/// Structural query selectors exposed to the CLI and bindings.
enum class Selector {
    StateVariables,
    Functions,
    Loops,
    ParameterLists,
    AssignmentTargets,
};

std::vector<const Json*> query_ast(const CompilationResult& result, Selector selector);
Selector selector_from_name(const std::string& name);

/// Functions whose bodies write the named state variable.
std::vector<const Json*> functions_writing(const CompilationResult& result,
                                           const std::string& state_var_name);

}  // namespace gasloop::ast
