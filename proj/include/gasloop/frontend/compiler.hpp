// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gasloop/bytes.hpp"

namespace gasloop::frontend {

using Json = nlohmann::json;

struct SourceSpan {
    int file_id = 0;
    size_t byte_offset = 0;
    size_t byte_length = 0;

    bool operator==(const SourceSpan&) const = default;
};

/// Parse a solc "src" triple "offset:length:file".
std::optional<SourceSpan> parse_src(const std::string& src);

struct Diagnostic {
    std::string severity;  // "error" | "warning" | "info"
    std::string type;
    std::string message;
    std::string formatted;
    std::optional<SourceSpan> span;
};

struct ContractArtifact {
    std::string name;
    Bytes creation_bytecode;
    Bytes runtime_bytecode;
    Json abi = Json::array();
};

struct CompilerSettings {
    std::string requested_version = "0.8.20";
    std::string evm_version;  // empty -> compiler default
    bool optimizer_enabled = false;
    int optimizer_runs = 200;

    std::string cache_key_material() const;
};

struct CompilationResult {
    bool ok = false;
    std::string source_name;
    std::string source;
    Json ast;                                 // SourceUnit node
    std::vector<ContractArtifact> contracts;  // document order
    std::vector<Diagnostic> diagnostics;
    std::string compiler_version;
    CompilerSettings settings;

    const ContractArtifact* target_contract() const;  // last deployable contract
    const ContractArtifact* contract(const std::string& name) const;
    std::string span_text(const SourceSpan& span) const;
    std::vector<Diagnostic> errors() const;
};

/// Wraps the external Solidity compiler via its standard-JSON protocol.
/// Resolution order: explicit command, $GASLOOP_SOLC, `solc`, `solcjs`.
/// Results are memoized in-process and in an on-disk cache
/// ($GASLOOP_SOLC_CACHE, default <tmp>/gasloop-solc-cache).
class Compiler {
public:
    explicit Compiler(std::string command = {});

    /// Process-wide shared instance (shared caches).
    static Compiler& shared();

    /// Full version string of the resolved compiler; throws EnvironmentError
    /// if no compiler can be found.
    const std::string& version();

    CompilationResult compile(const std::string& source, const CompilerSettings& settings = {},
                              const std::string& name = "input.sol");

    /// One compiler invocation for all cache misses; order-preserving.
    std::vector<CompilationResult> compile_many(
        const std::vector<std::pair<std::string, std::string>>& named_sources,
        const CompilerSettings& settings = {});

private:
    std::string resolve_command();
    CompilationResult from_slice(const Json& slice, const std::string& name,
                                 const std::string& source, const CompilerSettings& settings);

    std::mutex mutex_;
    std::string command_;
    std::string version_;
    std::map<std::string, Json> memory_cache_;  // cache key -> output slice
    std::string disk_cache_dir_;
};

}  // namespace gasloop::frontend
