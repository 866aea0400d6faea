// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#include "gasloop/frontend/compiler.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "gasloop/crypto.hpp"
#include "gasloop/error.hpp"
#include "gasloop/subprocess.hpp"

namespace gasloop::frontend {

namespace fs = std::filesystem;

std::optional<SourceSpan> parse_src(const std::string& src) {
    long off = -1, len = -1, file = -1;
    if (std::sscanf(src.c_str(), "%ld:%ld:%ld", &off, &len, &file) != 3) return std::nullopt;
    if (off < 0 || len < 0) return std::nullopt;
    return SourceSpan{static_cast<int>(file), static_cast<size_t>(off), static_cast<size_t>(len)};
}

std::string CompilerSettings::cache_key_material() const {
    Json j;
    j["requestedVersion"] = requested_version;
    j["evmVersion"] = evm_version;
    j["optimizer"] = optimizer_enabled;
    j["runs"] = optimizer_runs;
    return j.dump();
}

const ContractArtifact* CompilationResult::target_contract() const {
    const ContractArtifact* found = nullptr;
    for (const auto& c : contracts)
        if (!c.creation_bytecode.empty()) found = &c;
    return found;
}

const ContractArtifact* CompilationResult::contract(const std::string& name) const {
    for (const auto& c : contracts)
        if (c.name == name) return &c;
    return nullptr;
}

std::string CompilationResult::span_text(const SourceSpan& span) const {
    if (span.byte_offset + span.byte_length > source.size()) return {};
    return source.substr(span.byte_offset, span.byte_length);
}

std::vector<Diagnostic> CompilationResult::errors() const {
    std::vector<Diagnostic> out;
    for (const auto& d : diagnostics)
        if (d.severity == "error") out.push_back(d);
    return out;
}

Compiler::Compiler(std::string command) : command_(std::move(command)) {
    if (const char* dir = std::getenv("GASLOOP_SOLC_CACHE"); dir != nullptr && *dir != '\0') {
        disk_cache_dir_ = dir;
    } else {
        disk_cache_dir_ = (fs::temp_directory_path() / "gasloop-solc-cache").string();
    }
    std::error_code ec;
    fs::create_directories(disk_cache_dir_, ec);
    if (ec) disk_cache_dir_.clear();  // cache disabled; compilation still works
}

Compiler& Compiler::shared() {
    static Compiler instance;
    return instance;
}

std::string Compiler::resolve_command() {
    if (!command_.empty()) return command_;
    if (const char* env = std::getenv("GASLOOP_SOLC"); env != nullptr && *env != '\0')
        return command_ = env;
    if (auto p = find_in_path("solc"); !p.empty()) return command_ = p;
    if (auto p = find_in_path("solcjs"); !p.empty()) return command_ = p;
    throw EnvironmentError(
        "no Solidity compiler found: set GASLOOP_SOLC or install solc/solcjs on PATH");
}

const std::string& Compiler::version() {
    std::lock_guard lock(mutex_);
    if (!version_.empty()) return version_;
    const auto cmd = resolve_command();
    const auto r = run_process({cmd, "--version"});
    if (r.spawn_failed || r.exit_code != 0)
        throw EnvironmentError("failed to run '" + cmd + " --version'");
    static const std::regex kVersion(R"((\d+\.\d+\.\d+\S*))");
    std::smatch m;
    if (std::regex_search(r.out, m, kVersion))
        version_ = m[1];
    else
        version_ = "unknown";
    return version_;
}

namespace {

Json build_request(const std::vector<std::pair<std::string, std::string>>& sources,
                   const CompilerSettings& settings) {
    Json req;
    req["language"] = "Solidity";
    for (const auto& [name, content] : sources) req["sources"][name]["content"] = content;
    Json& s = req["settings"];
    s["optimizer"]["enabled"] = settings.optimizer_enabled;
    s["optimizer"]["runs"] = settings.optimizer_runs;
    if (!settings.evm_version.empty()) s["evmVersion"] = settings.evm_version;
    s["outputSelection"]["*"]["*"] =
        Json::array({"abi", "evm.bytecode.object", "evm.deployedBytecode.object"});
    s["outputSelection"]["*"][""] = Json::array({"ast"});
    return req;
}

// A per-source slice of the standard-JSON output, suitable for caching.
Json slice_output(const Json& output, const std::string& name) {
    Json slice;
    slice["contracts"] = Json::object();
    if (output.contains("contracts") && output["contracts"].contains(name))
        slice["contracts"] = output["contracts"][name];
    slice["ast"] = Json();
    if (output.contains("sources") && output["sources"].contains(name) &&
        output["sources"][name].contains("ast"))
        slice["ast"] = output["sources"][name]["ast"];
    slice["errors"] = Json::array();
    if (output.contains("errors")) {
        for (const auto& e : output["errors"]) {
            const bool has_loc = e.contains("sourceLocation") && e["sourceLocation"].is_object();
            if (!has_loc || e["sourceLocation"].value("file", "") == name)
                slice["errors"].push_back(e);
        }
    }
    return slice;
}

}  // namespace

CompilationResult Compiler::from_slice(const Json& slice, const std::string& name,
                                       const std::string& source,
                                       const CompilerSettings& settings) {
    CompilationResult result;
    result.source_name = name;
    result.source = source;
    result.settings = settings;
    result.compiler_version = version();

    for (const auto& e : slice["errors"]) {
        Diagnostic d;
        d.severity = e.value("severity", "error");
        d.type = e.value("type", "");
        d.message = e.value("message", "");
        d.formatted = e.value("formattedMessage", d.message);
        if (e.contains("sourceLocation") && e["sourceLocation"].is_object()) {
            const auto& loc = e["sourceLocation"];
            const long start = loc.value("start", -1);
            const long end = loc.value("end", -1);
            if (start >= 0 && end >= start)
                d.span = SourceSpan{0, static_cast<size_t>(start), static_cast<size_t>(end - start)};
        }
        result.diagnostics.push_back(std::move(d));
    }

    bool has_error = false;
    for (const auto& d : result.diagnostics) has_error |= d.severity == "error";

    if (!slice["ast"].is_null()) result.ast = slice["ast"];

    // Contracts in document order: follow the AST's ContractDefinition sequence.
    std::vector<std::string> order;
    if (result.ast.is_object() && result.ast.contains("nodes")) {
        for (const auto& node : result.ast["nodes"])
            if (node.value("nodeType", "") == "ContractDefinition")
                order.push_back(node.value("name", ""));
    }
    const Json& contracts = slice["contracts"];
    for (const auto& [cname, _] : contracts.items())
        if (std::find(order.begin(), order.end(), cname) == order.end()) order.push_back(cname);

    for (const auto& cname : order) {
        if (!contracts.contains(cname)) continue;
        const Json& c = contracts[cname];
        ContractArtifact artifact;
        artifact.name = cname;
        if (c.contains("abi")) artifact.abi = c["abi"];
        if (c.contains("evm")) {
            const auto hexed = c["evm"].value("bytecode", Json::object()).value("object", "");
            artifact.creation_bytecode = from_hex(hexed).value_or(Bytes{});
            const auto runtime =
                c["evm"].value("deployedBytecode", Json::object()).value("object", "");
            artifact.runtime_bytecode = from_hex(runtime).value_or(Bytes{});
        }
        result.contracts.push_back(std::move(artifact));
    }

    result.ok = !has_error && !result.ast.is_null();
    if (!version_.empty() && !settings.requested_version.empty() &&
        version_.rfind(settings.requested_version, 0) != 0) {
        Diagnostic d;
        d.severity = "info";
        d.type = "CompilerVersionMismatch";
        d.message = "resolved compiler " + version_ + " differs from requested " +
                    settings.requested_version;
        d.formatted = d.message;
        result.diagnostics.push_back(std::move(d));
    }
    return result;
}

CompilationResult Compiler::compile(const std::string& source, const CompilerSettings& settings,
                                    const std::string& name) {
    auto results = compile_many({{name, source}}, settings);
    return std::move(results.front());
}

std::vector<CompilationResult> Compiler::compile_many(
    const std::vector<std::pair<std::string, std::string>>& named_sources,
    const CompilerSettings& settings) {
    const std::string& ver = version();  // resolves the compiler

    auto cache_key = [&](const std::string& source) {
        return keccak256_hex(ver + "\x01" + settings.cache_key_material() + "\x01" + source);
    };

    std::vector<std::string> keys;
    keys.reserve(named_sources.size());
    std::vector<std::pair<std::string, std::string>> misses;  // (name, source)
    std::vector<size_t> miss_index;
    std::vector<Json> slices(named_sources.size());

    {
        std::lock_guard lock(mutex_);
        for (size_t i = 0; i < named_sources.size(); ++i) {
            const auto& [name, source] = named_sources[i];
            keys.push_back(cache_key(source));
            if (auto it = memory_cache_.find(keys[i]); it != memory_cache_.end()) {
                slices[i] = it->second;
                continue;
            }
            if (!disk_cache_dir_.empty()) {
                std::ifstream f(fs::path(disk_cache_dir_) / (keys[i] + ".json"));
                if (f) {
                    Json j = Json::parse(f, nullptr, false);
                    if (!j.is_discarded()) {
                        memory_cache_[keys[i]] = j;
                        slices[i] = std::move(j);
                        continue;
                    }
                }
            }
            misses.emplace_back(named_sources[i]);
            miss_index.push_back(i);
        }
    }

    if (!misses.empty()) {
        // Batch names must be unique within the request; disambiguate duplicates.
        std::map<std::string, int> seen;
        std::vector<std::pair<std::string, std::string>> batch = misses;
        for (auto& [name, _] : batch) {
            const int n = seen[name]++;
            if (n > 0) name = std::to_string(n) + "_" + name;
        }
        const Json request = build_request(batch, settings);
        const auto proc = run_process({command_, "--standard-json"}, request.dump(), 600);
        if (proc.spawn_failed)
            throw EnvironmentError("failed to spawn Solidity compiler '" + command_ + "'");
        const auto brace = proc.out.find('{');
        if (brace == std::string::npos)
            throw EnvironmentError("compiler produced no JSON output: " + proc.err);
        Json output = Json::parse(proc.out.substr(brace), nullptr, false);
        if (output.is_discarded())
            throw EnvironmentError("compiler produced malformed JSON output");

        std::lock_guard lock(mutex_);
        for (size_t m = 0; m < batch.size(); ++m) {
            const size_t i = miss_index[m];
            Json slice = slice_output(output, batch[m].first);
            // A batch-wide abort can leave a source without contracts or
            // errors; such slices are still cached (they reparse identically).
            memory_cache_[keys[i]] = slice;
            if (!disk_cache_dir_.empty()) {
                const auto path = fs::path(disk_cache_dir_) / (keys[i] + ".json");
                std::ofstream f(path.string() + ".tmp");
                f << slice.dump();
                f.close();
                std::error_code ec;
                fs::rename(path.string() + ".tmp", path, ec);
            }
            slices[i] = std::move(slice);
        }
    }

    std::vector<CompilationResult> results;
    results.reserve(named_sources.size());
    for (size_t i = 0; i < named_sources.size(); ++i)
        results.push_back(
            from_slice(slices[i], named_sources[i].first, named_sources[i].second, settings));
    return results;
}

}  // namespace gasloop::frontend
