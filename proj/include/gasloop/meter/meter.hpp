// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "gasloop/bytes.hpp"
#include "gasloop/evm/evm.hpp"

namespace gasloop::meter {

using Json = nlohmann::json;

struct GasMeasurement {
    uint64_t gas = 0;
    std::string backend;
    std::string bytecode_hash;          // keccak256 of the creation bytecode
    std::string constructor_args_hash;  // keccak256 of the encoded arguments
    std::string evm_spec;               // fork identifier

    Json to_json() const;
    static GasMeasurement from_json(const Json& j);
};

struct GasDelta {
    GasMeasurement before;
    GasMeasurement after;
    int64_t absolute = 0;  // before - after
    double ratio = 0.0;    // (before - after) / before

    Json to_json() const;
};

struct Discrepancy {
    std::vector<GasMeasurement> measurements;
    std::string message;
};

/// Deployment failed on the backend (revert or out of gas).
class DeploymentError : public std::runtime_error {
public:
    DeploymentError(const std::string& what, Bytes revert_data)
        : std::runtime_error(what), revert_data(std::move(revert_data)) {}
    Bytes revert_data;
};

class GasBackend {
public:
    virtual ~GasBackend() = default;
    virtual std::string id() const = 0;
    virtual std::string evm_spec() const = 0;
    /// Gas consumed by the creation transaction, inclusive of intrinsic and
    /// code-deposit cost. Throws DeploymentError on revert/OOG and
    /// EnvironmentError when the backend is unreachable.
    virtual GasMeasurement measure_deployment(const Bytes& creation_bytecode,
                                              const Bytes& constructor_args) = 0;
};

/// Hermetic in-process backend; the default and the one tests rely on.
class EmbeddedBackend final : public GasBackend {
public:
    explicit EmbeddedBackend(evm::Fork fork = evm::Fork::Shanghai,
                             evm::BlockContext block = {});
    std::string id() const override;
    std::string evm_spec() const override;
    GasMeasurement measure_deployment(const Bytes& creation_bytecode,
                                      const Bytes& constructor_args) override;

    /// The fixed, funded deployer account used for every measurement.
    static const Address& deployer();

private:
    evm::Fork fork_;
    evm::BlockContext block_;
};

/// External node over Ethereum JSON-RPC (eth_sendTransaction + receipt).
class RpcBackend final : public GasBackend {
public:
    explicit RpcBackend(std::string url, std::string spec_label = "rpc");
    std::string id() const override;
    std::string evm_spec() const override;
    GasMeasurement measure_deployment(const Bytes& creation_bytecode,
                                      const Bytes& constructor_args) override;

private:
    Json rpc(const std::string& method, const Json& params);
    std::string url_;
    std::string spec_label_;
};

GasMeasurement measure_deployment(const Bytes& creation_bytecode, const Bytes& constructor_args,
                                  GasBackend& backend);

/// Throws std::invalid_argument when backend or fork spec differ.
GasDelta compare(const GasMeasurement& before, const GasMeasurement& after);

/// Agreement across backends or a per-backend discrepancy record.
/// Unreachable backends are skipped with a warning; fewer than one usable
/// backend is an environment error.
std::variant<GasMeasurement, Discrepancy> cross_validate(
    const Bytes& creation_bytecode, const Bytes& constructor_args,
    const std::vector<std::shared_ptr<GasBackend>>& backends,
    std::vector<std::string>* warnings = nullptr);

}  // namespace gasloop::meter
