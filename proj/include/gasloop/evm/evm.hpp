// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gasloop/bytes.hpp"
#include "gasloop/u256.hpp"

namespace gasloop::evm {

enum class Fork {
    London,    // pre-Shanghai rules: no PUSH0, no initcode metering
    Shanghai,  // default; matches solc 0.8.20's default EVM target
};

std::string fork_name(Fork f);
Fork fork_from_name(const std::string& name);

struct ForkRules {
    bool has_push0 = true;         // EIP-3855
    bool initcode_metering = true; // EIP-3860
    static ForkRules get(Fork f);
};

struct BlockContext {
    uint64_t number = 1;
    uint64_t timestamp = 1700000000;
    uint64_t gas_limit = 30'000'000;
    Address coinbase{};
    U256 prev_randao = 0;
    U256 base_fee = 0;
    uint64_t chain_id = 1337;
};

struct Account {
    uint64_t nonce = 0;
    U256 balance = 0;
    Bytes code;
    std::map<U256, U256> storage;

    bool is_empty() const { return nonce == 0 && balance == 0 && code.empty(); }
};

struct State {
    std::map<Address, Account> accounts;

    Account& get_or_create(const Address& a) { return accounts[a]; }
    const Account* find(const Address& a) const {
        auto it = accounts.find(a);
        return it == accounts.end() ? nullptr : &it->second;
    }
    bool exists_and_nonempty(const Address& a) const {
        const auto* acc = find(a);
        return acc != nullptr && !acc->is_empty();
    }
};

struct LogEntry {
    Address address{};
    std::vector<U256> topics;
    Bytes data;
};

enum class Status {
    Success,
    Revert,
    OutOfGas,
    InvalidInstruction,
    StackUnderflow,
    StackOverflow,
    BadJumpDestination,
    StaticModeViolation,
    InvalidCode,        // EIP-3541 / EIP-170 deposit failures
    DepthExceeded,
    InsufficientBalance,
    InvalidTransaction, // intrinsic gas exceeds limit, oversized initcode, ...
};

std::string status_name(Status s);

struct TxResult {
    Status status = Status::Success;
    uint64_t gas_used = 0;
    Bytes output;  // return data on success, revert data on revert
    std::vector<LogEntry> logs;
    Address created_address{};  // creation transactions only
    std::string error;

    bool success() const { return status == Status::Success; }
};

/// In-process EVM with deterministic block context and full gas accounting
/// (EIP-150/161/170/2028/2200/2929/3529/3541/3855/3860 as per fork).
class Evm {
public:
    explicit Evm(Fork fork = Fork::Shanghai, BlockContext block = {});

    State& state() { return state_; }
    const State& state() const { return state_; }
    Fork fork() const { return fork_; }
    const BlockContext& block() const { return block_; }

    void set_balance(const Address& a, const U256& balance);

    /// Contract-creation transaction. Gas used includes the intrinsic cost,
    /// initcode metering (Shanghai), execution, and code-deposit charge.
    TxResult transact_create(const Address& sender, const Bytes& init_code, const U256& value,
                             int64_t gas_limit);

    /// Message-call transaction.
    TxResult transact_call(const Address& sender, const Address& to, const Bytes& data,
                           const U256& value, int64_t gas_limit);

private:
    Fork fork_;
    ForkRules rules_;
    BlockContext block_;
    State state_;
};

}  // namespace gasloop::evm
