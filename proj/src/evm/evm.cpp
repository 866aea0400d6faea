// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#include "gasloop/evm/evm.hpp"

#include <cassert>
#include <cstring>
#include <stdexcept>

#include "gasloop/crypto.hpp"
#include "gasloop/rlp.hpp"

namespace gasloop::evm {

std::string fork_name(Fork f) {
    switch (f) {
        case Fork::London: return "london";
        case Fork::Shanghai: return "shanghai";
    }
    return "unknown";
}

Fork fork_from_name(const std::string& name) {
    if (name == "london") return Fork::London;
    if (name == "shanghai") return Fork::Shanghai;
    throw std::invalid_argument("unknown fork: " + name);
}

ForkRules ForkRules::get(Fork f) {
    ForkRules r;
    if (f == Fork::London) {
        r.has_push0 = false;
        r.initcode_metering = false;
    }
    return r;
}

std::string status_name(Status s) {
    switch (s) {
        case Status::Success: return "success";
        case Status::Revert: return "revert";
        case Status::OutOfGas: return "out_of_gas";
        case Status::InvalidInstruction: return "invalid_instruction";
        case Status::StackUnderflow: return "stack_underflow";
        case Status::StackOverflow: return "stack_overflow";
        case Status::BadJumpDestination: return "bad_jump_destination";
        case Status::StaticModeViolation: return "static_mode_violation";
        case Status::InvalidCode: return "invalid_code";
        case Status::DepthExceeded: return "depth_exceeded";
        case Status::InsufficientBalance: return "insufficient_balance";
        case Status::InvalidTransaction: return "invalid_transaction";
    }
    return "unknown";
}

namespace {

// --- gas schedule (Shanghai unless gated by ForkRules) ---
namespace g {
constexpr int64_t kBase = 2;
constexpr int64_t kVeryLow = 3;
constexpr int64_t kLow = 5;
constexpr int64_t kMid = 8;
constexpr int64_t kHigh = 10;
constexpr int64_t kJumpdest = 1;
constexpr int64_t kExp = 10;
constexpr int64_t kExpByte = 50;
constexpr int64_t kKeccak = 30;
constexpr int64_t kKeccakWord = 6;
constexpr int64_t kCopyWord = 3;
constexpr int64_t kMemWord = 3;
constexpr int64_t kBlockhash = 20;
constexpr int64_t kSelfBalance = 5;
constexpr int64_t kWarmAccess = 100;       // EIP-2929
constexpr int64_t kColdAccountAccess = 2600;
constexpr int64_t kColdSload = 2100;
constexpr int64_t kSstoreSet = 20000;      // EIP-2200
constexpr int64_t kSstoreReset = 2900;     // 5000 - COLD_SLOAD_COST
constexpr int64_t kSstoreSentry = 2300;
constexpr int64_t kSstoreClearRefund = 4800;  // EIP-3529
constexpr int64_t kLog = 375;
constexpr int64_t kLogTopic = 375;
constexpr int64_t kLogDataByte = 8;
constexpr int64_t kCreate = 32000;
constexpr int64_t kCallValue = 9000;
constexpr int64_t kCallStipend = 2300;
constexpr int64_t kNewAccount = 25000;
constexpr int64_t kSelfdestruct = 5000;
constexpr int64_t kCodeDepositByte = 200;
constexpr int64_t kTx = 21000;
constexpr int64_t kTxCreate = 32000;
constexpr int64_t kTxDataZero = 4;
constexpr int64_t kTxDataNonZero = 16;    // EIP-2028
constexpr int64_t kInitcodeWord = 2;      // EIP-3860
constexpr size_t kMaxCodeSize = 24576;    // EIP-170
constexpr size_t kMaxInitcodeSize = 49152;
}  // namespace g

// --- opcodes ---
enum Op : uint8_t {
    OP_STOP = 0x00, OP_ADD = 0x01, OP_MUL = 0x02, OP_SUB = 0x03, OP_DIV = 0x04,
    OP_SDIV = 0x05, OP_MOD = 0x06, OP_SMOD = 0x07, OP_ADDMOD = 0x08, OP_MULMOD = 0x09,
    OP_EXP = 0x0a, OP_SIGNEXTEND = 0x0b,
    OP_LT = 0x10, OP_GT = 0x11, OP_SLT = 0x12, OP_SGT = 0x13, OP_EQ = 0x14,
    OP_ISZERO = 0x15, OP_AND = 0x16, OP_OR = 0x17, OP_XOR = 0x18, OP_NOT = 0x19,
    OP_BYTE = 0x1a, OP_SHL = 0x1b, OP_SHR = 0x1c, OP_SAR = 0x1d,
    OP_KECCAK256 = 0x20,
    OP_ADDRESS = 0x30, OP_BALANCE = 0x31, OP_ORIGIN = 0x32, OP_CALLER = 0x33,
    OP_CALLVALUE = 0x34, OP_CALLDATALOAD = 0x35, OP_CALLDATASIZE = 0x36,
    OP_CALLDATACOPY = 0x37, OP_CODESIZE = 0x38, OP_CODECOPY = 0x39, OP_GASPRICE = 0x3a,
    OP_EXTCODESIZE = 0x3b, OP_EXTCODECOPY = 0x3c, OP_RETURNDATASIZE = 0x3d,
    OP_RETURNDATACOPY = 0x3e, OP_EXTCODEHASH = 0x3f,
    OP_BLOCKHASH = 0x40, OP_COINBASE = 0x41, OP_TIMESTAMP = 0x42, OP_NUMBER = 0x43,
    OP_PREVRANDAO = 0x44, OP_GASLIMIT = 0x45, OP_CHAINID = 0x46, OP_SELFBALANCE = 0x47,
    OP_BASEFEE = 0x48,
    OP_POP = 0x50, OP_MLOAD = 0x51, OP_MSTORE = 0x52, OP_MSTORE8 = 0x53, OP_SLOAD = 0x54,
    OP_SSTORE = 0x55, OP_JUMP = 0x56, OP_JUMPI = 0x57, OP_PC = 0x58, OP_MSIZE = 0x59,
    OP_GAS = 0x5a, OP_JUMPDEST = 0x5b, OP_PUSH0 = 0x5f,
    OP_PUSH1 = 0x60, OP_PUSH32 = 0x7f,
    OP_DUP1 = 0x80, OP_DUP16 = 0x8f, OP_SWAP1 = 0x90, OP_SWAP16 = 0x9f,
    OP_LOG0 = 0xa0, OP_LOG4 = 0xa4,
    OP_CREATE = 0xf0, OP_CALL = 0xf1, OP_CALLCODE = 0xf2, OP_RETURN = 0xf3,
    OP_DELEGATECALL = 0xf4, OP_CREATE2 = 0xf5, OP_STATICCALL = 0xfa, OP_REVERT = 0xfd,
    OP_INVALID = 0xfe, OP_SELFDESTRUCT = 0xff,
};

struct Traits {
    bool defined = false;
    int8_t inputs = 0;
    int8_t outputs = 0;
    int16_t base_gas = 0;
};

struct TraitsTable {
    Traits t[256];

    void def(int op, int in, int out, int64_t gas) {
        t[op] = Traits{true, static_cast<int8_t>(in), static_cast<int8_t>(out),
                       static_cast<int16_t>(gas)};
    }

    TraitsTable() {
        def(OP_STOP, 0, 0, 0);
        def(OP_ADD, 2, 1, g::kVeryLow);
        def(OP_MUL, 2, 1, g::kLow);
        def(OP_SUB, 2, 1, g::kVeryLow);
        def(OP_DIV, 2, 1, g::kLow);
        def(OP_SDIV, 2, 1, g::kLow);
        def(OP_MOD, 2, 1, g::kLow);
        def(OP_SMOD, 2, 1, g::kLow);
        def(OP_ADDMOD, 3, 1, g::kMid);
        def(OP_MULMOD, 3, 1, g::kMid);
        def(OP_EXP, 2, 1, g::kExp);
        def(OP_SIGNEXTEND, 2, 1, g::kLow);
        for (int op = OP_LT; op <= OP_EQ; ++op) def(op, 2, 1, g::kVeryLow);
        def(OP_ISZERO, 1, 1, g::kVeryLow);
        def(OP_AND, 2, 1, g::kVeryLow);
        def(OP_OR, 2, 1, g::kVeryLow);
        def(OP_XOR, 2, 1, g::kVeryLow);
        def(OP_NOT, 1, 1, g::kVeryLow);
        def(OP_BYTE, 2, 1, g::kVeryLow);
        def(OP_SHL, 2, 1, g::kVeryLow);
        def(OP_SHR, 2, 1, g::kVeryLow);
        def(OP_SAR, 2, 1, g::kVeryLow);
        def(OP_KECCAK256, 2, 1, g::kKeccak);
        def(OP_ADDRESS, 0, 1, g::kBase);
        def(OP_BALANCE, 1, 1, 0);  // dynamic (EIP-2929)
        def(OP_ORIGIN, 0, 1, g::kBase);
        def(OP_CALLER, 0, 1, g::kBase);
        def(OP_CALLVALUE, 0, 1, g::kBase);
        def(OP_CALLDATALOAD, 1, 1, g::kVeryLow);
        def(OP_CALLDATASIZE, 0, 1, g::kBase);
        def(OP_CALLDATACOPY, 3, 0, g::kVeryLow);
        def(OP_CODESIZE, 0, 1, g::kBase);
        def(OP_CODECOPY, 3, 0, g::kVeryLow);
        def(OP_GASPRICE, 0, 1, g::kBase);
        def(OP_EXTCODESIZE, 1, 1, 0);
        def(OP_EXTCODECOPY, 4, 0, 0);
        def(OP_RETURNDATASIZE, 0, 1, g::kBase);
        def(OP_RETURNDATACOPY, 3, 0, g::kVeryLow);
        def(OP_EXTCODEHASH, 1, 1, 0);
        def(OP_BLOCKHASH, 1, 1, g::kBlockhash);
        def(OP_COINBASE, 0, 1, g::kBase);
        def(OP_TIMESTAMP, 0, 1, g::kBase);
        def(OP_NUMBER, 0, 1, g::kBase);
        def(OP_PREVRANDAO, 0, 1, g::kBase);
        def(OP_GASLIMIT, 0, 1, g::kBase);
        def(OP_CHAINID, 0, 1, g::kBase);
        def(OP_SELFBALANCE, 0, 1, g::kSelfBalance);
        def(OP_BASEFEE, 0, 1, g::kBase);
        def(OP_POP, 1, 0, g::kBase);
        def(OP_MLOAD, 1, 1, g::kVeryLow);
        def(OP_MSTORE, 2, 0, g::kVeryLow);
        def(OP_MSTORE8, 2, 0, g::kVeryLow);
        def(OP_SLOAD, 1, 1, 0);
        def(OP_SSTORE, 2, 0, 0);
        def(OP_JUMP, 1, 0, g::kMid);
        def(OP_JUMPI, 2, 0, g::kHigh);
        def(OP_PC, 0, 1, g::kBase);
        def(OP_MSIZE, 0, 1, g::kBase);
        def(OP_GAS, 0, 1, g::kBase);
        def(OP_JUMPDEST, 0, 0, g::kJumpdest);
        def(OP_PUSH0, 0, 1, g::kBase);
        for (int op = OP_PUSH1; op <= OP_PUSH32; ++op) def(op, 0, 1, g::kVeryLow);
        for (int op = OP_DUP1; op <= OP_DUP16; ++op)
            def(op, op - OP_DUP1 + 1, op - OP_DUP1 + 2, g::kVeryLow);
        for (int op = OP_SWAP1; op <= OP_SWAP16; ++op)
            def(op, op - OP_SWAP1 + 2, op - OP_SWAP1 + 2, g::kVeryLow);
        for (int op = OP_LOG0; op <= OP_LOG4; ++op) def(op, 2 + (op - OP_LOG0), 0, 0);
        def(OP_CREATE, 3, 1, 0);
        def(OP_CALL, 7, 1, 0);
        def(OP_CALLCODE, 7, 1, 0);
        def(OP_RETURN, 2, 0, 0);
        def(OP_DELEGATECALL, 6, 1, 0);
        def(OP_CREATE2, 4, 1, 0);
        def(OP_STATICCALL, 6, 1, 0);
        def(OP_REVERT, 2, 0, 0);
        def(OP_INVALID, 0, 0, 0);
        def(OP_SELFDESTRUCT, 1, 0, g::kSelfdestruct);
    }
};

const TraitsTable kTraits{};

std::vector<bool> analyze_jumpdests(const Bytes& code) {
    std::vector<bool> valid(code.size(), false);
    for (size_t i = 0; i < code.size(); ++i) {
        const uint8_t op = code[i];
        if (op >= OP_PUSH1 && op <= OP_PUSH32)
            i += op - OP_PUSH1 + 1;
        else if (op == OP_JUMPDEST)
            valid[i] = true;
    }
    return valid;
}

int64_t words(uint64_t size) {
    return static_cast<int64_t>((size + 31) / 32);
}

int64_t calldata_cost(const Bytes& data) {
    int64_t cost = 0;
    for (uint8_t b : data) cost += (b == 0) ? g::kTxDataZero : g::kTxDataNonZero;
    return cost;
}

struct Message {
    Address recipient{};   // account whose storage/balance context applies
    Address code_address{};
    Address sender{};
    U256 value = 0;        // apparent value (DELEGATECALL keeps parent's)
    const Bytes* input = nullptr;
    const Bytes* code = nullptr;
    int64_t gas = 0;
    int depth = 0;
    bool is_static = false;
    bool transfers_value = true;  // false for DELEGATECALL/STATICCALL
};

struct FrameResult {
    Status status = Status::Success;
    int64_t gas_left = 0;
    Bytes output;
};

using SlotKey = std::pair<Address, U256>;

// Transaction-scoped interpreter host: substate, access sets, frame stack.
class Interp {
public:
    Interp(State& state, ForkRules rules, const BlockContext& block, Fork fork)
        : state_(state), rules_(rules), block_(block), fork_(fork) {}

    State& state_;
    ForkRules rules_;
    const BlockContext& block_;
    Fork fork_;
    Address origin_{};
    U256 gas_price_ = 0;

    std::set<Address> warm_addresses_;
    std::set<SlotKey> warm_slots_;
    std::map<SlotKey, U256> tx_original_storage_;
    std::set<Address> destroyed_;
    int64_t refund_ = 0;
    std::vector<LogEntry> logs_;

    struct Snapshot {
        State state;
        size_t logs_size;
        int64_t refund;
        std::set<Address> warm_addresses;
        std::set<SlotKey> warm_slots;
        std::set<Address> destroyed;
    };

    Snapshot snapshot() const {
        return Snapshot{state_, logs_.size(), refund_, warm_addresses_, warm_slots_, destroyed_};
    }

    void restore(Snapshot&& snap) {
        state_ = std::move(snap.state);
        logs_.resize(snap.logs_size);
        refund_ = snap.refund;
        warm_addresses_ = std::move(snap.warm_addresses);
        warm_slots_ = std::move(snap.warm_slots);
        destroyed_ = std::move(snap.destroyed);
    }

    void warm_tx_defaults(const Address& sender, const Address& target) {
        warm_addresses_.insert(sender);
        warm_addresses_.insert(target);
        for (uint8_t p = 1; p <= 9; ++p) {
            Address a{};
            a[19] = p;
            warm_addresses_.insert(a);
        }
        if (fork_ >= Fork::Shanghai) warm_addresses_.insert(block_.coinbase);  // EIP-3651
    }

    // true if the address was cold (and is now warm)
    bool access_address(const Address& a) {
        return warm_addresses_.insert(a).second;
    }

    bool access_slot(const Address& a, const U256& key) {
        return warm_slots_.insert({a, key}).second;
    }

    const U256& original_storage(const Address& a, const U256& key, const U256& current) {
        auto it = tx_original_storage_.find({a, key});
        if (it == tx_original_storage_.end())
            it = tx_original_storage_.emplace(SlotKey{a, key}, current).first;
        return it->second;
    }

    FrameResult call(const Message& msg);
    FrameResult create(const Address& sender, const Address& created, const Bytes& init_code,
                       const U256& value, int64_t gas, int depth, bool is_static);

private:
    FrameResult execute(const Message& msg);
    FrameResult run_precompile(const Message& msg);
};

bool is_precompile(const Address& a) {
    for (size_t i = 0; i < 19; ++i)
        if (a[i] != 0) return false;
    return a[19] >= 1 && a[19] <= 9;
}

FrameResult Interp::run_precompile(const Message& msg) {
    const uint8_t id = msg.code_address[19];
    const Bytes& in = *msg.input;
    int64_t cost = 0;
    Bytes out;
    switch (id) {
        case 1:  // ecrecover: signature recovery is out of scope; behaves as
                 // an invalid-signature result (success, empty output).
            cost = 3000;
            break;
        case 2:
            cost = 60 + 12 * words(in.size());
            break;
        case 4:
            cost = 15 + 3 * words(in.size());
            break;
        default:
            // Unimplemented precompile: fail loudly rather than return wrong data.
            return FrameResult{Status::InvalidInstruction, 0, {}};
    }
    if (cost > msg.gas) return FrameResult{Status::OutOfGas, 0, {}};
    if (id == 2) {
        const auto h = sha256(in.data(), in.size());
        out.assign(h.begin(), h.end());
    } else if (id == 4) {
        out = in;
    }
    return FrameResult{Status::Success, msg.gas - cost, std::move(out)};
}

FrameResult Interp::call(const Message& msg) {
    if (msg.depth > 1024) return FrameResult{Status::DepthExceeded, msg.gas, {}};

    auto snap = snapshot();

    if (msg.transfers_value && msg.value != 0) {
        auto& sender_acc = state_.get_or_create(msg.sender);
        if (sender_acc.balance < msg.value) {
            return FrameResult{Status::InsufficientBalance, msg.gas, {}};
        }
        sender_acc.balance -= msg.value;
        state_.get_or_create(msg.recipient).balance += msg.value;
    }

    FrameResult result;
    if (is_precompile(msg.code_address)) {
        result = run_precompile(msg);
    } else {
        result = execute(msg);
    }

    if (result.status != Status::Success) {
        // Revert keeps its gas and output; other failures consume everything.
        restore(std::move(snap));
        if (result.status != Status::Revert) result.gas_left = 0;
    }
    return result;
}

FrameResult Interp::create(const Address& sender, const Address& created, const Bytes& init_code,
                           const U256& value, int64_t gas, int depth, bool is_static) {
    if (depth > 1024) return FrameResult{Status::DepthExceeded, gas, {}};

    // Address collision is an exceptional abort consuming the forwarded gas.
    if (const auto* existing = state_.find(created);
        existing != nullptr && (existing->nonce != 0 || !existing->code.empty()))
        return FrameResult{Status::InvalidCode, 0, {}};

    auto snap = snapshot();
    warm_addresses_.insert(created);

    auto& sender_acc = state_.get_or_create(sender);
    if (sender_acc.balance < value) {
        restore(std::move(snap));
        return FrameResult{Status::InsufficientBalance, gas, {}};
    }
    sender_acc.balance -= value;
    auto& created_acc = state_.get_or_create(created);
    created_acc.nonce = 1;  // EIP-161
    created_acc.balance += value;
    created_acc.storage.clear();

    Message msg;
    msg.recipient = created;
    msg.code_address = created;
    msg.sender = sender;
    msg.value = value;
    static const Bytes kEmpty;
    msg.input = &kEmpty;
    msg.code = &init_code;
    msg.gas = gas;
    msg.depth = depth;
    msg.is_static = is_static;

    FrameResult r = execute(msg);
    if (r.status == Status::Success) {
        const Bytes& deployed = r.output;
        const int64_t deposit = static_cast<int64_t>(deployed.size()) * g::kCodeDepositByte;
        if (deployed.size() > g::kMaxCodeSize ||
            (!deployed.empty() && deployed[0] == 0xef) ||  // EIP-3541
            deposit > r.gas_left) {
            restore(std::move(snap));
            return FrameResult{Status::InvalidCode, 0, {}};
        }
        r.gas_left -= deposit;
        state_.get_or_create(created).code = deployed;
        r.output.clear();
        return r;
    }

    restore(std::move(snap));
    if (r.status != Status::Revert) r.gas_left = 0;
    return r;
}

// Bounded memory view; charges quadratic expansion cost against `gas`.
struct Memory {
    Bytes bytes;

    static int64_t cost_of(uint64_t word_count) {
        const int64_t w = static_cast<int64_t>(word_count);
        return g::kMemWord * w + (w * w) / 512;
    }

    // Returns false on out-of-gas / absurd ranges.
    bool grow(const U256& offset, const U256& size, int64_t& gas) {
        if (size == 0) return true;
        if (offset > (U256(1) << 40) || size > (U256(1) << 40)) return false;
        const uint64_t end = static_cast<uint64_t>(offset) + static_cast<uint64_t>(size);
        const uint64_t current_words = bytes.size() / 32;
        const uint64_t needed_words = (end + 31) / 32;
        if (needed_words <= current_words) return true;
        const int64_t delta = cost_of(needed_words) - cost_of(current_words);
        if (delta > gas) return false;
        gas -= delta;
        bytes.resize(needed_words * 32, 0);
        return true;
    }

    void store(uint64_t offset, const uint8_t* data, uint64_t size) {
        if (size > 0) std::memcpy(bytes.data() + offset, data, size);
    }

    // Copy with zero fill past the source end (CALLDATACOPY/CODECOPY rule).
    void copy_padded(uint64_t dst, const Bytes& src, const U256& src_off, uint64_t size) {
        for (uint64_t i = 0; i < size; ++i) {
            const U256 pos = src_off + i;
            bytes[dst + i] =
                (pos < src.size()) ? src[static_cast<size_t>(pos)] : uint8_t{0};
        }
    }
};

// Single evaluation of `amount`: operands may have access-list side effects.
#define REQUIRE_GAS(amount)                                        \
    do {                                                           \
        const int64_t required_gas_ = (amount);                    \
        if (required_gas_ > gas) return fail(Status::OutOfGas);    \
        gas -= required_gas_;                                      \
    } while (0)

FrameResult Interp::execute(const Message& msg) {
    const Bytes& code = *msg.code;
    const Bytes& input = *msg.input;
    const auto jumpdests = analyze_jumpdests(code);

    std::vector<U256> stack;
    stack.reserve(64);
    Memory memory;
    Bytes returndata;
    int64_t gas = msg.gas;
    size_t pc = 0;

    auto fail = [&](Status s) {
        return FrameResult{s, 0, {}};
    };

    while (pc < code.size()) {
        const uint8_t op = code[pc];
        const Traits& tr = kTraits.t[op];

        if (!tr.defined || (op == OP_PUSH0 && !rules_.has_push0))
            return fail(Status::InvalidInstruction);
        if (stack.size() < static_cast<size_t>(tr.inputs)) return fail(Status::StackUnderflow);
        if (stack.size() - tr.inputs + tr.outputs > 1024) return fail(Status::StackOverflow);
        REQUIRE_GAS(tr.base_gas);

        auto pop = [&]() {
            U256 v = stack.back();
            stack.pop_back();
            return v;
        };
        auto push = [&](const U256& v) { stack.push_back(v); };

        switch (op) {
            case OP_STOP:
                return FrameResult{Status::Success, gas, {}};

            case OP_ADD: { const U256 a = pop(), b = pop(); push(u256::add(a, b)); break; }
            case OP_MUL: { const U256 a = pop(), b = pop(); push(u256::mul(a, b)); break; }
            case OP_SUB: { const U256 a = pop(), b = pop(); push(u256::sub(a, b)); break; }
            case OP_DIV: { const U256 a = pop(), b = pop(); push(u256::div(a, b)); break; }
            case OP_SDIV: { const U256 a = pop(), b = pop(); push(u256::sdiv(a, b)); break; }
            case OP_MOD: { const U256 a = pop(), b = pop(); push(u256::mod(a, b)); break; }
            case OP_SMOD: { const U256 a = pop(), b = pop(); push(u256::smod(a, b)); break; }
            case OP_ADDMOD: {
                const U256 a = pop(), b = pop(), n = pop();
                push(u256::addmod(a, b, n));
                break;
            }
            case OP_MULMOD: {
                const U256 a = pop(), b = pop(), n = pop();
                push(u256::mulmod(a, b, n));
                break;
            }
            case OP_EXP: {
                const U256 base = pop(), exponent = pop();
                REQUIRE_GAS(g::kExpByte * u256::byte_width(exponent));
                push(u256::exp(base, exponent));
                break;
            }
            case OP_SIGNEXTEND: {
                const U256 index = pop(), value = pop();
                push(u256::signextend(index, value));
                break;
            }

            case OP_LT: { const U256 a = pop(), b = pop(); push(a < b ? 1 : 0); break; }
            case OP_GT: { const U256 a = pop(), b = pop(); push(a > b ? 1 : 0); break; }
            case OP_SLT: { const U256 a = pop(), b = pop(); push(u256::slt(a, b) ? 1 : 0); break; }
            case OP_SGT: { const U256 a = pop(), b = pop(); push(u256::sgt(a, b) ? 1 : 0); break; }
            case OP_EQ: { const U256 a = pop(), b = pop(); push(a == b ? 1 : 0); break; }
            case OP_ISZERO: push(pop() == 0 ? 1 : 0); break;
            case OP_AND: { const U256 a = pop(), b = pop(); push(a & b); break; }
            case OP_OR: { const U256 a = pop(), b = pop(); push(a | b); break; }
            case OP_XOR: { const U256 a = pop(), b = pop(); push(a ^ b); break; }
            case OP_NOT: push(u256::max() ^ pop()); break;
            case OP_BYTE: { const U256 i = pop(), v = pop(); push(u256::byte_at(i, v)); break; }
            case OP_SHL: { const U256 s = pop(), v = pop(); push(u256::shl(s, v)); break; }
            case OP_SHR: { const U256 s = pop(), v = pop(); push(u256::shr(s, v)); break; }
            case OP_SAR: { const U256 s = pop(), v = pop(); push(u256::sar(s, v)); break; }

            case OP_KECCAK256: {
                const U256 off = pop(), size = pop();
                if (!memory.grow(off, size, gas)) return fail(Status::OutOfGas);
                REQUIRE_GAS(g::kKeccakWord * words(static_cast<uint64_t>(size)));
                const auto h = keccak256(memory.bytes.data() + static_cast<uint64_t>(off),
                                         static_cast<uint64_t>(size));
                push(u256::from_bytes32(h.data()));
                break;
            }

            case OP_ADDRESS: push(u256::from_address(msg.recipient)); break;
            case OP_BALANCE: {
                const Address a = u256::to_address(pop());
                REQUIRE_GAS(access_address(a) ? g::kColdAccountAccess : g::kWarmAccess);
                const auto* acc = state_.find(a);
                push(acc ? acc->balance : U256(0));
                break;
            }
            case OP_ORIGIN: push(u256::from_address(origin_)); break;
            case OP_CALLER: push(u256::from_address(msg.sender)); break;
            case OP_CALLVALUE: push(msg.value); break;
            case OP_CALLDATALOAD: {
                const U256 off = pop();
                uint8_t buf[32] = {};
                for (int i = 0; i < 32; ++i) {
                    const U256 pos = off + i;
                    if (pos < input.size()) buf[i] = input[static_cast<size_t>(pos)];
                }
                push(u256::from_bytes32(buf));
                break;
            }
            case OP_CALLDATASIZE: push(input.size()); break;
            case OP_CALLDATACOPY: {
                const U256 dst = pop(), src = pop(), size = pop();
                if (!memory.grow(dst, size, gas)) return fail(Status::OutOfGas);
                REQUIRE_GAS(g::kCopyWord * words(static_cast<uint64_t>(size)));
                memory.copy_padded(static_cast<uint64_t>(dst), input, src,
                                   static_cast<uint64_t>(size));
                break;
            }
            case OP_CODESIZE: push(code.size()); break;
            case OP_CODECOPY: {
                const U256 dst = pop(), src = pop(), size = pop();
                if (!memory.grow(dst, size, gas)) return fail(Status::OutOfGas);
                REQUIRE_GAS(g::kCopyWord * words(static_cast<uint64_t>(size)));
                memory.copy_padded(static_cast<uint64_t>(dst), code, src,
                                   static_cast<uint64_t>(size));
                break;
            }
            case OP_GASPRICE: push(gas_price_); break;
            case OP_EXTCODESIZE: {
                const Address a = u256::to_address(pop());
                REQUIRE_GAS(access_address(a) ? g::kColdAccountAccess : g::kWarmAccess);
                const auto* acc = state_.find(a);
                push(acc ? acc->code.size() : 0);
                break;
            }
            case OP_EXTCODECOPY: {
                const Address a = u256::to_address(pop());
                const U256 dst = pop(), src = pop(), size = pop();
                REQUIRE_GAS(access_address(a) ? g::kColdAccountAccess : g::kWarmAccess);
                if (!memory.grow(dst, size, gas)) return fail(Status::OutOfGas);
                REQUIRE_GAS(g::kCopyWord * words(static_cast<uint64_t>(size)));
                static const Bytes kNoCode;
                const auto* acc = state_.find(a);
                memory.copy_padded(static_cast<uint64_t>(dst), acc ? acc->code : kNoCode, src,
                                   static_cast<uint64_t>(size));
                break;
            }
            case OP_RETURNDATASIZE: push(returndata.size()); break;
            case OP_RETURNDATACOPY: {
                const U256 dst = pop(), src = pop(), size = pop();
                if (U512(src) + U512(size) > returndata.size())
                    return fail(Status::OutOfGas);  // exceptional halt per EIP-211
                if (!memory.grow(dst, size, gas)) return fail(Status::OutOfGas);
                REQUIRE_GAS(g::kCopyWord * words(static_cast<uint64_t>(size)));
                memory.copy_padded(static_cast<uint64_t>(dst), returndata, src,
                                   static_cast<uint64_t>(size));
                break;
            }
            case OP_EXTCODEHASH: {
                const Address a = u256::to_address(pop());
                REQUIRE_GAS(access_address(a) ? g::kColdAccountAccess : g::kWarmAccess);
                const auto* acc = state_.find(a);
                if (acc == nullptr || acc->is_empty()) {
                    push(0);
                } else {
                    const auto h = keccak256(acc->code);
                    push(u256::from_bytes32(h.data()));
                }
                break;
            }

            case OP_BLOCKHASH: { pop(); push(0); break; }  // no history in the sandbox chain
            case OP_COINBASE: push(u256::from_address(block_.coinbase)); break;
            case OP_TIMESTAMP: push(block_.timestamp); break;
            case OP_NUMBER: push(block_.number); break;
            case OP_PREVRANDAO: push(block_.prev_randao); break;
            case OP_GASLIMIT: push(block_.gas_limit); break;
            case OP_CHAINID: push(block_.chain_id); break;
            case OP_SELFBALANCE: {
                const auto* acc = state_.find(msg.recipient);
                push(acc ? acc->balance : U256(0));
                break;
            }
            case OP_BASEFEE: push(block_.base_fee); break;

            case OP_POP: pop(); break;
            case OP_MLOAD: {
                const U256 off = pop();
                if (!memory.grow(off, 32, gas)) return fail(Status::OutOfGas);
                push(u256::from_bytes32(memory.bytes.data() + static_cast<uint64_t>(off)));
                break;
            }
            case OP_MSTORE: {
                const U256 off = pop(), value = pop();
                if (!memory.grow(off, 32, gas)) return fail(Status::OutOfGas);
                const auto b = u256::to_bytes32(value);
                memory.store(static_cast<uint64_t>(off), b.data(), 32);
                break;
            }
            case OP_MSTORE8: {
                const U256 off = pop(), value = pop();
                if (!memory.grow(off, 1, gas)) return fail(Status::OutOfGas);
                memory.bytes[static_cast<uint64_t>(off)] = static_cast<uint8_t>(value & 0xff);
                break;
            }
            case OP_SLOAD: {
                const U256 key = pop();
                REQUIRE_GAS(access_slot(msg.recipient, key) ? g::kColdSload : g::kWarmAccess);
                const auto* acc = state_.find(msg.recipient);
                U256 v = 0;
                if (acc != nullptr) {
                    auto it = acc->storage.find(key);
                    if (it != acc->storage.end()) v = it->second;
                }
                push(v);
                break;
            }
            case OP_SSTORE: {
                if (msg.is_static) return fail(Status::StaticModeViolation);
                if (gas <= g::kSstoreSentry) return fail(Status::OutOfGas);  // EIP-2200
                const U256 key = pop(), new_value = pop();
                if (access_slot(msg.recipient, key)) REQUIRE_GAS(g::kColdSload);
                auto& acc = state_.get_or_create(msg.recipient);
                U256 current = 0;
                auto it = acc.storage.find(key);
                if (it != acc.storage.end()) current = it->second;
                const U256 original = original_storage(msg.recipient, key, current);

                if (current == new_value) {
                    REQUIRE_GAS(g::kWarmAccess);
                } else if (original == current) {
                    if (original == 0) {
                        REQUIRE_GAS(g::kSstoreSet);
                    } else {
                        REQUIRE_GAS(g::kSstoreReset);
                        if (new_value == 0) refund_ += g::kSstoreClearRefund;
                    }
                } else {
                    REQUIRE_GAS(g::kWarmAccess);
                    if (original != 0) {
                        if (current == 0) refund_ -= g::kSstoreClearRefund;
                        else if (new_value == 0) refund_ += g::kSstoreClearRefund;
                    }
                    if (new_value == original) {
                        if (original == 0)
                            refund_ += g::kSstoreSet - g::kWarmAccess;
                        else
                            refund_ += (g::kSstoreReset + g::kColdSload) - g::kColdSload - g::kWarmAccess;
                    }
                }

                if (new_value == 0)
                    acc.storage.erase(key);
                else
                    acc.storage[key] = new_value;
                break;
            }
            case OP_JUMP: {
                const U256 dst = pop();
                if (dst >= code.size() || !jumpdests[static_cast<size_t>(dst)])
                    return fail(Status::BadJumpDestination);
                pc = static_cast<size_t>(dst);
                continue;
            }
            case OP_JUMPI: {
                const U256 dst = pop(), cond = pop();
                if (cond != 0) {
                    if (dst >= code.size() || !jumpdests[static_cast<size_t>(dst)])
                        return fail(Status::BadJumpDestination);
                    pc = static_cast<size_t>(dst);
                    continue;
                }
                break;
            }
            case OP_PC: push(pc); break;
            case OP_MSIZE: push(memory.bytes.size()); break;
            case OP_GAS: push(gas); break;
            case OP_JUMPDEST: break;
            case OP_PUSH0: push(0); break;

            case OP_RETURN:
            case OP_REVERT: {
                const U256 off = pop(), size = pop();
                if (!memory.grow(off, size, gas)) return fail(Status::OutOfGas);
                Bytes out(memory.bytes.begin() + static_cast<long>(static_cast<uint64_t>(off)),
                          memory.bytes.begin() +
                              static_cast<long>(static_cast<uint64_t>(off) + static_cast<uint64_t>(size)));
                return FrameResult{op == OP_RETURN ? Status::Success : Status::Revert, gas,
                                   std::move(out)};
            }
            case OP_INVALID: return fail(Status::InvalidInstruction);

            case OP_SELFDESTRUCT: {
                if (msg.is_static) return fail(Status::StaticModeViolation);
                const Address beneficiary = u256::to_address(pop());
                if (access_address(beneficiary)) REQUIRE_GAS(g::kColdAccountAccess);
                auto& self = state_.get_or_create(msg.recipient);
                if (self.balance != 0 && !state_.exists_and_nonempty(beneficiary))
                    REQUIRE_GAS(g::kNewAccount);
                state_.get_or_create(beneficiary).balance += self.balance;
                self.balance = 0;
                destroyed_.insert(msg.recipient);
                return FrameResult{Status::Success, gas, {}};
            }

            case OP_CREATE:
            case OP_CREATE2: {
                if (msg.is_static) return fail(Status::StaticModeViolation);
                const U256 value = pop(), off = pop(), size = pop();
                const U256 salt = (op == OP_CREATE2) ? pop() : U256(0);
                if (!memory.grow(off, size, gas)) return fail(Status::OutOfGas);
                const uint64_t init_size = static_cast<uint64_t>(size);
                if (rules_.initcode_metering) {
                    if (init_size > g::kMaxInitcodeSize) return fail(Status::OutOfGas);
                    REQUIRE_GAS(g::kInitcodeWord * words(init_size));
                }
                if (op == OP_CREATE2) REQUIRE_GAS(g::kKeccakWord * words(init_size));
                REQUIRE_GAS(g::kCreate);

                returndata.clear();
                Bytes init(memory.bytes.begin() + static_cast<long>(static_cast<uint64_t>(off)),
                           memory.bytes.begin() +
                               static_cast<long>(static_cast<uint64_t>(off) + init_size));

                auto& creator = state_.get_or_create(msg.recipient);
                if (creator.balance < value || msg.depth >= 1024) {
                    push(0);
                    break;
                }
                const int64_t child_gas = gas - gas / 64;  // EIP-150
                gas -= child_gas;

                const uint64_t creator_nonce = creator.nonce;
                creator.nonce += 1;
                const Address created =
                    (op == OP_CREATE)
                        ? rlp::create_address(msg.recipient, creator_nonce)
                        : rlp::create2_address(msg.recipient, salt, init);

                FrameResult r = create(msg.recipient, created, init, value, child_gas,
                                       msg.depth + 1, msg.is_static);
                gas += r.gas_left;
                if (r.status == Status::Success) {
                    push(u256::from_address(created));
                } else {
                    if (r.status == Status::Revert) returndata = r.output;
                    push(0);
                }
                break;
            }

            case OP_CALL:
            case OP_CALLCODE:
            case OP_DELEGATECALL:
            case OP_STATICCALL: {
                const U256 gas_requested = pop();
                const Address target = u256::to_address(pop());
                const U256 value = (op == OP_CALL || op == OP_CALLCODE) ? pop() : U256(0);
                const U256 in_off = pop(), in_size = pop(), out_off = pop(), out_size = pop();

                if (op == OP_CALL && msg.is_static && value != 0)
                    return fail(Status::StaticModeViolation);

                if (!memory.grow(in_off, in_size, gas)) return fail(Status::OutOfGas);
                if (!memory.grow(out_off, out_size, gas)) return fail(Status::OutOfGas);

                REQUIRE_GAS(access_address(target) ? g::kColdAccountAccess : g::kWarmAccess);
                if (value != 0) {
                    REQUIRE_GAS(g::kCallValue);
                    if (op == OP_CALL && !state_.exists_and_nonempty(target) &&
                        !is_precompile(target))
                        REQUIRE_GAS(g::kNewAccount);
                }

                int64_t forwarded = gas - gas / 64;
                if (gas_requested < U256(forwarded)) forwarded = static_cast<int64_t>(gas_requested);
                gas -= forwarded;
                int64_t callee_gas = forwarded + (value != 0 ? g::kCallStipend : 0);

                Bytes call_input(
                    memory.bytes.begin() + static_cast<long>(static_cast<uint64_t>(in_off)),
                    memory.bytes.begin() + static_cast<long>(static_cast<uint64_t>(in_off) +
                                                             static_cast<uint64_t>(in_size)));

                Message child;
                child.sender = (op == OP_DELEGATECALL) ? msg.sender : msg.recipient;
                child.recipient = (op == OP_CALL || op == OP_STATICCALL) ? target : msg.recipient;
                child.code_address = target;
                child.value = (op == OP_DELEGATECALL) ? msg.value : value;
                child.transfers_value = (op == OP_CALL || op == OP_CALLCODE);
                // CALLCODE transfers to self; model as no-op transfer with balance check.
                if (op == OP_CALLCODE) child.recipient = msg.recipient;
                child.input = &call_input;
                const auto* target_acc = state_.find(target);
                static const Bytes kNoCode;
                child.code = target_acc ? &target_acc->code : &kNoCode;
                child.gas = callee_gas;
                child.depth = msg.depth + 1;
                child.is_static = msg.is_static || op == OP_STATICCALL;

                returndata.clear();
                FrameResult r;
                if (child.transfers_value && op == OP_CALLCODE) {
                    // self-transfer: only the balance check applies
                    const auto* self_acc = state_.find(msg.recipient);
                    if ((self_acc ? self_acc->balance : U256(0)) < value) {
                        r = FrameResult{Status::InsufficientBalance, callee_gas, {}};
                    } else {
                        child.transfers_value = false;
                        r = call(child);
                    }
                } else {
                    r = call(child);
                }

                if (r.status == Status::InsufficientBalance || r.status == Status::DepthExceeded) {
                    // No execution happened; forwarded gas comes back (minus stipend top-up).
                    gas += forwarded;
                    push(0);
                    break;
                }

                gas += r.gas_left;
                returndata = r.output;
                const uint64_t copy_len =
                    std::min<uint64_t>(static_cast<uint64_t>(out_size), r.output.size());
                if (copy_len > 0)
                    memory.store(static_cast<uint64_t>(out_off), r.output.data(), copy_len);
                push(r.status == Status::Success ? 1 : 0);
                break;
            }

            default: {
                if (op >= OP_PUSH1 && op <= OP_PUSH32) {
                    const size_t n = op - OP_PUSH1 + 1;
                    U256 v = 0;
                    for (size_t i = 0; i < n; ++i) {
                        const size_t idx = pc + 1 + i;
                        v = (v << 8) | (idx < code.size() ? code[idx] : 0);
                    }
                    push(v);
                    pc += n + 1;
                    continue;
                }
                if (op >= OP_DUP1 && op <= OP_DUP16) {
                    push(stack[stack.size() - 1 - (op - OP_DUP1)]);
                    break;
                }
                if (op >= OP_SWAP1 && op <= OP_SWAP16) {
                    std::swap(stack[stack.size() - 1], stack[stack.size() - 2 - (op - OP_SWAP1)]);
                    break;
                }
                if (op >= OP_LOG0 && op <= OP_LOG4) {
                    if (msg.is_static) return fail(Status::StaticModeViolation);
                    const unsigned topic_count = op - OP_LOG0;
                    const U256 off = pop(), size = pop();
                    std::vector<U256> topics(topic_count);
                    for (unsigned i = 0; i < topic_count; ++i) topics[i] = pop();
                    if (!memory.grow(off, size, gas)) return fail(Status::OutOfGas);
                    REQUIRE_GAS(g::kLog + g::kLogTopic * topic_count +
                                g::kLogDataByte * static_cast<int64_t>(static_cast<uint64_t>(size)));
                    LogEntry log;
                    log.address = msg.recipient;
                    log.topics = std::move(topics);
                    log.data.assign(
                        memory.bytes.begin() + static_cast<long>(static_cast<uint64_t>(off)),
                        memory.bytes.begin() + static_cast<long>(static_cast<uint64_t>(off) +
                                                                 static_cast<uint64_t>(size)));
                    logs_.push_back(std::move(log));
                    break;
                }
                return fail(Status::InvalidInstruction);
            }
        }
        ++pc;
    }
    return FrameResult{Status::Success, gas, {}};
}

#undef REQUIRE_GAS

}  // namespace

Evm::Evm(Fork fork, BlockContext block)
    : fork_(fork), rules_(ForkRules::get(fork)), block_(block) {}

void Evm::set_balance(const Address& a, const U256& balance) {
    state_.get_or_create(a).balance = balance;
}

TxResult Evm::transact_create(const Address& sender, const Bytes& init_code, const U256& value,
                              int64_t gas_limit) {
    TxResult result;

    if (rules_.initcode_metering && init_code.size() > g::kMaxInitcodeSize) {
        result.status = Status::InvalidTransaction;
        result.error = "initcode exceeds EIP-3860 size limit";
        return result;
    }
    int64_t intrinsic = g::kTx + g::kTxCreate + calldata_cost(init_code);
    if (rules_.initcode_metering) intrinsic += g::kInitcodeWord * words(init_code.size());
    if (intrinsic > gas_limit) {
        result.status = Status::InvalidTransaction;
        result.error = "intrinsic gas exceeds gas limit";
        return result;
    }

    auto& sender_acc = state_.get_or_create(sender);
    if (sender_acc.balance < value) {
        result.status = Status::InsufficientBalance;
        result.error = "sender balance below transaction value";
        return result;
    }
    const uint64_t nonce = sender_acc.nonce;
    sender_acc.nonce += 1;
    const Address created = rlp::create_address(sender, nonce);

    Interp interp(state_, rules_, block_, fork_);
    interp.origin_ = sender;
    interp.warm_tx_defaults(sender, created);

    FrameResult r = interp.create(sender, created, init_code, value, gas_limit - intrinsic, 0, false);

    const int64_t gas_left = r.gas_left;
    const int64_t used_pre_refund = gas_limit - gas_left;
    const int64_t refund =
        r.status == Status::Success ? std::min(interp.refund_, used_pre_refund / 5) : 0;
    result.gas_used = static_cast<uint64_t>(used_pre_refund - refund);
    result.status = r.status;
    result.output = std::move(r.output);
    if (r.status == Status::Success) {
        result.created_address = created;
        result.logs = std::move(interp.logs_);
        for (const auto& a : interp.destroyed_) state_.accounts.erase(a);
    } else {
        result.error = "contract creation failed: " + status_name(r.status);
    }
    return result;
}

TxResult Evm::transact_call(const Address& sender, const Address& to, const Bytes& data,
                            const U256& value, int64_t gas_limit) {
    TxResult result;

    const int64_t intrinsic = g::kTx + calldata_cost(data);
    if (intrinsic > gas_limit) {
        result.status = Status::InvalidTransaction;
        result.error = "intrinsic gas exceeds gas limit";
        return result;
    }

    auto& sender_acc = state_.get_or_create(sender);
    if (sender_acc.balance < value) {
        result.status = Status::InsufficientBalance;
        result.error = "sender balance below transaction value";
        return result;
    }
    sender_acc.nonce += 1;

    Interp interp(state_, rules_, block_, fork_);
    interp.origin_ = sender;
    interp.warm_tx_defaults(sender, to);

    Message msg;
    msg.sender = sender;
    msg.recipient = to;
    msg.code_address = to;
    msg.value = value;
    msg.input = &data;
    const auto* to_acc = state_.find(to);
    static const Bytes kNoCode;
    msg.code = to_acc ? &to_acc->code : &kNoCode;
    msg.gas = gas_limit - intrinsic;
    msg.depth = 0;

    FrameResult r = interp.call(msg);

    const int64_t used_pre_refund = gas_limit - r.gas_left;
    const int64_t refund =
        r.status == Status::Success ? std::min(interp.refund_, used_pre_refund / 5) : 0;
    result.gas_used = static_cast<uint64_t>(used_pre_refund - refund);
    result.status = r.status;
    result.output = std::move(r.output);
    if (r.status == Status::Success) {
        result.logs = std::move(interp.logs_);
        for (const auto& a : interp.destroyed_) state_.accounts.erase(a);
    } else if (r.status == Status::Revert) {
        result.error = "execution reverted";
    } else {
        result.error = "execution failed: " + status_name(r.status);
    }
    return result;
}

}  // namespace gasloop::evm
