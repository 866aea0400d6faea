// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "gasloop/evm/evm.hpp"

using namespace gasloop;
using namespace gasloop::evm;

namespace {

const Address kDeployer = address_from_hex("f39fd6e51aad88f6f4ce6ab8827279cfffb92266");

Evm funded_evm(Fork fork = Fork::Shanghai) {
    Evm vm(fork);
    vm.set_balance(kDeployer, U256(1) << 128);
    return vm;
}

// Init code that deploys the given runtime bytes (runtime must fit PUSH1 sizes).
Bytes deployer_init(const Bytes& runtime) {
    REQUIRE(runtime.size() <= 0xff);
    Bytes init = {0x60, static_cast<uint8_t>(runtime.size()),  // PUSH1 len
                  0x60, 0x0c,                                  // PUSH1 offset of runtime
                  0x60, 0x00,                                  // PUSH1 0
                  0x39,                                        // CODECOPY
                  0x60, static_cast<uint8_t>(runtime.size()),  // PUSH1 len
                  0x60, 0x00,                                  // PUSH1 0
                  0xf3};                                       // RETURN
    init.insert(init.end(), runtime.begin(), runtime.end());
    return init;
}

}  // namespace

// Hand-derived totals: 21000 intrinsic + 32000 creation + calldata +
// EIP-3860 initcode words + execution + 200/byte code deposit.
TEST_CASE("creation gas for trivial init code") {
    auto vm = funded_evm();
    // PUSH1 0 PUSH1 0 RETURN -> returns empty runtime code
    const Bytes init = {0x60, 0x00, 0x60, 0x00, 0xf3};
    const auto r = vm.transact_create(kDeployer, init, 0, 30'000'000);
    REQUIRE(r.success());
    // data: 3 nonzero (48) + 2 zero (8) = 56; words(5) = 1 -> 2; exec 3+3+0 = 6
    CHECK(r.gas_used == 21000 + 32000 + 56 + 2 + 6 + 0);
}

TEST_CASE("creation gas with code deposit") {
    auto vm = funded_evm();
    const auto r = vm.transact_create(kDeployer, deployer_init({0x00, 0x00}), 0, 30'000'000);
    REQUIRE(r.success());
    // data 10 nonzero + 4 zero = 176; initcode words 2; exec: 5x PUSH1 (15)
    // + CODECOPY 3 + copy word 3 + memory word 3 = 24; deposit 400
    CHECK(r.gas_used == 21000 + 32000 + 176 + 2 + 24 + 400);
    CHECK(vm.state().find(r.created_address)->code == Bytes{0x00, 0x00});
}

TEST_CASE("creation gas with constructor storage write") {
    auto vm = funded_evm();
    // PUSH1 42 PUSH1 0 SSTORE PUSH1 0 PUSH1 0 RETURN
    const Bytes init = {0x60, 0x2a, 0x60, 0x00, 0x55, 0x60, 0x00, 0x60, 0x00, 0xf3};
    const auto r = vm.transact_create(kDeployer, init, 0, 30'000'000);
    REQUIRE(r.success());
    // data 7nz+3z = 124; words 2; exec 3+3+22100+3+3 = 22112
    CHECK(r.gas_used == 21000 + 32000 + 124 + 2 + 22112);
    CHECK(vm.state().find(r.created_address)->storage.at(0) == 42);
}

TEST_CASE("sstore clear refund is applied and capped") {
    auto vm = funded_evm();
    // runtime: PUSH1 0 CALLDATALOAD PUSH1 0 SSTORE STOP
    const Bytes runtime = {0x60, 0x00, 0x35, 0x60, 0x00, 0x55, 0x00};
    const auto c = vm.transact_create(kDeployer, deployer_init(runtime), 0, 30'000'000);
    REQUIRE(c.success());

    Bytes set_one(32, 0x00);
    set_one[31] = 0x01;
    const auto r1 = vm.transact_call(kDeployer, c.created_address, set_one, 0, 30'000'000);
    REQUIRE(r1.success());
    CHECK(r1.gas_used == 21140 + 9 + 22100);  // 0 -> 1 cold set

    const Bytes set_zero(32, 0x00);
    const auto r2 = vm.transact_call(kDeployer, c.created_address, set_zero, 0, 30'000'000);
    REQUIRE(r2.success());
    // 1 -> 0: cold sload 2100 + reset 2900, refund 4800 within the /5 cap
    CHECK(r2.gas_used == 21128 + 9 + 5000 - 4800);
}

TEST_CASE("deployment gas is deterministic") {
    const Bytes init = deployer_init({0x60, 0x01, 0x60, 0x02, 0x01, 0x00});
    uint64_t first = 0;
    for (int i = 0; i < 10; ++i) {
        auto vm = funded_evm();
        const auto r = vm.transact_create(kDeployer, init, 0, 30'000'000);
        REQUIRE(r.success());
        if (i == 0)
            first = r.gas_used;
        else
            CHECK(r.gas_used == first);
    }
}

TEST_CASE("appending inert runtime bytes strictly increases deployment gas") {
    uint64_t previous = 0;
    for (size_t n = 0; n <= 8; ++n) {
        auto vm = funded_evm();
        Bytes runtime(n, 0x00);  // STOP padding: inert
        const auto r = vm.transact_create(kDeployer, deployer_init(runtime), 0, 30'000'000);
        REQUIRE(r.success());
        if (n > 0) CHECK(r.gas_used > previous);
        previous = r.gas_used;
    }
}

TEST_CASE("revert propagates data and refunds remaining gas") {
    auto vm = funded_evm();
    // runtime: PUSH1 1 PUSH1 0 MSTORE8 PUSH1 1 PUSH1 0 REVERT
    const Bytes runtime = {0x60, 0x01, 0x60, 0x00, 0x53, 0x60, 0x01, 0x60, 0x00, 0xfd};
    const auto c = vm.transact_create(kDeployer, deployer_init(runtime), 0, 30'000'000);
    REQUIRE(c.success());
    const auto r = vm.transact_call(kDeployer, c.created_address, {}, 0, 100'000);
    CHECK(r.status == Status::Revert);
    CHECK(r.output == Bytes{0x01});
    CHECK(r.gas_used < 25000);  // far below the limit: leftover gas returned
}

TEST_CASE("out of gas consumes the full limit") {
    auto vm = funded_evm();
    // runtime: JUMPDEST PUSH1 0 JUMP -> infinite loop
    const Bytes runtime = {0x5b, 0x60, 0x00, 0x56};
    const auto c = vm.transact_create(kDeployer, deployer_init(runtime), 0, 30'000'000);
    REQUIRE(c.success());
    const auto r = vm.transact_call(kDeployer, c.created_address, {}, 0, 60'000);
    CHECK(r.status == Status::OutOfGas);
    CHECK(r.gas_used == 60'000);
}

TEST_CASE("logs are recorded with topics and data") {
    auto vm = funded_evm();
    // runtime: PUSH1 7 PUSH1 0 MSTORE8; PUSH1 0xaa (topic) PUSH1 1 PUSH1 0 LOG1
    const Bytes runtime = {0x60, 0x07, 0x60, 0x00, 0x53, 0x60, 0xaa,
                           0x60, 0x01, 0x60, 0x00, 0xa1, 0x00};
    const auto c = vm.transact_create(kDeployer, deployer_init(runtime), 0, 30'000'000);
    REQUIRE(c.success());
    const auto r = vm.transact_call(kDeployer, c.created_address, {}, 0, 100'000);
    REQUIRE(r.success());
    REQUIRE(r.logs.size() == 1);
    CHECK(r.logs[0].topics == std::vector<U256>{U256(0xaa)});
    CHECK(r.logs[0].data == Bytes{0x07});
    CHECK(r.logs[0].address == c.created_address);
}

TEST_CASE("push0 is rejected on london but accepted on shanghai") {
    const Bytes init = {0x5f, 0x5f, 0xf3};  // PUSH0 PUSH0 RETURN
    {
        auto vm = funded_evm(Fork::Shanghai);
        CHECK(vm.transact_create(kDeployer, init, 0, 30'000'000).success());
    }
    {
        auto vm = funded_evm(Fork::London);
        const auto r = vm.transact_create(kDeployer, init, 0, 30'000'000);
        CHECK(!r.success());
    }
}

TEST_CASE("london omits initcode word metering") {
    const Bytes init = {0x60, 0x00, 0x60, 0x00, 0xf3};
    auto shanghai = funded_evm(Fork::Shanghai);
    auto london = funded_evm(Fork::London);
    const auto rs = shanghai.transact_create(kDeployer, init, 0, 30'000'000);
    const auto rl = london.transact_create(kDeployer, init, 0, 30'000'000);
    REQUIRE(rs.success());
    REQUIRE(rl.success());
    CHECK(rs.gas_used == rl.gas_used + 2);  // one initcode word
}

TEST_CASE("value transfer to empty account charges new-account cost") {
    auto vm = funded_evm();
    const Address someone = address_from_hex("00000000000000000000000000000000000000aa");
    const auto r = vm.transact_call(kDeployer, someone, {}, 1000, 100'000);
    REQUIRE(r.success());
    CHECK(r.gas_used == 21000);  // plain transfer: no execution, intrinsic only
    CHECK(vm.state().find(someone)->balance == 1000);
}
