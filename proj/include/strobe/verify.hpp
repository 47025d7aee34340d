// verify.hpp - invariant checks on one engine, reported as data.
//
// Columns: check, status (pass / fail / n/a), value, tolerance, detail.

#pragma once

#include "strobe/chain_model.hpp"
#include "strobe/io.hpp"
#include "strobe/limit_cycle.hpp"

namespace strobe {

struct VerifyOptions {
    std::size_t cycles{100};  // transient ledger length
    InitialState initial{InitialState::ThermalCold};
    LimitCycleOptions solver{LimitCycleMethod::Spectral};
};

Table verify(const ChainModel& model, const VerifyOptions& options = {});

// True when no row failed.
bool verify_passed(const Table& report);

}  // namespace strobe
