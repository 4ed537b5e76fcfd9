#pragma once
#include "json.hpp"

#include "streamodt/arf_ensemble.hpp"
#include "streamodt/fastodt.hpp"
#include "streamodt/incubation_boost.hpp"

namespace streamodt {

// Versioned JSON snapshots for checkpointing. Node lists are emitted in
// (depth, index) order so snapshots of equal states compare equal as text.
inline constexpr int kSnapshotVersion = 1;

nlohmann::json to_snapshot(const FastODT& tree);
FastODT tree_from_snapshot(const nlohmann::json& j);

nlohmann::json to_snapshot(const IncubationEnsemble& ensemble);
IncubationEnsemble boost_from_snapshot(const nlohmann::json& j);

nlohmann::json to_snapshot(const ArfEnsemble& ensemble);
ArfEnsemble arf_from_snapshot(const nlohmann::json& j);

} // namespace streamodt
