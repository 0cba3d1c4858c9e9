#pragma once

#include <string>

#include "nsrl/mdp.hpp"

namespace nsrl {

/// Parses an MDP snapshot from its JSON document (keys `S`, `A`,
/// `r_max`, `reward_dist`, `r_mean` S x A, `P` S x A x S). `repair`
/// renormalizes near-stochastic rows and rejects invalid snapshots; pass
/// false to load raw data for validation reporting.
MdpSnapshot snapshot_from_json(const std::string& text, bool repair = true);

/// Reads and parses a snapshot file.
MdpSnapshot load_snapshot(const std::string& path, bool repair = true);

/// Serializes a snapshot to its JSON document.
std::string snapshot_to_json(const MdpSnapshot& m, int indent = 2);

void save_snapshot(const MdpSnapshot& m, const std::string& path);

/// Reads a whole file into a string; raises Error on I/O failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace nsrl
