#pragma once

#include <string>
#include <vector>

#include "dynsbm/types.hpp"

namespace dynsbm {

// Snapshot files are CSV with header "t,u,v": snapshot index in 0..T-1 and
// a zero-based undirected edge u < v per line; absent pairs are non-edges.
// n and T come from a JSON sidecar ("<stem>.json" next to the CSV) when
// present, otherwise they are inferred as max id + 1 and max t + 1.
GraphSequence load_snapshots(const std::string& path);
void save_snapshots(const GraphSequence& seq, const std::string& path);

// Mask files are CSV with header "t,i,m", m in {0,1}; unlisted entries
// default to 1. Row count and n come from the sidecar or the arguments
// (pass -1 to infer from the data).
MajorityMask load_mask(const std::string& path, int rows = -1, int n = -1);
void save_mask(const MajorityMask& mask, const std::string& path);

// Membership files are CSV with header "i,g": zero-based node, 1-based label.
Membership load_membership(const std::string& path);
void save_membership(const Membership& g, const std::string& path);

}  // namespace dynsbm
